//! Twisted generalized Reed-Solomon codes over F_{q^2}: construction,
//! Hermitian/Euclidean self-duality certificates and MDS decisions.

pub mod code;
pub mod constructions;
pub mod duality;
pub mod error;
pub mod field;
mod fp_poly;
pub mod matrix;
pub mod mds;
pub mod poly;
pub mod roots;
pub mod serial;

pub use constructions::{construct, ConstructionRequest, ConstructionResult, Scheme};
pub use code::{Distance, HookTwistSpec, TgrsCode};
pub use duality::{DualityCertificate, DualityKind};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldTower};
pub use matrix::FieldMatrix;
pub use serial::CodeDescriptor;
pub use mds::{MdsCertificate, MdsMethod};
