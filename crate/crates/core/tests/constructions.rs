mod common;

use common::{ints, random_code};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tgrs_core::constructions::{
    eta_solutions_iv, sample_twist_i, satisfies_twist_constraint, solve_scaling_vector, twist_from_b,
};
use tgrs_core::duality::{hermitian_certificate_p, is_euclidean_self_dual, is_hermitian_self_dual};
use tgrs_core::mds::{is_mds, m_determinant, MdsMethod};
use tgrs_core::{construct, ConstructionRequest, Distance, Error, FieldMatrix, FieldTower, Scheme, TgrsCode};

fn req(scheme: Scheme, p: u32, e: u32) -> ConstructionRequest {
    ConstructionRequest::new(scheme, p, e)
}

fn is_scalar_multiple(m: &FieldMatrix, target: &FieldMatrix) -> bool {
    let t = m.tower();
    let Some(pos) = target.entries().iter().position(|x| !x.is_zero()) else {
        return m.is_zero();
    };
    let s = t.div(m.entries()[pos], target.entries()[pos]).unwrap();
    !s.is_zero() && *m == target.scale(s)
}

#[test]
fn scaling_vector_examples() {
    let t = FieldTower::hermitian(5, 1).unwrap();
    let alpha = ints(&t, &[1, 2, 3, 4]);
    let (v, lambda) = solve_scaling_vector(&t, &alpha, Some(t.one())).unwrap();
    assert_eq!(lambda, t.one());
    let u = ints(&t, &[4, 3, 2, 1]);
    for (vi, ui) in v.iter().zip(&u) {
        assert_eq!(t.norm(*vi).unwrap(), *ui);
        let smallest = t.units().find(|&x| t.norm(x).unwrap() == *ui).unwrap();
        assert_eq!(*vi, smallest);
    }
    let roots = t.nth_roots(t.one(), 4).unwrap();
    let (_, lambda) = solve_scaling_vector(&t, &roots, None).unwrap();
    assert_eq!(lambda, t.inv(tgrs_core::code::u_vector(&t, &roots).unwrap()[0]).unwrap());

    // over F_9, points whose u-quotients leave F_3
    let f9 = FieldTower::hermitian(3, 1).unwrap();
    let bad = (0..9u32)
        .flat_map(|a| (a + 1..9).flat_map(move |b| (b + 1..9).map(move |c| [a, b, c])))
        .map(|ix| ix.map(|i| f9.element_from_index(i).unwrap()).to_vec())
        .find(|alpha| solve_scaling_vector(&f9, alpha, None).is_err())
        .unwrap();
    match solve_scaling_vector(&f9, &bad, Some(f9.one())) {
        Err(Error::Infeasible(msg)) => assert!(msg.contains("outside F_q")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sampled_twists_satisfy_constraint() {
    for (p, e) in [(3, 1), (2, 2), (5, 1)] {
        let t = FieldTower::hermitian(p, e).unwrap();
        for seed in 0..100 {
            for k in 1..5 {
                assert!(satisfies_twist_constraint(&sample_twist_i(&t, k, seed).unwrap()).unwrap());
            }
        }
    }
    let t = FieldTower::hermitian(5, 1).unwrap();
    assert!(twist_from_b(&FieldMatrix::zeros(&t, 3, 3)).unwrap().is_zero());
    let mut e11 = FieldMatrix::zeros(&t, 2, 2);
    e11.set(0, 0, t.one());
    let a = twist_from_b(&e11).unwrap();
    assert_eq!(a, FieldMatrix::diag(&t, &ints(&t, &[1, -1])));
    assert!(satisfies_twist_constraint(&a).unwrap());
}

#[test]
fn scheme_one_examples() {
    let t = FieldTower::hermitian(5, 1).unwrap();
    let eta = t.element(&[2, 3]).unwrap();
    let r = construct(&ConstructionRequest {
        eta: vec![t.coeffs(eta), vec![0, 0]],
        ..req(Scheme::I, 5, 1).with_n(4)
    })
    .unwrap();
    let a = r.code.twist();
    assert_eq!(a.get(0, 0), eta);
    assert_eq!(a.get(1, 1), t.neg(t.pow(eta, 5)));
    assert!(r.certificate.self_dual);
    let p = r.certificate.p_matrix.as_ref().unwrap();
    assert_eq!(*p, FieldMatrix::identity(&t, 2).scale(r.provenance.lambda));

    let zero = vec![vec![vec![0, 0]; 2]; 2];
    let grs = construct(&ConstructionRequest { twist: Some(zero), ..req(Scheme::I, 5, 1).with_n(4) }).unwrap();
    assert!(grs.code.twist().is_zero());
    assert!(grs.certificate.self_dual);

    let f169 = FieldTower::hermitian(13, 1).unwrap();
    let r = construct(&ConstructionRequest { t: Some(3), ..req(Scheme::I, 13, 1).with_n(4) }).unwrap();
    assert!(r.certificate.self_dual);
    for &x in r.code.alpha() {
        assert_eq!(f169.pow(x, 4), f169.pow(r.code.alpha()[0], 4));
        assert_eq!(f169.order(f169.pow(x, 4)), Some(3));
    }

    let bad = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]];
    assert!(matches!(
        construct(&ConstructionRequest { twist: Some(bad), ..req(Scheme::I, 5, 1).with_n(4) }),
        Err(Error::Precondition(_))
    ));
    assert!(construct(&req(Scheme::I, 5, 1).with_n(3)).is_err());
}

#[test]
fn scheme_two_examples() {
    let t = FieldTower::hermitian(2, 3).unwrap();
    let r = construct(&req(Scheme::II, 2, 3)).unwrap();
    assert_eq!((r.code.n(), r.code.k()), (8, 4));
    let p = r.certificate.p_matrix.as_ref().unwrap();
    assert!(is_scalar_multiple(p, &FieldMatrix::identity(&t, 4)));

    // with a = 1 any η_i ∈ F_8 certifies
    let f8: Vec<_> = t.subfield_elements().unwrap();
    for (i, &x) in f8.iter().enumerate() {
        let y = f8[(3 * i + 1) % 8];
        let z = f8[(5 * i + 2) % 8];
        let r = construct(&ConstructionRequest {
            eta: vec![t.coeffs(x), t.coeffs(y), t.coeffs(z)],
            ..req(Scheme::II, 2, 3)
        })
        .unwrap();
        assert!(r.certificate.self_dual);
    }
    let zero = construct(&ConstructionRequest { eta: vec![vec![0; 6]; 3], ..req(Scheme::II, 2, 3) }).unwrap();
    assert!(zero.code.twist().is_zero());

    // q = 4 with a of order 5
    let t = FieldTower::hermitian(2, 2).unwrap();
    let a = t.units().find(|&a| t.order(a) == Some(5)).unwrap();
    let r = construct(&ConstructionRequest { a: Some(t.coeffs(a)), ..req(Scheme::II, 2, 2) }).unwrap();
    let eta = r.code.twist().get(1, 0);
    assert_eq!(t.pow(eta, 3), t.inv(a).unwrap());
    let p = r.certificate.p_matrix.as_ref().unwrap();
    assert!(is_scalar_multiple(p, &FieldMatrix::diag(&t, &[t.one(), a])));
}

#[test]
fn scheme_three_examples() {
    let r = construct(&req(Scheme::III, 3, 2)).unwrap();
    assert_eq!((r.code.n(), r.code.k()), (6, 3));
    let a = r.code.twist();
    assert!(a.get(0, 0).is_zero() && a.get(2, 2).is_zero());
    assert!(!a.get(1, 1).is_zero());
    assert!(r.certificate.self_dual);

    let grs = construct(&ConstructionRequest { eta: vec![vec![0; 4]], ..req(Scheme::III, 3, 2) }).unwrap();
    assert!(grs.code.twist().is_zero());

    let small = construct(&req(Scheme::III, 2, 2)).unwrap();
    assert_eq!((small.code.n(), small.code.k()), (4, 2));
    assert!(small.code.twist().is_zero());
    assert!(construct(&req(Scheme::III, 3, 1)).is_err());
}

/// Builds scheme IV by hand and asks the Gram oracle about every diagonal
/// twist, for every b.
#[test]
fn scheme_four_condition_matches_exhaustive_search() {
    for p in [3u32, 5] {
        let t = FieldTower::hermitian(p, 1).unwrap();
        let q = p as u64;
        let n = p as usize + 1;
        let k = n / 2;
        for b in t.subfield_elements().unwrap().into_iter().filter(|x| !x.is_zero()) {
            let alpha = t.nth_roots(b, n as u64).unwrap();
            let v = vec![t.one(); n];
            let sols = eta_solutions_iv(&t, b, k).unwrap();
            let target = t.neg(t.inv(t.pow(b, k as u64)).unwrap());
            for &x in &sols {
                assert_eq!(t.pow(x, q + 1), target);
            }
            // enumerate diagonals only for k = 2 (q = 3); sample for q = 5
            let diags: Vec<Vec<_>> = if k == 2 {
                t.elements().flat_map(|x| t.elements().map(move |y| vec![x, y])).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(b.index() as u64);
                let mut d: Vec<Vec<_>> = (0..300)
                    .map(|_| (0..k).map(|_| common::random_element(&t, &mut rng)).collect())
                    .collect();
                d.push(vec![sols[0]; k]);
                d
            };
            for d in diags {
                let code = TgrsCode::new(&t, k, alpha.clone(), v.clone(), FieldMatrix::diag(&t, &d)).unwrap();
                let predicted = d.iter().all(|&x| t.pow(x, q + 1) == target);
                assert_eq!(is_hermitian_self_dual(&code).unwrap().self_dual, predicted);
            }
        }
    }
}

#[test]
fn scheme_four_examples() {
    let t = FieldTower::hermitian(3, 1).unwrap();
    let r = construct(&req(Scheme::IV, 3, 1)).unwrap();
    assert_eq!((r.code.n(), r.code.k()), (4, 2));
    for i in 0..2 {
        assert_eq!(t.pow(r.code.twist().get(i, i), 4), t.neg(t.one()));
    }
    for &v in r.code.v() {
        assert_eq!(t.pow(v, 4), t.one());
    }
    let r = construct(&req(Scheme::IV, 5, 1)).unwrap();
    assert_eq!((r.code.n(), r.code.k()), (6, 3));
    assert!(r.certificate.self_dual);
    assert!(matches!(
        construct(&ConstructionRequest { eta: vec![vec![0, 0]; 2], ..req(Scheme::IV, 3, 1) }),
        Err(Error::Precondition(_))
    ));
    assert!(construct(&req(Scheme::IV, 2, 2)).is_err());
}

#[test]
fn scheme_five_examples() {
    let t = FieldTower::hermitian(5, 1).unwrap();
    let r = construct(&req(Scheme::V, 5, 1).with_n(4)).unwrap();
    let eta = r.code.twist().get(0, 0);
    assert_eq!(t.pow(eta, 5), t.neg(eta));
    assert!(r.code.twist().entries().iter().all(|&x| x == eta));
    assert!(r.mds.as_ref().unwrap().is_mds);
    assert_eq!(r.code.min_distance(1_000_000), Distance::Exact(3));
    // M − 1 is η times an element of F_5 on every subset
    for s in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
        let m = m_determinant(&r.code, &s).unwrap();
        assert!(!m.is_zero());
        let ratio = t.div(t.sub(m, t.one()), eta).unwrap();
        assert!(t.in_subfield(ratio).unwrap());
    }

    let r = construct(&ConstructionRequest { t: Some(3), ..req(Scheme::V, 13, 1).with_n(4) }).unwrap();
    assert!(r.certificate.self_dual && r.mds.as_ref().unwrap().is_mds);

    let r = construct(&req(Scheme::V, 3, 2).with_n(8)).unwrap();
    let cert = r.mds.as_ref().unwrap();
    assert_eq!(cert.method, MdsMethod::Criterion);
    assert!(cert.is_mds);
    assert!(is_mds(&r.code, MdsMethod::Minors).unwrap().is_mds);
    assert!(construct(&req(Scheme::V, 2, 2).with_n(2)).is_err());
}

#[test]
fn default_constructions_agree_with_both_certifiers() {
    let cases = [
        (Scheme::I, 5, 1, Some(4)),
        (Scheme::I, 3, 2, Some(8)),
        (Scheme::II, 2, 2, None),
        (Scheme::II, 2, 3, None),
        (Scheme::III, 3, 2, None),
        (Scheme::III, 2, 4, None),
        (Scheme::IV, 3, 1, None),
        (Scheme::IV, 7, 1, None),
        (Scheme::V, 7, 1, Some(6)),
    ];
    for (s, p, e, n) in cases {
        let mut r = req(s, p, e);
        r.n = n;
        let res = construct(&r).unwrap();
        assert!(res.certificate.self_dual, "{s} {p} {e}");
        assert!(hermitian_certificate_p(&res.code).unwrap().is_some());
        let spaces = res.code.dual_spaces().unwrap();
        assert!(tgrs_core::matrix::codes_equal(&spaces.code_pow_q, &spaces.euclidean_dual));
    }
}

#[test]
fn hermitian_codes_off_subfield_are_not_euclidean() {
    let r = construct(&req(Scheme::IV, 3, 1)).unwrap();
    assert!(!is_euclidean_self_dual(&r.code).unwrap().self_dual);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = FieldTower::hermitian(3, 1).unwrap();
    let c = random_code(&t, 4, 2, &mut rng);
    assert_eq!(
        is_hermitian_self_dual(&c).unwrap().self_dual,
        hermitian_certificate_p(&c).unwrap().is_some()
    );
}
