//! End-to-end acceptance checks, one line per criterion.
//!
//! Each check is timed against its budget; a check passes only when its
//! oracle agrees and it finishes inside the budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tgrs_cli::catalog::{run_search, to_csv, to_json, SearchConfig};
use tgrs_core::duality::{hermitian_certificate_p, is_hermitian_self_dual};
use tgrs_core::matrix::codes_equal;
use tgrs_core::mds::{is_mds, is_mds_capped, m_determinant, MdsMethod};
use tgrs_core::roots::{admissible_set_and_partition, affine_frobenius_roots};
use tgrs_core::{
    construct, CodeDescriptor, ConstructionRequest, ConstructionResult, Distance, Error, FieldElement, FieldMatrix,
    FieldTower, Scheme, TgrsCode,
};

type Check = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Check, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tower(p: u32, e: u32) -> FieldTower {
    FieldTower::hermitian(p, e).expect("hermitian tower")
}

fn random_element<R: Rng>(t: &FieldTower, rng: &mut R) -> FieldElement {
    t.element_from_index(rng.random_range(0..t.size())).unwrap()
}

fn random_points<R: Rng>(t: &FieldTower, n: usize, rng: &mut R) -> Vec<FieldElement> {
    sample(rng, t.size() as usize, n)
        .into_iter()
        .map(|i| t.element_from_index(i as u32).unwrap())
        .collect()
}

fn random_units<R: Rng>(t: &FieldTower, n: usize, rng: &mut R) -> Vec<FieldElement> {
    (0..n).map(|_| t.element_from_index(rng.random_range(1..t.size())).unwrap()).collect()
}

fn random_code<R: Rng>(t: &FieldTower, n: usize, k: usize, rng: &mut R) -> TgrsCode {
    let mut twist = FieldMatrix::zeros(t, k, n - k);
    for r in 0..k {
        for c in 0..n - k {
            if rng.random_bool(0.5) {
                twist.set(r, c, random_element(t, rng));
            }
        }
    }
    TgrsCode::new(t, k, random_points(t, n, rng), random_units(t, n, rng), twist).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn is_scalar_multiple(m: &FieldMatrix, target: &FieldMatrix) -> bool {
    let t = m.tower();
    let Some(pos) = target.entries().iter().position(|x| !x.is_zero()) else {
        return m.is_zero();
    };
    let s = t.div(m.entries()[pos], target.entries()[pos]).unwrap();
    !s.is_zero() && *m == target.scale(s)
}

fn root_set_predicate() -> Check {
    let mut pairs = 0;
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let t = tower(p, e);
        let q = t.q() as u64;
        for a in t.elements() {
            for b in t.elements() {
                let scan: Vec<_> = t.elements().filter(|&x| t.pow(x, q) == t.add(t.mul(a, x), b)).collect();
                let predicted = t.pow(a, q + 1) == t.one() && t.add(t.pow(b, q), t.mul(t.pow(a, q), b)).is_zero();
                ensure(predicted == (scan.len() > 1), || format!("q = {q}: predicate wrong at ({a:?}, {b:?})"))?;
                if predicted {
                    ensure(scan.len() == q as usize, || format!("q = {q}: multi-root set of size {}", scan.len()))?;
                }
                let lib = affine_frobenius_roots(&t, a, b).map_err(|e| e.to_string())?.roots;
                ensure(lib == scan, || format!("q = {q}: root solver disagrees with scan"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn coset_partition() -> Check {
    let mut count = 0;
    for (p, e) in [(3, 1), (2, 2)] {
        let t = tower(p, e);
        let q = t.q() as usize;
        for a in t.units().filter(|&a| t.pow(a, q as u64 + 1) == t.one()) {
            let part = admissible_set_and_partition(&t, a).map_err(|e| e.to_string())?;
            ensure(part.admissible.len() == q, || format!("|A| = {}", part.admissible.len()))?;
            let mut union = Vec::new();
            for coset in part.cosets.values() {
                ensure(coset.len() == q, || format!("coset of size {}", coset.len()))?;
                union.extend(coset.iter().copied());
            }
            union.sort();
            let before = union.len();
            union.dedup();
            ensure(before == union.len(), || "cosets overlap".into())?;
            ensure(union == t.elements().collect::<Vec<_>>(), || "cosets miss part of the field".into())?;
            let kernel = &part.cosets[&t.zero()];
            for &x in kernel {
                for &y in kernel {
                    ensure(kernel.contains(&t.sub(x, y)), || "U^0 not closed under subtraction".into())?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} admissible a"))
}

fn ua_group_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let towers = [tower(3, 1), tower(5, 1), tower(2, 3)];
    for i in 0..200 {
        let t = &towers[i % 3];
        let k = rng.random_range(1..=8);
        let b = random_element(t, &mut rng);
        let prod = FieldMatrix::pascal_ua(t, k, b).mul(&FieldMatrix::pascal_ua(t, k, t.neg(b))).unwrap();
        ensure(prod == FieldMatrix::identity(t, k), || format!("sample {i}: UA(b) UA(-b) != I"))?;
    }
    Ok("200 samples".into())
}

fn parity_check_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let towers = [tower(3, 1), tower(2, 2), tower(5, 1)];
    for i in 0..100 {
        let t = &towers[i % 3];
        let n = rng.random_range(2..=8);
        let k = rng.random_range(1..n);
        let c = random_code(t, n, k, &mut rng);
        let (g, h) = (c.generator_matrix(), c.parity_check_matrix());
        ensure(g.mul(&h.transpose()).unwrap().is_zero(), || format!("code {i}: G H^T != 0"))?;
        ensure(codes_equal(h, &g.null_space()), || format!("code {i}: rowspace(H) != ker G"))?;
    }
    Ok("100 codes".into())
}

fn criterion_six_requests() -> Vec<(ConstructionRequest, &'static str)> {
    let with = |s, p, e, n: Option<usize>| {
        let mut r = ConstructionRequest::new(s, p, e);
        r.n = n;
        r
    };
    let f16 = tower(2, 2);
    let a5 = f16.units().find(|&a| f16.order(a) == Some(5)).unwrap();
    let f64 = tower(2, 3);
    let a9 = f64.units().find(|&a| f64.order(a) == Some(9)).unwrap();
    vec![
        (with(Scheme::I, 5, 1, Some(4)), "I q=5 n=4"),
        (ConstructionRequest { t: Some(3), ..with(Scheme::I, 13, 1, Some(4)) }, "I q=13 n=4"),
        (with(Scheme::II, 2, 3, None), "II q=8"),
        (ConstructionRequest { a: Some(f64.coeffs(a9)), ..with(Scheme::II, 2, 3, None) }, "II q=8 a^9=1"),
        (with(Scheme::II, 2, 2, None), "II q=4"),
        (ConstructionRequest { a: Some(f16.coeffs(a5)), ..with(Scheme::II, 2, 2, None) }, "II q=4 a^5=1"),
        (with(Scheme::III, 3, 2, None), "III q=9"),
        (with(Scheme::IV, 3, 1, None), "IV q=3"),
        (with(Scheme::IV, 5, 1, None), "IV q=5"),
        (with(Scheme::V, 5, 1, Some(4)), "V q=5 n=4"),
        (with(Scheme::V, 3, 2, Some(8)), "V q=9 n=8"),
    ]
}

fn constructed_codes() -> Result<Vec<(ConstructionResult, ConstructionRequest, &'static str)>, String> {
    criterion_six_requests()
        .into_iter()
        .map(|(r, name)| construct(&r).map(|res| (res, r, name)).map_err(|e| format!("{name}: {e}")))
        .collect()
}

fn three_way(code: &TgrsCode) -> Result<bool, String> {
    let gram = is_hermitian_self_dual(code).map_err(|e| e.to_string())?.self_dual;
    let p = hermitian_certificate_p(code).map_err(|e| e.to_string())?.is_some();
    let spaces = code.dual_spaces().map_err(|e| e.to_string())?;
    let rref = codes_equal(&spaces.code_pow_q, &spaces.euclidean_dual);
    ensure(gram == p && p == rref, || format!("gram {gram}, P {p}, rref {rref}"))?;
    Ok(gram)
}

fn hermitian_equivalence() -> Check {
    let mut positive = 0;
    for (r, _, name) in constructed_codes()? {
        positive += three_way(&r.code).map_err(|e| format!("{name}: {e}"))? as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let towers = [tower(2, 1), tower(3, 1), tower(2, 2), tower(5, 1)];
    for i in 0..100 {
        let t = &towers[i % 4];
        let k = rng.random_range(1..=(t.size() as usize / 2).min(4));
        positive += three_way(&random_code(t, 2 * k, k, &mut rng)).map_err(|e| format!("random {i}: {e}"))? as usize;
    }
    Ok(format!("111 codes, {positive} self-dual"))
}

fn constructions_certify() -> Check {
    let mut n = 0;
    for (r, req, name) in constructed_codes()? {
        ensure(r.certificate.self_dual, || format!("{name}: not certified"))?;
        let t = r.code.tower();
        let k = r.code.k();
        let p = r.certificate.p_matrix.as_ref().ok_or(format!("{name}: no P"))?;
        let expected = match req.scheme {
            Scheme::I => Some(FieldMatrix::identity(t, k)),
            Scheme::II => {
                let a = req.a.as_ref().map(|c| t.element(c).unwrap()).unwrap_or(t.one());
                Some(FieldMatrix::diag(t, &(0..k).map(|i| t.pow(a, i as u64)).collect::<Vec<_>>()))
            }
            _ => None,
        };
        if let Some(form) = expected {
            ensure(is_scalar_multiple(p, &form), || format!("{name}: P is not a multiple of the expected form"))?;
        }
        n += 1;
    }
    Ok(format!("{n} parameter sets"))
}

fn scheme_five_mds() -> Check {
    let small = construct(&ConstructionRequest::new(Scheme::V, 5, 1).with_n(4)).map_err(|e| e.to_string())?;
    let words = small.code.tower().size() as u64;
    let d = small.code.min_distance(words * words);
    ensure(d == Distance::Exact(3), || format!("[4,2] over F_25 has distance {d:?}"))?;
    let big = construct(&ConstructionRequest::new(Scheme::V, 3, 2).with_n(8)).map_err(|e| e.to_string())?;
    let crit = is_mds(&big.code, MdsMethod::Criterion).map_err(|e| e.to_string())?;
    let minors = is_mds(&big.code, MdsMethod::Minors).map_err(|e| e.to_string())?;
    ensure(crit.is_mds && minors.is_mds, || "[8,4] over F_81 not MDS".into())?;
    ensure(big.certificate.self_dual, || "[8,4] not self-dual".into())?;
    Ok(format!("d = 3 over {} nonzero words; 70 subsets", words * words - 1))
}

fn mds_triple_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let towers = [tower(2, 1), tower(3, 1), tower(2, 2), tower(5, 1)];
    let mut exhaustive = 0;
    let mut verdicts = [0usize; 2];
    for i in 0..200 {
        let t = &towers[i % 4];
        let n = rng.random_range(4..=8.min(t.size() as usize));
        let k = rng.random_range(3..n);
        let c = random_code(t, n, k, &mut rng);
        let crit = is_mds(&c, MdsMethod::Criterion).map_err(|e| e.to_string())?.is_mds;
        let minors = is_mds(&c, MdsMethod::Minors).map_err(|e| e.to_string())?.is_mds;
        ensure(crit == minors, || format!("code {i}: criterion {crit}, minors {minors}"))?;
        match is_mds_capped(&c, MdsMethod::Exhaustive, tgrs_core::code::DEFAULT_DISTANCE_CAP) {
            Ok(ex) => {
                ensure(ex.is_mds == crit, || format!("code {i}: exhaustive {}", ex.is_mds))?;
                exhaustive += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
        verdicts[crit as usize] += 1;
    }
    Ok(format!("200 codes ({} MDS, {} not), {exhaustive} with exhaustive distance", verdicts[1], verdicts[0]))
}

fn grs_degeneration() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let towers = [tower(3, 1), tower(2, 2), tower(5, 1)];
    for i in 0..50 {
        let t = &towers[i % 3];
        let n = rng.random_range(2..=8);
        let k = rng.random_range(1..n);
        let c = TgrsCode::grs(t, k, random_points(t, n, &mut rng), random_units(t, n, &mut rng)).unwrap();
        for s in subsets(n, k) {
            let m = m_determinant(&c, &s).map_err(|e| e.to_string())?;
            ensure(m == t.one(), || format!("GRS {i}: M != 1 on {s:?}"))?;
        }
        ensure(is_mds(&c, MdsMethod::Minors).map_err(|e| e.to_string())?.is_mds, || format!("GRS {i} not MDS"))?;
        if k >= 3 {
            ensure(is_mds(&c, MdsMethod::Criterion).map_err(|e| e.to_string())?.is_mds, || format!("GRS {i}"))?;
        }
    }
    Ok("50 codes".into())
}

fn serialization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let towers = [tower(2, 1), tower(3, 1), tower(2, 2), tower(5, 1), tower(3, 2)];
    for i in 0..100 {
        let t = &towers[i % towers.len()];
        let n = rng.random_range(2..=8.min(t.size() as usize));
        let k = rng.random_range(1..n);
        let c = random_code(t, n, k, &mut rng);
        let text = CodeDescriptor::from_code(&c).to_json();
        let back = CodeDescriptor::from_json(&text).map_err(|e| e.to_string())?;
        ensure(back.to_json() == text, || format!("descriptor {i} changed on round trip"))?;
        ensure(back.to_code().map_err(|e| e.to_string())? == c, || format!("descriptor {i} decodes differently"))?;
    }
    let cfg = SearchConfig {
        ps: vec![2, 3, 5],
        es: vec![1, 2],
        schemes: Scheme::ALL.to_vec(),
        limit: None,
        seed: 0,
        distance_cap: 1_000_000,
        timing: false,
    };
    let first = run_search(&cfg).map_err(|e| e.to_string())?;
    let second = run_search(&cfg).map_err(|e| e.to_string())?;
    let csv = |r| to_csv(r, false).map_err(|e: Error| e.to_string());
    ensure(csv(&first)? == csv(&second)?, || "CSV catalogs differ".into())?;
    ensure(to_json(&first) == to_json(&second), || "JSON catalogs differ".into())?;
    Ok(format!("100 descriptors; {} catalog rows reproduced", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("root-set predicate", root_set_predicate, Some(1)),
        ("coset partition", coset_partition, Some(1)),
        ("UA group law", ua_group_law, Some(1)),
        ("parity-check identity", parity_check_identity, Some(5)),
        ("Hermitian criterion equivalence", hermitian_equivalence, Some(10)),
        ("constructions certify", constructions_certify, Some(30)),
        ("scheme V MDS", scheme_five_mds, Some(60)),
        ("MDS triple agreement", mds_triple_agreement, Some(300)),
        ("GRS degeneration", grs_degeneration, Some(5)),
        ("serialization and determinism", serialization, None),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let late = limit.is_some_and(|s| took > Duration::from_secs(s));
        let budget = limit.map_or("no limit".to_string(), |s| format!("limit {s} s"));
        let (tag, detail) = match (&result, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over time")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {tag} {name}: {detail} ({:.3} s, {budget})", i + 1, took.as_secs_f64());
    }
    if failures == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
