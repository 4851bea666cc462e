mod common;

use common::{ints, random_code, random_element, random_unit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tgrs_core::duality::{hermitian_certificate_p, is_euclidean_self_dual, is_hermitian_self_dual, FailureReason};
use tgrs_core::matrix::codes_equal;
use tgrs_core::{FieldMatrix, FieldTower, TgrsCode};

#[test]
fn two_point_hermitian_example() {
    let t = FieldTower::with_modulus(3, 1, vec![1, 0, 1]).unwrap();
    let i = t.element(&[0, 1]).unwrap();
    let code = TgrsCode::new(&t, 1, ints(&t, &[0, 1]), ints(&t, &[1, 1]), FieldMatrix::from_rows(&t, &[vec![i]]).unwrap())
        .unwrap();
    assert_eq!(code.generator_matrix().row(0), &[t.one(), t.element(&[1, 1]).unwrap()][..]);
    let cert = is_hermitian_self_dual(&code).unwrap();
    assert!(cert.self_dual && cert.p_matrix.is_some());
}

#[test]
fn odd_length_fails_on_dimension() {
    let t = FieldTower::hermitian(3, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = random_code(&t, 5, 2, &mut rng);
    let cert = is_hermitian_self_dual(&c).unwrap();
    assert!(!cert.self_dual);
    assert_eq!(cert.reason, Some(FailureReason::Dimension));
    assert!(hermitian_certificate_p(&c).is_err());
}

#[test]
fn euclidean_examples() {
    let t = FieldTower::prime_power(5, 1).unwrap();
    let tw = FieldMatrix::from_rows(&t, &[ints(&t, &[1])]).unwrap();
    let c = TgrsCode::new(&t, 1, ints(&t, &[0, 1]), ints(&t, &[1, 1]), tw).unwrap();
    assert_eq!(c.generator_matrix().row(0), &ints(&t, &[1, 2])[..]);
    assert!(is_euclidean_self_dual(&c).unwrap().self_dual);
    let g = TgrsCode::grs(&t, 1, ints(&t, &[0, 1]), ints(&t, &[1, 1])).unwrap();
    let cert = is_euclidean_self_dual(&g).unwrap();
    assert!(!cert.self_dual);
    assert_eq!(cert.reason, Some(FailureReason::NonzeroGram));
    assert_eq!(cert.gram.get(0, 0), t.from_int(2));
}

#[test]
fn non_self_dual_grs_has_no_certificate() {
    let t = FieldTower::hermitian(3, 1).unwrap();
    let alpha: Vec<_> = t.elements().take(4).collect();
    let g = TgrsCode::grs(&t, 2, alpha, vec![t.one(); 4]).unwrap();
    let cert = is_hermitian_self_dual(&g).unwrap();
    assert!(!cert.self_dual && !cert.gram.is_zero());
    assert!(hermitian_certificate_p(&g).unwrap().is_none());
}

/// Gram test, P identity and row-space equality on random [2k, k] codes,
/// with a share of subfield-scaled GRS codes so both verdicts occur.
#[test]
fn three_deciders_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen = [0usize; 2];
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let t = FieldTower::hermitian(p, e).unwrap();
        for _ in 0..60 {
            let k = rng.random_range(1..=((t.size() as usize) / 2).min(3));
            let code = random_code(&t, 2 * k, k, &mut rng);
            let gram = is_hermitian_self_dual(&code).unwrap().self_dual;
            let p = hermitian_certificate_p(&code).unwrap();
            let spaces = code.dual_spaces().unwrap();
            assert_eq!(gram, p.is_some());
            assert_eq!(gram, codes_equal(&spaces.code_pow_q, &spaces.euclidean_dual));
            seen[gram as usize] += 1;
        }
        // k = 1 codes [a, b] are self-dual exactly when N(a) + N(b) = 0
        for _ in 0..30 {
            let x = random_unit(&t, &mut rng);
            let y = random_unit(&t, &mut rng);
            let alpha = vec![random_element(&t, &mut rng), random_element(&t, &mut rng)];
            if alpha[0] == alpha[1] {
                continue;
            }
            let code = TgrsCode::grs(&t, 1, alpha, vec![x, y]).unwrap();
            let predicted = t.add(t.norm(x).unwrap(), t.norm(y).unwrap()).is_zero();
            assert_eq!(is_hermitian_self_dual(&code).unwrap().self_dual, predicted);
            assert_eq!(hermitian_certificate_p(&code).unwrap().is_some(), predicted);
            seen[predicted as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn subfield_codes_have_matching_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut hits = 0;
    for p in [3u32, 5, 7] {
        let small = FieldTower::prime_power(p, 1).unwrap();
        let big = FieldTower::hermitian(p, 1).unwrap();
        for _ in 0..200 {
            let k = rng.random_range(1..=(p as usize / 2).min(2));
            let n = 2 * k;
            let idx = rand::seq::index::sample(&mut rng, p as usize, n).into_vec();
            let alpha: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
            let v: Vec<i64> = (0..n).map(|_| rng.random_range(1..p as i64)).collect();
            let tw: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.random_range(0..p as i64)).collect()).collect();
            let build = |t: &FieldTower| {
                let rows: Vec<_> = tw.iter().map(|r| ints(t, r)).collect();
                TgrsCode::new(t, k, ints(t, &alpha), ints(t, &v), FieldMatrix::from_rows(t, &rows).unwrap()).unwrap()
            };
            let e_small = is_euclidean_self_dual(&build(&small)).unwrap().self_dual;
            let h_big = is_hermitian_self_dual(&build(&big)).unwrap().self_dual;
            let e_big = is_euclidean_self_dual(&build(&big)).unwrap().self_dual;
            assert_eq!(e_small, h_big);
            assert_eq!(e_big, h_big);
            hits += e_small as usize;
        }
    }
    assert!(hits > 0);
}
