use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yangbax::fixtures::random_skew;
use yangbax::perm::{block_expand, Perm};
use yangbax::tensor::{words, GradedTensor, TensorMap, Word};
use yangbax::twisted::{check_twisted_jacobi, check_twisted_skew, jacobi_degree_one, GeneratorBracket};
use yangbax::ybe;

// Independent evaluator: Leibniz in the first slot, skew-symmetry to move a
// product out of the second slot. Only valid for skew r.
fn recursive(r: &TensorMap, lhs: &[usize], rhs: &[usize]) -> GradedTensor {
    if lhs.len() > 1 {
        let (u, rest) = (&lhs[..1], &lhs[1..]);
        let a = GradedTensor::basis(u.to_vec()).tensor(&recursive(r, rest, rhs));
        let b = GradedTensor::basis(rest.to_vec()).tensor(&recursive(r, u, rhs));
        let p = block_expand(&Perm::one_line(&[2, 1, 3]).unwrap(), &[rest.len(), 1, rhs.len()]).unwrap();
        return a.add(&b.permute(&p).unwrap());
    }
    if rhs.len() > 1 {
        let flipped = recursive(r, rhs, lhs);
        let p = block_expand(&Perm::one_line(&[2, 1]).unwrap(), &[rhs.len(), 1]).unwrap();
        return flipped.permute(&p).unwrap().scale(&(-yangbax::scalar::q(1)));
    }
    r.column(&[lhs[0], rhs[0]])
}

// Sum of r^{i, m+j} applied to v (x) w.
fn component_sum(r: &TensorMap, lhs: &[usize], rhs: &[usize]) -> GradedTensor {
    let (m, n) = (lhs.len(), rhs.len());
    let x = GradedTensor::basis([lhs, rhs].concat());
    let mut out = GradedTensor::zero();
    for i in 1..=m {
        for j in 1..=n {
            out.add_assign(&r.embed_components(i, m + j, m + n).unwrap().apply(&x).unwrap());
        }
    }
    out
}

fn pairs(dim: usize, max_total: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for a in 1..max_total {
        for b in 1..=max_total - a {
            for u in words(dim, a) {
                for v in words(dim, b) {
                    out.push((u.clone(), v));
                }
            }
        }
    }
    out
}

#[test]
fn extension_agrees_with_independent_evaluators() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let r = random_skew(&mut rng, 2, 0.5);
        let b = GeneratorBracket::from_r(&r).unwrap();
        for (u, v) in pairs(2, 4) {
            let got = b.extend_words(&u, &v, 4).unwrap();
            assert_eq!(got, recursive(&r, &u, &v), "{u:?} {v:?}");
            assert_eq!(got, component_sum(&r, &u, &v), "{u:?} {v:?}");
        }
    }
}

#[test]
fn extension_of_any_r_matches_component_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let r = yangbax::fixtures::random_map(&mut rng, 2, 2, 0.6);
    let b = GeneratorBracket::from_r(&r).unwrap();
    for (u, v) in pairs(2, 4) {
        assert_eq!(b.extend_words(&u, &v, 4).unwrap(), component_sum(&r, &u, &v));
    }
}

#[test]
fn non_skew_fails_at_lowest_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let r = yangbax::fixtures::random_map(&mut rng, 2, 2, 0.6);
    assert!(!ybe::is_skew(&r).unwrap());
    let rep = check_twisted_skew(&GeneratorBracket::from_r(&r).unwrap(), 3).unwrap();
    let (args, _) = rep.violation.expect("violation");
    assert!(args.iter().all(|w| w.len() == 1));
}

#[test]
fn skew_r_gives_skew_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..4 {
        let r = random_skew(&mut rng, 2, 0.5);
        assert!(check_twisted_skew(&GeneratorBracket::from_r(&r).unwrap(), 4).unwrap().passed());
    }
}

#[test]
fn zero_bracket_passes() {
    let b = GeneratorBracket::from_r(&TensorMap::zero(2, 2, 2)).unwrap();
    assert!(check_twisted_jacobi(&b, 4).unwrap().passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn degree_one_jacobiator_is_cybe(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_skew(&mut rng, dim, 0.4);
        let j = jacobi_degree_one(&GeneratorBracket::from_r(&r).unwrap()).unwrap();
        let c = ybe::cybe_map(&r).unwrap();
        prop_assert_eq!(j.is_zero(), c.is_zero());
        prop_assert_eq!(j, c);
    }
}
