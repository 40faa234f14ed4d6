use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yangbax::algebra::TruncatedAlgebra;
use yangbax::double::{one_variable_solution, DoubleBracket};
use yangbax::fixtures::{random_map, random_skew};
use yangbax::infty::*;
use yangbax::linfty::Conventions;
use yangbax::scalar::{q, Q};
use yangbax::tensor::{words, GradedTensor, TensorMap};
use yangbax::ybe::{aybe_map, aybe_prime_map, cybe_map};

/// `gl_2^{(x)n} -> End(V^{(x)n})`, `e_ab` at index `2a + b`.
fn as_operator(t: &GradedTensor, n: usize) -> TensorMap {
    let entries = t.terms().map(|(w, c)| {
        let out: Vec<usize> = w.iter().map(|x| x / 2).collect();
        let inp: Vec<usize> = w.iter().map(|x| x % 2).collect();
        (out, inp, c.clone())
    });
    TensorMap::from_entries(2, n, n, entries).unwrap()
}

fn from_operator(r: &TensorMap) -> GradedTensor {
    GradedTensor::from_terms(r.entries().map(|(o, i, c)| (vec![2 * o[0] + i[0], 2 * o[1] + i[1]], c.clone())))
}

fn seeded_map(seed: u64, skew: bool) -> TensorMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if skew {
        random_skew(&mut rng, 2, 0.5)
    } else {
        random_map(&mut rng, 2, 2, 0.4)
    }
}

#[test]
fn matrix_algebras() {
    let m2 = StructureConstants::matrix_algebra(2);
    assert_eq!(m2.associativity_violation(), None);
    assert!(m2.lie_violation().is_some());
    assert_eq!(m2.commutator().lie_violation(), None);
    assert!(StructureConstants::new(vec!["a".into()], vec![1], &[(0, 0, 0, q(1))]).is_err());
}

#[test]
fn degree_constraint_on_rn() {
    let d = vec![0, 0, 0, 0];
    let r3 = GradedTensor::basis(vec![0, 1, 2]);
    assert!(RnFamily::new(&d, BTreeMap::from([(3, r3.clone())])).is_err());
    let graded = vec![0, -1];
    assert!(RnFamily::new(&graded, BTreeMap::from([(3, GradedTensor::basis(vec![0, 0, 1]))])).is_ok());
}

#[test]
fn placed_brackets_match_operators() {
    let g = StructureConstants::matrix_algebra(2).commutator();
    let m = StructureConstants::matrix_algebra(2);
    for seed in 0..20 {
        let r = seeded_map(seed, seed % 2 == 0);
        let t = from_operator(&r);
        assert_eq!(as_operator(&cybe_lie(&g, &t), 3), cybe_map(&r).unwrap());
        assert_eq!(as_operator(&aybe_assoc(&m, &t), 3), aybe_map(&r).unwrap());
        assert_eq!(as_operator(&aybe_prime_assoc(&m, &t), 3), aybe_prime_map(&r).unwrap());
    }
}

#[test]
fn cybe_infty_readings_agree_and_reduce() {
    let g = StructureConstants::matrix_algebra(2).commutator();
    for seed in 0..10 {
        let op = seeded_map(seed, seed % 2 == 0);
        let fam = RnFamily::only_r2(g.degrees(), from_operator(&op)).unwrap();
        let rep = cybe_infty_residual(&g, &fam, 3).unwrap();
        assert!(rep.readings_agree());
        assert!(rep.literal_dropped > 0);
        // [r12, r13] and [r13, r12] cancel, leaving [r23, r21]
        let expected = op.at(2, 3, 3).unwrap().commutator(&op.at(2, 1, 3).unwrap()).unwrap();
        assert_eq!(as_operator(&rep.default, 3), expected, "seed {seed}");
        assert_eq!(rep.cybe_r2.map(|c| as_operator(&c, 3)), Some(cybe_map(&op).unwrap()));
    }
}

#[test]
fn cybe_infty_needs_lie() {
    let m = StructureConstants::matrix_algebra(2);
    let fam = RnFamily::only_r2(m.degrees(), GradedTensor::zero()).unwrap();
    assert!(cybe_infty_residual(&m, &fam, 3).is_err());
}

#[test]
fn aybe_infty_scalar_oracle() {
    let k = StructureConstants::scalars();
    for c in -3..=3 {
        let fam = RnFamily::only_r2(k.degrees(), GradedTensor::basis(vec![0, 0]).scale(&q(c))).unwrap();
        let rep = aybe_infty_residual(&k, &fam, 3).unwrap();
        assert_eq!(rep.residual, GradedTensor::basis(vec![0, 0, 0]).scale(&q(3 * c * c)));
    }
}

#[test]
fn aybe_infty_is_a_cyclic_sum() {
    let m = StructureConstants::matrix_algebra(2);
    for seed in 0..10 {
        let r = seeded_map(seed, false);
        let fam = RnFamily::only_r2(m.degrees(), from_operator(&r)).unwrap();
        let rep = aybe_infty_residual(&m, &fam, 3).unwrap();
        // r12 r13 + r23 r21 + r31 r32 as operators
        let c = yangbax::perm::Perm::rotation(3, 1);
        let base = r.at(1, 2, 3).unwrap().compose(&r.at(1, 3, 3).unwrap()).unwrap();
        let mut expected = base.clone();
        let mut rotated = base;
        for _ in 0..2 {
            rotated = rotated.conjugate(&c).unwrap();
            expected = expected.add(&rotated).unwrap();
        }
        assert_eq!(as_operator(&rep.residual, 3), expected, "seed {seed}");
    }
}

#[test]
fn aybe_infty_needs_associativity() {
    let g = StructureConstants::matrix_algebra(2).commutator();
    let fam = RnFamily::only_r2(g.degrees(), GradedTensor::zero()).unwrap();
    assert!(aybe_infty_residual(&g, &fam, 3).is_err());
}

#[test]
fn jacobi_infty_reduces_to_double_jacobi() {
    for seed in 0..10 {
        let r = seeded_map(seed, seed % 2 == 0);
        let db = DoubleBracket::from_r(&r).unwrap();
        let fam = DoubleFamily::from_double_bracket(&db, 2);
        for w in words(2, 3) {
            let got = jacobi_infty_at(&fam, &w, Conventions::default()).unwrap();
            assert_eq!(got, db.dbjac_at(&w).unwrap(), "seed {seed} word {w:?}");
            assert_eq!(got, jacobi_infty_at(&fam, &w, Conventions::LITERAL).unwrap());
        }
    }
}

#[test]
fn double_poisson_bracket_passes() {
    let alg = TruncatedAlgebra::truncated_polynomial(4).unwrap();
    let db = one_variable_solution(&alg, &q(1)).unwrap();
    let fam = DoubleFamily::from_double_bracket(&db, alg.dim());
    let rep = jacobi_infty_check(&alg, &fam, 3, Conventions::default(), DoubleLeibnizSign::default()).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(rep.leibniz_checked > 0);
    assert!(rep.residual_checked > 0);
}

#[test]
fn non_skew_bracket_is_rejected() {
    let alg = TruncatedAlgebra::truncated_polynomial(3).unwrap();
    let x = alg.generators()[0];
    let mut ops = BTreeMap::new();
    ops.insert(vec![x, x], GradedTensor::basis(vec![x, x]));
    let fam = DoubleFamily::new(vec![0; alg.dim()], ops).unwrap();
    let rep = jacobi_infty_check(&alg, &fam, 3, Conventions::default(), DoubleLeibnizSign::default()).unwrap();
    assert!(rep.skew_violation.is_some());
    assert!(!rep.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclic_sum_is_rotation_invariant(seed in 0u64..1000) {
        let m = StructureConstants::matrix_algebra(2);
        let fam = RnFamily::only_r2(m.degrees(), from_operator(&seeded_map(seed, false))).unwrap();
        let rep = aybe_infty_residual(&m, &fam, 3).unwrap();
        let c = yangbax::perm::Perm::rotation(3, 1);
        prop_assert_eq!(rep.residual.permute(&c).unwrap(), rep.residual.clone());
    }

    #[test]
    fn cybe_infty_is_linear_in_scaling(seed in 0u64..1000, s in -3i64..=3) {
        let g = StructureConstants::matrix_algebra(2).commutator();
        let r = from_operator(&seeded_map(seed, true));
        let a = cybe_infty_residual(&g, &RnFamily::only_r2(g.degrees(), r.clone()).unwrap(), 3).unwrap();
        let b = cybe_infty_residual(&g, &RnFamily::only_r2(g.degrees(), r.scale(&q(s))).unwrap(), 3).unwrap();
        prop_assert_eq!(b.default, a.default.scale(&Q::from_integer((s * s).into())));
    }
}
