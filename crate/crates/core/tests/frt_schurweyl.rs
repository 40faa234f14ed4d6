use std::time::Instant;

use proptest::prelude::*;
use yangbax::frt::*;
use yangbax::linalg::rank_of;
use yangbax::perm::Perm;
use yangbax::scalar::{q, Q};
use yangbax::tensor::TensorMap;

fn identity_r(n: usize) -> TensorMap {
    TensorMap::identity(n, 2)
}

/// `q11 = q22 = 1`, `q12 = q21 = -1`.
fn signed_r() -> TensorMap {
    diagonal_r(&[vec![q(1), q(-1)], vec![q(-1), q(1)]]).unwrap()
}

/// `q12 = 2`, `q21 = 1/2`.
fn scaled_r() -> TensorMap {
    diagonal_r(&[vec![q(1), q(2)], vec![Q::new(1.into(), 2.into()), q(-1)]]).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn identity_gives_the_standard_action() {
    for m in 1..=3 {
        let act = r_permutation_action(&identity_r(2), m).unwrap();
        for p in Perm::all(m) {
            assert_eq!(act.of(&p), &TensorMap::permutation(2, &p));
        }
    }
    let act = r_permutation_action(&identity_r(2), 2).unwrap();
    assert_eq!(act.generators()[0], TensorMap::permutation(2, &Perm::transposition(2, 0, 1)));
}

#[test]
fn twisted_actions_are_homomorphisms() {
    for r in [signed_r(), scaled_r()] {
        let act = r_permutation_action(&r, 3).unwrap();
        for a in Perm::all(3) {
            for b in Perm::all(3) {
                assert_eq!(act.of(&a.compose(&b)), &act.of(&a).compose(act.of(&b)).unwrap());
            }
        }
    }
}

#[test]
fn hypotheses_are_enforced() {
    let mut bad = identity_r(2);
    bad.add_entry(vec![0, 1], vec![0, 1], &q(1));
    assert!(matches!(r_permutation_action(&bad, 2), Err(yangbax::error::Error::Precondition(_))));
    // braid generators exist regardless
    assert_eq!(braid_generators(&bad, 3).unwrap().len(), 2);
    assert!(coxeter_violation(&braid_generators(&bad, 3).unwrap(), 2, 3).unwrap().is_some());
}

#[test]
fn symmetrizer_examples() {
    let full = young_symmetrizer(&"(3)".parse().unwrap());
    for p in Perm::all(3) {
        assert_eq!(full.coeff(&p), q(1));
    }
    let hook: YoungDiagram = "(2,1)".parse().unwrap();
    let c = young_symmetrizer(&hook);
    assert_eq!(c.mul(&c).unwrap(), c.scale(&q(3)));
}

#[test]
fn quasi_idempotency_up_to_four() {
    for m in 1..=4 {
        let fact: i64 = (1..=m as i64).product();
        for lam in YoungDiagram::all(m) {
            let c = young_symmetrizer(&lam);
            let kappa = Q::new(fact.into(), (lam.hook_dimension() as i64).into());
            assert_eq!(c.mul(&c).unwrap(), c.scale(&kappa), "{lam}");
            assert_eq!(left_ideal_dimension(&c) as u128, lam.hook_dimension());
        }
    }
}

#[test]
fn image_dimensions() {
    let act = r_permutation_action(&identity_r(2), 2).unwrap();
    let sym = act.evaluate(&young_symmetrizer(&"(2)".parse().unwrap())).unwrap();
    let alt = act.evaluate(&young_symmetrizer(&"(1,1)".parse().unwrap())).unwrap();
    assert_eq!(image_dimension(&sym), 3);
    assert_eq!(image_dimension(&alt), 1);
    assert_eq!(image_dimension(&act.evaluate(&GroupAlgebraElement::identity(2)).unwrap()), 4);
    assert!(act.evaluate(&GroupAlgebraElement::identity(3)).is_err());
}

#[test]
fn commutant_examples() {
    assert_eq!(commutant(&[], 2, 2).unwrap().len(), 16);
    let act = r_permutation_action(&identity_r(2), 2).unwrap();
    assert_eq!(commutant(act.generators(), 2, 2).unwrap().len(), 10);
    // matrix units generate End: scalars only
    let units: Vec<TensorMap> = (0..2)
        .flat_map(|i| (0..2).map(move |j| TensorMap::from_entries(2, 1, 1, [(vec![i], vec![j], q(1))]).unwrap()))
        .collect();
    assert_eq!(commutant(&units, 2, 1).unwrap(), vec![TensorMap::identity(2, 1)]);
}

#[test]
fn hr_dimensions_identity() {
    for m in 1..=3 {
        let d = hr_graded_dimension(&identity_r(2), m).unwrap();
        assert!(d.agree(), "{d}");
        // symmetric powers of End(V)
        assert_eq!(d.quotient, binom(4 + m - 1, m));
    }
    assert_eq!(hr_graded_dimension(&identity_r(2), 2).unwrap().quotient, 10);
    assert_eq!(hr_graded_dimension(&identity_r(3), 1).unwrap().quotient, 9);
}

#[test]
fn hr_dimensions_twisted() {
    for r in [signed_r(), scaled_r()] {
        for m in 1..=3 {
            let d = hr_graded_dimension(&r, m).unwrap();
            assert!(d.agree(), "{d}");
        }
    }
}

#[test]
fn identity_decomposition() {
    let start = Instant::now();
    let rep = schur_weyl_decompose(&identity_r(2), 3).unwrap();
    let table: Vec<(String, u128, usize)> =
        rep.rows.iter().map(|r| (r.lambda.to_string(), r.rho_dim, r.comodule_dim)).collect();
    assert_eq!(table, [("(3)".to_string(), 1, 4), ("(2,1)".to_string(), 2, 2), ("(1,1,1)".to_string(), 1, 0)]);
    assert_eq!(rep.total, 8);
    assert!(rep.passed(), "{rep}");
    let two = schur_weyl_decompose(&identity_r(2), 2).unwrap();
    assert_eq!(two.rows.iter().map(|r| r.comodule_dim).collect::<Vec<_>>(), [3, 1]);
    let one = schur_weyl_decompose(&identity_r(2), 1).unwrap();
    assert_eq!(one.rows.len(), 1);
    assert_eq!(one.rows[0].comodule_dim, 2);
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn double_commutant_holds() {
    for r in [identity_r(2), signed_r(), scaled_r()] {
        for m in 1..=3 {
            let rep = schur_weyl_decompose(&r, m).unwrap();
            assert!(rep.double_commutant);
            assert!(rep.passed(), "{rep}");
        }
    }
}

#[test]
fn twisted_symmetric_squares() {
    // q12 = q21 = -1: the symmetric part is spanned by e11, e22, e12 - e21
    let rep = schur_weyl_decompose(&signed_r(), 2).unwrap();
    assert_eq!(rep.rows.iter().map(|r| r.comodule_dim).collect::<Vec<_>>(), [3, 1]);
    let act = r_permutation_action(&signed_r(), 2).unwrap();
    let sym = act.evaluate(&young_symmetrizer(&"(2)".parse().unwrap())).unwrap();
    assert_eq!(sym.get(&[0, 1], &[0, 1]), q(1));
    assert_eq!(sym.get(&[1, 0], &[0, 1]), q(-1));
    // a super line: q22 = q12 = q21 = -1 gives dimensions 2 and 2
    let odd = diagonal_r(&[vec![q(1), q(-1)], vec![q(-1), q(-1)]]).unwrap();
    let rep = schur_weyl_decompose(&odd, 2).unwrap();
    assert_eq!(rep.rows.iter().map(|r| r.comodule_dim).collect::<Vec<_>>(), [2, 2]);
}

#[test]
fn report_is_deterministic() {
    let a = schur_weyl_decompose(&signed_r(), 3).unwrap().to_string();
    let b = schur_weyl_decompose(&signed_r(), 3).unwrap().to_string();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn diagonal_unitary_solutions(a in -3i64..=3, b in 1i64..=3, c in -3i64..=3) {
        prop_assume!(a != 0 && c != 0);
        let r = diagonal_r(&[
            vec![Q::from_integer(a.signum().into()), q(b)],
            vec![Q::new(1.into(), b.into()), Q::from_integer(c.signum().into())],
        ]).unwrap();
        let d = hr_graded_dimension(&r, 2).unwrap();
        prop_assert!(d.agree());
        let rep = schur_weyl_decompose(&r, 2).unwrap();
        prop_assert!(rep.passed());
        let span = r_permutation_action(&r, 2).unwrap().span();
        prop_assert_eq!(rank_of(&span), span.len());
    }
}
