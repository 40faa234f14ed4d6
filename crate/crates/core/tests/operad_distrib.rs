use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yangbax::linalg::{same_span, Echelon, SparseVec};
use yangbax::operad::*;
use yangbax::scalar::q;
use yangbax::{Perm, Q};

fn solves(sys: &ObstructionSystem, rel: &QuadraticRelation) -> bool {
    sys.violated(rel).is_empty()
}

#[test]
fn solution_spaces() {
    let none = full_constraint_system(Symmetry::None).unwrap();
    assert_eq!(none.nullity(), 1);
    let la = QuadraticRelation::lie_admissible();
    assert!(solves(&none, &la));
    assert!(same_span(&none.solution_basis, &[la.to_sparse()]));

    let skew = full_constraint_system(Symmetry::Skew).unwrap();
    assert!(same_span(&skew.solution_basis, &[QuadraticRelation::jacobi().to_sparse()]));
    assert_eq!(full_constraint_system(Symmetry::Symmetric).unwrap().nullity(), 0);
}

#[test]
fn classification_table() {
    let name = |sym, r: &[QuadraticRelation]| classify(sym, r).unwrap().to_string();
    assert_eq!(name(Symmetry::None, &[]), "operad: magma (free operad)");
    assert_eq!(name(Symmetry::None, &[QuadraticRelation::lie_admissible()]), "operad: Lie-admissible");
    assert_eq!(name(Symmetry::Skew, &[]), "operad: skew-symmetric magma");
    assert_eq!(name(Symmetry::Skew, &[QuadraticRelation::jacobi()]), "operad: Lie");
    assert_eq!(name(Symmetry::Symmetric, &[]), "operad: symmetric magma");
    let comm_assoc = QuadraticRelation::new(Symmetry::Symmetric, QuadraticRelation::associativity().coeffs).unwrap();
    assert!(matches!(classify(Symmetry::Symmetric, &[comm_assoc]).unwrap(), Classification::NotDistributive { .. }));
}

#[test]
fn associativity_witness() {
    match classify(Symmetry::None, &[QuadraticRelation::associativity()]).unwrap() {
        Classification::NotDistributive { constraint, value, .. } => {
            assert_eq!(constraint, "l[id,2] + l[(132),2] = 0");
            assert_eq!(value, q(-1));
        }
        other => panic!("unexpected {other}"),
    }
}

fn random_relation(rng: &mut ChaCha8Rng, sym: Symmetry, sys: &ObstructionSystem) -> QuadraticRelation {
    let n = sym.unknowns();
    let mut v: Vec<Q> = match rng.gen_range(0..3) {
        0 => (0..n).map(|_| q(rng.gen_range(-2..=2))).collect(),
        _ => {
            let mut v = vec![Q::zero(); n];
            for b in &sys.solution_basis {
                let c = q(rng.gen_range(-3..=3));
                for (k, x) in b {
                    v[*k] += x * &c;
                }
            }
            v
        }
    };
    if rng.gen_bool(0.3) {
        let k = rng.gen_range(0..n);
        v[k] += q(1);
    }
    QuadraticRelation::new(sym, v).unwrap()
}

#[test]
fn concrete_oracle_agrees_with_constraints() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sym in [Symmetry::None, Symmetry::Symmetric, Symmetry::Skew] {
        let sys = full_constraint_system(sym).unwrap();
        let (mut yes, mut no) = (0, 0);
        for _ in 0..60 {
            let rel = random_relation(&mut rng, sym, &sys);
            let predicted = solves(&sys, &rel);
            assert_eq!(symbolic_expand_oracle(&rel, &mut rng, 3), predicted, "{sym:?} {rel}");
            if predicted {
                yes += 1
            } else {
                no += 1
            }
        }
        assert!(no > 0);
        if sym != Symmetry::Symmetric {
            assert!(yes > 0);
        }
    }
}

#[test]
fn obstruction_is_fast() {
    let t = std::time::Instant::now();
    for sym in [Symmetry::None, Symmetry::Symmetric, Symmetry::Skew] {
        full_constraint_system(sym).unwrap();
    }
    assert!(t.elapsed().as_secs_f64() < 1.0);
}

fn rows(sys: &ObstructionSystem) -> Vec<SparseVec> {
    sys.constraints.iter().map(|c| c.row.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // relabelling maps the slot-1 conditions onto those of slot tau(1)
    #[test]
    fn relabelling_moves_slots(t in 0usize..6) {
        let tau = &Perm::all(3)[t];
        let one = leibniz_obstruction(Symmetry::None, 1).unwrap();
        let moved: Vec<SparseVec> = rows(&one).iter().map(|r| act_on_coordinates(tau, r)).collect();
        let target = leibniz_obstruction(Symmetry::None, tau.at(0) + 1).unwrap();
        prop_assert!(same_span(&moved, &rows(&target)));
    }

    #[test]
    fn solution_line_is_invariant(t in 0usize..6) {
        let tau = &Perm::all(3)[t];
        let sys = full_constraint_system(Symmetry::None).unwrap();
        let mut e = Echelon::new();
        e.insert(&sys.solution_basis[0]);
        prop_assert!(e.contains(&act_on_coordinates(tau, &sys.solution_basis[0])));
    }
}
