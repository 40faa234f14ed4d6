use proptest::prelude::*;
use yangbax::linfty::*;
use yangbax::perm::{shuffles, Perm};
use yangbax::scalar::q;

fn parity_oracle(d: &[Degree], sigma: &Perm) -> i32 {
    let mut e = 0;
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            if sigma.at(a) > sigma.at(b) {
                e += (d[a] + 1) * (d[b] + 1);
            }
        }
    }
    if e.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

fn degree_vectors(m: usize) -> Vec<Vec<Degree>> {
    (0..1u32 << m)
        .map(|bits| (0..m).map(|k| ((bits >> k) & 1) as Degree * if k % 2 == 0 { 1 } else { -1 }).collect())
        .collect()
}

fn gens(ks: &[usize]) -> Vec<Monomial> {
    ks.iter().map(|k| vec![Factor::Gen(*k)]).collect()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

#[test]
fn sign_odd_matches_parity_oracle() {
    for m in 0..=4 {
        for d in degree_vectors(m) {
            for sigma in Perm::all(m) {
                assert_eq!(sign_odd(&d, &sigma).unwrap(), parity_oracle(&d, &sigma));
            }
        }
        for sigma in Perm::all(m) {
            assert_eq!(sign_odd(&vec![1; m], &sigma).unwrap(), 1);
            assert_eq!(sign_odd(&vec![0; m], &sigma).unwrap(), sigma.sign());
        }
    }
}

#[test]
fn sign_odd_cocycle() {
    for m in 0..=3 {
        for d in degree_vectors(m) {
            for tau in Perm::all(m) {
                let mut moved = vec![0; m];
                for j in 0..m {
                    moved[tau.at(j)] = d[j];
                }
                for sigma in Perm::all(m) {
                    let lhs = sign_odd(&d, &sigma.compose(&tau)).unwrap();
                    let rhs = sign_odd(&moved, &sigma).unwrap() * sign_odd(&d, &tau).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn shuffle_counts() {
    for i in 0..=4 {
        for j in 0..=4 {
            let binom = factorial(i + j) / (factorial(i) * factorial(j));
            assert_eq!(shuffles(i, j).len() as i64, binom);
        }
    }
    assert_eq!(shuffles(0, 3), vec![Perm::identity(3)]);
    assert_eq!(shuffles(1, 1).len(), 2);
}

#[test]
fn full_sum_is_a_multiple_of_the_shuffle_sum() {
    let b = FormalBrackets { degrees: vec![0, 1, 0, 1], max_arity: 4 };
    let conv = Conventions::default();
    for args in [gens(&[0, 1, 2]), gens(&[0, 1, 2, 3]), gens(&[1, 3, 0]), gens(&[0, 2, 1, 3])] {
        let m = args.len();
        for i in 1..=m {
            let j = m + 1 - i;
            let sh = linfty_term(&b, &args, i, Summation::Shuffles, conv);
            let all = linfty_term(&b, &args, i, Summation::AllPermutations, conv);
            assert_eq!(all, sh.scale(&q(factorial(i) * factorial(j - 1))));
        }
    }
    let fam = homotopy_fixture().unwrap();
    for args in [gens(&[0, 1, 2]), gens(&[0, 0, 2]), gens(&[1, 2, 2])] {
        assert!(linfty_residual(&fam, &args, Summation::Shuffles, conv).unwrap().is_zero());
        for i in 1..=3 {
            let sh = linfty_term(&fam, &args, i, Summation::Shuffles, conv);
            let all = linfty_term(&fam, &args, i, Summation::AllPermutations, conv);
            assert_eq!(all, sh.scale(&q(factorial(i) * factorial(3 - i))));
        }
    }
}

#[test]
fn differential_must_square_to_zero() {
    let labels = vec!["x".to_string(), "t".to_string(), "s".to_string()];
    let fam = MultiBracketFamily::new(
        labels,
        vec![0, 1, 2],
        vec![(vec![0], Element::generator(1)), (vec![1], Element::generator(2))],
    )
    .unwrap();
    let out = check_axioms(&fam, &fam.monomials(1), 1, Summation::Shuffles, Conventions::default(), |_| true);
    let v = out.violation.expect("d(d x) = s");
    assert_eq!(v.args, gens(&[0]));
    // composition sign (-1)^{1 1}
    assert_eq!(v.residual, Element::generator(2).scale(&q(-1)));
}

#[test]
fn differential_on_powers() {
    let labels = vec!["x".to_string(), "t".to_string()];
    let fam = MultiBracketFamily::new(labels, vec![0, 1], vec![(vec![0], Element::generator(1))]).unwrap();
    let conv = Conventions::default();
    for k in 1..6usize {
        let xk: Monomial = vec![Factor::Gen(0); k];
        let mut expected: Monomial = vec![Factor::Gen(0); k - 1];
        expected.push(Factor::Gen(1));
        assert_eq!(bracket(&fam, &[xk], conv), Element::from_terms([(expected, q(k as i64))]));
    }
    // t t = 0 in the super-symmetric algebra
    let xt = vec![Factor::Gen(0), Factor::Gen(1)];
    assert!(bracket(&fam, &[xt], conv).is_zero());
}

#[test]
fn fixture_extends_under_default_signs() {
    let fam = homotopy_fixture().unwrap();
    let rep = extension_check(&fam, 3, Conventions::default()).unwrap();
    assert!(rep.generators.passed(), "{rep}");
    assert!(rep.products.passed(), "{rep}");
    assert!(rep.cancellation.iter().all(CancellationReport::passed));
    assert!(rep.consistent());
    assert!(rep.products.checked > rep.generators.checked);
    // the fixture is not a dg Lie algebra: {}_3 is needed
    let two = fam.entries().filter(|(t, _)| t.len() < 3).map(|(t, e)| (t.clone(), e.clone())).collect();
    let trimmed = MultiBracketFamily::new(fam.labels().to_vec(), fam.degrees().to_vec(), two).unwrap();
    assert!(!extension_check(&trimmed, 3, Conventions::default()).unwrap().generators.passed());
}

#[test]
fn literal_signs_do_not_cancel() {
    let fam = homotopy_fixture().unwrap();
    let rep = extension_check(&fam, 3, Conventions::LITERAL).unwrap();
    assert!(!rep.generators.passed());
    assert!(rep.cancellation.iter().any(|c| !c.passed()));
}

#[test]
fn zero_family_passes() {
    let fam = MultiBracketFamily::zero(vec!["a".into(), "b".into()], vec![0, 1]).unwrap();
    let rep = extension_check(&fam, 3, Conventions::default()).unwrap();
    assert!(rep.consistent());
    assert!(rep.generators.passed() && rep.products.passed());
}

#[test]
fn report_is_deterministic() {
    let fam = homotopy_fixture().unwrap();
    let a = extension_check(&fam, 3, Conventions::default()).unwrap().to_string();
    let b = extension_check(&fam, 3, Conventions::default()).unwrap().to_string();
    assert_eq!(a, b);
    assert!(a.contains("consistent: true"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formal_brackets_are_graded_skew(
        degrees in prop::collection::vec(-2i64..=2, 4),
        n in 1usize..=4,
        k in 0usize..24,
    ) {
        let b = FormalBrackets { degrees: degrees.clone(), max_arity: 4 };
        let args = gens(&(0..n).collect::<Vec<_>>());
        let sigma = Perm::all(n)[k % factorial(n) as usize].clone();
        let arranged: Vec<Monomial> = (0..n).map(|l| args[sigma.at(l)].clone()).collect();
        let d: Vec<Degree> = degrees[..n].to_vec();
        let lhs = bracket(&b, &arranged, Conventions::default());
        let rhs = bracket(&b, &args, Conventions::default()).scale(&q(rearrangement_sign(&d, &sigma) as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation_holds_for_every_pattern(bits in 0u32..64, m in 1usize..=4) {
        let degrees: Vec<Degree> = (0..=m).map(|k| ((bits >> k) & 1) as Degree).collect();
        let rep = formal_cancellation(&degrees, Conventions::default()).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
    }
}
