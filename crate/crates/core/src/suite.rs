//! The batch runner behind `yangbax suite`: the ten acceptance criteria as
//! report-producing checks.

use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::double::{
    almcybe_check, dbjac_to_aybe, double_lie_check, one_variable_family, one_variable_solution, DoubleBracket,
};
use crate::error::{Error, Result};
use crate::fixtures::{fixture_search, random_skew, FixtureKind};
use crate::frt::{diagonal_r, hr_graded_dimension, schur_weyl_decompose};
use crate::infty::{aybe_infty_residual, cybe_infty_residual, DoubleLeibnizSign, RnFamily, StructureConstants};
use crate::linfty::{extension_check, homotopy_fixture, CompositionSign, Conventions, LeibnizSign};
use crate::operad::{classify, full_constraint_system, Classification, QuadraticRelation, Symmetry};
use crate::report::{Check, Report, Verdict};
use crate::scalar::{q, Q};
use crate::tensor::{words, GradedTensor, TensorMap};
use crate::twisted::{jacobi_degree_one, poisson_correspondence, GeneratorBracket};
use crate::ybe;

pub const ALL_CRITERIA: [usize; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Which criteria to run and under which sign conventions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub criteria: Vec<usize>,
    pub conventions: Conventions,
    pub double_leibniz: DoubleLeibnizSign,
}

impl Default for JobSpec {
    fn default() -> Self {
        Self {
            criteria: ALL_CRITERIA.to_vec(),
            conventions: Conventions::default(),
            double_leibniz: DoubleLeibnizSign::default(),
        }
    }
}

impl JobSpec {
    pub fn with_criteria(criteria: Vec<usize>) -> Result<Self> {
        if let Some(c) = criteria.iter().find(|c| !(1..=10).contains(*c)) {
            return Err(Error::Input(format!("unknown criterion {c} (expected 1..=10)")));
        }
        Ok(Self { criteria, ..Self::default() })
    }
}

/// Convention flags recorded at the top of every report.
pub fn convention_flags(conv: Conventions, dl: DoubleLeibnizSign) -> Vec<(String, String)> {
    let leib = match conv.leibniz {
        LeibnizSign::Shifted => "shifted",
        LeibnizSign::Unshifted => "unshifted",
    };
    let comp = match conv.composition {
        CompositionSign::PowerIJ => "(-1)^(ij)",
        CompositionSign::PowerI => "(-1)^i",
    };
    let dl = match dl {
        DoubleLeibnizSign::ArityTimesDegree => "(-1)^(n|a''|)",
        DoubleLeibnizSign::Trivial => "+1",
    };
    [
        ("block-action", "letter in slot j moves to slot p(j)"),
        ("linfty-leibniz-sign", leib),
        ("linfty-composition-sign", comp),
        ("linfty-summation", "unshuffles Sh(i,j-1)"),
        ("shuffle-reading", "Sh(i,j-1) default; Sh(i,i+j-1) reported alongside"),
        ("double-leibniz-sign", dl),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

/// Runs the requested criteria (independently, in parallel) and assembles
/// the report in the requested order.
pub fn run_suite(spec: &JobSpec) -> Report {
    let mut report = Report::new("acceptance suite");
    report.conventions = convention_flags(spec.conventions, spec.double_leibniz);
    let checks: Vec<Check> = thread::scope(|s| {
        let handles: Vec<_> = spec.criteria.iter().map(|&c| s.spawn(move || criterion(c, spec))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    });
    for c in checks {
        report.push(c);
    }
    report
}

/// One criterion as a single check. Errors become failures.
pub fn criterion(n: usize, spec: &JobSpec) -> Check {
    let name = format!("criterion {n:>2}: {}", title(n));
    let out = match n {
        1 => cae_identity(),
        2 => twisted_poisson_roundtrip(),
        3 => double_lie_equivalence(),
        4 => almost_cybe(),
        5 => operad_classifier(),
        6 => linfty_extension(spec.conventions),
        7 => identity_schur_weyl(),
        8 => double_commutant(),
        9 => infty_evaluators(),
        10 => determinism(spec),
        _ => Err(Error::Input(format!("unknown criterion {n}"))),
    };
    match out {
        Ok((verdict, detail)) => Check { name, verdict, detail },
        Err(e) => Check::new(name, Verdict::Fail { witness: format!("error: {e}") }),
    }
}

pub fn title(n: usize) -> &'static str {
    match n {
        1 => "CYBE = AYBE - (132) AYBE (132) on random skew maps",
        2 => "skew CYBE solutions <-> twisted Poisson structures",
        3 => "double Lie <-> skew AYBE solutions",
        4 => "almost-CYBE identity on k[x]/(x^5)",
        5 => "distributivity classifier",
        6 => "super-Leibniz extension of an L-infinity fixture",
        7 => "Schur-Weyl decomposition for R = Id",
        8 => "double commutant",
        9 => "CYBE-infinity and AYBE-infinity evaluators",
        10 => "determinism",
        _ => "unknown",
    }
}

type Outcome = Result<(Verdict, Vec<String>)>;

fn fail(w: impl Into<String>) -> Verdict {
    Verdict::Fail { witness: w.into() }
}

const VALUES: [i64; 3] = [-1, 0, 1];

fn cae_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut detail = Vec::new();
    for dim in 1..=3 {
        let mut nonzero = 0;
        for k in 0..40 {
            let r = random_skew(&mut rng, dim, 0.4);
            if !r.is_zero() {
                nonzero += 1;
            }
            if !ybe::cae_identity_check(&r)? {
                return Ok((fail(format!("dim {dim}, sample {k}")), detail));
            }
        }
        detail.push(format!("dim {dim}: 40 samples ({nonzero} nonzero)"));
    }
    Ok((Verdict::Pass, detail))
}

fn twisted_poisson_roundtrip() -> Outcome {
    let sols = fixture_search(FixtureKind::SkewCybe, 2, &VALUES, None)?;
    let non = fixture_search(FixtureKind::SkewNonCybe, 2, &VALUES, None)?;
    let detail = vec![format!("skew CYBE solutions: {}", sols.len()), format!("skew non-solutions: {}", non.len())];
    for (k, r) in sols.iter().enumerate() {
        let rep = poisson_correspondence(r, 4)?;
        if rep.forward != Some(true) || rep.backward != Some(true) {
            return Ok((fail(format!("solution {k}: {}", rep.to_string().replace('\n', "; "))), detail));
        }
    }
    for (k, r) in non.iter().enumerate() {
        if jacobi_degree_one(&GeneratorBracket::from_r(r)?)?.is_zero() {
            return Ok((fail(format!("non-solution {k} has zero degree-(1,1,1) Jacobi residual")), detail));
        }
    }
    Ok((Verdict::Pass, detail))
}

/// Maps with one or two nonzero entries in `{-1, 1}`, most of them not skew.
fn sparse_maps_dim2() -> Vec<TensorMap> {
    let cells: Vec<_> =
        words(2, 2).into_iter().flat_map(|o| words(2, 2).into_iter().map(move |i| (o.clone(), i))).collect();
    let mut out = Vec::new();
    for (x, (o1, i1)) in cells.iter().enumerate() {
        for s1 in [-1, 1] {
            let mut r = TensorMap::zero(2, 2, 2);
            r.add_entry(o1.clone(), i1.clone(), &q(s1));
            out.push(r.clone());
            for (o2, i2) in &cells[x + 1..] {
                for s2 in [-1, 1] {
                    let mut r2 = r.clone();
                    r2.add_entry(o2.clone(), i2.clone(), &q(s2));
                    out.push(r2);
                }
            }
        }
    }
    out
}

fn double_lie_equivalence() -> Outcome {
    let mut skew = fixture_search(FixtureKind::SkewCybe, 2, &VALUES, None)?;
    skew.extend(fixture_search(FixtureKind::SkewNonCybe, 2, &VALUES, None)?);
    let others = sparse_maps_dim2();
    let mut lie = 0;
    for r in skew.iter().chain(&others) {
        let (s, j) = double_lie_check(r)?;
        let expected = ybe::is_skew(r)? && ybe::aybe_map(r)?.is_zero();
        if (s && j) != expected {
            return Ok((
                fail(format!("double Lie {} but skew AYBE solution {expected} for r = {r:?}", s && j)),
                vec![],
            ));
        }
        lie += usize::from(expected);
    }
    for (k, r) in skew.iter().enumerate() {
        if !dbjac_to_aybe(&DoubleBracket::from_r(r)?)?.equal {
            return Ok((fail(format!("transformed Jacobi residual differs from AYBE on skew map {k}")), vec![]));
        }
    }
    let detail = vec![
        format!("skew maps: {}, sparse maps: {}", skew.len(), others.len()),
        format!("double Lie brackets: {lie}"),
        format!("Jacobi-to-AYBE transformation exact on all {} skew maps", skew.len()),
    ];
    Ok((Verdict::Pass, detail))
}

fn almost_cybe() -> Outcome {
    let alg = crate::algebra::TruncatedAlgebra::truncated_polynomial(5)?;
    let family = one_variable_family(5, 2, &[q(-1), q(0), q(1)])?;
    let (mut poisson, mut hyp) = (0, 0);
    for (params, db) in &family {
        let rep = almcybe_check(db, &alg)?;
        if !rep.consistent() {
            return Ok((fail(format!("parameters {params:?}: {}", rep.to_string().replace('\n', "; "))), vec![]));
        }
        poisson += usize::from(rep.poisson_precondition());
        hyp += usize::from(rep.hypotheses_hold());
    }
    let mut detail = vec![
        format!("family members: {}", family.len()),
        format!("satisfying the Poisson rule: {poisson}"),
        format!("satisfying the Poisson rule with CYBE = 0: {hyp}"),
    ];
    if hyp == 0 {
        return Ok((fail("no family member satisfies the hypotheses"), detail));
    }
    for lam in [q(-2), q(0), q(1), Q::new(1.into(), 3.into())] {
        let db = one_variable_solution(&alg, &lam)?;
        if !ybe::aybe_map(db.table())?.is_zero() {
            return Ok((fail(format!("lambda = {lam}: AYBE nonzero")), detail));
        }
    }
    detail.push("lambda-solutions for lambda in {-2, 0, 1, 1/3}: AYBE = 0".into());
    Ok((Verdict::Pass, detail))
}

fn operad_classifier() -> Outcome {
    let none = full_constraint_system(Symmetry::None)?;
    let skew = full_constraint_system(Symmetry::Skew)?;
    let sym = full_constraint_system(Symmetry::Symmetric)?;
    let mut detail =
        vec![format!("nullity: none {}, skew {}, symmetric {}", none.nullity(), skew.nullity(), sym.nullity())];
    if (none.nullity(), skew.nullity(), sym.nullity()) != (1, 1, 0) {
        return Ok((fail("unexpected nullities"), detail));
    }
    if !none.violated(&QuadraticRelation::lie_admissible()).is_empty()
        || !skew.violated(&QuadraticRelation::jacobi()).is_empty()
    {
        return Ok((fail("solution lines are not the Lie-admissible and Jacobi relations"), detail));
    }
    match classify(Symmetry::None, &[QuadraticRelation::associativity()])? {
        Classification::NotDistributive { constraint, value, .. } => {
            detail.push(format!("associativity rejected: {constraint} evaluates to {value}"));
        }
        other => return Ok((fail(format!("associativity classified as {other}")), detail)),
    }
    Ok((Verdict::Pass, detail))
}

fn linfty_extension(conv: Conventions) -> Outcome {
    let fam = homotopy_fixture()?;
    let rep = extension_check(&fam, 3, conv)?;
    let cancel_ok = rep.cancellation.iter().all(|c| c.passed());
    let ok = rep.consistent() && rep.generators.passed() && rep.products.passed() && cancel_ok;
    let detail = vec![
        format!("generator tuples checked: {}", rep.generators.checked),
        format!("product tuples checked: {}", rep.products.checked),
        format!(
            "cancellation patterns: {} ({} cancel)",
            rep.cancellation.len(),
            rep.cancellation.iter().filter(|c| c.passed()).count()
        ),
    ];
    Ok((Verdict::from_bool(ok, || rep.to_string().replace('\n', "; ")), detail))
}

fn identity_schur_weyl() -> Outcome {
    let id = TensorMap::identity(2, 2);
    let rep = schur_weyl_decompose(&id, 3)?;
    let table: Vec<(String, u128, usize)> =
        rep.rows.iter().map(|r| (r.lambda.to_string(), r.rho_dim, r.comodule_dim)).collect();
    let expected = vec![("(3)".to_string(), 1, 4), ("(2,1)".to_string(), 2, 2), ("(1,1,1)".to_string(), 1, 0)];
    let mut detail: Vec<String> = rep.to_string().lines().map(str::to_string).collect();
    if table != expected || rep.total != 8 || !rep.passed() {
        return Ok((fail(format!("table {table:?}, total {}", rep.total)), detail));
    }
    for m in 1..=3 {
        let d = hr_graded_dimension(&id, m)?;
        detail.push(d.to_string().replace('\n', "; "));
        if !d.agree() {
            return Ok((fail(format!("oracles disagree at m = {m}")), detail));
        }
        if m == 2 && d.quotient != 10 {
            return Ok((fail(format!("m = 2 dimension {} (expected 10)", d.quotient)), detail));
        }
    }
    Ok((Verdict::Pass, detail))
}

fn double_commutant() -> Outcome {
    let scaled = diagonal_r(&[vec![q(1), q(2)], vec![Q::new(1.into(), 2.into()), q(-1)]])?;
    let mut detail = Vec::new();
    for (name, r) in [("Id", TensorMap::identity(2, 2)), ("diag(1, 2, 1/2, -1)", scaled)] {
        for m in 1..=3 {
            let rep = schur_weyl_decompose(&r, m)?;
            detail.push(format!(
                "R = {name}, m = {m}: span {} commutant {} double commutant {}",
                rep.sr_dim, rep.hr_dim, rep.double_commutant
            ));
            if !rep.double_commutant {
                return Ok((fail(format!("R = {name}, m = {m}")), detail));
            }
        }
    }
    Ok((Verdict::Pass, detail))
}

/// `r = e11 (x) e22 - e22 (x) e11 + e12 (x) e21` in `gl_2 (x) gl_2`.
fn fixed_r2() -> GradedTensor {
    GradedTensor::from_terms([(vec![0, 3], q(1)), (vec![3, 0], q(-1)), (vec![1, 2], q(1))])
}

pub fn infty_text() -> Result<String> {
    let m2 = StructureConstants::matrix_algebra(2);
    let g = m2.commutator();
    let r2 = fixed_r2();
    let cy = cybe_infty_residual(&g, &RnFamily::only_r2(g.degrees(), r2.clone())?, 3)?;
    let ay = aybe_infty_residual(&m2, &RnFamily::only_r2(m2.degrees(), r2)?, 3)?;
    Ok(format!("r_2 = 1*e11(x)e22 + -1*e22(x)e11 + 1*e12(x)e21\n[CYBE-infinity]\n{cy}\n[AYBE-infinity]\n{ay}"))
}

fn infty_evaluators() -> Outcome {
    let a = infty_text()?;
    let b = infty_text()?;
    let detail: Vec<String> = a.lines().map(str::to_string).collect();
    Ok((Verdict::from_bool(a == b, || "two evaluations differ".into()), detail))
}

fn determinism(spec: &JobSpec) -> Outcome {
    let inner = JobSpec { criteria: (1..=9).collect(), ..spec.clone() };
    let a = run_suite(&inner).to_string();
    let b = run_suite(&inner).to_string();
    let detail = vec![format!("criteria 1-9 run twice: {} bytes each", a.len())];
    Ok((Verdict::from_bool(a == b, || "reports differ".into()), detail))
}
