//! Double brackets `A (x) A -> A (x) A` on truncated algebras, the double
//! Poisson axioms, and their relation to the associative Yang-Baxter
//! equation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;

use crate::algebra::TruncatedAlgebra;
use crate::error::{input, Error, Result};
use crate::linalg::SparseVec;
use crate::perm::Perm;
use crate::scalar::Q;
use crate::tensor::{words, GradedTensor, TensorMap, Word};
use crate::ybe::{self, YbeReport};

/// A double bracket stored as its table on basis pairs. In window-mode
/// algebras some pairs have values beyond the truncation; those are marked
/// undefined and every evaluation touching them reports an overflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleBracket {
    table: TensorMap,
    cols: BTreeMap<(usize, usize), GradedTensor>,
    undefined: BTreeSet<(usize, usize)>,
}

impl DoubleBracket {
    /// The identification of `End(V (x) V)` with double brackets on `V`.
    pub fn from_r(r: &TensorMap) -> Result<Self> {
        if r.domain_degree() != 2 || r.codomain_degree() != 2 {
            return Err(Error::Degree { expected: 2, found: r.domain_degree() });
        }
        Ok(Self::build(r.clone(), BTreeSet::new()))
    }

    fn build(table: TensorMap, undefined: BTreeSet<(usize, usize)>) -> Self {
        let mut cols: BTreeMap<(usize, usize), GradedTensor> = BTreeMap::new();
        for (out, inp, c) in table.entries() {
            cols.entry((inp[0], inp[1])).or_default().add_term(out.clone(), c);
        }
        Self { table, cols, undefined }
    }

    /// The table as a map; meaningful only when every pair is defined.
    pub fn to_r(&self) -> TensorMap {
        self.table.clone()
    }

    pub fn table(&self) -> &TensorMap {
        &self.table
    }

    pub fn undefined(&self) -> &BTreeSet<(usize, usize)> {
        &self.undefined
    }

    pub fn is_total(&self) -> bool {
        self.undefined.is_empty()
    }

    pub fn value(&self, a: usize, b: usize) -> GradedTensor {
        self.cols.get(&(a, b)).cloned().unwrap_or_default()
    }

    fn try_value(&self, a: usize, b: usize) -> Result<GradedTensor> {
        if self.undefined.contains(&(a, b)) {
            return Err(Error::Truncation { degree: 0, cap: 0 });
        }
        Ok(self.value(a, b))
    }

    /// `r^{ij}` applied to `t` (0-based slots, any order).
    pub fn apply_slots(&self, t: &GradedTensor, i: usize, j: usize) -> Result<GradedTensor> {
        let mut out = GradedTensor::zero();
        for (w, c) in t.terms() {
            for (v, d) in self.try_value(w[i], w[j])?.terms() {
                let mut w2 = w.clone();
                w2[i] = v[0];
                w2[j] = v[1];
                out.add_term(w2, &(c * d));
            }
        }
        Ok(out)
    }

    /// Product `r^{s_1} r^{s_2} ... r^{s_k}` applied to `t` (rightmost first).
    pub fn apply_chain(&self, t: &GradedTensor, chain: &[(usize, usize)]) -> Result<GradedTensor> {
        let mut acc = t.clone();
        for &(i, j) in chain.iter().rev() {
            acc = self.apply_slots(&acc, i, j)?;
        }
        Ok(acc)
    }

    /// Signed sum of chains applied to a basis word.
    fn chains(&self, w: &[usize], terms: &[(i64, &[(usize, usize)])]) -> Result<GradedTensor> {
        let b = GradedTensor::basis(w.to_vec());
        let mut out = GradedTensor::zero();
        for (s, chain) in terms {
            out.axpy(&Q::from_integer((*s).into()), &self.apply_chain(&b, chain)?);
        }
        Ok(out)
    }

    /// `r12 r13 - r23 r12 + r13 r23` on a basis word.
    pub fn aybe_at(&self, w: &[usize]) -> Result<GradedTensor> {
        self.chains(w, &[(1, &[(0, 1), (0, 2)]), (-1, &[(1, 2), (0, 1)]), (1, &[(0, 2), (1, 2)])])
    }

    /// `r13 r12 - r12 r23 + r23 r13` on a basis word.
    pub fn aybe_prime_at(&self, w: &[usize]) -> Result<GradedTensor> {
        self.chains(w, &[(1, &[(0, 2), (0, 1)]), (-1, &[(0, 1), (1, 2)]), (1, &[(1, 2), (0, 2)])])
    }

    pub fn cybe_at(&self, w: &[usize]) -> Result<GradedTensor> {
        Ok(self.aybe_at(w)?.sub(&self.aybe_prime_at(w)?))
    }

    /// `r12 r23 + r23 r31 + r31 r12` on a basis word.
    pub fn dbjac_at(&self, w: &[usize]) -> Result<GradedTensor> {
        self.chains(w, &[(1, &[(0, 1), (1, 2)]), (1, &[(1, 2), (2, 0)]), (1, &[(2, 0), (0, 1)])])
    }

    /// Extends values on generator pairs to all basis pairs, using the
    /// outer bimodule rule in the second argument and the inner one in the
    /// first:
    /// `{{g1..gm, h1..hn}} = sum h_<j Y' g_>i (x) g_<i Y'' h_>j`, `Y = {{gi, hj}}`.
    /// Brackets involving idempotents vanish.
    pub fn from_generators(alg: &TruncatedAlgebra, values: &BTreeMap<(usize, usize), GradedTensor>) -> Result<Self> {
        let gens = alg.generators();
        for (&(a, b), v) in values {
            if !gens.contains(&a) || !gens.contains(&b) {
                return input(format!("({}, {}) is not a generator pair", alg.label(a), alg.label(b)));
            }
            if v.terms().any(|(w, _)| w.len() != 2 || w.iter().any(|&x| x >= alg.dim())) {
                return input("generator values must lie in A (x) A");
            }
        }
        let n = alg.dim();
        let mut table = TensorMap::zero(n, 2, 2);
        let mut undefined = BTreeSet::new();
        for p in 0..n {
            for q in 0..n {
                let (fp, fq) = (alg.factors(p), alg.factors(q));
                if fp.is_empty() || fq.is_empty() {
                    continue;
                }
                match extend_pair(alg, values, fp, fq) {
                    Ok(acc) => {
                        for (w, c) in acc.terms() {
                            table.add_entry(w.clone(), vec![p, q], c);
                        }
                    }
                    Err(Error::Truncation { .. }) => {
                        undefined.insert((p, q));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(Self::build(table, undefined))
    }
}

fn extend_pair(
    alg: &TruncatedAlgebra,
    values: &BTreeMap<(usize, usize), GradedTensor>,
    fp: &[usize],
    fq: &[usize],
) -> Result<GradedTensor> {
    let mut acc = GradedTensor::zero();
    for i in 0..fp.len() {
        for j in 0..fq.len() {
            let Some(y) = values.get(&(fp[i], fq[j])) else { continue };
            let hl = alg.mul_word(&fq[..j])?;
            let gr = alg.mul_word(&fp[i + 1..])?;
            let gl = alg.mul_word(&fp[..i])?;
            let hr = alg.mul_word(&fq[j + 1..])?;
            for (w, c) in y.terms() {
                let left = alg.mul(&alg.mul(&hl, &alg.basis_vec(w[0]))?, &gr)?;
                let right = alg.mul(&alg.mul(&gl, &alg.basis_vec(w[1]))?, &hr)?;
                acc.axpy(c, &outer(&left, &right));
            }
        }
    }
    Ok(acc)
}

fn outer(x: &SparseVec, y: &SparseVec) -> GradedTensor {
    let mut out = GradedTensor::zero();
    for (i, a) in x {
        for (j, b) in y {
            out.add_term(vec![*i, *j], &(a * b));
        }
    }
    out
}

/// Multiplies slot `slot` of every term of `t` by `x` on the left (or right).
pub fn slot_mul(
    alg: &TruncatedAlgebra,
    t: &GradedTensor,
    slot: usize,
    x: &SparseVec,
    left: bool,
) -> Result<GradedTensor> {
    let mut out = GradedTensor::zero();
    for (w, c) in t.terms() {
        let y = alg.basis_vec(w[slot]);
        let prod = if left { alg.mul(x, &y)? } else { alg.mul(&y, x)? };
        for (k, d) in prod {
            let mut w2 = w.clone();
            w2[slot] = k;
            out.add_term(w2, &(c * d));
        }
    }
    Ok(out)
}

/// First failure of an axiom on a basis tuple, or an overflow count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomOutcome {
    pub checked: usize,
    pub overflow: usize,
    pub violation: Option<(Word, GradedTensor)>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    fn record(&mut self, args: Word, defect: Result<GradedTensor>) -> Result<()> {
        match defect {
            Err(Error::Truncation { .. }) => self.overflow += 1,
            Err(e) => return Err(e),
            Ok(d) => {
                self.checked += 1;
                if !d.is_zero() && self.violation.is_none() {
                    self.violation = Some((args, d));
                }
            }
        }
        Ok(())
    }

    fn line(&self, name: &str, labels: &[String]) -> String {
        let mut s = match &self.violation {
            None => format!("{name}: pass ({} tuples)", self.checked),
            Some((w, d)) => {
                let args: Vec<&str> = w.iter().map(|&i| labels[i].as_str()).collect();
                format!("{name}: FAIL at ({}) defect {}", args.join(", "), fmt_tensor(d, labels))
            }
        };
        if self.overflow > 0 {
            s.push_str(&format!(" [{} tuples beyond truncation]", self.overflow));
        }
        s
    }
}

pub fn fmt_tensor(t: &GradedTensor, labels: &[String]) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.terms()
        .map(|(w, c)| {
            let f: Vec<&str> = w.iter().map(|&i| labels[i].as_str()).collect();
            format!("{}*{}", crate::scalar::fmt_q(c), f.join("|"))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleAxiomReport {
    labels: Vec<String>,
    pub skew: AxiomOutcome,
    pub jacobi: AxiomOutcome,
    pub poisson: AxiomOutcome,
    /// Consistency of the induced first-argument rule.
    pub first_argument: AxiomOutcome,
}

impl DoubleAxiomReport {
    pub fn double_lie(&self) -> bool {
        self.skew.passed() && self.jacobi.passed()
    }

    pub fn double_poisson(&self) -> bool {
        self.double_lie() && self.poisson.passed()
    }
}

impl fmt::Display for DoubleAxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.skew.line("dbskew", &self.labels))?;
        writeln!(f, "{}", self.jacobi.line("dbjac", &self.labels))?;
        writeln!(f, "{}", self.poisson.line("dbpoiss", &self.labels))?;
        write!(f, "{}", self.first_argument.line("first-argument-rule", &self.labels))
    }
}

/// `sum_k P^k r^{12} r^{23} P^{-k}` with `P = (231)`.
pub fn dbjac_map(r: &TensorMap) -> Result<TensorMap> {
    let base = r.embed_components(1, 2, 3)?.compose(&r.embed_components(2, 3, 3)?)?;
    let p = Perm::one_line(&[2, 3, 1])?;
    let mut out = TensorMap::zero(r.dim(), 3, 3);
    let mut pk = Perm::identity(3);
    for _ in 0..3 {
        out.axpy(&Q::one(), &base.conjugate(&pk)?)?;
        pk = p.compose(&pk);
    }
    Ok(out)
}

/// Double Lie axioms for a bracket on a plain vector space: (skew, Jacobi).
pub fn double_lie_check(r: &TensorMap) -> Result<(bool, bool)> {
    Ok((ybe::is_skew(r)?, dbjac_map(r)?.is_zero()))
}

/// Nonzero coefficients `((i, j), c)` of `{{x, x}} = sum c x^i (x) x^j`.
pub type FamilyParams = Vec<((usize, usize), Q)>;

/// Brackets on `k[x]/(x^n)` determined by
/// `{{x, x}} = sum c_ij x^i (x) x^j` over `i + j <= max_total` with every
/// `c_ij` drawn from `values`. Returns the coefficient list and bracket.
pub fn one_variable_family(n: usize, max_total: usize, values: &[Q]) -> Result<Vec<(FamilyParams, DoubleBracket)>> {
    let alg = TruncatedAlgebra::truncated_polynomial(n)?;
    let [x] = alg.generators() else {
        return input("expected one generator");
    };
    let power = |k: usize| (0..alg.dim()).find(|&b| alg.degree(b) == k);
    let slots: Vec<(usize, usize)> =
        (0..=max_total).flat_map(|t| (0..=t).map(move |i| (i, t - i))).filter(|&(i, j)| i < n && j < n).collect();
    let count = (values.len() as u128).checked_pow(slots.len() as u32).unwrap_or(u128::MAX);
    if count > 100_000 {
        return Err(Error::Bound(format!("{count} candidates")));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut g = GradedTensor::zero();
        let coeffs: Vec<((usize, usize), Q)> = slots.iter().zip(&idx).map(|(&s, &k)| (s, values[k].clone())).collect();
        for ((i, j), c) in &coeffs {
            if let (Some(a), Some(b)) = (power(*i), power(*j)) {
                g.add_term(vec![a, b], c);
            }
        }
        out.push((coeffs, DoubleBracket::from_generators(&alg, &BTreeMap::from([((*x, *x), g)]))?));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `(b (x) 1){{a, c}} + {{a, b}}(1 (x) c) - {{a, bc}}`.
pub fn poisson_defect(
    alg: &TruncatedAlgebra,
    db: &DoubleBracket,
    a: usize,
    b: usize,
    c: usize,
) -> Result<GradedTensor> {
    let bc = alg.mul_basis(b, c)?;
    let mut lhs = GradedTensor::zero();
    for (k, x) in &bc {
        lhs.axpy(x, &db.try_value(a, *k)?);
    }
    let t1 = slot_mul(alg, &db.try_value(a, c)?, 0, &alg.basis_vec(b), true)?;
    let t2 = slot_mul(alg, &db.try_value(a, b)?, 1, &alg.basis_vec(c), false)?;
    Ok(t1.add(&t2).sub(&lhs))
}

/// `(1 (x) b){{c, a}} + {{b, a}}(c (x) 1) - {{bc, a}}`.
pub fn first_argument_defect(
    alg: &TruncatedAlgebra,
    db: &DoubleBracket,
    b: usize,
    c: usize,
    a: usize,
) -> Result<GradedTensor> {
    let bc = alg.mul_basis(b, c)?;
    let mut lhs = GradedTensor::zero();
    for (k, x) in &bc {
        lhs.axpy(x, &db.try_value(*k, a)?);
    }
    let t1 = slot_mul(alg, &db.try_value(c, a)?, 1, &alg.basis_vec(b), true)?;
    let t2 = slot_mul(alg, &db.try_value(b, a)?, 0, &alg.basis_vec(c), false)?;
    Ok(t1.add(&t2).sub(&lhs))
}

/// The Poisson rule on all basis triples.
pub fn poisson_check(db: &DoubleBracket, alg: &TruncatedAlgebra) -> Result<AxiomOutcome> {
    let mut out = AxiomOutcome::default();
    for w in words(alg.dim(), 3) {
        out.record(w.clone(), poisson_defect(alg, db, w[0], w[1], w[2]))?;
    }
    Ok(out)
}

pub fn check_double_axioms(db: &DoubleBracket, alg: &TruncatedAlgebra) -> Result<DoubleAxiomReport> {
    if db.table().dim() != alg.dim() {
        return input("bracket and algebra have different basis sizes");
    }
    let n = alg.dim();
    let swap = Perm::one_line(&[2, 1])?;
    let mut skew = AxiomOutcome::default();
    for w in words(n, 2) {
        let d = (|| Ok(db.try_value(w[0], w[1])?.add(&db.try_value(w[1], w[0])?.permute(&swap)?)))();
        skew.record(w.clone(), d)?;
    }
    let mut jacobi = AxiomOutcome::default();
    for w in words(n, 3) {
        jacobi.record(w.clone(), db.dbjac_at(&w))?;
    }
    let mut poisson = AxiomOutcome::default();
    let mut first_argument = AxiomOutcome::default();
    for w in words(n, 3) {
        poisson.record(w.clone(), poisson_defect(alg, db, w[0], w[1], w[2]))?;
        first_argument.record(w.clone(), first_argument_defect(alg, db, w[0], w[1], w[2]))?;
    }
    Ok(DoubleAxiomReport { labels: alg.labels().to_vec(), skew, jacobi, poisson, first_argument })
}

/// The Jacobi residual pushed through "swap slots 1 and 3, negate, use
/// skew-symmetry", compared with the AYBE residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbjacToAybe {
    pub dbjac: TensorMap,
    pub transformed: TensorMap,
    pub aybe: YbeReport,
    pub equal: bool,
}

pub fn dbjac_to_aybe(db: &DoubleBracket) -> Result<DbjacToAybe> {
    let r = db.table();
    if !db.is_total() {
        return Err(Error::Precondition("bracket has values beyond the truncation".into()));
    }
    if !ybe::is_skew(r)? {
        return Err(Error::Precondition("bracket is not skew; the transformation needs r = -r^21".into()));
    }
    let dbjac = dbjac_map(r)?;
    let s = Perm::one_line(&[3, 2, 1])?;
    let transformed = dbjac.conjugate(&s)?.neg();
    let aybe = ybe::aybe_residual(r)?;
    let equal = transformed == aybe.residual;
    Ok(DbjacToAybe { dbjac, transformed, aybe, equal })
}

/// Outcome of the almost-CYBE identity check on an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmcybeReport {
    labels: Vec<String>,
    pub poisson: AxiomOutcome,
    /// The remaining fields are evaluated only when the Poisson rule holds.
    pub residuals: Option<AlmcybeResiduals>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmcybeResiduals {
    pub cybe_zero: bool,
    pub aybe_zero: bool,
    /// `(a (x) 1 (x) 1) AYBE(r) = (1 (x) 1 (x) a) AYBE(r)` on every basis input.
    pub identity: AxiomOutcome,
    /// `CYBE(r)(a (x) b1 b2 (x) c)` expansion through AYBE, AYBE' and CYBE.
    pub intermediate: AxiomOutcome,
}

impl AlmcybeReport {
    pub fn poisson_precondition(&self) -> bool {
        self.poisson.passed()
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.residuals.as_ref().is_some_and(|r| r.cybe_zero)
    }

    /// The identity holds whenever both hypotheses do, and the expansion
    /// holds whenever the Poisson rule does.
    pub fn consistent(&self) -> bool {
        match &self.residuals {
            None => true,
            Some(r) => r.intermediate.passed() && (!r.cybe_zero || r.identity.passed()),
        }
    }
}

impl fmt::Display for AlmcybeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "precondition {}", self.poisson.line("dbpoiss", &self.labels))?;
        match &self.residuals {
            None => write!(f, "conclusion: not evaluated (precondition failed)"),
            Some(r) => {
                writeln!(f, "precondition cybe-zero {}", r.cybe_zero)?;
                writeln!(f, "aybe-zero {}", r.aybe_zero)?;
                writeln!(f, "{}", r.identity.line("almcybe", &self.labels))?;
                write!(f, "{}", r.intermediate.line("cybe-expansion", &self.labels))
            }
        }
    }
}

pub fn almcybe_check(db: &DoubleBracket, alg: &TruncatedAlgebra) -> Result<AlmcybeReport> {
    let n = alg.dim();
    let poisson = poisson_check(db, alg)?;
    if !poisson.passed() {
        return Ok(AlmcybeReport { labels: alg.labels().to_vec(), poisson, residuals: None });
    }
    let mut cybe_out = AxiomOutcome::default();
    let mut aybe_out = AxiomOutcome::default();
    // residuals per basis word, None where the truncation is exceeded
    let mut cache: BTreeMap<Word, Option<[GradedTensor; 3]>> = BTreeMap::new();
    for w in words(n, 3) {
        let vals = (|| -> Result<[GradedTensor; 3]> {
            let a = db.aybe_at(&w)?;
            let ap = db.aybe_prime_at(&w)?;
            let c = a.sub(&ap);
            Ok([a, ap, c])
        })();
        cybe_out.record(w.clone(), vals.as_ref().map(|v| v[2].clone()).map_err(Clone::clone))?;
        aybe_out.record(w.clone(), vals.as_ref().map(|v| v[0].clone()).map_err(Clone::clone))?;
        cache.insert(w, vals.ok());
    }
    let get = |w: [usize; 3], k: usize| -> Result<GradedTensor> {
        cache[w.as_slice()].as_ref().map(|v| v[k].clone()).ok_or(Error::Truncation { degree: 0, cap: alg.cap() })
    };
    let mut identity = AxiomOutcome::default();
    for a in 0..n {
        let av = alg.basis_vec(a);
        for w in words(n, 3) {
            let d = get([w[0], w[1], w[2]], 0)
                .and_then(|col| Ok(slot_mul(alg, &col, 0, &av, true)?.sub(&slot_mul(alg, &col, 2, &av, true)?)));
            identity.record(vec![a, w[0], w[1], w[2]], d)?;
        }
    }
    let mut intermediate = AxiomOutcome::default();
    for x in words(n, 4) {
        let (a, b1, b2, c) = (x[0], x[1], x[2], x[3]);
        let d = (|| -> Result<GradedTensor> {
            let b = alg.mul_basis(b1, b2)?;
            let mut lhs = GradedTensor::zero();
            for (k, s) in &b {
                lhs.axpy(s, &get([a, *k, c], 2)?);
            }
            let bv1 = alg.basis_vec(b1);
            let t1 = slot_mul(alg, &get([a, b2, c], 0)?, 0, &bv1, true)?;
            let t2 = slot_mul(alg, &get([a, b2, c], 1)?, 2, &bv1, true)?;
            let t3 = slot_mul(alg, &get([a, b1, c], 2)?, 1, &alg.basis_vec(b2), false)?;
            Ok(t1.sub(&t2).add(&t3).sub(&lhs))
        })();
        intermediate.record(x, d)?;
    }
    Ok(AlmcybeReport {
        labels: alg.labels().to_vec(),
        poisson,
        residuals: Some(AlmcybeResiduals {
            cybe_zero: cybe_out.passed(),
            aybe_zero: aybe_out.passed(),
            identity,
            intermediate,
        }),
    })
}

/// The derivation-difference identities that a commutative algebra forces
/// on a bracket satisfying the Poisson rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeIdentityReport {
    labels: Vec<String>,
    pub four_way: AxiomOutcome,
    pub quadratic: AxiomOutcome,
}

impl fmt::Display for CommutativeIdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.four_way.line("comder1", &self.labels))?;
        write!(f, "{}", self.quadratic.line("comder2", &self.labels))
    }
}

/// `a (x) 1 - 1 (x) a` as an element of `A (x) A`.
fn delta(alg: &TruncatedAlgebra, a: usize) -> GradedTensor {
    let unit = alg.unit();
    let av = alg.basis_vec(a);
    outer(&av, &unit).sub(&outer(&unit, &av))
}

fn mul2(alg: &TruncatedAlgebra, x: &GradedTensor, y: &GradedTensor) -> Result<GradedTensor> {
    let mut out = GradedTensor::zero();
    for (u, a) in x.terms() {
        for (v, b) in y.terms() {
            let l = alg.mul_basis(u[0], v[0])?;
            let r = alg.mul_basis(u[1], v[1])?;
            out.axpy(&(a * b), &outer(&l, &r));
        }
    }
    Ok(out)
}

pub fn commutative_identity_checks(db: &DoubleBracket, alg: &TruncatedAlgebra) -> Result<CommutativeIdentityReport> {
    if !alg.is_commutative() {
        return Err(Error::Precondition("algebra is not commutative".into()));
    }
    let n = alg.dim();
    let mut four_way = AxiomOutcome::default();
    for w in words(n, 3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let d = (|| -> Result<GradedTensor> {
            let t0 = mul2(alg, &delta(alg, a), &db.try_value(b, c)?)?;
            let others = [
                mul2(alg, &delta(alg, c), &db.try_value(b, a)?)?,
                mul2(alg, &delta(alg, b), &db.try_value(c, a)?)?,
                mul2(alg, &delta(alg, a), &db.try_value(c, b)?)?,
            ];
            Ok(others.iter().find(|t| **t != t0).map(|t| t.sub(&t0)).unwrap_or_default())
        })();
        four_way.record(w, d)?;
    }
    let mut quadratic = AxiomOutcome::default();
    for w in words(n, 4) {
        let (a1, a2, b, c) = (w[0], w[1], w[2], w[3]);
        let d = (|| -> Result<GradedTensor> {
            let l = mul2(alg, &mul2(alg, &delta(alg, a1), &delta(alg, a2))?, &db.try_value(b, c)?)?;
            let r = mul2(alg, &mul2(alg, &delta(alg, b), &delta(alg, c))?, &db.try_value(a1, a2)?)?;
            Ok(l.sub(&r))
        })();
        quadratic.record(w, d)?;
    }
    Ok(CommutativeIdentityReport { labels: alg.labels().to_vec(), four_way, quadratic })
}

/// `{{x, x}} = lambda (x (x) 1 - 1 (x) x)` on `k[x]/(x^n)`, extended by
/// the Poisson rule.
pub fn one_variable_solution(alg: &TruncatedAlgebra, lambda: &Q) -> Result<DoubleBracket> {
    let [x] = alg.generators() else {
        return input("one-variable solution needs a single generator");
    };
    let value = delta(alg, *x).scale(lambda);
    DoubleBracket::from_generators(alg, &BTreeMap::from([((*x, *x), value)]))
}

/// Human-readable listing of the nonzero bracket values.
pub fn fmt_table(db: &DoubleBracket, alg: &TruncatedAlgebra) -> String {
    let mut out = String::new();
    let n = alg.dim();
    for w in words(n, 2) {
        let v = db.value(w[0], w[1]);
        if !v.is_zero() {
            out.push_str(&format!(
                "{{{{{}, {}}}}} = {}\n",
                alg.label(w[0]),
                alg.label(w[1]),
                fmt_tensor(&v, alg.labels())
            ));
        }
    }
    if out.is_empty() {
        out.push_str("zero bracket\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Quiver, Truncation};
    use crate::scalar::q;

    #[test]
    fn jacobi_map_matches_cyclic_form() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let r = crate::fixtures::random_map(&mut rng, 2, 2, 0.5);
        let direct = r
            .at(1, 2, 3)
            .unwrap()
            .compose(&r.at(2, 3, 3).unwrap())
            .unwrap()
            .add(&r.at(2, 3, 3).unwrap().compose(&r.at(3, 1, 3).unwrap()).unwrap())
            .unwrap()
            .add(&r.at(3, 1, 3).unwrap().compose(&r.at(1, 2, 3).unwrap()).unwrap())
            .unwrap();
        assert_eq!(dbjac_map(&r).unwrap(), direct);
    }

    #[test]
    fn one_variable_solution_is_double_poisson() {
        let alg = TruncatedAlgebra::truncated_polynomial(5).unwrap();
        let db = one_variable_solution(&alg, &q(3)).unwrap();
        let rep = check_double_axioms(&db, &alg).unwrap();
        assert!(rep.double_poisson(), "{rep}");
        assert!(rep.first_argument.passed());
        assert!(ybe::aybe_map(db.table()).unwrap().is_zero());
        let alm = almcybe_check(&db, &alg).unwrap();
        let res = alm.residuals.as_ref().unwrap();
        assert!(res.identity.passed() && res.intermediate.passed(), "{alm}");
        let com = commutative_identity_checks(&db, &alg).unwrap();
        assert!(com.four_way.passed() && com.quadratic.passed(), "{com}");
    }

    #[test]
    fn perturbed_table_breaks_comder2() {
        let alg = TruncatedAlgebra::truncated_polynomial(5).unwrap();
        let db = one_variable_solution(&alg, &q(1)).unwrap();
        let mut t = db.to_r();
        let x2 = alg.index_of("x^2").unwrap();
        t.add_entry(vec![0, 0], vec![x2, x2], &q(1));
        let bad = DoubleBracket::from_r(&t).unwrap();
        assert!(!check_double_axioms(&bad, &alg).unwrap().poisson.passed());
        assert!(!commutative_identity_checks(&bad, &alg).unwrap().quadratic.passed());
    }

    #[test]
    fn path_algebra_bracket_on_cyclic_quiver() {
        let qv = Quiver::from_parts(&["1", "2"], &[(0, 1, "a"), (1, 0, "b")]).unwrap();
        let alg = TruncatedAlgebra::path_algebra(&qv, 3, Truncation::Window);
        let (a, b) = (alg.index_of("a").unwrap(), alg.index_of("b").unwrap());
        let (e1, e2) = (alg.index_of("e1").unwrap(), alg.index_of("e2").unwrap());
        let values = BTreeMap::from([
            ((a, b), GradedTensor::basis(vec![e2, e1])),
            ((b, a), GradedTensor::basis(vec![e1, e2]).scale(&q(-1))),
        ]);
        let db = DoubleBracket::from_generators(&alg, &values).unwrap();
        let rep = check_double_axioms(&db, &alg).unwrap();
        assert!(rep.double_poisson(), "{rep}");
        let alm = almcybe_check(&db, &alg).unwrap();
        assert!(alm.hypotheses_hold() && alm.consistent(), "{alm}");
    }

    #[test]
    fn non_skew_fails_dbskew() {
        let db = DoubleBracket::from_r(&TensorMap::identity(2, 2)).unwrap();
        let alg = TruncatedAlgebra::free_algebra(2, 1, Truncation::Quotient);
        assert_eq!(alg.dim(), 3);
        assert!(dbjac_to_aybe(&db).is_err());
    }
}
