//! Infinity versions of the double Jacobi identity and of the classical
//! and associative Yang-Baxter equations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::TruncatedAlgebra;
use crate::double::DoubleBracket;
use crate::error::{input, Error, Result};
use crate::linalg::SparseVec;
use crate::linfty::{rearrangement_sign, Conventions, Degree};
use crate::perm::{shuffles, Perm};
use crate::scalar::{fmt_q, q, Q};
use crate::tensor::{words, GradedTensor, Word};

fn odd(d: Degree) -> bool {
    d.rem_euclid(2) == 1
}

fn pm(negative: bool) -> Q {
    if negative {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Koszul sign of reordering the letters of `w` by moving slot `j` to
/// slot `p(j)`.
fn koszul(degrees: &[Degree], w: &[usize], p: &Perm) -> bool {
    let mut negative = false;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if p.at(a) > p.at(b) && odd(degrees[w[a]]) && odd(degrees[w[b]]) {
                negative = !negative;
            }
        }
    }
    negative
}

/// [`GradedTensor::permute`] with Koszul signs.
pub fn permute_graded(t: &GradedTensor, p: &Perm, degrees: &[Degree]) -> Result<GradedTensor> {
    let mut out = GradedTensor::zero();
    for (w, c) in t.terms() {
        if w.len() != p.len() {
            return Err(Error::Degree { expected: p.len(), found: w.len() });
        }
        out.add_term(p.permute(w), &(c * pm(koszul(degrees, w, p))));
    }
    Ok(out)
}

/// Graded algebra on a finite basis given by structure constants
/// `e_a e_b = sum_k c_ab^k e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    labels: Vec<String>,
    degrees: Vec<Degree>,
    table: BTreeMap<(usize, usize), SparseVec>,
}

impl StructureConstants {
    pub fn new(labels: Vec<String>, degrees: Vec<Degree>, entries: &[(usize, usize, usize, Q)]) -> Result<Self> {
        if labels.len() != degrees.len() {
            return input("one degree per basis element is required");
        }
        let n = labels.len();
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (a, b, k, c) in entries {
            if *a >= n || *b >= n || *k >= n {
                return input(format!("structure constant ({a}, {b}, {k}) out of range"));
            }
            if degrees[*k] != degrees[*a] + degrees[*b] && !c.is_zero() {
                return input(format!(
                    "product of {} and {} has a component {} of the wrong degree",
                    labels[*a], labels[*b], labels[*k]
                ));
            }
            let row = table.entry((*a, *b)).or_default();
            crate::linalg::axpy(row, &Q::one(), &SparseVec::from([(*k, c.clone())]));
        }
        table.retain(|_, v| !v.is_empty());
        Ok(Self { labels, degrees, table })
    }

    /// `n x n` matrices, `e_{ij}` at index `i n + j`, all of degree 0.
    pub fn matrix_algebra(n: usize) -> Self {
        let labels = (0..n * n).map(|k| format!("e{}{}", k / n + 1, k % n + 1)).collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    entries.push((i * n + j, j * n + l, i * n + l, Q::one()));
                }
            }
        }
        Self::new(labels, vec![0; n * n], &entries).expect("valid")
    }

    /// The one-dimensional algebra `k`.
    pub fn scalars() -> Self {
        Self::new(vec!["1".into()], vec![0], &[(0, 0, 0, Q::one())]).expect("valid")
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba`.
    pub fn commutator(&self) -> Self {
        let mut entries = Vec::new();
        for ((a, b), v) in &self.table {
            let s = pm(odd(self.degrees[*a] * self.degrees[*b]));
            for (k, c) in v {
                entries.push((*a, *b, *k, c.clone()));
                entries.push((*b, *a, *k, -(c * &s)));
            }
        }
        Self::new(self.labels.clone(), self.degrees.clone(), &entries).expect("degrees preserved")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn product(&self, a: usize, b: usize) -> SparseVec {
        self.table.get(&(a, b)).cloned().unwrap_or_default()
    }

    fn product_vec(&self, x: &SparseVec, b: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, c) in x {
            crate::linalg::axpy(&mut out, c, &self.product(*a, b));
        }
        out
    }

    fn vec_product(&self, a: usize, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, c) in y {
            crate::linalg::axpy(&mut out, c, &self.product(a, *b));
        }
        out
    }

    /// First basis triple with `(ab)c != a(bc)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    if self.product_vec(&ab, c) != self.vec_product(a, &self.product(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First violation of graded antisymmetry or of the graded Jacobi
    /// identity `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]`.
    pub fn lie_violation(&self) -> Option<String> {
        let n = self.dim();
        let d = &self.degrees;
        for a in 0..n {
            for b in 0..n {
                let mut sum = self.product(a, b);
                crate::linalg::axpy(&mut sum, &pm(odd(d[a] * d[b])), &self.product(b, a));
                if !sum.is_empty() {
                    return Some(format!("antisymmetry fails for ({}, {})", self.labels[a], self.labels[b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.vec_product(a, &self.product(b, c));
                    let mut rhs = self.product_vec(&self.product(a, b), c);
                    crate::linalg::axpy(&mut rhs, &pm(odd(d[a] * d[b])), &self.vec_product(b, &self.product(a, c)));
                    if lhs != rhs {
                        return Some(format!(
                            "Jacobi fails for ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        ));
                    }
                }
            }
        }
        None
    }
}

/// Elements `r_n` of the `n`-th tensor power, of degree `2 - n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RnFamily {
    elements: BTreeMap<usize, GradedTensor>,
}

impl RnFamily {
    pub fn new(degrees: &[Degree], elements: BTreeMap<usize, GradedTensor>) -> Result<Self> {
        for (n, t) in &elements {
            if *n == 0 {
                return input("r_n is defined for n >= 1");
            }
            for (w, _) in t.terms() {
                if w.len() != *n {
                    return Err(Error::Degree { expected: *n, found: w.len() });
                }
                if let Some(a) = w.iter().find(|a| **a >= degrees.len()) {
                    return input(format!("basis index {a} out of range"));
                }
                let d: Degree = w.iter().map(|a| degrees[*a]).sum();
                if d != 2 - *n as Degree {
                    return input(format!("r_{n} has a term of degree {d}, expected {}", 2 - *n as Degree));
                }
            }
        }
        let elements = elements.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        Ok(Self { elements })
    }

    /// Only `r_2` nonzero.
    pub fn only_r2(degrees: &[Degree], r2: GradedTensor) -> Result<Self> {
        Self::new(degrees, BTreeMap::from([(2, r2)]))
    }

    pub fn get(&self, n: usize) -> GradedTensor {
        self.elements.get(&n).cloned().unwrap_or_default()
    }
}

/// Places the letters of `w` in the given slots (0-based) of an `n`-fold
/// tensor; returns the slot contents and the Koszul sign of the placement.
fn place(w: &[usize], slots: &[usize], n: usize, degrees: &[Degree]) -> (Vec<Option<usize>>, bool) {
    let mut out = vec![None; n];
    for (a, s) in w.iter().zip(slots) {
        out[*s] = Some(*a);
    }
    let mut negative = false;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if slots[a] > slots[b] && odd(degrees[w[a]]) && odd(degrees[w[b]]) {
                negative = !negative;
            }
        }
    }
    (out, negative)
}

/// Sign of `(x_1 (x) .. (x) x_n)(y_1 (x) .. (x) y_n) = +-(x_1 y_1 (x) ..)`.
fn product_sign(x: &[Option<usize>], y: &[Option<usize>], degrees: &[Degree]) -> bool {
    let deg = |v: &Option<usize>| v.map_or(0, |a| degrees[a]);
    let mut negative = false;
    for s in 0..x.len() {
        for t in s + 1..x.len() {
            if odd(deg(&x[t]) * deg(&y[s])) {
                negative = !negative;
            }
        }
    }
    negative
}

/// Combines two placed tensors that share exactly one slot; `shared`
/// gives the value there as a vector.
fn combine(
    x: &[Option<usize>],
    y: &[Option<usize>],
    shared_slot: usize,
    shared: &SparseVec,
    coeff: &Q,
    out: &mut GradedTensor,
) {
    for (k, c) in shared {
        let w: Word = (0..x.len())
            .map(|s| if s == shared_slot { *k } else { x[s].or(y[s]).expect("every slot is covered") })
            .collect();
        out.add_term(w, &(coeff * c));
    }
}

/// `r_i^{s_1..s_i} r_j^{t_1..t_j}`, slots 0-based, sharing exactly
/// `s_1 = t_1`; the product in that slot is the algebra's.
fn placed_product(
    alg: &StructureConstants,
    ri: &GradedTensor,
    rj: &GradedTensor,
    si: &[usize],
    sj: &[usize],
    n: usize,
) -> GradedTensor {
    let d = alg.degrees();
    let shared_slot = si[0];
    let mut out = GradedTensor::zero();
    for (wx, cx) in ri.terms() {
        let (x, nx) = place(wx, si, n, d);
        for (wy, cy) in rj.terms() {
            let (y, ny) = place(wy, sj, n, d);
            let (a, b) = (x[shared_slot].expect("shared"), y[shared_slot].expect("shared"));
            let c = cx * cy * pm(nx ^ ny);
            let s_xy = pm(product_sign(&x, &y, d));
            combine(&x, &y, shared_slot, &alg.product(a, b), &(&c * &s_xy), &mut out);
        }
    }
    out
}

/// How the summation set written `Sh_{i,i+j-1}` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShuffleReading {
    /// `Sh_{i,j-1}`, a subset of `S_{i+j-1}`.
    Default,
    /// `Sh_{i,i+j-1}`, a subset of `S_{2i+j-1}`; terms that would use a slot
    /// beyond `n` are dropped.
    Literal,
}

/// Sum for one reading, with the number of dropped literal terms.
fn cybe_infty_sum(g: &StructureConstants, fam: &RnFamily, n: usize, reading: ShuffleReading) -> (GradedTensor, usize) {
    let mut out = GradedTensor::zero();
    let mut dropped = 0;
    for i in 1..=n {
        let j = n + 1 - i;
        let (ri, rj) = (fam.get(i), fam.get(j));
        let perms = match reading {
            ShuffleReading::Default => shuffles(i, j - 1),
            ShuffleReading::Literal => shuffles(i, i + j - 1),
        };
        for sigma in perms {
            let used: Vec<usize> = (0..i + j - 1).map(|k| sigma.at(k)).collect();
            if used.iter().any(|s| *s >= n) {
                dropped += 1;
                continue;
            }
            if ri.is_zero() || rj.is_zero() {
                continue;
            }
            let si = &used[..i];
            let mut sj = vec![used[0]];
            sj.extend_from_slice(&used[i..]);
            let term = placed_product(g, &ri, &rj, si, &sj, n);
            out.axpy(&pm(i % 2 == 1), &term);
        }
    }
    (out, dropped)
}

/// `[r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}]` in `g^{(x)3}`.
pub fn cybe_lie(g: &StructureConstants, r: &GradedTensor) -> GradedTensor {
    let mut out = GradedTensor::zero();
    for (a, b) in [([0, 1], [0, 2]), ([0, 1], [1, 2]), ([0, 2], [1, 2])] {
        // the second pair shares its first or second slot with the first
        let (sa, sb): (Vec<usize>, Vec<usize>) = if a[0] == b[0] {
            (a.to_vec(), b.to_vec())
        } else if a[1] == b[0] {
            (vec![a[1], a[0]], b.to_vec())
        } else {
            (vec![a[1], a[0]], vec![b[1], b[0]])
        };
        let swap = Perm::parse("(21)").expect("valid");
        let ra = if sa[0] == a[0] { r.clone() } else { permute_graded(r, &swap, g.degrees()).expect("degree 2") };
        let rb = if sb[0] == b[0] { r.clone() } else { permute_graded(r, &swap, g.degrees()).expect("degree 2") };
        out.add_assign(&placed_product(g, &ra, &rb, &sa, &sb, 3));
    }
    out
}

/// `r^{12} r^{13} - r^{23} r^{12} + r^{13} r^{23}` in `A^{(x)3}`.
pub fn aybe_assoc(a: &StructureConstants, r: &GradedTensor) -> GradedTensor {
    let mut out = GradedTensor::zero();
    for (s, x, y) in [(1, [0, 1], [0, 2]), (-1, [1, 2], [0, 1]), (1, [0, 2], [1, 2])] {
        out.axpy(&q(s), &full_product(a, r, r, &x, &y, 3));
    }
    out
}

/// `r^{13} r^{12} - r^{12} r^{23} + r^{23} r^{13}`.
pub fn aybe_prime_assoc(a: &StructureConstants, r: &GradedTensor) -> GradedTensor {
    let mut out = GradedTensor::zero();
    for (s, x, y) in [(1, [0, 2], [0, 1]), (-1, [0, 1], [1, 2]), (1, [1, 2], [0, 2])] {
        out.axpy(&q(s), &full_product(a, r, r, &x, &y, 3));
    }
    out
}

/// Slotwise product of two placed tensors sharing any one slot.
fn full_product(
    alg: &StructureConstants,
    rx: &GradedTensor,
    ry: &GradedTensor,
    sx: &[usize],
    sy: &[usize],
    n: usize,
) -> GradedTensor {
    let d = alg.degrees();
    let mut out = GradedTensor::zero();
    for (wx, cx) in rx.terms() {
        let (x, nx) = place(wx, sx, n, d);
        for (wy, cy) in ry.terms() {
            let (y, ny) = place(wy, sy, n, d);
            let shared = (0..n).find(|s| x[*s].is_some() && y[*s].is_some()).expect("one shared slot");
            let c = cx * cy * pm(nx ^ ny ^ product_sign(&x, &y, d));
            let prod = alg.product(x[shared].expect("shared"), y[shared].expect("shared"));
            combine(&x, &y, shared, &prod, &c, &mut out);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CybeInftyReport {
    pub n: usize,
    pub default: GradedTensor,
    pub literal: GradedTensor,
    pub literal_dropped: usize,
    /// `CYBE(r_2)` when `n = 3`.
    pub cybe_r2: Option<GradedTensor>,
    labels: Vec<String>,
}

impl CybeInftyReport {
    pub fn readings_agree(&self) -> bool {
        self.default == self.literal
    }
}

fn fmt_lab(t: &GradedTensor, labels: &[String]) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.terms()
        .map(|(w, c)| {
            let body: Vec<&str> = w.iter().map(|a| labels[*a].as_str()).collect();
            format!("{}*{}", fmt_q(c), body.join("(x)"))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn relation(x: &GradedTensor, y: &GradedTensor) -> &'static str {
    if x == y {
        "equal"
    } else if x.add(y).is_zero() {
        "negatives"
    } else {
        "unrelated"
    }
}

impl fmt::Display for CybeInftyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "reading Sh_(i,j-1) [default]: {}", fmt_lab(&self.default, &self.labels))?;
        writeln!(
            f,
            "reading Sh_(i,i+j-1) [literal, {} out-of-range terms dropped]: {}",
            self.literal_dropped,
            fmt_lab(&self.literal, &self.labels)
        )?;
        write!(f, "readings agree: {}", self.readings_agree())?;
        if let Some(c) = &self.cybe_r2 {
            write!(f, "\nCYBE(r_2): {}", fmt_lab(c, &self.labels))?;
            write!(f, "\ndefault vs CYBE(r_2): {}", relation(&self.default, c))?;
            write!(f, "\nliteral vs CYBE(r_2): {}", relation(&self.literal, c))?;
        }
        Ok(())
    }
}

pub fn cybe_infty_residual(g: &StructureConstants, fam: &RnFamily, n: usize) -> Result<CybeInftyReport> {
    if n == 0 {
        return input("n must be positive");
    }
    if let Some(v) = g.lie_violation() {
        return Err(Error::Precondition(format!("not a graded Lie algebra: {v}")));
    }
    let (default, _) = cybe_infty_sum(g, fam, n, ShuffleReading::Default);
    let (literal, literal_dropped) = cybe_infty_sum(g, fam, n, ShuffleReading::Literal);
    let cybe_r2 = (n == 3).then(|| cybe_lie(g, &fam.get(2)));
    Ok(CybeInftyReport { n, default, literal, literal_dropped, cybe_r2, labels: g.labels().to_vec() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AybeInftyReport {
    pub n: usize,
    pub residual: GradedTensor,
    /// `AYBE(r_2)` and `AYBE'(r_2)` when `n = 3`.
    pub aybe_r2: Option<(GradedTensor, GradedTensor)>,
    labels: Vec<String>,
}

impl fmt::Display for AybeInftyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        write!(f, "cyclic sum: {}", fmt_lab(&self.residual, &self.labels))?;
        if let Some((a, ap)) = &self.aybe_r2 {
            write!(f, "\nAYBE(r_2) = r12 r13 - r23 r12 + r13 r23: {}", fmt_lab(a, &self.labels))?;
            write!(f, "\nAYBE'(r_2) = r13 r12 - r12 r23 + r23 r13: {}", fmt_lab(ap, &self.labels))?;
            write!(f, "\ncyclic sum vs AYBE(r_2): {}", relation(&self.residual, a))?;
            write!(f, "\ncyclic sum vs AYBE'(r_2): {}", relation(&self.residual, ap))?;
        }
        Ok(())
    }
}

pub fn aybe_infty_residual(a: &StructureConstants, fam: &RnFamily, n: usize) -> Result<AybeInftyReport> {
    if n == 0 {
        return input("n must be positive");
    }
    if let Some((x, y, z)) = a.associativity_violation() {
        return Err(Error::Precondition(format!(
            "not associative at ({}, {}, {})",
            a.labels()[x],
            a.labels()[y],
            a.labels()[z]
        )));
    }
    let mut residual = GradedTensor::zero();
    for i in 1..=n {
        let j = n + 1 - i;
        let (ri, rj) = (fam.get(i), fam.get(j));
        if ri.is_zero() || rj.is_zero() {
            continue;
        }
        for k in 0..n {
            let used: Vec<usize> = (0..i + j - 1).map(|l| (l + k) % n).collect();
            let si = &used[..i];
            let mut sj = vec![used[0]];
            sj.extend_from_slice(&used[i..]);
            residual.axpy(&pm(i % 2 == 1), &placed_product(a, &ri, &rj, si, &sj, n));
        }
    }
    let aybe_r2 = (n == 3).then(|| (aybe_assoc(a, &fam.get(2)), aybe_prime_assoc(a, &fam.get(2))));
    Ok(AybeInftyReport { n, residual, aybe_r2, labels: a.labels().to_vec() })
}

/// Double brackets `{}_n: A^{(x)n} -> A^{(x)n}` given on basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleFamily {
    degrees: Vec<Degree>,
    ops: BTreeMap<Vec<usize>, GradedTensor>,
    /// Tuples whose value is unknown (truncation overflow).
    undefined: std::collections::BTreeSet<Vec<usize>>,
}

impl DoubleFamily {
    pub fn new(degrees: Vec<Degree>, ops: BTreeMap<Vec<usize>, GradedTensor>) -> Result<Self> {
        for (t, v) in &ops {
            if let Some(a) = t.iter().find(|a| **a >= degrees.len()) {
                return input(format!("basis index {a} out of range"));
            }
            let expected: Degree = t.iter().map(|a| degrees[*a]).sum::<Degree>() + 2 - t.len() as Degree;
            for (w, _) in v.terms() {
                if w.len() != t.len() {
                    return Err(Error::Degree { expected: t.len(), found: w.len() });
                }
                let d: Degree = w.iter().map(|a| degrees[*a]).sum();
                if d != expected {
                    return input(format!("value on {t:?} has degree {d}, expected {expected}"));
                }
            }
        }
        let ops = ops.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Self { degrees, ops, undefined: Default::default() })
    }

    /// `{}_2` from a double bracket on an ungraded algebra.
    pub fn from_double_bracket(db: &DoubleBracket, dim: usize) -> Self {
        let mut ops = BTreeMap::new();
        for a in 0..dim {
            for b in 0..dim {
                let v = db.value(a, b);
                if !v.is_zero() {
                    ops.insert(vec![a, b], v);
                }
            }
        }
        let undefined = db.undefined().iter().map(|(a, b)| vec![*a, *b]).collect();
        Self { degrees: vec![0; dim], ops, undefined }
    }

    pub fn value(&self, t: &[usize]) -> Option<GradedTensor> {
        if self.undefined.contains(t) {
            return None;
        }
        Some(self.ops.get(t).cloned().unwrap_or_default())
    }

    fn arities(&self) -> std::collections::BTreeSet<usize> {
        self.ops.keys().map(Vec::len).collect()
    }
}

/// Sign in the second term of the double Leibniz rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DoubleLeibnizSign {
    /// `(-1)^{n |a_n''|}`
    #[default]
    ArityTimesDegree,
    /// `+1`
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiInftyReport {
    pub n: usize,
    pub skew_violation: Option<(Vec<usize>, Perm)>,
    pub leibniz_checked: usize,
    pub leibniz_violation: Option<(Vec<usize>, usize, usize)>,
    pub residual_checked: usize,
    pub overflow: usize,
    pub residual_violation: Option<(Vec<usize>, GradedTensor)>,
}

impl JacobiInftyReport {
    pub fn passed(&self) -> bool {
        self.skew_violation.is_none() && self.leibniz_violation.is_none() && self.residual_violation.is_none()
    }
}

impl fmt::Display for JacobiInftyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        match &self.skew_violation {
            Some((t, p)) => return write!(f, "skew-symmetry: FAIL at {t:?} under {p}\nresidual: not evaluated"),
            None => writeln!(f, "skew-symmetry: pass")?,
        }
        match &self.leibniz_violation {
            Some((t, b, c)) => writeln!(f, "double Leibniz: FAIL at {t:?} with product ({b}, {c})")?,
            None => writeln!(f, "double Leibniz: pass ({} cases)", self.leibniz_checked)?,
        }
        match &self.residual_violation {
            Some((t, r)) => write!(f, "Jacobi residual: FAIL at {t:?}: {r}"),
            None => write!(
                f,
                "Jacobi residual: pass ({} tuples, {} skipped for overflow)",
                self.residual_checked, self.overflow
            ),
        }
    }
}

/// Residual of the cyclic infinity-Jacobi identity on the basis tuple
/// `args`. The first tensor factor of the inner bracket enters the outer
/// bracket in its last slot; output slots then return to the positions of
/// the arguments they came from. `None` on overflow.
pub fn jacobi_infty_at(fam: &DoubleFamily, args: &[usize], conv: Conventions) -> Option<GradedTensor> {
    let n = args.len();
    let degrees: Vec<Degree> = args.iter().map(|a| fam.degrees[*a]).collect();
    let mut out = GradedTensor::zero();
    for i in 1..=n {
        let j = n + 1 - i;
        for k in 0..n {
            let sigma = Perm::rotation(n, k);
            let b: Vec<usize> = (0..n).map(|l| args[sigma.at(l)]).collect();
            let inner = fam.value(&b[..i])?;
            let sign = rearrangement_sign(&degrees, &sigma) * conv.composition_sign(i, j);
            // owners of the output slots, as positions in `args`
            let owners: Vec<usize> = (i..n).chain(0..i).map(|l| sigma.at(l)).collect();
            let place = Perm::new(owners).expect("a permutation");
            for (x, c) in inner.terms() {
                let mut outer_args = b[i..].to_vec();
                outer_args.push(x[0]);
                let outer = fam.value(&outer_args)?;
                let tail = GradedTensor::basis(x[1..].to_vec());
                let joined = outer.tensor(&tail);
                let moved = permute_graded(&joined, &place, &fam.degrees).expect("length n");
                out.axpy(&(c * q(sign as i64)), &moved);
            }
        }
    }
    Some(out)
}

/// Checks skew-symmetry, the double Leibniz rule on basis products and
/// the infinity-Jacobi residual for arity `n`.
pub fn jacobi_infty_check(
    alg: &TruncatedAlgebra,
    fam: &DoubleFamily,
    n: usize,
    conv: Conventions,
    leibniz: DoubleLeibnizSign,
) -> Result<JacobiInftyReport> {
    if n == 0 {
        return input("n must be positive");
    }
    if fam.degrees.len() != alg.dim() {
        return input("family and algebra have different dimensions");
    }
    let dim = alg.dim();
    let mut report = JacobiInftyReport {
        n,
        skew_violation: None,
        leibniz_checked: 0,
        leibniz_violation: None,
        residual_checked: 0,
        overflow: 0,
        residual_violation: None,
    };
    let arities = fam.arities();
    for m in arities.iter().copied().filter(|m| *m <= n) {
        for t in words(dim, m) {
            let Some(base) = fam.value(&t) else { continue };
            let degrees: Vec<Degree> = t.iter().map(|a| fam.degrees[*a]).collect();
            for sigma in Perm::all(m) {
                let permuted: Vec<usize> = (0..m).map(|l| t[sigma.at(l)]).collect();
                let Some(v) = fam.value(&permuted) else { continue };
                let lhs = permute_graded(&v, &sigma, &fam.degrees)?;
                let s = rearrangement_sign(&degrees, &sigma);
                if lhs != base.scale(&q(s as i64)) {
                    report.skew_violation = Some((t, sigma));
                    return Ok(report);
                }
            }
        }
        // {a_1..a_{m-1}, b c} = +- b {.., c} +- {.., b} c
        for prefix in words(dim, m - 1) {
            for b in 0..dim {
                for c in 0..dim {
                    let Ok(bc) = alg.mul_basis(b, c) else { continue };
                    let mut lhs = GradedTensor::zero();
                    let mut defined = true;
                    for (k, x) in &bc {
                        let mut t = prefix.clone();
                        t.push(*k);
                        match fam.value(&t) {
                            Some(v) => lhs.axpy(x, &v),
                            None => defined = false,
                        }
                    }
                    let with = |z: usize| {
                        let mut t = prefix.clone();
                        t.push(z);
                        fam.value(&t)
                    };
                    let (Some(vc), Some(vb)) = (with(c), with(b)) else { continue };
                    if !defined {
                        continue;
                    }
                    let pre: Degree = prefix.iter().map(|a| fam.degrees[*a]).sum();
                    let s1 = pm(odd(fam.degrees[b] * pre));
                    let s2 = match leibniz {
                        DoubleLeibnizSign::ArityTimesDegree => pm(odd(m as Degree * fam.degrees[c])),
                        DoubleLeibnizSign::Trivial => Q::one(),
                    };
                    let first = crate::double::slot_mul(alg, &vc, 0, &alg.basis_vec(b), true);
                    let last = crate::double::slot_mul(alg, &vb, m - 1, &alg.basis_vec(c), false);
                    let (Ok(first), Ok(last)) = (first, last) else { continue };
                    let mut rhs = first.scale(&s1);
                    rhs.axpy(&s2, &last);
                    report.leibniz_checked += 1;
                    if lhs != rhs && report.leibniz_violation.is_none() {
                        let mut t = prefix.clone();
                        t.push(b);
                        report.leibniz_violation = Some((t, b, c));
                    }
                }
            }
        }
    }
    for t in words(dim, n) {
        match jacobi_infty_at(fam, &t, conv) {
            None => report.overflow += 1,
            Some(r) => {
                report.residual_checked += 1;
                if !r.is_zero() && report.residual_violation.is_none() {
                    report.residual_violation = Some((t, r));
                }
            }
        }
    }
    Ok(report)
}
