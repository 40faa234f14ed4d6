//! Quadratic relations for one binary operation `*` and the linear
//! conditions under which they are compatible with the Leibniz rule on
//! `Sym V`.
//!
//! A relation is `sum_s l[s,1] b_s1 * (b_s2 * b_s3) + l[s,2] (b_s1 * b_s2) * b_s3`
//! with `s` running over `S_3` in lexicographic order; coordinate
//! `(shape - 1) * 6 + index(s)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{input, Result};
use crate::linalg::{dot, Echelon, SparseVec};
use crate::perm::Perm;
use crate::scalar::{fmt_q, q, Q};

/// Symmetry imposed on `*` in arity two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symmetry {
    None,
    /// `x * y = y * x`
    Symmetric,
    /// `x * y = -y * x`
    Skew,
}

impl Symmetry {
    pub fn epsilon(self) -> Option<Q> {
        match self {
            Symmetry::None => None,
            Symmetry::Symmetric => Some(Q::one()),
            Symmetry::Skew => Some(-Q::one()),
        }
    }

    pub fn unknowns(self) -> usize {
        if self == Symmetry::None {
            12
        } else {
            3
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::Symmetric => "sym",
            Symmetry::Skew => "skew",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Symmetry::None),
            "sym" | "symmetric" => Ok(Symmetry::Symmetric),
            "skew" => Ok(Symmetry::Skew),
            _ => input(format!("unknown symmetry {s:?}")),
        }
    }
}

fn s3() -> Vec<Perm> {
    Perm::all(3)
}

/// Name of coordinate `k` of the relation space.
pub fn coordinate_name(sym: Symmetry, k: usize) -> String {
    if sym == Symmetry::None {
        let s = &s3()[k % 6];
        let s = if s.is_identity() { "id".to_string() } else { s.to_string() };
        format!("l[{s},{}]", k / 6 + 1)
    } else {
        format!("l{}", k + 1)
    }
}

/// A quadratic relation in the coordinates of its symmetry type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub sym: Symmetry,
    pub coeffs: Vec<Q>,
}

impl QuadraticRelation {
    pub fn new(sym: Symmetry, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != 12 && coeffs.len() != sym.unknowns() {
            return input(format!("expected {} or 12 coefficients, found {}", sym.unknowns(), coeffs.len()));
        }
        let coeffs = if coeffs.len() == sym.unknowns() { coeffs } else { reduce_symmetric(&coeffs, sym) };
        Ok(Self { sym, coeffs })
    }

    /// `b1 * (b2 * b3) - (b1 * b2) * b3`.
    pub fn associativity() -> Self {
        let mut c = vec![Q::zero(); 12];
        c[0] = q(1);
        c[6] = q(-1);
        Self { sym: Symmetry::None, coeffs: c }
    }

    /// Jacobi identity for the commutator of `*`: `l[s,1] = -sgn s`,
    /// `l[s,2] = sgn s`.
    pub fn lie_admissible() -> Self {
        let mut c = vec![Q::zero(); 12];
        for (i, s) in s3().iter().enumerate() {
            c[i] = q(-s.sign() as i64);
            c[6 + i] = q(s.sign() as i64);
        }
        Self { sym: Symmetry::None, coeffs: c }
    }

    /// Cyclic Jacobi form `b1*(b2*b3) + b2*(b3*b1) + b3*(b1*b2)`.
    pub fn jacobi() -> Self {
        Self { sym: Symmetry::Skew, coeffs: vec![q(1); 3] }
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn terms(&self) -> Vec<(Q, Expr)> {
        let atom = |i: usize| Expr::Atom(i);
        let star = |a: Expr, b: Expr| Expr::Star(Box::new(a), Box::new(b));
        let mut out = Vec::new();
        if self.sym == Symmetry::None {
            for (i, s) in s3().iter().enumerate() {
                let b = |k: usize| atom(s.at(k));
                out.push((self.coeffs[i].clone(), star(b(0), star(b(1), b(2)))));
                out.push((self.coeffs[6 + i].clone(), star(star(b(0), b(1)), b(2))));
            }
        } else {
            for k in 0..3 {
                out.push((self.coeffs[k].clone(), star(atom(k), star(atom((k + 1) % 3), atom((k + 2) % 3)))));
            }
        }
        out
    }
}

impl fmt::Display for QuadraticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{} {}", coordinate_name(self.sym, i), fmt_q(c)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Rewrites a 12-coordinate relation in the three cyclic coordinates,
/// using `x * y = eps y * x`.
pub fn reduce_symmetric(coeffs: &[Q], sym: Symmetry) -> Vec<Q> {
    let Some(eps) = sym.epsilon() else {
        return coeffs.to_vec();
    };
    let mut out = vec![Q::zero(); 3];
    for (i, s) in s3().iter().enumerate() {
        let (a, b, c) = (s.at(0), s.at(1), s.at(2));
        // a * (b * c): outer a, inner (b, c)
        let sign1 = if b == (a + 1) % 3 { Q::one() } else { eps.clone() };
        out[a] += &coeffs[i] * sign1;
        // (a * b) * c = eps c * (a * b)
        let sign2 = if a == (c + 1) % 3 { eps.clone() } else { &eps * &eps };
        out[c] += &coeffs[6 + i] * sign2;
    }
    out
}

/// Formal expressions in atoms and the operation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Expr {
    Atom(usize),
    Star(Box<Expr>, Box<Expr>),
}

/// A commutative monomial: sorted factors, each an atom or a star of two
/// monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Factor {
    Atom(usize),
    Star(Mono, Mono),
}

type Mono = Vec<Factor>;
type Poly = BTreeMap<Mono, Q>;

fn add_into(p: &mut Poly, m: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

fn mono_mul(a: &[Factor], b: &[Factor]) -> Mono {
    let mut m: Mono = a.iter().chain(b).cloned().collect();
    m.sort();
    m
}

/// Expansion of `*` under the Leibniz rule in each argument.
struct Expander {
    eps: Option<Q>,
}

impl Expander {
    fn star(&self, a: &[Factor], b: &[Factor]) -> Poly {
        let mut out = Poly::new();
        if a.is_empty() || b.is_empty() {
            return out;
        }
        if a.len() > 1 {
            // (u v) * w = u (v * w) + v (u * w)
            for i in 0..a.len() {
                let rest: Mono = a.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, f)| f.clone()).collect();
                for (m, c) in self.star(std::slice::from_ref(&a[i]), b) {
                    add_into(&mut out, mono_mul(&m, &rest), c);
                }
            }
            return out;
        }
        if b.len() > 1 {
            for i in 0..b.len() {
                let rest: Mono = b.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, f)| f.clone()).collect();
                for (m, c) in self.star(a, std::slice::from_ref(&b[i])) {
                    add_into(&mut out, mono_mul(&m, &rest), c);
                }
            }
            return out;
        }
        let (x, y) = (a.to_vec(), b.to_vec());
        match &self.eps {
            Some(eps) if y < x => {
                add_into(&mut out, vec![Factor::Star(y, x)], eps.clone());
            }
            Some(eps) if x == y && eps.is_negative() => {}
            _ => {
                add_into(&mut out, vec![Factor::Star(x, y)], Q::one());
            }
        }
        out
    }

    fn star_poly(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                for (m, c) in self.star(ma, mb) {
                    add_into(&mut out, m, c * ca * cb);
                }
            }
        }
        out
    }

    fn eval(&self, e: &Expr, subst: &BTreeMap<usize, Mono>) -> Poly {
        match e {
            Expr::Atom(i) => {
                let m = subst.get(i).cloned().unwrap_or_else(|| vec![Factor::Atom(*i)]);
                Poly::from([(m, Q::one())])
            }
            Expr::Star(a, b) => self.star_poly(&self.eval(a, subst), &self.eval(b, subst)),
        }
    }
}

/// Atom ids used in the substitution `b_slot = b' b''`.
const PRIME: usize = 3;
const DPRIME: usize = 4;

fn is_obstruction(m: &Mono) -> bool {
    let simple = |x: &Mono| matches!(x.as_slice(), [Factor::Atom(_)]);
    m.len() == 2 && m.iter().all(|f| matches!(f, Factor::Star(a, b) if simple(a) && simple(b)))
}

/// One linear condition on the relation coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub slot: usize,
    pub row: SparseVec,
}

impl Constraint {
    pub fn evaluate(&self, rel: &QuadraticRelation) -> Q {
        dot(&self.row, &rel.to_sparse())
    }

    pub fn describe(&self, sym: Symmetry) -> String {
        let parts: Vec<String> = self
            .row
            .iter()
            .map(|(k, c)| {
                let name = coordinate_name(sym, *k);
                if c.is_one() {
                    name
                } else {
                    format!("{}*{name}", fmt_q(c))
                }
            })
            .collect();
        format!("{} = 0", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionSystem {
    pub sym: Symmetry,
    pub constraints: Vec<Constraint>,
    pub solution_basis: Vec<SparseVec>,
}

impl ObstructionSystem {
    fn from_constraints(sym: Symmetry, constraints: Vec<Constraint>) -> Self {
        let mut e = Echelon::new();
        for c in &constraints {
            e.insert(&c.row);
        }
        Self { sym, solution_basis: e.nullspace(sym.unknowns()), constraints }
    }

    pub fn nullity(&self) -> usize {
        self.solution_basis.len()
    }

    pub fn violated(&self, rel: &QuadraticRelation) -> Vec<(&Constraint, Q)> {
        self.constraints.iter().map(|c| (c, c.evaluate(rel))).filter(|(_, v)| !v.is_zero()).collect()
    }
}

impl fmt::Display for ObstructionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symmetry {}", self.sym.name())?;
        writeln!(f, "unknowns {}", self.sym.unknowns())?;
        for c in &self.constraints {
            writeln!(f, "slot {}: {}", c.slot, c.describe(self.sym))?;
        }
        write!(f, "nullspace dimension {}", self.nullity())?;
        for v in &self.solution_basis {
            let rel = QuadraticRelation { sym: self.sym, coeffs: dense(v, self.sym.unknowns()) };
            write!(f, "\nbasis {rel}")?;
        }
        Ok(())
    }
}

fn dense(v: &SparseVec, n: usize) -> Vec<Q> {
    (0..n).map(|i| v.get(&i).cloned().unwrap_or_else(Q::zero)).collect()
}

/// Scales a row so its first nonzero entry is 1.
fn normalize(row: SparseVec) -> SparseVec {
    let Some(lead) = row.values().next().cloned() else {
        return row;
    };
    row.into_iter().map(|(k, v)| (k, v / &lead)).collect()
}

/// Conditions for the `(x * y)(z * w)` terms to cancel after substituting
/// `b_slot = b' b''` (slot 1-based), deduplicated up to scale.
pub fn leibniz_obstruction(sym: Symmetry, slot: usize) -> Result<ObstructionSystem> {
    Ok(ObstructionSystem::from_constraints(sym, slot_constraints(sym, slot)?))
}

fn slot_constraints(sym: Symmetry, slot: usize) -> Result<Vec<Constraint>> {
    if !(1..=3).contains(&slot) {
        return input("slot must be 1, 2 or 3");
    }
    let ex = Expander { eps: sym.epsilon() };
    let subst = BTreeMap::from([(slot - 1, vec![Factor::Atom(PRIME), Factor::Atom(DPRIME)])]);
    let n = sym.unknowns();
    // coefficient of each obstruction monomial as a linear form in the unknowns
    let mut forms: BTreeMap<Mono, SparseVec> = BTreeMap::new();
    for k in 0..n {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[k] = Q::one();
        let unit = QuadraticRelation { sym, coeffs };
        for (c, e) in unit.terms() {
            if c.is_zero() {
                continue;
            }
            for (m, v) in ex.eval(&e, &subst) {
                if is_obstruction(&m) {
                    let row = forms.entry(m).or_default();
                    crate::linalg::axpy(row, &Q::one(), &SparseVec::from([(k, v * &c)]));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for row in forms.into_values() {
        if row.is_empty() {
            continue;
        }
        let row = normalize(row);
        if seen.insert(row.clone()) {
            out.push(Constraint { slot, row });
        }
    }
    Ok(out)
}

/// Constraints from all three slots with the solution space.
pub fn full_constraint_system(sym: Symmetry) -> Result<ObstructionSystem> {
    let mut all = Vec::new();
    let mut seen = BTreeSet::new();
    for slot in 1..=3 {
        for c in slot_constraints(sym, slot)? {
            if seen.insert(c.row.clone()) {
                all.push(c);
            }
        }
    }
    Ok(ObstructionSystem::from_constraints(sym, all))
}

/// Relabelling `b_i -> b_tau(i)` on the 12 coordinates.
pub fn act_on_coordinates(tau: &Perm, v: &SparseVec) -> SparseVec {
    let all = s3();
    v.iter()
        .map(|(k, c)| {
            let (shape, i) = (k / 6, k % 6);
            let image = tau.compose(&all[i]);
            let j = all.iter().position(|p| *p == image).expect("S3 element");
            (shape * 6 + j, c.clone())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Operad(&'static str),
    NotDistributive { constraint: String, relation: String, value: Q },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Operad(name) => write!(f, "operad: {name}"),
            Classification::NotDistributive { constraint, relation, value } => write!(
                f,
                "not distributive: relation [{relation}] violates {constraint} (left side evaluates to {})",
                fmt_q(value)
            ),
        }
    }
}

/// Names the operad with the given arity-two symmetry and arity-three
/// relations, or exhibits a violated cancellation condition.
pub fn classify(sym: Symmetry, r3: &[QuadraticRelation]) -> Result<Classification> {
    let system = full_constraint_system(sym)?;
    let mut span = Echelon::new();
    for rel in r3 {
        if rel.sym != sym {
            return input("relation symmetry does not match");
        }
        if let Some((c, v)) = system.violated(rel).into_iter().next() {
            return Ok(Classification::NotDistributive {
                constraint: c.describe(sym),
                relation: rel.to_string(),
                value: v,
            });
        }
        span.insert(&rel.to_sparse());
    }
    let name = match (sym, span.rank()) {
        (Symmetry::None, 0) => "magma (free operad)",
        (Symmetry::None, _) => "Lie-admissible",
        (Symmetry::Skew, 0) => "skew-symmetric magma",
        (Symmetry::Skew, _) => "Lie",
        (Symmetry::Symmetric, 0) => "symmetric magma",
        (Symmetry::Symmetric, _) => unreachable!("symmetric system has only the zero solution"),
    };
    Ok(Classification::Operad(name))
}

/// Sparse polynomial in a few commuting variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2(BTreeMap<Vec<u32>, Q>);

impl Poly2 {
    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    fn scale(&self, a: &Q) -> Self {
        let mut r = Self::default();
        for (e, c) in &self.0 {
            r.add_term(e.clone(), c * a);
        }
        r
    }

    fn mul(&self, o: &Self) -> Self {
        let mut r = Self::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                r.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        r
    }

    fn diff(&self, i: usize) -> Self {
        let mut r = Self::default();
        for (e, c) in &self.0 {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * Q::from_integer(e[i].into()));
            }
        }
        r
    }

    fn random<R: Rng>(rng: &mut R, vars: usize, max_deg: u32) -> Self {
        let mut p = Self::default();
        for _ in 0..3 {
            let e: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..=max_deg)).collect();
            p.add_term(e, q(rng.gen_range(-3..=3)));
        }
        p
    }
}

/// A biderivation `f * g = sum_ij d_i f d_j g P_ij` on a polynomial ring.
struct Biderivation {
    p: Vec<Vec<Poly2>>,
}

impl Biderivation {
    fn star(&self, f: &Poly2, g: &Poly2) -> Poly2 {
        let n = self.p.len();
        let mut out = Poly2::default();
        for i in 0..n {
            let fi = f.diff(i);
            if fi.is_zero() {
                continue;
            }
            for j in 0..n {
                out = out.add(&fi.mul(&g.diff(j)).mul(&self.p[i][j]));
            }
        }
        out
    }

    fn relation(&self, rel: &QuadraticRelation, b: &[Poly2; 3]) -> Poly2 {
        let mut out = Poly2::default();
        if rel.sym == Symmetry::None {
            for (i, s) in s3().iter().enumerate() {
                let (x, y, z) = (&b[s.at(0)], &b[s.at(1)], &b[s.at(2)]);
                out = out.add(&self.star(x, &self.star(y, z)).scale(&rel.coeffs[i]));
                out = out.add(&self.star(&self.star(x, y), z).scale(&rel.coeffs[6 + i]));
            }
        } else {
            for k in 0..3 {
                let t = self.star(&b[k], &self.star(&b[(k + 1) % 3], &b[(k + 2) % 3]));
                out = out.add(&t.scale(&rel.coeffs[k]));
            }
        }
        out
    }
}

/// Concrete cross-check: on a random polynomial biderivation (respecting
/// the symmetry) and random polynomials, the non-Leibniz part
/// `R(.., b'b'', ..) - b' R(.., b'', ..) - b'' R(.., b', ..)` vanishes for
/// every slot and every trial. Returns that verdict.
pub fn symbolic_expand_oracle<R: Rng>(rel: &QuadraticRelation, rng: &mut R, trials: usize) -> bool {
    const VARS: usize = 2;
    for _ in 0..trials {
        let mut p = vec![vec![Poly2::default(); VARS]; VARS];
        for i in 0..VARS {
            for j in 0..VARS {
                p[i][j] = match (rel.sym.epsilon(), j < i) {
                    (Some(eps), true) => p[j][i].scale(&eps),
                    (Some(eps), false) if i == j && eps.is_negative() => Poly2::default(),
                    _ => Poly2::random(rng, VARS, 1),
                };
            }
        }
        let d = Biderivation { p };
        let b: Vec<Poly2> = (0..4).map(|_| Poly2::random(rng, VARS, 2)).collect();
        for slot in 0..3 {
            let (u, v) = (&b[0], &b[1]);
            let mut args = [b[1].clone(), b[2].clone(), b[3].clone()];
            args[slot] = u.mul(v);
            let full = d.relation(rel, &args);
            args[slot] = v.clone();
            let with_v = d.relation(rel, &args).mul(u);
            args[slot] = u.clone();
            let with_u = d.relation(rel, &args).mul(v);
            let obstruction = full.add(&with_v.scale(&-Q::one())).add(&with_u.scale(&-Q::one()));
            if !obstruction.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_one_constraints_match_expected_pairs() {
        let sys = leibniz_obstruction(Symmetry::None, 1).unwrap();
        let pairs: BTreeSet<Vec<usize>> = sys.constraints.iter().map(|c| c.row.keys().copied().collect()).collect();
        let expected: BTreeSet<Vec<usize>> = [vec![6, 7], vec![2, 8], vec![4, 10], vec![3, 5]].into_iter().collect();
        assert_eq!(pairs, expected);
        for c in &sys.constraints {
            assert!(c.row.values().all(|v| v.is_one()));
        }
    }

    #[test]
    fn skew_slot_one_constraint() {
        let sys = leibniz_obstruction(Symmetry::Skew, 1).unwrap();
        assert_eq!(sys.constraints.len(), 1);
        // l2 = -eps l3 with eps = -1, i.e. l2 - l3 = 0
        assert_eq!(sys.constraints[0].row, SparseVec::from([(1, q(1)), (2, q(-1))]));
    }

    #[test]
    fn zero_relation_satisfies_everything() {
        let rel = QuadraticRelation::new(Symmetry::None, vec![Q::zero(); 12]).unwrap();
        assert!(full_constraint_system(Symmetry::None).unwrap().violated(&rel).is_empty());
    }

    #[test]
    fn reduction_of_lie_admissible_under_skew() {
        let r = reduce_symmetric(&QuadraticRelation::lie_admissible().coeffs, Symmetry::Skew);
        assert!(r.iter().all(|c| *c == r[0]) && !r[0].is_zero());
    }
}
