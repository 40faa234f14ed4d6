//! Twisted Poisson brackets on `Sym V` for an S-module `V` concentrated in
//! a single degree: degree 1 gives the tensor algebra `TV` with block
//! permutation twists, degree 0 the ordinary symmetric algebra.
//!
//! A bracket on generators is extended to all products by
//! `{v1...vm, w1...wn} = sum_{i,j} sigma'({vi,wj} v1..^vi..vm w1..^wj..wn)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{input, Error, Result};
use crate::perm::{block_expand, sigma_prime, Perm};
use crate::scalar::Q;
use crate::tensor::{fmt_word, words, GradedTensor, TensorMap, Word};
use crate::ybe;

/// How products of generators are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// `V` in S-module degree 0: commutative monomials (sorted letters).
    Commutative,
    /// `V` in S-module degree 1: tensor words.
    Tensor,
}

impl Flavor {
    pub fn smodule_degree(self) -> usize {
        match self {
            Flavor::Commutative => 0,
            Flavor::Tensor => 1,
        }
    }

    /// S-module degree of a product of `len` generators.
    fn weight(self, len: usize) -> usize {
        len * self.smodule_degree()
    }

    fn normalize(self, mut w: Word) -> Word {
        if self == Flavor::Commutative {
            w.sort_unstable();
        }
        w
    }

    pub fn multiply(self, x: &GradedTensor, y: &GradedTensor) -> GradedTensor {
        let mut out = GradedTensor::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out.add_term(self.normalize([u.as_slice(), v].concat()), &(a * b));
            }
        }
        out
    }

    /// Block permutation action; trivial in the commutative flavor.
    fn act(self, tau: &Perm, sizes: &[usize], t: &GradedTensor) -> Result<GradedTensor> {
        match self {
            Flavor::Commutative => Ok(t.clone()),
            Flavor::Tensor => t.permute(&block_expand(tau, sizes)?),
        }
    }

    /// Basis products of `1..=max_len` generators.
    pub fn basis(self, dim: usize, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for w in words(dim, len) {
                if self == Flavor::Tensor || w.windows(2).all(|p| p[0] <= p[1]) {
                    out.push(w);
                }
            }
        }
        out
    }
}

/// Bracket values `{e_a, e_b}` on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorBracket {
    dim: usize,
    flavor: Flavor,
    table: BTreeMap<(usize, usize), GradedTensor>,
}

impl GeneratorBracket {
    pub fn new(dim: usize, flavor: Flavor, table: BTreeMap<(usize, usize), GradedTensor>) -> Result<Self> {
        for (&(a, b), v) in &table {
            if a >= dim || b >= dim {
                return input(format!("generator pair ({a},{b}) out of range"));
            }
            for (w, _) in v.terms() {
                if w.iter().any(|&x| x >= dim) {
                    return input(format!("letter out of range in {{{a},{b}}}"));
                }
                if flavor == Flavor::Tensor && w.len() != 2 {
                    return Err(Error::Degree { expected: 2, found: w.len() });
                }
                if flavor == Flavor::Commutative && w.windows(2).any(|p| p[0] > p[1]) {
                    return input("commutative bracket values must be sorted monomials");
                }
            }
        }
        let table = table.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Self { dim, flavor, table })
    }

    /// The degree-1 bracket `{e_a, e_b} = r(e_a (x) e_b)`.
    pub fn from_r(r: &TensorMap) -> Result<Self> {
        if r.domain_degree() != 2 || r.codomain_degree() != 2 {
            return Err(Error::Degree { expected: 2, found: r.domain_degree() });
        }
        let dim = r.dim();
        let mut table = BTreeMap::new();
        for a in 0..dim {
            for b in 0..dim {
                table.insert((a, b), r.column(&[a, b]));
            }
        }
        Self::new(dim, Flavor::Tensor, table)
    }

    /// Restriction to generators as a map `V (x) V -> V (x) V`.
    pub fn restrict_to_r(&self) -> Result<TensorMap> {
        if self.flavor != Flavor::Tensor {
            return input("only degree-1 brackets restrict to a map on V (x) V");
        }
        let mut r = TensorMap::zero(self.dim, 2, 2);
        for (&(a, b), v) in &self.table {
            for (w, c) in v.terms() {
                r.add_entry(w.clone(), vec![a, b], c);
            }
        }
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn generator_value(&self, a: usize, b: usize) -> GradedTensor {
        self.table.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Bracket of two basis products, with every output degree checked
    /// against `cap`.
    pub fn extend_words(&self, lhs: &[usize], rhs: &[usize], cap: usize) -> Result<GradedTensor> {
        let (m, n) = (lhs.len(), rhs.len());
        let mut out = GradedTensor::zero();
        if m == 0 || n == 0 {
            return Ok(out);
        }
        if self.flavor == Flavor::Tensor && m + n > cap {
            return Err(Error::Truncation { degree: m + n, cap });
        }
        let deg = self.flavor.smodule_degree();
        let target: Vec<usize> = (0..m + n).collect();
        for i in 0..m {
            for j in 0..n {
                let value = self.generator_value(lhs[i], rhs[j]);
                if value.is_zero() {
                    continue;
                }
                let rest: Word = lhs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, x)| *x)
                    .chain(rhs.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x))
                    .collect();
                let t = self.flavor.multiply(&value, &GradedTensor::basis(rest));
                if self.flavor == Flavor::Commutative && t.max_degree() > cap {
                    return Err(Error::Truncation { degree: t.max_degree(), cap });
                }
                let mut current: Vec<(usize, usize)> = vec![(i, deg), (m + j, deg)];
                current.extend((0..m).filter(|&k| k != i).map(|k| (k, deg)));
                current.extend((0..n).filter(|&k| k != j).map(|k| (m + k, deg)));
                let t = match self.flavor {
                    Flavor::Commutative => t,
                    Flavor::Tensor => t.permute(&sigma_prime(&target, &current)?)?,
                };
                out.add_assign(&t);
            }
        }
        Ok(out)
    }

    /// Bilinear extension to arbitrary elements.
    pub fn extend(&self, x: &GradedTensor, y: &GradedTensor, cap: usize) -> Result<GradedTensor> {
        let mut out = GradedTensor::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out.axpy(&(a * b), &self.extend_words(u, v, cap)?);
            }
        }
        Ok(out)
    }

    fn w(&self, len: usize) -> usize {
        self.flavor.weight(len)
    }

    /// `{u, {v, w}} + (231)^{|v|,|w|,|u|}{v, {w, u}} + (312)^{|w|,|u|,|v|}{w, {u, v}}`.
    pub fn jacobiator(&self, u: &[usize], v: &[usize], w: &[usize], cap: usize) -> Result<GradedTensor> {
        let (du, dv, dw) = (self.w(u.len()), self.w(v.len()), self.w(w.len()));
        let bu = GradedTensor::basis(u.to_vec());
        let bv = GradedTensor::basis(v.to_vec());
        let bw = GradedTensor::basis(w.to_vec());
        let t1 = self.extend(&bu, &self.extend(&bv, &bw, cap)?, cap)?;
        let t2 = self.extend(&bv, &self.extend(&bw, &bu, cap)?, cap)?;
        let t3 = self.extend(&bw, &self.extend(&bu, &bv, cap)?, cap)?;
        let p231 = Perm::one_line(&[2, 3, 1])?;
        let p312 = Perm::one_line(&[3, 1, 2])?;
        let mut out = t1;
        out.add_assign(&self.flavor.act(&p231, &[dv, dw, du], &t2)?);
        out.add_assign(&self.flavor.act(&p312, &[dw, du, dv], &t3)?);
        Ok(out)
    }

    /// `{w, v} + (21)^{|v|,|w|}{v, w}`; zero iff twisted skew-symmetry
    /// holds on the pair.
    pub fn skew_defect(&self, v: &[usize], w: &[usize], cap: usize) -> Result<GradedTensor> {
        let lhs = self.extend_words(w, v, cap)?;
        let p21 = Perm::one_line(&[2, 1])?;
        let rhs = self.flavor.act(&p21, &[self.w(v.len()), self.w(w.len())], &self.extend_words(v, w, cap)?)?;
        Ok(lhs.add(&rhs))
    }

    /// `{uv, w} - u{v, w} - (213)^{|v|,|u|,|w|}(v{u, w})`.
    pub fn leibniz_defect(&self, u: &[usize], v: &[usize], w: &[usize], cap: usize) -> Result<GradedTensor> {
        let uv = self.flavor.normalize([u, v].concat());
        let lhs = self.extend_words(&uv, w, cap)?;
        let bu = GradedTensor::basis(u.to_vec());
        let bv = GradedTensor::basis(v.to_vec());
        let first = self.flavor.multiply(&bu, &self.extend_words(v, w, cap)?);
        let second = self.flavor.multiply(&bv, &self.extend_words(u, w, cap)?);
        let p213 = Perm::one_line(&[2, 1, 3])?;
        let second = self.flavor.act(&p213, &[self.w(v.len()), self.w(u.len()), self.w(w.len())], &second)?;
        Ok(lhs.sub(&first).sub(&second))
    }
}

/// Verdict for one axiom over all checked basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub checked: usize,
    /// First failing tuple and the nonzero defect.
    pub violation: Option<(Vec<Word>, GradedTensor)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "{}: pass ({} tuples)", self.axiom, self.checked),
            Some((args, defect)) => {
                let a: Vec<String> = args.iter().map(|w| format!("[{}]", fmt_word(w))).collect();
                write!(f, "{}: FAIL at ({}) defect {}", self.axiom, a.join(", "), defect)
            }
        }
    }
}

fn total(ws: &[&Word]) -> usize {
    ws.iter().map(|w| w.len()).sum()
}

/// Twisted skew-symmetry on all basis pairs of total degree `<= max_degree`.
pub fn check_twisted_skew(b: &GeneratorBracket, max_degree: usize) -> Result<AxiomReport> {
    let basis = b.flavor.basis(b.dim, max_degree.saturating_sub(1));
    let cap = cap_for(b, max_degree);
    let mut checked = 0;
    for v in &basis {
        for w in &basis {
            if total(&[v, w]) > max_degree {
                continue;
            }
            checked += 1;
            let d = b.skew_defect(v, w, cap)?;
            if !d.is_zero() {
                return Ok(AxiomReport {
                    axiom: "twisted-skew",
                    checked,
                    violation: Some((vec![v.clone(), w.clone()], d)),
                });
            }
        }
    }
    Ok(AxiomReport { axiom: "twisted-skew", checked, violation: None })
}

/// Output cap: degree-1 brackets preserve degree, commutative ones may
/// grow it by the largest generator value degree minus two.
fn cap_for(b: &GeneratorBracket, max_degree: usize) -> usize {
    match b.flavor {
        Flavor::Tensor => max_degree,
        Flavor::Commutative => {
            let grow = b.table.values().map(|v| v.max_degree()).max().unwrap_or(0);
            max_degree + 2 * grow.saturating_sub(1) + 2
        }
    }
}

/// Twisted Jacobi identity on unordered basis triples of total degree
/// `<= max_degree`; the remaining orderings follow from cyclic symmetry of
/// the jacobiator and twisted skew-symmetry.
pub fn check_twisted_jacobi(b: &GeneratorBracket, max_degree: usize) -> Result<AxiomReport> {
    let basis = b.flavor.basis(b.dim, max_degree.saturating_sub(2));
    let cap = cap_for(b, max_degree);
    let mut checked = 0;
    for (x, u) in basis.iter().enumerate() {
        for (y, v) in basis.iter().enumerate().skip(x) {
            for w in basis.iter().skip(y) {
                if total(&[u, v, w]) > max_degree {
                    continue;
                }
                checked += 1;
                let j = b.jacobiator(u, v, w, cap)?;
                if !j.is_zero() {
                    return Ok(AxiomReport {
                        axiom: "twisted-jacobi",
                        checked,
                        violation: Some((vec![u.clone(), v.clone(), w.clone()], j)),
                    });
                }
            }
        }
    }
    Ok(AxiomReport { axiom: "twisted-jacobi", checked, violation: None })
}

/// The Leibniz rule `{u v, w} = u{v,w} + (213)^{|v|,|u|,|w|}(v{u,w})` on
/// basis triples of total degree `<= max_degree`.
pub fn check_twisted_leibniz(b: &GeneratorBracket, max_degree: usize) -> Result<AxiomReport> {
    let basis = b.flavor.basis(b.dim, max_degree.saturating_sub(2));
    let cap = cap_for(b, max_degree);
    let mut checked = 0;
    for u in &basis {
        for v in &basis {
            for w in &basis {
                if total(&[u, v, w]) > max_degree {
                    continue;
                }
                checked += 1;
                let d = b.leibniz_defect(u, v, w, cap)?;
                if !d.is_zero() {
                    return Ok(AxiomReport {
                        axiom: "twisted-leibniz",
                        checked,
                        violation: Some((vec![u.clone(), v.clone(), w.clone()], d)),
                    });
                }
            }
        }
    }
    Ok(AxiomReport { axiom: "twisted-leibniz", checked, violation: None })
}

/// The degree-(1,1,1) jacobiator as a map on `V^{(x)3}`.
pub fn jacobi_degree_one(b: &GeneratorBracket) -> Result<TensorMap> {
    if b.flavor != Flavor::Tensor {
        return input("degree-one jacobiator map needs a degree-1 bracket");
    }
    let mut m = TensorMap::zero(b.dim, 3, 3);
    for w in words(b.dim, 3) {
        let j = b.jacobiator(&w[0..1], &w[1..2], &w[2..3], 3)?;
        for (o, c) in j.terms() {
            m.add_entry(o.clone(), w.clone(), c);
        }
    }
    Ok(m)
}

/// Both directions of the correspondence between skew classical
/// Yang-Baxter solutions and twisted Poisson structures on `TV`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub max_degree: usize,
    pub skew: bool,
    pub cybe_zero: bool,
    pub axioms: Vec<AxiomReport>,
    /// Skew CYBE solution extends to a structure passing every axiom;
    /// `None` when the hypothesis does not hold.
    pub forward: Option<bool>,
    /// The extended bracket passes every axiom and its degree-(1,1)
    /// restriction is a skew CYBE solution; `None` when some axiom fails
    /// (not a twisted Poisson structure).
    pub backward: Option<bool>,
}

impl CorrespondenceReport {
    pub fn consistent(&self) -> bool {
        self.forward != Some(false) && self.backward != Some(false)
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max-degree {}", self.max_degree)?;
        writeln!(f, "skew {}", self.skew)?;
        writeln!(f, "cybe-zero {}", self.cybe_zero)?;
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        match self.forward {
            None => writeln!(f, "forward: hypothesis unmet (not a skew CYBE solution)")?,
            Some(ok) => writeln!(f, "forward: {}", if ok { "pass" } else { "FAIL" })?,
        }
        match self.backward {
            None => write!(f, "backward: not a twisted Poisson structure"),
            Some(ok) => write!(f, "backward: {}", if ok { "pass" } else { "FAIL" }),
        }
    }
}

pub fn poisson_correspondence(r: &TensorMap, max_degree: usize) -> Result<CorrespondenceReport> {
    let skew = ybe::is_skew(r)?;
    let cybe_zero = ybe::cybe_map(r)?.is_zero();
    let b = GeneratorBracket::from_r(r)?;
    let mut axioms = vec![check_twisted_skew(&b, max_degree)?];
    if axioms[0].passed() {
        axioms.push(check_twisted_jacobi(&b, max_degree)?);
    }
    axioms.push(check_twisted_leibniz(&b, max_degree)?);
    let all_pass = axioms.iter().all(|a| a.passed()) && axioms.len() == 3;
    let forward = (skew && cybe_zero).then_some(all_pass);
    let backward = if all_pass {
        let back = b.restrict_to_r()?;
        Some(back == *r && ybe::is_skew(&back)? && ybe::cybe_map(&back)?.is_zero())
    } else {
        None
    };
    Ok(CorrespondenceReport { max_degree, skew, cybe_zero, axioms, forward, backward })
}

/// Structure constants `{e_a, e_b} = sum c e_k` of an ordinary bracket on
/// `V`, as a degree-0 generator bracket on `Sym V`.
pub fn lie_bracket(dim: usize, entries: &[(usize, usize, usize, Q)]) -> Result<GeneratorBracket> {
    let mut table: BTreeMap<(usize, usize), GradedTensor> = BTreeMap::new();
    for (a, b, k, c) in entries {
        table.entry((*a, *b)).or_default().add_term(vec![*k], c);
    }
    GeneratorBracket::new(dim, Flavor::Commutative, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sl2() -> GeneratorBracket {
        // e = 0, f = 1, h = 2
        lie_bracket(
            3,
            &[(0, 1, 2, q(1)), (1, 0, 2, q(-1)), (2, 0, 0, q(2)), (0, 2, 0, q(-2)), (2, 1, 1, q(-2)), (1, 2, 1, q(2))],
        )
        .unwrap()
    }

    #[test]
    fn sl2_poisson_on_sym() {
        let b = sl2();
        assert!(b.extend_words(&[0, 1], &[2], 4).unwrap().is_zero());
        assert!(check_twisted_skew(&b, 4).unwrap().passed());
        assert!(check_twisted_jacobi(&b, 4).unwrap().passed());
        assert!(check_twisted_leibniz(&b, 4).unwrap().passed());
    }

    #[test]
    fn non_lie_commutative_bracket_fails_jacobi() {
        // skew but Jacobi fails: {e,f} = e, {f,h} = e, {e,h} = f
        let b = lie_bracket(
            3,
            &[(0, 1, 0, q(1)), (1, 0, 0, q(-1)), (1, 2, 0, q(1)), (2, 1, 0, q(-1)), (0, 2, 1, q(1)), (2, 0, 1, q(-1))],
        )
        .unwrap();
        assert!(check_twisted_skew(&b, 3).unwrap().passed());
        assert!(!check_twisted_jacobi(&b, 3).unwrap().passed());
    }

    #[test]
    fn base_case_and_leibniz_form() {
        let r = crate::fixtures::skew_from_coords(
            2,
            &crate::fixtures::skew_coordinates(2),
            &[q(1), q(0), q(-1), q(2), q(0), q(1)],
        );
        let b = GeneratorBracket::from_r(&r).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(b.extend_words(&[x], &[y], 2).unwrap(), r.column(&[x, y]));
            }
        }
        for w in words(2, 3) {
            assert!(b.leibniz_defect(&w[0..1], &w[1..2], &w[2..3], 3).unwrap().is_zero());
        }
    }

    #[test]
    fn truncation_is_reported() {
        let r = TensorMap::identity(2, 2);
        let b = GeneratorBracket::from_r(&r).unwrap();
        assert!(matches!(b.extend_words(&[0, 1], &[1, 1], 3), Err(Error::Truncation { .. })));
    }

    #[test]
    fn identity_is_not_twisted_poisson() {
        let rep = poisson_correspondence(&TensorMap::identity(2, 2), 3).unwrap();
        assert!(!rep.skew);
        assert_eq!(rep.forward, None);
        assert_eq!(rep.backward, None);
        assert!(!rep.axioms[0].passed());
    }

    #[test]
    fn zero_passes_both_ways() {
        let rep = poisson_correspondence(&TensorMap::zero(2, 2, 2), 3).unwrap();
        assert_eq!(rep.forward, Some(true));
        assert_eq!(rep.backward, Some(true));
    }
}
