//! Sparse tensors over a finite basis of `V` and exact linear maps between
//! tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::linalg::SparseVec;
use crate::perm::Perm;
use crate::scalar::{fmt_q, Q};

/// A basis word `e_{w1} (x) ... (x) e_{wn}`; letters are 0-based generator
/// indices.
pub type Word = Vec<usize>;

/// All words of length `len` over `dim` letters, lexicographic.
pub fn words(dim: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..dim).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Position of `w` in the lexicographic listing of [`words`].
pub fn word_index(w: &[usize], dim: usize) -> usize {
    w.iter().fold(0, |acc, &a| acc * dim + a)
}

pub fn fmt_word(w: &[usize]) -> String {
    if w.is_empty() {
        "_".to_string()
    } else {
        w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Finitely supported element of the tensor algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedTensor {
    terms: BTreeMap<Word, Q>,
}

impl GradedTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Q::one());
        Self { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Word, Q)>) -> Self {
        let mut t = Self::zero();
        for (w, c) in iter {
            t.add_term(w, &c);
        }
        t
    }

    pub fn add_term(&mut self, w: Word, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[usize]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.axpy(&Q::one(), other);
    }

    pub fn axpy(&mut self, a: &Q, other: &Self) {
        if a.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            let e = self.terms.entry(w.clone()).or_insert_with(Q::zero);
            *e += a * c;
            if e.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-Q::one(), other);
        out
    }

    pub fn scale(&self, a: &Q) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * a)).collect() }
    }

    /// Concatenation product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Moves the letter in slot `j` of every word to slot `p(j)`.
    pub fn permute(&self, p: &Perm) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            if w.len() != p.len() {
                return Err(Error::Degree { expected: p.len(), found: w.len() });
            }
            out.add_term(p.permute(w), c);
        }
        Ok(out)
    }

    /// Keeps only the terms of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        Self { terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

impl fmt::Display for GradedTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{}*[{}]", fmt_q(c), fmt_word(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact linear map `V^{(x)m} -> V^{(x)n}` stored as sparse rows
/// `out-word -> in-word -> coefficient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorMap {
    dim: usize,
    domain: usize,
    codomain: usize,
    rows: BTreeMap<Word, BTreeMap<Word, Q>>,
}

impl TensorMap {
    pub fn zero(dim: usize, domain: usize, codomain: usize) -> Self {
        Self { dim, domain, codomain, rows: BTreeMap::new() }
    }

    pub fn identity(dim: usize, degree: usize) -> Self {
        let mut m = Self::zero(dim, degree, degree);
        for w in words(dim, degree) {
            m.add_entry(w.clone(), w, &Q::one());
        }
        m
    }

    /// Builds a map from `(out, in, coefficient)` triples, validating word
    /// lengths and letters.
    pub fn from_entries(
        dim: usize,
        domain: usize,
        codomain: usize,
        entries: impl IntoIterator<Item = (Word, Word, Q)>,
    ) -> Result<Self> {
        let mut m = Self::zero(dim, domain, codomain);
        for (o, i, c) in entries {
            m.check_word(&o, codomain)?;
            m.check_word(&i, domain)?;
            m.add_entry(o, i, &c);
        }
        Ok(m)
    }

    fn check_word(&self, w: &[usize], len: usize) -> Result<()> {
        if w.len() != len {
            return Err(Error::Degree { expected: len, found: w.len() });
        }
        if let Some(a) = w.iter().find(|&&a| a >= self.dim) {
            return input(format!("letter {a} out of range for dim {}", self.dim));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain_degree(&self) -> usize {
        self.domain
    }

    pub fn codomain_degree(&self) -> usize {
        self.codomain
    }

    pub fn add_entry(&mut self, out: Word, inp: Word, c: &Q) {
        if c.is_zero() {
            return;
        }
        let row = self.rows.entry(out.clone()).or_default();
        let e = row.entry(inp.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            row.remove(&inp);
            if row.is_empty() {
                self.rows.remove(&out);
            }
        }
    }

    pub fn get(&self, out: &[usize], inp: &[usize]) -> Q {
        self.rows.get(out).and_then(|r| r.get(inp)).cloned().unwrap_or_else(Q::zero)
    }

    /// Entries in lexicographic `(out, in)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Word, &Q)> {
        self.rows.iter().flat_map(|(o, r)| r.iter().map(move |(i, c)| (o, i, c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// First nonzero entry in lexicographic order.
    pub fn first_entry(&self) -> Option<(Word, Word, Q)> {
        self.entries().next().map(|(o, i, c)| (o.clone(), i.clone(), c.clone()))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return input(format!("dimension mismatch {} vs {}", self.dim, other.dim));
        }
        if self.domain != other.domain {
            return Err(Error::Degree { expected: self.domain, found: other.domain });
        }
        if self.codomain != other.codomain {
            return Err(Error::Degree { expected: self.codomain, found: other.codomain });
        }
        Ok(())
    }

    pub fn axpy(&mut self, a: &Q, other: &Self) -> Result<()> {
        self.same_shape(other)?;
        for (o, i, c) in other.entries() {
            self.add_entry(o.clone(), i.clone(), &(a * c));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(&Q::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy(&-Q::one(), other)?;
        Ok(out)
    }

    pub fn scale(&self, a: &Q) -> Self {
        let mut out = Self::zero(self.dim, self.domain, self.codomain);
        if a.is_zero() {
            return out;
        }
        for (o, i, c) in self.entries() {
            out.add_entry(o.clone(), i.clone(), &(c * a));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// `self . g` (apply `g` first).
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.dim != g.dim {
            return input("dimension mismatch in composition");
        }
        if self.domain != g.codomain {
            return Err(Error::Degree { expected: self.domain, found: g.codomain });
        }
        let mut out = Self::zero(self.dim, g.domain, self.codomain);
        for (o, row) in &self.rows {
            let mut acc: BTreeMap<Word, Q> = BTreeMap::new();
            for (mid, a) in row {
                if let Some(grow) = g.rows.get(mid) {
                    for (i, b) in grow {
                        *acc.entry(i.clone()).or_insert_with(Q::zero) += a * b;
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            if !acc.is_empty() {
                out.rows.insert(o.clone(), acc);
            }
        }
        Ok(out)
    }

    /// `self . g - g . self`.
    pub fn commutator(&self, g: &Self) -> Result<Self> {
        self.compose(g)?.sub(&g.compose(self)?)
    }

    /// `self (x) g`, acting on the first `m` and last `m'` slots.
    pub fn tensor(&self, g: &Self) -> Result<Self> {
        if self.dim != g.dim {
            return input("dimension mismatch in tensor product");
        }
        let mut out = Self::zero(self.dim, self.domain + g.domain, self.codomain + g.codomain);
        for (o1, i1, a) in self.entries() {
            for (o2, i2, b) in g.entries() {
                out.add_entry([o1.as_slice(), o2].concat(), [i1.as_slice(), i2].concat(), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, t: &GradedTensor) -> Result<GradedTensor> {
        let mut by_in: BTreeMap<&Word, Vec<(&Word, &Q)>> = BTreeMap::new();
        for (o, i, c) in self.entries() {
            by_in.entry(i).or_default().push((o, c));
        }
        let mut out = GradedTensor::zero();
        for (w, c) in t.terms() {
            if w.len() != self.domain {
                return Err(Error::Degree { expected: self.domain, found: w.len() });
            }
            if let Some(col) = by_in.get(w) {
                for (o, a) in col {
                    out.add_term((*o).clone(), &(c * *a));
                }
            }
        }
        Ok(out)
    }

    /// Image of a single basis word.
    pub fn column(&self, inp: &[usize]) -> GradedTensor {
        GradedTensor::from_terms(self.rows.iter().filter_map(|(o, r)| r.get(inp).map(|c| (o.clone(), c.clone()))))
    }

    /// The operator of the slot permutation `p` on `V^{(x)n}`.
    pub fn permutation(dim: usize, p: &Perm) -> Self {
        let n = p.len();
        let mut m = Self::zero(dim, n, n);
        for w in words(dim, n) {
            m.add_entry(p.permute(&w), w, &Q::one());
        }
        m
    }

    /// `P . self . P^{-1}` for an endomorphism.
    pub fn conjugate(&self, p: &Perm) -> Result<Self> {
        let pm = Self::permutation(self.dim, p);
        let pinv = Self::permutation(self.dim, &p.inverse());
        pm.compose(self)?.compose(&pinv)
    }

    /// `r^{21} = swap . r . swap`.
    pub fn flip(&self) -> Result<Self> {
        if self.domain != 2 || self.codomain != 2 {
            return Err(Error::Degree { expected: 2, found: self.domain });
        }
        self.conjugate(&Perm::transposition(2, 0, 1))
    }

    /// Places an endomorphism of `V^{(x)k}` on the 0-based `slots` of
    /// `V^{(x)n}` (its i-th tensor factor acting in `slots[i]`), identity
    /// elsewhere.
    pub fn embed(&self, slots: &[usize], n: usize) -> Result<Self> {
        let k = self.domain;
        if self.codomain != k || slots.len() != k {
            return input("embedding needs an endomorphism and one slot per factor");
        }
        let mut seen = vec![false; n];
        for &s in slots {
            if s >= n || seen[s] {
                return input(format!("bad slot list {slots:?} for degree {n}"));
            }
            seen[s] = true;
        }
        let others: Vec<usize> = (0..n).filter(|s| !seen[*s]).collect();
        let mut out = Self::zero(self.dim, n, n);
        for rest in words(self.dim, others.len()) {
            for (o, i, c) in self.entries() {
                let mut ow = vec![0; n];
                let mut iw = vec![0; n];
                for (t, &s) in others.iter().enumerate() {
                    ow[s] = rest[t];
                    iw[s] = rest[t];
                }
                for (t, &s) in slots.iter().enumerate() {
                    ow[s] = o[t];
                    iw[s] = i[t];
                }
                out.add_entry(ow, iw, c);
            }
        }
        Ok(out)
    }

    /// `r^{ij}` on `V^{(x)n}` with 1-based `i < j <= n`.
    pub fn embed_components(&self, i: usize, j: usize, n: usize) -> Result<Self> {
        if self.domain != 2 || self.codomain != 2 {
            return Err(Error::Degree { expected: 2, found: self.domain });
        }
        if i == 0 || i >= j || j > n {
            return input(format!("need 1 <= i < j <= n, got ({i},{j},{n})"));
        }
        self.embed(&[i - 1, j - 1], n)
    }

    /// Like [`embed_components`](Self::embed_components) but accepting any
    /// ordered pair of distinct slots, e.g. `r^{31}`.
    pub fn at(&self, i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j == 0 || i == j || i > n || j > n {
            return input(format!("bad slot pair ({i},{j}) for degree {n}"));
        }
        self.embed(&[i - 1, j - 1], n)
    }

    /// Row-major flattening into a sparse vector indexed by
    /// `out_index * dim^m + in_index`.
    pub fn to_vec(&self) -> SparseVec {
        let cols = self.dim.pow(self.domain as u32);
        self.entries().map(|(o, i, c)| (word_index(o, self.dim) * cols + word_index(i, self.dim), c.clone())).collect()
    }

    pub fn from_vec(dim: usize, domain: usize, codomain: usize, v: &SparseVec) -> Self {
        let cols = dim.pow(domain as u32);
        let in_words = words(dim, domain);
        let out_words = words(dim, codomain);
        let mut m = Self::zero(dim, domain, codomain);
        for (k, c) in v {
            m.add_entry(out_words[k / cols].clone(), in_words[k % cols].clone(), c);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scalar::q;

    fn rand_map(seed: u64, dim: usize, deg: usize) -> TensorMap {
        crate::fixtures::random_map(&mut ChaCha8Rng::seed_from_u64(seed), dim, deg, 0.35)
    }

    #[test]
    fn apply_permutation_examples() {
        let t = GradedTensor::basis(vec![0, 1]);
        assert_eq!(t.permute(&Perm::identity(2)).unwrap(), t);
        assert_eq!(t.permute(&Perm::parse("(21)").unwrap()).unwrap(), GradedTensor::basis(vec![1, 0]));
        let e = crate::perm::block_expand(&Perm::parse("(21)").unwrap(), &[1, 2]).unwrap();
        assert_eq!(GradedTensor::basis(vec![0, 1, 2]).permute(&e).unwrap(), GradedTensor::basis(vec![1, 2, 0]));
        assert!(t.permute(&Perm::identity(3)).is_err());
    }

    #[test]
    fn eq1_convention_on_homogeneous_tensors() {
        let u = GradedTensor::from_terms([(vec![0, 1], q(2)), (vec![1, 1], q(-1))]);
        let w = GradedTensor::from_terms([(vec![1, 0, 0], q(3)), (vec![0, 1, 1], q(1))]);
        let e = crate::perm::block_expand(&Perm::parse("(21)").unwrap(), &[2, 3]).unwrap();
        assert_eq!(u.tensor(&w).permute(&e).unwrap(), w.tensor(&u));
    }

    #[test]
    fn embedding_examples() {
        let r = rand_map(7, 2, 2);
        let id = TensorMap::identity(2, 2);
        assert_eq!(id.embed_components(1, 3, 3).unwrap(), TensorMap::identity(2, 3));
        assert_eq!(r.embed_components(2, 3, 3).unwrap(), TensorMap::identity(2, 1).tensor(&r).unwrap());
        // r^{13} as the slot-(2,3) swap conjugate of r (x) Id
        let r12 = r.tensor(&TensorMap::identity(2, 1)).unwrap();
        let conj = r12.conjugate(&Perm::transposition(3, 1, 2)).unwrap();
        assert_eq!(r.embed_components(1, 3, 3).unwrap(), conj);
        // direct definition entrywise
        let r13 = r.embed_components(1, 3, 3).unwrap();
        for o in words(2, 3) {
            for i in words(2, 3) {
                let expect = if o[1] == i[1] { r.get(&[o[0], o[2]], &[i[0], i[2]]) } else { q(0) };
                assert_eq!(r13.get(&o, &i), expect);
            }
        }
        assert!(r.embed_components(2, 2, 3).is_err());
        assert!(r.embed_components(1, 4, 3).is_err());
    }

    #[test]
    fn compose_laws() {
        let f = rand_map(1, 2, 2);
        let g = rand_map(2, 2, 2);
        let h = rand_map(3, 2, 2);
        let id = TensorMap::identity(2, 2);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert!(f.compose(&TensorMap::zero(2, 2, 2)).unwrap().is_zero());
        let lhs = f.add(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&h).unwrap().add(&g.compose(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(f.compose(&TensorMap::zero(2, 3, 3)).is_err());
    }

    #[test]
    fn vec_roundtrip() {
        let f = rand_map(9, 2, 2);
        assert_eq!(TensorMap::from_vec(2, 2, 2, &f.to_vec()), f);
    }
}
