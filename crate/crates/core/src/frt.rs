//! Graded pieces of the FRT bialgebra of a unitary quantum Yang-Baxter
//! solution and the R-twisted Schur-Weyl decomposition of `V^{(x)m}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::linalg::{rank_of, same_span, Echelon, SparseVec};
use crate::perm::Perm;
use crate::scalar::{fmt_q, q, Q};
use crate::tensor::{word_index, words, TensorMap};
use crate::ybe::{qybe_residual, unitarity_check};

/// Partition of `m`, rows weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YoungDiagram(Vec<usize>);

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return input("Young diagram rows must be positive");
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return input(format!("rows {rows:?} are not weakly decreasing"));
        }
        Ok(Self(rows))
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.0.first().copied().unwrap_or(0);
        Self((0..cols).map(|c| self.0.iter().filter(|r| **r > c).count()).collect())
    }

    /// All partitions of `m`, largest first row first.
    pub fn all(m: usize) -> Vec<Self> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if rest == 0 {
                out.push(YoungDiagram(cur.clone()));
                return;
            }
            for r in (1..=rest.min(max)).rev() {
                cur.push(r);
                go(rest - r, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Dimension of the irreducible representation, by the hook formula.
    pub fn hook_dimension(&self) -> u128 {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, r) in self.0.iter().enumerate() {
            for j in 0..*r {
                hooks *= (r - j + conj.0[j] - i - 1) as u128;
            }
        }
        (1..=self.size() as u128).product::<u128>() / hooks
    }

    /// Row of every box in the row-major filling `0, 1, ..`.
    fn row_of(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, r)| std::iter::repeat_n(i, *r)).collect()
    }

    fn col_of(&self) -> Vec<usize> {
        self.0.iter().flat_map(|r| 0..*r).collect()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let rows = body
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// Element of `Q[S_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    m: usize,
    terms: BTreeMap<Perm, Q>,
}

impl GroupAlgebraElement {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    pub fn identity(m: usize) -> Self {
        Self::basis(Perm::identity(m))
    }

    pub fn basis(p: Perm) -> Self {
        let m = p.len();
        Self { m, terms: BTreeMap::from([(p, Q::one())]) }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Perm) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Perm, c: &Q) {
        assert_eq!(p.len(), self.m, "permutation of the wrong degree");
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.m);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::Degree { expected: self.m, found: other.m });
        }
        let mut out = Self::zero(self.m);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                out.add_term(p.compose(r), &(a * b));
            }
        }
        Ok(out)
    }

    /// Coordinates in the basis `Perm::all(m)`.
    pub fn to_vec(&self) -> SparseVec {
        let all = Perm::all(self.m);
        self.terms.iter().map(|(p, c)| (all.binary_search(p).expect("lex order"), c.clone())).collect()
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{}*{p}", fmt_q(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `a_lambda b_lambda` for the row-major tableau: the row symmetrizer
/// times the signed column antisymmetrizer.
pub fn young_symmetrizer(lam: &YoungDiagram) -> GroupAlgebraElement {
    let m = lam.size();
    let (rows, cols) = (lam.row_of(), lam.col_of());
    let mut a = GroupAlgebraElement::zero(m);
    let mut b = GroupAlgebraElement::zero(m);
    for p in Perm::all(m) {
        if (0..m).all(|k| rows[p.at(k)] == rows[k]) {
            a.add_term(p.clone(), &Q::one());
        }
        if (0..m).all(|k| cols[p.at(k)] == cols[k]) {
            b.add_term(p.clone(), &q(p.sign() as i64));
        }
    }
    a.mul(&b).expect("same degree")
}

/// Rank of the left ideal `Q[S_m] x`.
pub fn left_ideal_dimension(x: &GroupAlgebraElement) -> usize {
    let vs: Vec<SparseVec> = Perm::all(x.degree())
        .into_iter()
        .map(|p| GroupAlgebraElement::basis(p).mul(x).expect("same degree").to_vec())
        .collect();
    rank_of(&vs)
}

fn rows_of(map: &TensorMap) -> Vec<SparseVec> {
    let mut rows: BTreeMap<&Vec<usize>, SparseVec> = BTreeMap::new();
    for (o, i, c) in map.entries() {
        rows.entry(o).or_default().insert(word_index(i, map.dim()), c.clone());
    }
    rows.into_values().collect()
}

/// Exact rank of a linear map.
pub fn image_dimension(map: &TensorMap) -> usize {
    rank_of(&rows_of(map))
}

/// `V^{(x)m}` with `S_m` acting through `tau_{(b,b+1)} R^{b,b+1}`.
#[derive(Debug, Clone)]
pub struct RPermutationAction {
    dim: usize,
    m: usize,
    generators: Vec<TensorMap>,
    elements: BTreeMap<Perm, TensorMap>,
}

fn generator_maps(r: &TensorMap, m: usize) -> Result<Vec<TensorMap>> {
    let dim = r.dim();
    (0..m.saturating_sub(1))
        .map(|b| {
            let swap = TensorMap::permutation(dim, &Perm::transposition(m, b, b + 1));
            swap.compose(&r.at(b + 1, b + 2, m)?)
        })
        .collect()
}

/// The maps `tau_{(b,b+1)} R^{b,b+1}` with no hypotheses on `R`; for a
/// non-unitary solution these generate a braid group action.
pub fn braid_generators(r: &TensorMap, m: usize) -> Result<Vec<TensorMap>> {
    if r.domain_degree() != 2 || r.codomain_degree() != 2 {
        return Err(Error::Degree { expected: 2, found: r.domain_degree() });
    }
    if m == 0 {
        return input("m must be positive");
    }
    generator_maps(r, m)
}

/// First failing Coxeter relation among `generators`, if any.
pub fn coxeter_violation(generators: &[TensorMap], dim: usize, m: usize) -> Result<Option<String>> {
    let id = TensorMap::identity(dim, m);
    for (b, g) in generators.iter().enumerate() {
        if g.compose(g)? != id {
            return Ok(Some(format!("s{}^2 != 1", b + 1)));
        }
    }
    for b in 0..generators.len() {
        for c in b + 1..generators.len() {
            let (x, y) = (&generators[b], &generators[c]);
            let holds = if c == b + 1 {
                x.compose(y)?.compose(x)? == y.compose(x)?.compose(y)?
            } else {
                x.compose(y)? == y.compose(x)?
            };
            if !holds {
                return Ok(Some(format!("relation between s{} and s{} fails", b + 1, c + 1)));
            }
        }
    }
    Ok(None)
}

/// Unitarity and the quantum Yang-Baxter equation.
pub fn check_hypotheses(r: &TensorMap) -> Result<()> {
    if !unitarity_check(r)? {
        return Err(Error::Precondition("R is not unitary: R^21 R != Id".into()));
    }
    let qy = qybe_residual(r)?;
    if !qy.is_zero {
        return Err(Error::Precondition(format!("R does not solve the QYBE: residual {qy}")));
    }
    Ok(())
}

pub fn r_permutation_action(r: &TensorMap, m: usize) -> Result<RPermutationAction> {
    check_hypotheses(r)?;
    if m == 0 {
        return input("m must be positive");
    }
    let dim = r.dim();
    let generators = generator_maps(r, m)?;
    if let Some(v) = coxeter_violation(&generators, dim, m)? {
        return Err(Error::Precondition(format!("Coxeter relations fail: {v}")));
    }
    // breadth-first over S_m: act(s_b . p) = g_b act(p)
    let mut elements = BTreeMap::from([(Perm::identity(m), TensorMap::identity(dim, m))]);
    let mut queue = VecDeque::from([Perm::identity(m)]);
    while let Some(p) = queue.pop_front() {
        let base = elements[&p].clone();
        for (b, g) in generators.iter().enumerate() {
            let next = Perm::transposition(m, b, b + 1).compose(&p);
            if !elements.contains_key(&next) {
                elements.insert(next.clone(), g.compose(&base)?);
                queue.push_back(next);
            }
        }
    }
    Ok(RPermutationAction { dim, m, generators, elements })
}

impl RPermutationAction {
    pub fn generators(&self) -> &[TensorMap] {
        &self.generators
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn of(&self, p: &Perm) -> &TensorMap {
        &self.elements[p]
    }

    pub fn evaluate(&self, x: &GroupAlgebraElement) -> Result<TensorMap> {
        if x.degree() != self.m {
            return Err(Error::Degree { expected: self.m, found: x.degree() });
        }
        let mut out = TensorMap::zero(self.dim, self.m, self.m);
        for (p, c) in x.terms() {
            out.axpy(c, self.of(p))?;
        }
        Ok(out)
    }

    /// Basis of the span of the image of `S_m` in `End(V^{(x)m})`.
    pub fn span(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new();
        for t in self.elements.values() {
            e.insert(&t.to_vec());
        }
        e.rows().map(|(_, v)| v.clone()).collect()
    }
}

/// Basis of `{X : X g = g X for all g}` in `End(V^{(x)m})`, as maps.
pub fn commutant(generators: &[TensorMap], dim: usize, m: usize) -> Result<Vec<TensorMap>> {
    let n = dim.pow(m as u32);
    for g in generators {
        if g.dim() != dim || g.domain_degree() != m || g.codomain_degree() != m {
            return input("commutant generators must be endomorphisms of V^(x)m");
        }
    }
    let mut system = Echelon::new();
    for g in generators {
        let mut gm: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); n];
        for (o, i, c) in g.entries() {
            gm[word_index(o, dim)].insert(word_index(i, dim), c.clone());
        }
        let mut by_col: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); n];
        for (o, row) in gm.iter().enumerate() {
            for (i, c) in row {
                by_col[*i].insert(o, c.clone());
            }
        }
        // (X g - g X)[o, i] = sum_k X[o,k] g[k,i] - g[o,k] X[k,i]
        for o in 0..n {
            for i in 0..n {
                let mut row = SparseVec::new();
                for (k, c) in &by_col[i] {
                    *row.entry(o * n + k).or_insert_with(Q::zero) += c;
                }
                for (k, c) in &gm[o] {
                    *row.entry(k * n + i).or_insert_with(Q::zero) -= c;
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    system.insert(&row);
                }
            }
        }
    }
    Ok(system.nullspace(n * n).iter().map(|v| TensorMap::from_vec(dim, m, m, v)).collect())
}

fn span_basis(maps: &[TensorMap]) -> Vec<SparseVec> {
    maps.iter().map(TensorMap::to_vec).collect()
}

/// Both computations of `dim H_R[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HrDimension {
    pub m: usize,
    /// `(dim V)^{2m}` words in the generators `L_ij`.
    pub free: usize,
    /// Rank of the degree-`m` part of the relation ideal.
    pub relations: usize,
    /// `free - relations`.
    pub quotient: usize,
    /// Dimension of the commutant of the R-permutation action.
    pub commutant: usize,
}

impl HrDimension {
    pub fn agree(&self) -> bool {
        self.quotient == self.commutant
    }
}

impl fmt::Display for HrDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "free algebra words: {}", self.free)?;
        writeln!(f, "relation rank: {}", self.relations)?;
        writeln!(f, "dim H_R[m] by relations: {}", self.quotient)?;
        writeln!(f, "dim H_R[m] by commutant: {}", self.commutant)?;
        write!(f, "agree: {}", self.agree())
    }
}

/// The quadratic relations `R^{12} L^{13} L^{23} - L^{23} L^{13} R^{12}`
/// as vectors over the words `L_{x} L_{y}`, letter `L_ij` at `i n + j`.
pub fn frt_relations(r: &TensorMap) -> Vec<SparseVec> {
    let n = r.dim();
    let letters = n * n;
    let l = |i: usize, j: usize| i * n + j;
    let mut out = Vec::new();
    for (a, c, b, d) in words(n, 4).into_iter().map(|w| (w[0], w[1], w[2], w[3])) {
        let mut rel = SparseVec::new();
        // sum_{i,k} R[(a,c),(i,k)] L_ib L_kd
        for ik in words(n, 2) {
            let coef = r.get(&[a, c], &ik);
            if !coef.is_zero() {
                *rel.entry(l(ik[0], b) * letters + l(ik[1], d)).or_insert_with(Q::zero) += coef;
            }
        }
        // - sum_{j,l} L_cl L_aj R[(j,l),(b,d)]
        for jl in words(n, 2) {
            let coef = r.get(&jl, &[b, d]);
            if !coef.is_zero() {
                *rel.entry(l(c, jl[1]) * letters + l(a, jl[0])).or_insert_with(Q::zero) -= coef;
            }
        }
        rel.retain(|_, v| !v.is_zero());
        if !rel.is_empty() {
            out.push(rel);
        }
    }
    out
}

/// `dim H_R[m]` from the presentation and from the commutant.
pub fn hr_graded_dimension(r: &TensorMap, m: usize) -> Result<HrDimension> {
    check_hypotheses(r)?;
    if m == 0 {
        return input("m must be positive");
    }
    let n = r.dim();
    let letters = n * n;
    let free = letters.pow(m as u32);
    let rels = frt_relations(r);
    let mut ideal = Echelon::new();
    if m >= 2 {
        for p in 0..=m - 2 {
            let right = letters.pow((m - 2 - p) as u32);
            for pre in 0..letters.pow(p as u32) {
                for post in 0..right {
                    for rel in &rels {
                        let v: SparseVec = rel
                            .iter()
                            .map(|(w, c)| ((pre * letters * letters + w) * right + post, c.clone()))
                            .collect();
                        ideal.insert(&v);
                    }
                }
            }
        }
    }
    let relations = ideal.rank();
    let action = r_permutation_action(r, m)?;
    let commutant = commutant(action.generators(), n, m)?.len();
    Ok(HrDimension { m, free, relations, quotient: free - relations, commutant })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRow {
    pub lambda: YoungDiagram,
    /// Hook formula.
    pub rho_dim: u128,
    /// Rank of the left ideal generated by the Young symmetrizer.
    pub rho_dim_group_algebra: usize,
    /// Rank of `c_lambda(R)` on `V^{(x)m}`.
    pub comodule_dim: usize,
    /// Dimension of the span of `sigma c_lambda(R) V^{(x)m}` over all `sigma`.
    pub isotypic_dim: usize,
    /// `c_lambda(R) V^{(x)m}` is preserved by the commutant.
    pub invariant: bool,
}

impl PartitionRow {
    pub fn included(&self) -> bool {
        self.comodule_dim > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub m: usize,
    pub dim_v: usize,
    pub rows: Vec<PartitionRow>,
    /// `sum rho_dim * comodule_dim`.
    pub total: u128,
    /// `sum isotypic_dim`.
    pub isotypic_total: usize,
    /// Dimension of the span of the R-permutation action.
    pub sr_dim: usize,
    /// Dimension of its commutant.
    pub hr_dim: usize,
    /// The commutant of the commutant is the span of the action.
    pub double_commutant: bool,
}

impl DecompositionReport {
    pub fn full_dimension(&self) -> u128 {
        (self.dim_v as u128).pow(self.m as u32)
    }

    pub fn passed(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| {
            r.rho_dim == r.rho_dim_group_algebra as u128
                && r.isotypic_dim as u128 == r.rho_dim * r.comodule_dim as u128
                && r.invariant
        });
        let squares: usize = self.rows.iter().map(|r| r.comodule_dim * r.comodule_dim).sum();
        let blocks: u128 = self.rows.iter().filter(|r| r.included()).map(|r| r.rho_dim * r.rho_dim).sum();
        rows_ok
            && self.total == self.full_dimension()
            && self.isotypic_total as u128 == self.full_dimension()
            && squares == self.hr_dim
            && blocks == self.sr_dim as u128
            && self.double_commutant
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m = {}, dim V = {}", self.m, self.dim_v)?;
        writeln!(f, "lambda     rho  rho(rank)  c_lambda(R)V  isotypic  invariant")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<10} {:>3}  {:>9}  {:>12}  {:>8}  {}",
                r.lambda.to_string(),
                r.rho_dim,
                r.rho_dim_group_algebra,
                r.comodule_dim,
                r.isotypic_dim,
                if r.invariant { "yes" } else { "NO" }
            )?;
        }
        writeln!(f, "sum rho * c_lambda(R)V = {} (expected {})", self.total, self.full_dimension())?;
        writeln!(f, "sum isotypic = {}", self.isotypic_total)?;
        writeln!(f, "dim SR_m = {}, dim HR_m = {}", self.sr_dim, self.hr_dim)?;
        writeln!(f, "double commutant equals SR_m: {}", self.double_commutant)?;
        write!(f, "passed: {}", self.passed())
    }
}

/// Whether every map in `ops` sends the column space of `sub` into itself.
fn preserves(ops: &[TensorMap], sub: &TensorMap) -> Result<bool> {
    let dim = sub.dim();
    let m = sub.domain_degree();
    let image = |t: &TensorMap| -> Vec<SparseVec> {
        let tr = TensorMap::from_entries(dim, m, m, t.entries().map(|(o, i, c)| (i.clone(), o.clone(), c.clone())))
            .expect("square");
        rows_of(&tr)
    };
    let mut base = Echelon::new();
    for v in image(sub) {
        base.insert(&v);
    }
    for x in ops {
        for v in image(&x.compose(sub)?) {
            if !base.contains(&v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn schur_weyl_decompose(r: &TensorMap, m: usize) -> Result<DecompositionReport> {
    let action = r_permutation_action(r, m)?;
    let dim_v = r.dim();
    let hr = commutant(action.generators(), dim_v, m)?;
    let span = action.span();
    let cc = commutant(&hr, dim_v, m)?;
    let double_commutant = same_span(&span_basis(&cc), &span);
    let mut rows = Vec::new();
    for lambda in YoungDiagram::all(m) {
        let c = young_symmetrizer(&lambda);
        let cr = action.evaluate(&c)?;
        let comodule_dim = image_dimension(&cr);
        let mut iso = Echelon::new();
        for p in Perm::all(m) {
            let moved = action.of(&p).compose(&cr)?;
            let tr = TensorMap::from_entries(
                dim_v,
                m,
                m,
                moved.entries().map(|(o, i, c)| (i.clone(), o.clone(), c.clone())),
            )?;
            for v in rows_of(&tr) {
                iso.insert(&v);
            }
        }
        rows.push(PartitionRow {
            rho_dim: lambda.hook_dimension(),
            rho_dim_group_algebra: left_ideal_dimension(&c),
            comodule_dim,
            isotypic_dim: iso.rank(),
            invariant: preserves(&hr, &cr)?,
            lambda,
        });
    }
    let total = rows.iter().map(|r| r.rho_dim * r.comodule_dim as u128).sum();
    let isotypic_total = rows.iter().map(|r| r.isotypic_dim).sum();
    Ok(DecompositionReport {
        m,
        dim_v,
        rows,
        total,
        isotypic_total,
        sr_dim: span.len(),
        hr_dim: hr.len(),
        double_commutant,
    })
}

/// Diagonal `R(e_i (x) e_j) = q_ij e_i (x) e_j`.
pub fn diagonal_r(q: &[Vec<Q>]) -> Result<TensorMap> {
    let n = q.len();
    if q.iter().any(|row| row.len() != n) {
        return input("diagonal R needs a square table");
    }
    TensorMap::from_entries(n, 2, 2, words(n, 2).into_iter().map(|w| (w.clone(), w.clone(), q[w[0]][w[1]].clone())))
}
