//! Graded signs, L-infinity residuals and the Leibniz extension of a
//! family of multibrackets from generators to the free supercommutative
//! algebra `SuperSym V`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::perm::{block_expand, shuffles, Perm};
use crate::scalar::{fmt_q, q, Q};

pub type Degree = i64;

fn odd(d: Degree) -> bool {
    d.rem_euclid(2) == 1
}

fn sign_of(negative: bool) -> Q {
    if negative {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Sign of the block permutation obtained from `sigma` by giving block `j`
/// the size `degrees[j] + 1` (block `j` moves to position `sigma(j)`).
pub fn sign_odd(degrees: &[Degree], sigma: &Perm) -> Result<i32> {
    if degrees.len() != sigma.len() {
        return input(format!("{} degrees for a permutation of {}", degrees.len(), sigma.len()));
    }
    let sizes = degrees
        .iter()
        // only parities matter, so 1 or 2 stands in for |a| + 1
        .map(|d| usize::try_from(d.rem_euclid(2) + 1).expect("nonnegative"))
        .collect::<Vec<_>>();
    Ok(block_expand(sigma, &sizes)?.sign())
}

/// Koszul sign, for shifted degrees `|a| + 1`, of rewriting `a_1, ..., a_m`
/// as `a_{order(1)}, ..., a_{order(m)}`.
pub fn rearrangement_sign(degrees: &[Degree], order: &Perm) -> i32 {
    sign_odd(degrees, &order.inverse()).expect("lengths agree")
}

/// A generator of `SuperSym V`, or (formally) a bracket of factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    Gen(usize),
    Bracket(usize, Vec<Factor>),
}

/// Sorted product of factors.
pub type Monomial = Vec<Factor>;

/// Element of `SuperSym V`, possibly with formal bracket factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element(BTreeMap<Monomial, Q>);

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self(BTreeMap::from([(Vec::new(), Q::one())]))
    }

    pub fn generator(g: usize) -> Self {
        Self(BTreeMap::from([(vec![Factor::Gen(g)], Q::one())]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adds `c m`; `m` must already be in normal form.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn axpy(&mut self, a: &Q, other: &Self) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c * a);
        }
    }

    pub fn scale(&self, a: &Q) -> Self {
        let mut out = Self::zero();
        out.axpy(a, self);
        out
    }
}

/// Degrees of generators and formal brackets.
pub trait Grading {
    fn generator_degree(&self, g: usize) -> Degree;

    fn degree(&self, f: &Factor) -> Degree {
        match f {
            Factor::Gen(g) => self.generator_degree(*g),
            Factor::Bracket(n, args) => args.iter().map(|a| self.degree(a)).sum::<Degree>() + 2 - *n as Degree,
        }
    }

    fn monomial_degree(&self, m: &[Factor]) -> Degree {
        m.iter().map(|f| self.degree(f)).sum()
    }
}

/// Sorts `factors` by supercommutativity; `None` if an odd factor repeats.
pub fn normal_monomial<G: Grading + ?Sized>(g: &G, mut factors: Vec<Factor>) -> Option<(Monomial, bool)> {
    let mut negative = false;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            if odd(g.degree(&factors[j - 1])) && odd(g.degree(&factors[j])) {
                negative = !negative;
            }
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in factors.windows(2) {
        if w[0] == w[1] && odd(g.degree(&w[0])) {
            return None;
        }
    }
    Some((factors, negative))
}

/// Sorts bracket arguments by graded skew-symmetry (shifted degrees);
/// `None` if an argument of even degree repeats.
pub fn normal_arguments<G: Grading + ?Sized>(g: &G, mut args: Vec<Factor>) -> Option<(Vec<Factor>, bool)> {
    let mut negative = false;
    for i in 1..args.len() {
        let mut j = i;
        while j > 0 && args[j - 1] > args[j] {
            if !odd(g.degree(&args[j - 1])) && !odd(g.degree(&args[j])) {
                negative = !negative;
            }
            args.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in args.windows(2) {
        if w[0] == w[1] && !odd(g.degree(&w[0])) {
            return None;
        }
    }
    Some((args, negative))
}

pub fn multiply<G: Grading + ?Sized>(g: &G, a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (ma, ca) in &a.0 {
        for (mb, cb) in &b.0 {
            if let Some((m, neg)) = normal_monomial(g, ma.iter().chain(mb).cloned().collect()) {
                out.add_term(m, sign_of(neg) * ca * cb);
            }
        }
    }
    out
}

/// Sign attached to pulling `a'` out of slot `k` of an `n`-ary bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeibnizSign {
    /// `(-1)^{|a'| (|a_1| + ... + |a_{k-1}|)}`.
    Unshifted,
    /// `(-1)^{|a'| (1 + (|a_1| + 1) + ... + (|a_{k-1}| + 1))}`: `a'` passes
    /// the earlier arguments and the bracket in shifted degrees, where every
    /// bracket is odd.
    #[default]
    Shifted,
}

/// Sign in front of `{{..}_i, ..}_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompositionSign {
    /// `(-1)^i`
    PowerI,
    /// `(-1)^{ij}`; equal to `(-1)^i` when `i + j` is even.
    #[default]
    PowerIJ,
}

impl CompositionSign {
    fn sign(self, i: usize, j: usize) -> i32 {
        let e = match self {
            CompositionSign::PowerI => i,
            CompositionSign::PowerIJ => i * j,
        };
        if e % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Conventions {
    pub leibniz: LeibnizSign,
    pub composition: CompositionSign,
}

impl Conventions {
    /// The signs exactly as written: `(-1)^i` and the unshifted Leibniz sign.
    pub const LITERAL: Conventions =
        Conventions { leibniz: LeibnizSign::Unshifted, composition: CompositionSign::PowerI };

    pub fn composition_sign(self, i: usize, j: usize) -> i32 {
        self.composition.sign(i, j)
    }

    /// Parity added to `|a_1| + ... + |a_{k-1}|` for slot `k` (0-based).
    fn offset(self, k: usize) -> Degree {
        match self.leibniz {
            LeibnizSign::Unshifted => 0,
            LeibnizSign::Shifted => k as Degree + 1,
        }
    }
}

/// Values of brackets on tuples of single factors.
pub trait Brackets: Grading {
    fn max_arity(&self) -> usize;
    fn on_factors(&self, args: &[Factor]) -> Element;
}

/// `{args}_n` extended to monomial arguments by the Leibniz rule.
pub fn bracket<B: Brackets + ?Sized>(b: &B, args: &[Monomial], conv: Conventions) -> Element {
    let n = args.len();
    if n == 0 || n > b.max_arity() {
        return Element::zero();
    }
    let Some(k) = args.iter().position(|a| a.len() != 1) else {
        let flat: Vec<Factor> = args.iter().map(|a| a[0].clone()).collect();
        return b.on_factors(&flat);
    };
    if args[k].is_empty() {
        return Element::zero();
    }
    let pre: Degree = args[..k].iter().map(|a| b.monomial_degree(a)).sum();
    let u = args[k][0].clone();
    let rest: Monomial = args[k][1..].to_vec();
    let (du, drest) = (b.degree(&u), b.monomial_degree(&rest));
    let shift = conv.offset(k);
    let mut out = Element::zero();

    let mut with_rest = args.to_vec();
    with_rest[k] = rest.clone();
    let inner = bracket(b, &with_rest, conv);
    let left = Element::from_terms([(vec![u.clone()], Q::one())]);
    out.axpy(&sign_of(odd(du * (pre + shift))), &multiply(b, &left, &inner));

    let mut with_u = args.to_vec();
    with_u[k] = vec![u];
    let inner = bracket(b, &with_u, conv);
    let left = Element::from_terms([(rest, Q::one())]);
    out.axpy(&sign_of(odd(drest * (pre + du + shift))), &multiply(b, &left, &inner));
    out
}

/// Bracket of arbitrary elements, multilinearly.
pub fn bracket_elements<B: Brackets + ?Sized>(b: &B, args: &[Element], conv: Conventions) -> Element {
    let mut out = Element::zero();
    let mut stack: Vec<(Vec<Monomial>, Q)> = vec![(Vec::new(), Q::one())];
    for a in args {
        let mut next = Vec::new();
        for (prefix, c) in &stack {
            for (m, cm) in a.terms() {
                let mut p = prefix.clone();
                p.push(m.clone());
                next.push((p, c * cm));
            }
        }
        stack = next;
    }
    for (ms, c) in stack {
        out.axpy(&c, &bracket(b, &ms, conv));
    }
    out
}

/// Summation range of the L-infinity residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// `i, j-1` unshuffles: first `i` and last `j - 1` positions increasing.
    #[default]
    Shuffles,
    /// All of `S_m`, without the factor `1 / (i! (j-1)!)`.
    AllPermutations,
}

/// The `(i, j)` part of the residual on monomial arguments: the sum over
/// `sigma` of `sign {{a_s1 .. a_si}_i, a_s(i+1) ..}_j`.
pub fn linfty_term<B: Brackets + ?Sized>(
    b: &B,
    args: &[Monomial],
    i: usize,
    summation: Summation,
    conv: Conventions,
) -> Element {
    let m = args.len();
    let j = m + 1 - i;
    let degrees: Vec<Degree> = args.iter().map(|a| b.monomial_degree(a)).collect();
    let perms = match summation {
        Summation::Shuffles => shuffles(i, j - 1),
        Summation::AllPermutations => Perm::all(m),
    };
    let mut out = Element::zero();
    for sigma in perms {
        let arranged: Vec<Monomial> = (0..m).map(|k| args[sigma.at(k)].clone()).collect();
        let inner = bracket(b, &arranged[..i], conv);
        let mut total = Element::zero();
        for (mono, c) in inner.terms() {
            let mut outer_args = vec![mono.clone()];
            outer_args.extend(arranged[i..].iter().cloned());
            total.axpy(c, &bracket(b, &outer_args, conv));
        }
        let s = rearrangement_sign(&degrees, &sigma) * conv.composition.sign(i, j);
        out.axpy(&q(s as i64), &total);
    }
    out
}

pub fn linfty_residual<B: Brackets + ?Sized>(
    b: &B,
    args: &[Monomial],
    summation: Summation,
    conv: Conventions,
) -> Result<Element> {
    let m = args.len();
    if m == 0 {
        return input("the L-infinity residual needs at least one argument");
    }
    let mut out = Element::zero();
    for i in 1..=m {
        out.axpy(&Q::one(), &linfty_term(b, args, i, summation, conv));
    }
    Ok(out)
}

/// Completely graded-skew brackets `{}_n: V^{(x)n} -> SuperSym V` of degree
/// `2 - n`, stored on sorted generator tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiBracketFamily {
    labels: Vec<String>,
    degrees: Vec<Degree>,
    ops: BTreeMap<Vec<usize>, Element>,
    max_arity: usize,
}

impl Grading for MultiBracketFamily {
    fn generator_degree(&self, g: usize) -> Degree {
        self.degrees[g]
    }
}

impl Brackets for MultiBracketFamily {
    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn on_factors(&self, args: &[Factor]) -> Element {
        let Some((sorted, neg)) = normal_arguments(self, args.to_vec()) else {
            return Element::zero();
        };
        let key: Vec<usize> = sorted
            .iter()
            .map(|f| match f {
                Factor::Gen(g) => *g,
                Factor::Bracket(..) => unreachable!("concrete family evaluated on a formal bracket"),
            })
            .collect();
        match self.ops.get(&key) {
            Some(v) => v.scale(&sign_of(neg)),
            None => Element::zero(),
        }
    }
}

impl MultiBracketFamily {
    /// Validates degrees and graded skew-symmetry of the listed values;
    /// unlisted tuples are zero.
    pub fn new(labels: Vec<String>, degrees: Vec<Degree>, entries: Vec<(Vec<usize>, Element)>) -> Result<Self> {
        if labels.len() != degrees.len() {
            return input("one degree per generator is required");
        }
        let mut fam = Self { labels, degrees, ops: BTreeMap::new(), max_arity: 0 };
        let mut ops: BTreeMap<Vec<usize>, Element> = BTreeMap::new();
        for (tuple, value) in entries {
            if tuple.is_empty() {
                return input("brackets have arity at least 1");
            }
            if let Some(g) = tuple.iter().find(|g| **g >= fam.degrees.len()) {
                return input(format!("generator {g} out of range"));
            }
            fam.check_value(&value)?;
            let expected: Degree = tuple.iter().map(|g| fam.degrees[*g]).sum::<Degree>() + 2 - tuple.len() as Degree;
            for (m, _) in value.terms() {
                let d = fam.monomial_degree(m);
                if d != expected {
                    return input(format!(
                        "bracket on {} has a term of degree {d}, expected {expected}",
                        fam.fmt_tuple(&tuple)
                    ));
                }
            }
            let factors: Vec<Factor> = tuple.iter().map(|g| Factor::Gen(*g)).collect();
            let Some((sorted, neg)) = normal_arguments(&fam, factors) else {
                if value.is_zero() {
                    continue;
                }
                return input(format!("bracket on {} must vanish by graded skew-symmetry", fam.fmt_tuple(&tuple)));
            };
            let key: Vec<usize> =
                sorted.iter().map(|f| if let Factor::Gen(g) = f { *g } else { unreachable!() }).collect();
            let value = value.scale(&sign_of(neg));
            match ops.get(&key) {
                Some(old) if *old != value => {
                    return input(format!("bracket on {} is not graded skew-symmetric", fam.fmt_tuple(&tuple)))
                }
                _ => {
                    fam.max_arity = fam.max_arity.max(key.len());
                    if !value.is_zero() {
                        ops.insert(key, value);
                    }
                }
            }
        }
        fam.ops = ops;
        Ok(fam)
    }

    fn check_value(&self, v: &Element) -> Result<()> {
        for (m, _) in v.terms() {
            for f in m {
                match f {
                    Factor::Gen(g) if *g < self.degrees.len() => {}
                    _ => return input("bracket values must be polynomials in the generators"),
                }
            }
            if normal_monomial(self, m.clone()).map(|(n, _)| n) != Some(m.clone()) {
                return input("bracket value is not in normal form");
            }
        }
        Ok(())
    }

    pub fn zero(labels: Vec<String>, degrees: Vec<Degree>) -> Result<Self> {
        Self::new(labels, degrees, Vec::new())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn generators(&self) -> usize {
        self.degrees.len()
    }

    /// Nonzero values on sorted generator tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Element)> {
        self.ops.iter()
    }

    /// Bracket of generators; unsorted tuples are allowed.
    pub fn value(&self, tuple: &[usize]) -> Element {
        let f: Vec<Factor> = tuple.iter().map(|g| Factor::Gen(*g)).collect();
        self.on_factors(&f)
    }

    pub fn fmt_tuple(&self, t: &[usize]) -> String {
        let names: Vec<&str> = t.iter().map(|g| self.labels.get(*g).map_or("?", String::as_str)).collect();
        format!("{{{}}}_{}", names.join(","), t.len())
    }

    pub fn fmt_element(&self, e: &Element) -> String {
        fmt_element(e, &|g| self.labels[g].clone())
    }

    /// Nonzero monomials of polynomial degree between 1 and `max_len`.
    pub fn monomials(&self, max_len: usize) -> Vec<Monomial> {
        let n = self.generators();
        let mut out = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                let start = w.last().copied().unwrap_or(0);
                for g in start..n {
                    if w.last() == Some(&g) && odd(self.degrees[g]) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(g);
                    out.push(v.iter().map(|g| Factor::Gen(*g)).collect());
                    next.push(v);
                }
            }
            layer = next;
        }
        out
    }
}

pub fn fmt_factor(f: &Factor, name: &dyn Fn(usize) -> String) -> String {
    match f {
        Factor::Gen(g) => name(*g),
        Factor::Bracket(n, args) => {
            let parts: Vec<String> = args.iter().map(|a| fmt_factor(a, name)).collect();
            format!("{{{}}}_{n}", parts.join(","))
        }
    }
}

pub fn fmt_element(e: &Element, name: &dyn Fn(usize) -> String) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = e
        .terms()
        .map(|(m, c)| {
            let body = if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|f| fmt_factor(f, name)).collect::<Vec<_>>().join(".")
            };
            format!("{}*{body}", fmt_q(c))
        })
        .collect();
    parts.join(" + ")
}

/// Generators of given degrees with formal, completely graded-skew brackets
/// of every arity up to `max_arity`.
#[derive(Debug, Clone)]
pub struct FormalBrackets {
    pub degrees: Vec<Degree>,
    pub max_arity: usize,
}

impl Grading for FormalBrackets {
    fn generator_degree(&self, g: usize) -> Degree {
        self.degrees[g]
    }
}

impl Brackets for FormalBrackets {
    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn on_factors(&self, args: &[Factor]) -> Element {
        match normal_arguments(self, args.to_vec()) {
            Some((sorted, neg)) => Element::from_terms([(vec![Factor::Bracket(args.len(), sorted)], sign_of(neg))]),
            None => Element::zero(),
        }
    }
}

/// First nonzero residual found by a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinftyViolation {
    pub args: Vec<Monomial>,
    pub residual: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinftyOutcome {
    pub checked: usize,
    pub violation: Option<LinftyViolation>,
}

impl LinftyOutcome {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Residuals on every tuple of `m` arguments drawn from `basis`, `m` in
/// `1..=max_m`.
pub fn check_axioms<B: Brackets + ?Sized>(
    b: &B,
    basis: &[Monomial],
    max_m: usize,
    summation: Summation,
    conv: Conventions,
    require: impl Fn(&[Monomial]) -> bool,
) -> LinftyOutcome {
    let mut checked = 0;
    for m in 1..=max_m {
        let mut idx = vec![0usize; m];
        loop {
            let args: Vec<Monomial> = idx.iter().map(|i| basis[*i].clone()).collect();
            if require(&args) {
                checked += 1;
                let r = linfty_residual(b, &args, summation, conv).expect("m >= 1");
                if !r.is_zero() {
                    return LinftyOutcome { checked, violation: Some(LinftyViolation { args, residual: r }) };
                }
            }
            let mut k = m;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < basis.len() {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|i| *i == 0) {
                break;
            }
        }
    }
    LinftyOutcome { checked, violation: None }
}

/// Result of expanding the residual on `(a' a'', a_2, ..., a_m)` with
/// formal brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub degrees: Vec<Degree>,
    /// Terms `+-{..}_i {..}_j` produced before any cancellation.
    pub product_terms: usize,
    /// Product terms left after summing.
    pub surviving: usize,
    /// For every product `{..}_p {..}_q` with `p != q`, the contributions of
    /// the summands with inner arity `p` are the negatives of those with
    /// inner arity `q`.
    pub paired: bool,
    /// The residual equals `+-a' R(a'', ..) +- a'' R(a', ..)` for some signs.
    pub reassembles: bool,
}

impl CancellationReport {
    pub fn passed(&self) -> bool {
        self.surviving == 0 && self.paired && self.reassembles
    }
}

fn bracket_count(m: &Monomial) -> usize {
    m.iter().filter(|f| matches!(f, Factor::Bracket(..))).count()
}

/// Formal check of the cancellation behind the Leibniz extension. Atom 0 is
/// `a'`, atom 1 is `a''`, atoms `2..=m` are `a_2 .. a_m`; `degrees` lists
/// their degrees.
pub fn formal_cancellation(degrees: &[Degree], conv: Conventions) -> Result<CancellationReport> {
    if degrees.len() < 2 {
        return input("need degrees for a', a'' and the remaining arguments");
    }
    let m = degrees.len() - 1;
    let fb = FormalBrackets { degrees: degrees.to_vec(), max_arity: m };
    let gen = |g: usize| vec![Factor::Gen(g)];
    let mut args: Vec<Monomial> = vec![vec![Factor::Gen(0), Factor::Gen(1)]];
    args.extend((2..=m).map(gen));
    // raw product terms keyed by the product, split by inner arity
    let mut by_key: BTreeMap<Monomial, BTreeMap<usize, Q>> = BTreeMap::new();
    let mut product_terms = 0;
    let mut total = Element::zero();
    for i in 1..=m {
        let term = linfty_term(&fb, &args, i, Summation::Shuffles, conv);
        total.axpy(&Q::one(), &term);
        // recompute per shuffle to count raw terms before summation
        let j = m + 1 - i;
        let arg_degrees: Vec<Degree> = args.iter().map(|a| fb.monomial_degree(a)).collect();
        for sigma in shuffles(i, j - 1) {
            let arranged: Vec<Monomial> = (0..m).map(|k| args[sigma.at(k)].clone()).collect();
            let inner = bracket(&fb, &arranged[..i], conv);
            let s = rearrangement_sign(&arg_degrees, &sigma) * conv.composition.sign(i, j);
            for (mono, c) in inner.terms() {
                let mut outer_args = vec![mono.clone()];
                outer_args.extend(arranged[i..].iter().cloned());
                for (pm, pc) in bracket(&fb, &outer_args, conv).terms() {
                    if bracket_count(pm) == 2 {
                        product_terms += 1;
                        let e = by_key.entry(pm.clone()).or_default().entry(i).or_insert_with(Q::zero);
                        *e += pc * c * q(s as i64);
                    }
                }
            }
        }
    }
    let mut surviving = 0;
    let mut paired = true;
    for (key, parts) in &by_key {
        let sum: Q = parts.values().sum();
        if !sum.is_zero() {
            surviving += 1;
        }
        let arities: Vec<usize> =
            key.iter().filter_map(|f| if let Factor::Bracket(n, _) = f { Some(*n) } else { None }).collect();
        let (p, qq) = (arities[0], arities[1]);
        if p != qq {
            let a = parts.get(&p).cloned().unwrap_or_else(Q::zero);
            let b = parts.get(&qq).cloned().unwrap_or_else(Q::zero);
            if a + b != Q::zero() || parts.keys().any(|k| *k != p && *k != qq) {
                paired = false;
            }
        }
    }
    // +-a' R(a'', ...) +- a'' R(a', ...)
    let mut rest: Vec<Monomial> = (2..=m).map(gen).collect();
    rest.insert(0, gen(1));
    let r2 = linfty_residual(&fb, &rest, Summation::Shuffles, conv)?;
    rest[0] = gen(0);
    let r1 = linfty_residual(&fb, &rest, Summation::Shuffles, conv)?;
    let a1 = multiply(&fb, &Element::generator(0), &r2);
    let a2 = multiply(&fb, &Element::generator(1), &r1);
    let mut reassembles = false;
    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let mut diff = total.clone();
        diff.axpy(&q(-s1), &a1);
        diff.axpy(&q(-s2), &a2);
        reassembles |= diff.is_zero();
    }
    Ok(CancellationReport { degrees: degrees.to_vec(), product_terms, surviving, paired, reassembles })
}

/// Outcome of checking that a generator-level family extends by the
/// Leibniz rule to an L-infinity structure on `SuperSym V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub max_m: usize,
    pub generators: LinftyOutcome,
    pub products: LinftyOutcome,
    pub cancellation: Vec<CancellationReport>,
    labels: Vec<String>,
}

impl ExtensionReport {
    pub fn consistent(&self) -> bool {
        // the extension passes exactly when the generator family does
        self.generators.passed() == self.products.passed() && self.cancellation.iter().all(CancellationReport::passed)
    }
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |g: usize| self.labels[g].clone();
        let line = |f: &mut fmt::Formatter<'_>, what: &str, o: &LinftyOutcome| -> fmt::Result {
            match &o.violation {
                None => writeln!(f, "{what}: pass ({} tuples)", o.checked),
                Some(v) => {
                    let args: Vec<String> = v
                        .args
                        .iter()
                        .map(|m| m.iter().map(|x| fmt_factor(x, &name)).collect::<Vec<_>>().join("."))
                        .collect();
                    writeln!(f, "{what}: FAIL at ({}) residual {}", args.join(", "), fmt_element(&v.residual, &name))
                }
            }
        };
        writeln!(f, "axioms up to m = {}", self.max_m)?;
        line(f, "generators", &self.generators)?;
        line(f, "products of two generators", &self.products)?;
        let failing: Vec<&CancellationReport> = self.cancellation.iter().filter(|c| !c.passed()).collect();
        let terms: usize = self.cancellation.iter().map(|c| c.product_terms).sum();
        writeln!(
            f,
            "cancellation: {} parity patterns, {terms} product terms, {} patterns fail",
            self.cancellation.len(),
            failing.len()
        )?;
        for c in failing {
            writeln!(
                f,
                "  degrees {:?}: {} surviving, paired {}, reassembles {}",
                c.degrees, c.surviving, c.paired, c.reassembles
            )?;
        }
        write!(f, "consistent: {}", self.consistent())
    }
}

/// Checks the axioms on generators, then on all tuples of monomials of
/// length at most two that contain a product, and the formal cancellation
/// for every parity pattern of `a', a'', a_2, .., a_m`.
pub fn extension_check(fam: &MultiBracketFamily, max_m: usize, conv: Conventions) -> Result<ExtensionReport> {
    if max_m == 0 {
        return input("max_m must be positive");
    }
    let gens = fam.monomials(1);
    let generators = check_axioms(fam, &gens, max_m, Summation::Shuffles, conv, |_| true);
    let basis = fam.monomials(2);
    let products =
        check_axioms(fam, &basis, max_m, Summation::Shuffles, conv, |args| args.iter().any(|a| a.len() == 2));
    let mut cancellation = Vec::new();
    for m in 1..=max_m {
        for bits in 0..(1u32 << (m + 1)) {
            let degrees: Vec<Degree> = (0..=m).map(|k| ((bits >> k) & 1) as Degree).collect();
            cancellation.push(formal_cancellation(&degrees, conv)?);
        }
    }
    Ok(ExtensionReport { max_m, generators, products, cancellation, labels: fam.labels.clone() })
}

/// Solves the `m = 3` equation on generators for the values of `{}_3`,
/// given the other brackets. `unknowns` lists (sorted triple, target
/// generator) pairs; `None` if there is no solution.
pub fn solve_ternary(
    labels: &[String],
    degrees: &[Degree],
    entries: &[(Vec<usize>, Element)],
    unknowns: &[(Vec<usize>, usize)],
    conv: Conventions,
) -> Result<Option<MultiBracketFamily>> {
    let build = |c: &[Q]| {
        let mut extra: BTreeMap<Vec<usize>, Element> = BTreeMap::new();
        for ((t, target), v) in unknowns.iter().zip(c) {
            extra.entry(t.clone()).or_default().axpy(v, &Element::generator(*target));
        }
        let mut e = entries.to_vec();
        e.extend(extra);
        MultiBracketFamily::new(labels.to_vec(), degrees.to_vec(), e)
    };
    let n = unknowns.len();
    let zero = vec![Q::zero(); n];
    let base = build(&zero)?;
    let gens = base.monomials(1);
    let mut tuples = Vec::new();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                tuples.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let residuals = |fam: &MultiBracketFamily| -> Vec<Element> {
        tuples.iter().map(|t| linfty_residual(fam, t, Summation::Shuffles, conv).expect("m = 3")).collect()
    };
    let r0 = residuals(&base);
    // one row per (tuple, monomial); column n holds -r0
    let mut rows: BTreeMap<(usize, Monomial), SparseVec> = BTreeMap::new();
    for k in 0..n {
        let mut e = zero.clone();
        e[k] = Q::one();
        for (t, (rk, r)) in residuals(&build(&e)?).iter().zip(&r0).enumerate() {
            let mut d = rk.clone();
            d.axpy(&-Q::one(), r);
            for (m, c) in d.terms() {
                rows.entry((t, m.clone())).or_default().insert(k, c.clone());
            }
        }
    }
    for (t, r) in r0.iter().enumerate() {
        for (m, c) in r.terms() {
            rows.entry((t, m.clone())).or_default().insert(n, -c.clone());
        }
    }
    let mut ech = Echelon::new();
    for r in rows.values() {
        ech.insert(r);
    }
    if ech.pivots().any(|p| p == n) {
        return Ok(None);
    }
    let mut c = zero;
    for (p, r) in ech.rows() {
        c[*p] = r.get(&n).cloned().unwrap_or_else(Q::zero);
    }
    build(&c).map(Some)
}

/// Three generators `x, y` (degree 0) and `t` (degree 1) with `d x = t`,
/// a bracket `{}_2` whose Jacobi identity fails, and `{}_3` solving the
/// `m = 3` equation exactly.
pub fn homotopy_fixture() -> Result<MultiBracketFamily> {
    homotopy_candidate(HOMOTOPY_PARAMS)?
        .ok_or_else(|| Error::Precondition("the m = 3 equation has no solution for {}_3".into()))
}

/// `(d y, {x,y} in x, {x,y} in y, {x,t}, {y,t})` for [`homotopy_fixture`].
pub const HOMOTOPY_PARAMS: [i64; 5] = [0, 1, -1, 0, -1];

/// The family of [`homotopy_fixture`] for other values of the brackets.
pub fn homotopy_candidate(p: [i64; 5]) -> Result<Option<MultiBracketFamily>> {
    let labels: Vec<String> = ["x", "y", "t"].iter().map(|s| s.to_string()).collect();
    let degrees = vec![0, 0, 1];
    let g = |k: usize, c: i64| Element::generator(k).scale(&q(c));
    let mut xy = g(0, p[1]);
    xy.axpy(&Q::one(), &g(1, p[2]));
    let entries = vec![
        (vec![0], g(2, 1)),
        (vec![1], g(2, p[0])),
        (vec![0, 1], xy),
        (vec![0, 2], g(2, p[3])),
        (vec![1, 2], g(2, p[4])),
    ];
    let unknowns = vec![(vec![0, 1, 2], 0), (vec![0, 1, 2], 1), (vec![0, 2, 2], 2), (vec![1, 2, 2], 2)];
    solve_ternary(&labels, &degrees, &entries, &unknowns, Conventions::default())
}
