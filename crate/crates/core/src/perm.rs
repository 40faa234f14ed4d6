//! Permutations in one-line notation and block permutations.
//!
//! A permutation `p` of `{1..n}` is stored by its image list: `p(j)` is the
//! j-th entry (0-based internally, rendered 1-based). Acting on tensors,
//! the factor in slot `j` moves to slot `p(j)`; with this action
//! `apply(p) . apply(q) = apply(p . q)`.

use std::fmt;

use crate::error::{input, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// From 0-based images, validated as a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return input(format!("not a permutation: {images:?}"));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based one-line notation, e.g. `[2, 3, 1]` for `(231)`.
    pub fn one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return input("one-line notation is 1-based");
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    /// Transposition of the 0-based positions `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Perm(v)
    }

    /// The cyclic shift `j -> j + k (mod n)`.
    pub fn rotation(n: usize, k: usize) -> Self {
        Perm((0..n).map(|j| (j + k) % n.max(1)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn at(&self, j: usize) -> usize {
        self.0[j]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (j, &p) in self.0.iter().enumerate() {
            inv[p] = j;
        }
        Perm(inv)
    }

    pub fn inversions(&self) -> usize {
        let n = self.len();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.0[i] > self.0[j]).count()).sum()
    }

    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Rearranges a list so that entry `j` lands at position `p(j)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len());
        let mut out = items.to_vec();
        for (j, x) in items.iter().enumerate() {
            out[self.0[j]] = x.clone();
        }
        out
    }

    /// Parses `(231)` style one-line notation (single digits) or a
    /// comma separated list such as `2,3,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let images: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| crate::Error::Input(format!("bad permutation {s:?}")))?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| crate::Error::Input(format!("bad permutation {s:?}")))?
        };
        Self::one_line(&images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() < 10 {
            write!(f, "(")?;
            for p in &self.0 {
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")
        } else {
            let parts: Vec<String> = self.0.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// The block permutation `tau^{sizes}`: block `j` (contiguous, of length
/// `sizes[j]`, internal order kept) moves to block position `tau(j)`.
///
/// With this convention `w (x) v = (21)^{|v|,|w|} (v (x) w)`.
pub fn block_expand(tau: &Perm, sizes: &[usize]) -> Result<Perm> {
    if tau.len() != sizes.len() {
        return input(format!("block permutation of {} blocks given {} sizes", tau.len(), sizes.len()));
    }
    let inv = tau.inverse();
    // offsets of the blocks in the target arrangement
    let mut target_offset = vec![0; sizes.len()];
    let mut acc = 0;
    for k in 0..sizes.len() {
        let j = inv.at(k);
        target_offset[j] = acc;
        acc += sizes[j];
    }
    let mut images = Vec::with_capacity(acc);
    for (j, &s) in sizes.iter().enumerate() {
        images.extend((0..s).map(|t| target_offset[j] + t));
    }
    Ok(Perm(images))
}

/// Sizes of the blocks after rearranging by `tau`.
pub fn permute_sizes(tau: &Perm, sizes: &[usize]) -> Vec<usize> {
    tau.permute(sizes)
}

/// Block permutation realigning an expression whose symbols appear as
/// `current` (symbol, degree) into the order `target`.
pub fn sigma_prime<S: PartialEq + fmt::Debug>(target: &[S], current: &[(S, usize)]) -> Result<Perm> {
    if target.len() != current.len() {
        return input("symbol lists differ in length");
    }
    let mut images = Vec::with_capacity(current.len());
    let mut used = vec![false; target.len()];
    for (sym, _) in current {
        let pos = target
            .iter()
            .enumerate()
            .position(|(i, t)| !used[i] && t == sym)
            .ok_or_else(|| crate::Error::Input(format!("symbol {sym:?} not in target order")))?;
        used[pos] = true;
        images.push(pos);
    }
    let tau = Perm::new(images)?;
    let sizes: Vec<usize> = current.iter().map(|(_, d)| *d).collect();
    block_expand(&tau, &sizes)
}

/// The `i,j`-shuffles: permutations of `S_{i+j}` whose one-line notation is
/// increasing on the first `i` and on the last `j` positions.
pub fn shuffles(i: usize, j: usize) -> Vec<Perm> {
    let n = i + j;
    let mut out = Vec::new();
    // choose the value set of the first i positions
    let mut chosen = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, chosen: &mut Vec<usize>, out: &mut Vec<Perm>) {
        if chosen.len() == i {
            let mut images = chosen.clone();
            images.extend((0..n).filter(|v| !chosen.contains(v)));
            out.push(Perm(images));
            return;
        }
        for v in start..n {
            chosen.push(v);
            rec(v + 1, n, i, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, i, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    #[test]
    fn block_expand_examples() {
        assert!(block_expand(&p("(12)"), &[2, 3]).unwrap().is_identity());
        assert_eq!(block_expand(&p("(21)"), &[1, 1]).unwrap(), p("(21)"));
        // v (x) w1 (x) w2 -> w1 (x) w2 (x) v
        let e = block_expand(&p("(21)"), &[1, 2]).unwrap();
        assert_eq!(e.permute(&['v', 'a', 'b']), vec!['a', 'b', 'v']);
        assert_eq!(e, p("(312)"));
        assert!(block_expand(&p("(21)"), &[1]).is_err());
    }

    #[test]
    fn twisted_jacobi_realignment() {
        // (231)^{|v|,|w|,|u|} turns v w u into u v w; (312)^{|w|,|u|,|v|}
        // turns w u v into u v w
        let sizes = [2, 1, 3];
        let e = block_expand(&p("(231)"), &sizes).unwrap();
        let vwu = ["v", "v", "w", "u", "u", "u"];
        assert_eq!(e.permute(&vwu), vec!["u", "u", "u", "v", "v", "w"]);
        let e = block_expand(&p("(312)"), &[1, 3, 2]).unwrap();
        let wuv = ["w", "u", "u", "u", "v", "v"];
        assert_eq!(e.permute(&wuv), vec!["u", "u", "u", "v", "v", "w"]);
    }

    #[test]
    fn sigma_prime_examples() {
        assert!(sigma_prime(&[1, 2], &[(1, 4), (2, 1)]).unwrap().is_identity());
        assert_eq!(sigma_prime(&[1, 2], &[(2, 1), (1, 1)]).unwrap(), p("(21)"));
        // {x3, x2} with |x3| = 2, |x2| = 3 realigned to x2, x3
        let s = sigma_prime(&[2, 3], &[(3, 2), (2, 3)]).unwrap();
        assert_eq!(s, block_expand(&p("(21)"), &[2, 3]).unwrap());
        assert_eq!(s.permute(&[3, 3, 2, 2, 2]), vec![2, 2, 2, 3, 3]);
        assert!(sigma_prime(&[1, 2], &[(1, 1), (3, 1)]).is_err());
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(0, 3), vec![Perm::identity(3)]);
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 2).len(), 6);
        for s in shuffles(2, 3) {
            let im = s.images();
            assert!(im[0] < im[1] && im[2] < im[3] && im[3] < im[4]);
        }
    }

    #[test]
    fn homomorphism_exhaustive() {
        for k in 1..=3 {
            let perms = Perm::all(k);
            let mut size_lists = vec![vec![]];
            for _ in 0..k {
                size_lists = size_lists
                    .into_iter()
                    .flat_map(|l: Vec<usize>| (0..=2).map(move |s| [l.clone(), vec![s]].concat()))
                    .collect();
            }
            for t1 in &perms {
                for t2 in &perms {
                    for sizes in &size_lists {
                        let lhs = block_expand(&t1.compose(t2), sizes).unwrap();
                        let moved = permute_sizes(t2, sizes);
                        let rhs = block_expand(t1, &moved).unwrap().compose(&block_expand(t2, sizes).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn display_roundtrip() {
        let x = p("(2413)");
        assert_eq!(x.to_string(), "(2413)");
        assert_eq!(x.compose(&x.inverse()), Perm::identity(4));
        assert_eq!(p("(21)").sign(), -1);
    }
}
