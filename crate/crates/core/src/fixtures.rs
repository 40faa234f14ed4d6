//! Reproducible fixtures: random and exhaustively enumerated skew maps on
//! `V (x) V`, filtered by exact residuals.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{q, Q};
use crate::tensor::{words, TensorMap, Word};
use crate::ybe;

/// Largest enumeration `fixture_search` accepts.
pub const MAX_CANDIDATES: u128 = 2_000_000;

/// Coordinates of the space of skew maps: one `(out, in)` representative
/// per swap orbit that is not fixed by the swap.
pub fn skew_coordinates(dim: usize) -> Vec<(Word, Word)> {
    let sw = |w: &Word| vec![w[1], w[0]];
    let mut out = Vec::new();
    for o in words(dim, 2) {
        for i in words(dim, 2) {
            let (so, si) = (sw(&o), sw(&i));
            if (so.clone(), si.clone()) == (o.clone(), i.clone()) {
                continue;
            }
            if (o.clone(), i.clone()) < (so, si) {
                out.push((o.clone(), i.clone()));
            }
        }
    }
    out
}

/// The skew map with the given coordinates (`r(o,i) = c`,
/// `r(swap o, swap i) = -c`).
pub fn skew_from_coords(dim: usize, coords: &[(Word, Word)], values: &[Q]) -> TensorMap {
    let mut r = TensorMap::zero(dim, 2, 2);
    for ((o, i), c) in coords.iter().zip(values) {
        r.add_entry(o.clone(), i.clone(), c);
        r.add_entry(vec![o[1], o[0]], vec![i[1], i[0]], &-c.clone());
    }
    r
}

/// A random sparse skew map with small integer coordinates.
pub fn random_skew<R: Rng>(rng: &mut R, dim: usize, density: f64) -> TensorMap {
    let coords = skew_coordinates(dim);
    let values: Vec<Q> =
        coords.iter().map(|_| if rng.gen_bool(density) { q(rng.gen_range(-3..=3)) } else { Q::zero() }).collect();
    skew_from_coords(dim, &coords, &values)
}

/// A random sparse map (not necessarily skew).
pub fn random_map<R: Rng>(rng: &mut R, dim: usize, degree: usize, density: f64) -> TensorMap {
    let mut r = TensorMap::zero(dim, degree, degree);
    for o in words(dim, degree) {
        for i in words(dim, degree) {
            if rng.gen_bool(density) {
                r.add_entry(o.clone(), i.clone(), &q(rng.gen_range(-3..=3)));
            }
        }
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    /// Skew solutions of the classical Yang-Baxter equation.
    SkewCybe,
    /// Skew solutions of the associative Yang-Baxter equation.
    SkewAybe,
    /// Skew maps that do not solve the classical Yang-Baxter equation.
    SkewNonCybe,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

/// Number of skew maps with coordinates in `values` and at most
/// `max_nonzero` nonzero coordinates.
pub fn candidate_count(dim: usize, values: &[i64], max_nonzero: Option<usize>) -> u128 {
    let p = skew_coordinates(dim).len();
    let nz = values.iter().filter(|v| **v != 0).count() as u128;
    let cap = max_nonzero.unwrap_or(p).min(p);
    (0..=cap).map(|k| binomial(p, k) * nz.pow(k as u32)).sum()
}

/// Enumerates skew maps with coordinates drawn from `values` (odometer
/// order over [`skew_coordinates`], first coordinate slowest) and keeps
/// those of the requested kind.
pub fn fixture_search(
    kind: FixtureKind,
    dim: usize,
    values: &[i64],
    max_nonzero: Option<usize>,
) -> Result<Vec<TensorMap>> {
    if dim == 0 || dim > 3 {
        return Err(Error::Bound(format!("dim {dim} outside 1..=3")));
    }
    let count = candidate_count(dim, values, max_nonzero);
    if count > MAX_CANDIDATES {
        return Err(Error::Bound(format!("enumeration would visit about {count} candidates (limit {MAX_CANDIDATES})")));
    }
    let mut vals: Vec<i64> = values.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let coords = skew_coordinates(dim);
    let mut out = Vec::new();
    let mut idx = vec![0usize; coords.len()];
    loop {
        let chosen: Vec<i64> = idx.iter().map(|&k| vals[k]).collect();
        let nonzero = chosen.iter().filter(|v| **v != 0).count();
        if max_nonzero.is_none_or(|m| nonzero <= m) {
            let qs: Vec<Q> = chosen.iter().map(|&v| q(v)).collect();
            let r = skew_from_coords(dim, &coords, &qs);
            let keep = match kind {
                FixtureKind::SkewCybe => ybe::cybe_map(&r)?.is_zero(),
                FixtureKind::SkewAybe => ybe::aybe_map(&r)?.is_zero(),
                FixtureKind::SkewNonCybe => !ybe::cybe_map(&r)?.is_zero(),
            };
            if keep {
                out.push(r);
            }
        }
        // odometer increment, last coordinate fastest
        let mut k = coords.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < vals.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinates_count() {
        assert_eq!(skew_coordinates(1).len(), 0);
        assert_eq!(skew_coordinates(2).len(), 6);
        assert_eq!(skew_coordinates(3).len(), 36);
    }

    #[test]
    fn random_skew_is_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 1..=3 {
            for _ in 0..5 {
                assert!(ybe::is_skew(&random_skew(&mut rng, dim, 0.4)).unwrap());
            }
        }
    }

    #[test]
    fn zero_is_always_found() {
        let sols = fixture_search(FixtureKind::SkewCybe, 2, &[-1, 0, 1], Some(2)).unwrap();
        assert!(sols.iter().any(|r| r.is_zero()));
    }

    #[test]
    fn bounds_rejected() {
        assert!(matches!(fixture_search(FixtureKind::SkewCybe, 3, &[-1, 0, 1], None), Err(Error::Bound(_))));
        assert!(matches!(fixture_search(FixtureKind::SkewCybe, 4, &[0], None), Err(Error::Bound(_))));
    }
}
