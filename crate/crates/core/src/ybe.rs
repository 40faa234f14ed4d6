//! Classical, associative and quantum Yang-Baxter residuals for maps on
//! `V (x) V`.
//!
//! `r^{ij}` is `r` acting in slots `i, j` of `V^{(x)3}`; `r^{21}` is the
//! swap conjugate `swap . r . swap`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalar::{fmt_q, Q};
use crate::tensor::{fmt_word, TensorMap, Word};

/// Outcome of a residual evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeReport {
    pub residual: TensorMap,
    pub is_zero: bool,
    /// Lexicographically first nonzero entry `(out, in, coefficient)`.
    pub witness: Option<(Word, Word, Q)>,
}

impl YbeReport {
    pub fn from_residual(residual: TensorMap) -> Self {
        let witness = residual.first_entry();
        Self { is_zero: witness.is_none(), residual, witness }
    }
}

impl fmt::Display for YbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "zero"),
            Some((o, i, c)) => write!(
                f,
                "nonzero ({} entries) witness out=[{}] in=[{}] coeff={}",
                self.residual.nnz(),
                fmt_word(o),
                fmt_word(i),
                fmt_q(c)
            ),
        }
    }
}

fn check_square(r: &TensorMap) -> Result<()> {
    if r.domain_degree() != 2 {
        return Err(Error::Degree { expected: 2, found: r.domain_degree() });
    }
    if r.codomain_degree() != 2 {
        return Err(Error::Degree { expected: 2, found: r.codomain_degree() });
    }
    Ok(())
}

/// The six embeddings `r^{ij}` into `V^{(x)3}`.
struct Slots {
    r12: TensorMap,
    r13: TensorMap,
    r23: TensorMap,
}

impl Slots {
    fn new(r: &TensorMap) -> Result<Self> {
        check_square(r)?;
        Ok(Self { r12: r.at(1, 2, 3)?, r13: r.at(1, 3, 3)?, r23: r.at(2, 3, 3)? })
    }
}

/// `r + r^{21} = 0`.
pub fn is_skew(r: &TensorMap) -> Result<bool> {
    check_square(r)?;
    Ok(r.add(&r.flip()?)?.is_zero())
}

/// `[r^{12}, r^{13}] - [r^{23}, r^{12}] + [r^{13}, r^{23}]`.
pub fn cybe_map(r: &TensorMap) -> Result<TensorMap> {
    let s = Slots::new(r)?;
    s.r12.commutator(&s.r13)?.sub(&s.r23.commutator(&s.r12)?)?.add(&s.r13.commutator(&s.r23)?)
}

/// `r^{12} r^{13} - r^{23} r^{12} + r^{13} r^{23}`.
pub fn aybe_map(r: &TensorMap) -> Result<TensorMap> {
    let s = Slots::new(r)?;
    s.r12.compose(&s.r13)?.sub(&s.r23.compose(&s.r12)?)?.add(&s.r13.compose(&s.r23)?)
}

/// `r^{13} r^{12} - r^{12} r^{23} + r^{23} r^{13}`, so that
/// `CYBE(r) = AYBE(r) - AYBE'(r)`.
pub fn aybe_prime_map(r: &TensorMap) -> Result<TensorMap> {
    let s = Slots::new(r)?;
    s.r13.compose(&s.r12)?.sub(&s.r12.compose(&s.r23)?)?.add(&s.r23.compose(&s.r13)?)
}

/// `R^{12} R^{13} R^{23} - R^{23} R^{13} R^{12}`.
pub fn qybe_map(r: &TensorMap) -> Result<TensorMap> {
    let s = Slots::new(r)?;
    let lhs = s.r12.compose(&s.r13)?.compose(&s.r23)?;
    let rhs = s.r23.compose(&s.r13)?.compose(&s.r12)?;
    lhs.sub(&rhs)
}

pub fn cybe_residual(r: &TensorMap) -> Result<YbeReport> {
    cybe_map(r).map(YbeReport::from_residual)
}

pub fn aybe_residual(r: &TensorMap) -> Result<YbeReport> {
    aybe_map(r).map(YbeReport::from_residual)
}

pub fn qybe_residual(r: &TensorMap) -> Result<YbeReport> {
    qybe_map(r).map(YbeReport::from_residual)
}

/// `R^{21} R = Id`.
pub fn unitarity_check(r: &TensorMap) -> Result<bool> {
    check_square(r)?;
    Ok(r.flip()?.compose(r)? == TensorMap::identity(r.dim(), 2))
}

/// The one-line permutation `(132)` of three slots.
pub fn perm_132() -> Perm {
    Perm::one_line(&[1, 3, 2]).expect("valid permutation")
}

/// `AYBE(r) - (132) . AYBE(r) . (132)`.
pub fn cae_rhs(r: &TensorMap) -> Result<TensorMap> {
    let a = aybe_map(r)?;
    let p = perm_132();
    a.sub(&a.conjugate(&p)?)
}

/// For skew `r`, tests `CYBE(r) = AYBE(r) - (132) . AYBE(r) . (132)`.
pub fn cae_identity_check(r: &TensorMap) -> Result<bool> {
    if !is_skew(r)? {
        return Err(Error::Precondition("r is not skew (r + r^21 != 0)".into()));
    }
    Ok(cybe_map(r)? == cae_rhs(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn skew_example() -> TensorMap {
        // e01 (x) e10 - e10 (x) e01 as a map on V (x) V: |01> -> |10>, |10> -> -|01>
        TensorMap::from_entries(2, 2, 2, [(vec![1, 0], vec![0, 1], q(1)), (vec![0, 1], vec![1, 0], q(-1))]).unwrap()
    }

    #[test]
    fn skewness() {
        assert!(is_skew(&TensorMap::zero(2, 2, 2)).unwrap());
        assert!(!is_skew(&TensorMap::identity(2, 2)).unwrap());
        assert!(is_skew(&skew_example()).unwrap());
        assert!(is_skew(&TensorMap::zero(2, 1, 1)).is_err());
    }

    #[test]
    fn scalar_cases() {
        let c = TensorMap::identity(1, 2).scale(&q(3));
        assert!(cybe_residual(&c).unwrap().is_zero);
        let a = aybe_residual(&c).unwrap();
        assert_eq!(a.witness, Some((vec![0, 0, 0], vec![0, 0, 0], q(9))));
        assert!(aybe_residual(&TensorMap::zero(2, 2, 2)).unwrap().is_zero);
    }

    #[test]
    fn quantum_examples() {
        let id = TensorMap::identity(2, 2);
        assert!(qybe_residual(&id).unwrap().is_zero);
        assert!(unitarity_check(&id).unwrap());
        let swap = TensorMap::permutation(2, &Perm::transposition(2, 0, 1));
        assert!(qybe_residual(&swap).unwrap().is_zero);
        assert!(unitarity_check(&swap).unwrap());
        let two = id.scale(&q(2));
        assert!(qybe_residual(&two).unwrap().is_zero);
        assert!(!unitarity_check(&two).unwrap());
    }

    #[test]
    fn cae_on_examples() {
        assert!(cae_identity_check(&TensorMap::zero(2, 2, 2)).unwrap());
        assert!(cae_identity_check(&skew_example()).unwrap());
        assert!(matches!(cae_identity_check(&TensorMap::identity(2, 2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn cybe_is_quadratic() {
        let r = skew_example()
            .add(
                &TensorMap::from_entries(2, 2, 2, [(vec![0, 0], vec![0, 1], q(1)), (vec![0, 0], vec![1, 0], q(-1))])
                    .unwrap(),
            )
            .unwrap();
        let lam = q(-3);
        let a = cybe_map(&r.scale(&lam)).unwrap();
        let b = cybe_map(&r).unwrap().scale(&(lam.clone() * lam));
        assert_eq!(a, b);
    }
}
