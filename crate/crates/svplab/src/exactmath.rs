//! Exact integer and rational arithmetic for ℓ_p-norm decisions.
//!
//! Every comparison that influences a verdict elsewhere in this crate is made
//! on p-th powers of norms, kept as big integers or big rationals. The
//! irrational norm values themselves are never materialized, so there is no
//! floating point anywhere in a decision path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactMathError {
    #[error("norm index must be a positive integer")]
    InvalidNormIndex,
    #[error("norm comparison needs q <= p, got q = {q}, p = {p}")]
    NormOrder { q: u32, p: u32 },
    #[error("scale factor must lie strictly between 0 and 1, got {0}")]
    ScaleOutOfRange(BigRational),
    #[error("expected a positive integer, got {0}")]
    NonPositive(BigInt),
}

/// Exponent of a finite ℓ_p norm, restricted to integer p >= 1.
///
/// The constructions in this crate only ever instantiate integer norm
/// indices; real exponents would force inexact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormIndex(u32);

impl NormIndex {
    pub fn new(p: u32) -> Result<Self, ExactMathError> {
        if p == 0 {
            return Err(ExactMathError::InvalidNormIndex);
        }
        Ok(NormIndex(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for NormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Σ |v_i|^p, the p-th power of the ℓ_p norm of `v`, exactly.
pub fn lp_pow(v: &[BigInt], p: NormIndex) -> BigInt {
    let mut total = BigInt::zero();
    for entry in v {
        if !entry.is_zero() {
            total += entry.abs().pow(p.get());
        }
    }
    total
}

/// `r^p` for a non-negative integer exponent, exactly.
///
/// Numerator and denominator of a reduced fraction stay coprime under
/// powering, so the result is built without a gcd pass.
pub fn rational_pow(r: &BigRational, p: u32) -> BigRational {
    BigRational::new_raw(r.numer().pow(p), r.denom().pow(p))
}

/// Ordering of ‖v‖_p against a non-negative rational bound.
///
/// Decided as `lp_pow(v) * den(bound)^p` versus `num(bound)^p`; both sides are
/// integers, so the answer is exact.
pub fn cmp_norm_vs_bound(v: &[BigInt], p: NormIndex, bound: &BigRational) -> Ordering {
    debug_assert!(!bound.is_negative());
    let lhs = lp_pow(v, p) * bound.denom().pow(p.get());
    let rhs = bound.numer().pow(p.get());
    lhs.cmp(&rhs)
}

/// Whether `norm_pow` (a p-th power of a norm) is within `bound_pow`.
pub fn norm_pow_within(norm_pow: &BigInt, bound_pow: &BigRational) -> bool {
    norm_pow * bound_pow.denom() <= *bound_pow.numer()
}

/// ‖v‖_q <= n^{1/q - 1/p} ‖v‖_p for 1 <= q <= p, n = v.len().
///
/// Checked through the integer equivalence
/// `(‖v‖_q^q)^p <= n^{p-q} * (‖v‖_p^p)^q`. Holds for every vector; exposed so
/// the arithmetic layer can be self-tested and so enumeration radii can be
/// justified.
pub fn holder_holds(v: &[BigInt], q: NormIndex, p: NormIndex) -> Result<bool, ExactMathError> {
    if q.get() > p.get() {
        return Err(ExactMathError::NormOrder {
            q: q.get(),
            p: p.get(),
        });
    }
    let n = BigInt::from(v.len());
    let lhs = lp_pow(v, q).pow(p.get());
    let rhs = n.pow(p.get() - q.get()) * lp_pow(v, p).pow(q.get());
    Ok(lhs <= rhs)
}

/// Largest integer t with `t^p <= alpha^p * n`, i.e. ⌊alpha * n^(1/p)⌋.
///
/// Requires n >= 1 and 0 < alpha < 1. The scaling factor N used by the
/// lattice constructions is this value plus one, which makes N strictly
/// larger than `alpha * n^(1/p)`.
pub fn floor_scaled_root(
    n: &BigInt,
    p: NormIndex,
    alpha: &BigRational,
) -> Result<BigInt, ExactMathError> {
    if !n.is_positive() {
        return Err(ExactMathError::NonPositive(n.clone()));
    }
    if !alpha.is_positive() || *alpha >= BigRational::one() {
        return Err(ExactMathError::ScaleOutOfRange(alpha.clone()));
    }
    // floor of the real p-th root of A/B equals the integer p-th root of
    // floor(A/B): if (t+1)^p <= A/B then, being an integer, (t+1)^p <= floor(A/B).
    let a = alpha.numer().pow(p.get()) * n;
    let b = alpha.denom().pow(p.get());
    Ok(a.div_floor(&b).nth_root(p.get()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecint(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn lp_pow_matches_hand_values() {
        let p2 = NormIndex::new(2).unwrap();
        let p1 = NormIndex::new(1).unwrap();
        assert_eq!(lp_pow(&vecint(&[-1, 2, -1]), p2), BigInt::from(6));
        assert_eq!(lp_pow(&vecint(&[0, 0, 0, 0]), p2), BigInt::zero());
        assert_eq!(lp_pow(&vecint(&[0, 0, 0, 0]), p1), BigInt::zero());
        assert_eq!(lp_pow(&vecint(&[3, -4]), p1), BigInt::from(7));
    }

    #[test]
    fn norm_comparison_is_exact() {
        let p2 = NormIndex::new(2).unwrap();
        let p3 = NormIndex::new(3).unwrap();
        let p1 = NormIndex::new(1).unwrap();
        // ||(-1,2,-1)||_2 = sqrt(6) < 5/2 because 6 * 4 < 25.
        assert_eq!(
            cmp_norm_vs_bound(&vecint(&[-1, 2, -1]), p2, &rat(5, 2)),
            Ordering::Less
        );
        assert_eq!(
            cmp_norm_vs_bound(&vecint(&[1]), p3, &rat(1, 1)),
            Ordering::Equal
        );
        assert_eq!(
            cmp_norm_vs_bound(&vecint(&[2, 2]), p1, &rat(3, 1)),
            Ordering::Greater
        );
    }

    #[test]
    fn holder_examples() {
        let q1 = NormIndex::new(1).unwrap();
        let q2 = NormIndex::new(2).unwrap();
        let p2 = NormIndex::new(2).unwrap();
        let p3 = NormIndex::new(3).unwrap();
        let p4 = NormIndex::new(4).unwrap();
        // Equality case: all-ones vector.
        assert!(holder_holds(&vecint(&[1, 1, 1, 1]), q1, p2).unwrap());
        assert!(holder_holds(&vecint(&[5, -3, 0, 2]), q2, p4).unwrap());
        assert!(holder_holds(&vecint(&[1, 0, 0]), q1, p3).unwrap());
        assert_eq!(
            holder_holds(&vecint(&[1]), p3, q1),
            Err(ExactMathError::NormOrder { q: 3, p: 1 })
        );
    }

    #[test]
    fn floor_scaled_root_hand_values() {
        let p2 = NormIndex::new(2).unwrap();
        let half = rat(1, 2);
        // 2^2 * 4 = 16 <= 25 while 3^2 * 4 = 36 > 25.
        assert_eq!(
            floor_scaled_root(&BigInt::from(25), p2, &half).unwrap(),
            BigInt::from(2)
        );
        for p in 1..=6 {
            let p = NormIndex::new(p).unwrap();
            assert_eq!(
                floor_scaled_root(&BigInt::one(), p, &half).unwrap(),
                BigInt::zero()
            );
        }
        assert_eq!(
            floor_scaled_root(&BigInt::from(4), p2, &half).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn floor_scaled_root_rejects_bad_inputs() {
        let p2 = NormIndex::new(2).unwrap();
        assert!(floor_scaled_root(&BigInt::zero(), p2, &rat(1, 2)).is_err());
        assert!(floor_scaled_root(&BigInt::from(5), p2, &rat(3, 2)).is_err());
        assert!(floor_scaled_root(&BigInt::from(5), p2, &rat(0, 1)).is_err());
        assert!(floor_scaled_root(&BigInt::from(5), p2, &rat(1, 1)).is_err());
    }

    #[test]
    fn norm_index_rejects_zero() {
        assert!(NormIndex::new(0).is_err());
        assert_eq!(NormIndex::new(3).unwrap().get(), 3);
    }
}
