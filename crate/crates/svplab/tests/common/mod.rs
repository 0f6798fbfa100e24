#![allow(dead_code)] // each test binary uses its own subset

//! Shared test oracles, kept independent of the library code paths they
//! cross-check: the box enumerator solves the coefficient system with its
//! own Gaussian elimination, and the embedding oracle rebuilds the expected
//! short-vector set from scratch out of an exhaustive scan.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use svplab::exactmath::NormIndex;
use svplab::instances::SubsetSumInstance;
use svplab::svp::ShortVector;

/// Σ |v_i|^p computed from first principles.
pub fn naive_lp_pow(v: &[BigInt], p: u32) -> BigInt {
    v.iter().map(|x| x.abs().pow(p)).sum()
}

/// norm_pow <= radius_pow as an exact cross-multiplication.
pub fn within(norm_pow: &BigInt, radius_pow: &BigRational) -> bool {
    norm_pow * radius_pow.denom() <= *radius_pow.numer()
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
fn invert(matrix: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let k = matrix.len();
    let mut work: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut inverse: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        inverse.swap(col, pivot);
        let factor = work[col][col].clone();
        for c in 0..k {
            work[col][c] /= &factor;
            inverse[col][c] /= &factor;
        }
        for r in 0..k {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for c in 0..k {
                let sub_w = &factor * &work[col][c];
                work[r][c] -= sub_w;
                let sub_i = &factor * &inverse[col][c];
                inverse[r][c] -= sub_i;
            }
        }
    }
    Some(inverse)
}

/// Membership check for square bases: solves y * basis = v by elimination
/// and demands integral coefficients.
pub fn in_lattice_oracle(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let Some(inverse) = invert(basis) else {
        return false;
    };
    let k = basis.len();
    if v.len() != k {
        return false;
    }
    (0..k).all(|i| {
        let coeff: BigRational = (0..k)
            .map(|j| BigRational::from_integer(v[j].clone()) * &inverse[j][i])
            .sum();
        coeff.is_integer()
    })
}

/// Smallest integer X with X^p * den >= num, by upward scan (test scale).
fn ceil_root(num: &BigInt, den: &BigInt, p: u32) -> BigInt {
    let mut x = BigInt::zero();
    loop {
        if x.clone().pow(p) * den >= *num {
            return x;
        }
        x += 1;
    }
}

/// A provably sufficient per-coefficient box for all lattice vectors of
/// ℓ_p^p norm at most radius_pow over a *square* basis: |y_i| is bounded by
/// ‖v‖₂ times the ℓ₂ norm of column i of the inverse, and ‖v‖₂ is bounded by
/// m^(max(0, 1/2 - 1/p)) times the ℓ_p radius. Returns None for singular
/// bases or boxes with more than `max_points` points.
pub fn coefficient_box(
    basis: &[Vec<BigInt>],
    p: u32,
    radius_pow: &BigRational,
    max_points: u128,
) -> Option<Vec<i64>> {
    let k = basis.len();
    let inverse = invert(basis)?;
    // Upper bound on ‖v‖₂²: smallest integer X with X^p >= m^(max(p-2,0)) R^2p.
    let e = p.saturating_sub(2);
    let r2_num = BigInt::from(k).pow(e) * radius_pow.numer() * radius_pow.numer();
    let r2_den = radius_pow.denom() * radius_pow.denom();
    let r2_sq = ceil_root(&r2_num, &r2_den, p);

    let mut bounds = Vec::with_capacity(k);
    let mut points: u128 = 1;
    for i in 0..k {
        // Squared ℓ₂ norm of column i of the inverse.
        let col_sq: BigRational = inverse.iter().map(|row| &row[i] * &row[i]).sum();
        // Smallest integer M with M² >= r2_sq * col_sq.
        let num = &r2_sq * col_sq.numer();
        let m_i = ceil_root(&num, col_sq.denom(), 2);
        let m_i = i64::try_from(&m_i).ok()?;
        points = points.checked_mul(2 * m_i as u128 + 1)?;
        if points > max_points {
            return None;
        }
        bounds.push(m_i);
    }
    Some(bounds)
}

/// Full coefficient-box enumeration: every nonzero vector y * basis with
/// ℓ_p^p norm at most radius_pow, sorted like the library output.
pub fn box_enumerate(
    basis: &[Vec<BigInt>],
    p: u32,
    radius_pow: &BigRational,
    bounds: &[i64],
) -> Vec<ShortVector> {
    let k = basis.len();
    let m = basis[0].len();
    let mut coeffs: Vec<i64> = bounds.iter().map(|&b| -b).collect();
    let mut out = Vec::new();
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let mut v = vec![BigInt::zero(); m];
            for (c, row) in coeffs.iter().zip(basis) {
                if *c != 0 {
                    for (acc, x) in v.iter_mut().zip(row) {
                        *acc += BigInt::from(*c) * x;
                    }
                }
            }
            let norm_pow = naive_lp_pow(&v, p);
            if within(&norm_pow, radius_pow) {
                out.push(ShortVector {
                    norm_pow,
                    vector: v,
                });
            }
        }
        // Odometer step.
        let mut level = 0;
        loop {
            if level == k {
                out.sort();
                out.dedup();
                return out;
            }
            if coeffs[level] < bounds[level] {
                coeffs[level] += 1;
                break;
            }
            coeffs[level] = -bounds[level];
            level += 1;
        }
    }
}

/// Minimum of the box enumeration with the library's tie-breaking rule:
/// smallest (norm_pow, sign-canonical vector).
pub fn box_shortest(
    basis: &[Vec<BigInt>],
    p: u32,
    radius_pow: &BigRational,
    bounds: &[i64],
) -> Option<ShortVector> {
    let all = box_enumerate(basis, p, radius_pow, bounds);
    let best = all.iter().map(|sv| sv.norm_pow.clone()).min()?;
    let mut candidates: Vec<Vec<BigInt>> = all
        .into_iter()
        .filter(|sv| sv.norm_pow == best)
        .map(|sv| {
            let flip = sv
                .vector
                .iter()
                .find(|x| !x.is_zero())
                .map(|x| x.is_negative())
                .unwrap_or(false);
            if flip {
                sv.vector.into_iter().map(|x| -x).collect()
            } else {
                sv.vector
            }
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    Some(ShortVector {
        norm_pow: best,
        vector: candidates.remove(0),
    })
}

/// Rebuilds, from an exhaustive scan of the original instance, the complete
/// set of ± solution embeddings expected in the lattice built from the
/// dense chain with multiplier m: layout [originals | zeros | forced padding].
pub fn expected_embeddings(original: &SubsetSumInstance, m: u32) -> Vec<Vec<BigInt>> {
    let n = original.len();
    assert!(n <= 16, "oracle scans 2^n subsets twice");
    let padding = 2 * n * m as usize;
    let total = 2 * n + padding;
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let mut sum = BigInt::zero();
        for (i, w) in original.weights().iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += w;
            }
        }
        if sum != *original.target() {
            continue;
        }
        let picked = mask.count_ones() as usize;
        for zmask in 0u64..(1 << n) {
            if zmask.count_ones() as usize != n - picked {
                continue;
            }
            let mut v = Vec::with_capacity(total + 2);
            for i in 0..n {
                v.push(BigInt::from(if mask >> i & 1 == 1 { 1 } else { -1 }));
            }
            for i in 0..n {
                v.push(BigInt::from(if zmask >> i & 1 == 1 { 1 } else { -1 }));
            }
            v.extend(std::iter::repeat_n(BigInt::one(), padding));
            v.push(BigInt::zero());
            v.push(BigInt::zero());
            let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
            out.push(v);
            out.push(neg);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Seeded plain instance with n in 1..=max_n, weights in 0..=max_weight and
/// a target never above the weight sum (half planted, half uniform).
pub fn seeded_instance(rng: &mut ChaCha8Rng, max_n: usize, max_weight: u64) -> SubsetSumInstance {
    let n = rng.gen_range(1..=max_n);
    let weights: Vec<BigInt> = (0..n)
        .map(|_| BigInt::from(rng.gen_range(0..=max_weight)))
        .collect();
    let target = if rng.gen_bool(0.5) {
        let mut sum = BigInt::zero();
        for w in &weights {
            if rng.gen_bool(0.5) {
                sum += w;
            }
        }
        sum
    } else {
        let total: BigInt = weights.iter().sum();
        let bound = u64::try_from(&total).unwrap_or(u64::MAX);
        BigInt::from(rng.gen_range(0..=bound))
    };
    SubsetSumInstance::new(weights, target).expect("generated weights are valid")
}

/// Random square integer basis of full rank with entries in
/// [-entry_bound, entry_bound].
pub fn random_basis(rng: &mut ChaCha8Rng, dim: usize, entry_bound: i64) -> Vec<Vec<BigInt>> {
    loop {
        let basis: Vec<Vec<BigInt>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| BigInt::from(rng.gen_range(-entry_bound..=entry_bound)))
                    .collect()
            })
            .collect();
        if invert(&basis).is_some() {
            return basis;
        }
    }
}

pub fn norm_index(p: u32) -> NormIndex {
    NormIndex::new(p).expect("positive norm index")
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
