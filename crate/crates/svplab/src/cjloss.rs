//! The classic low-density subset-sum lattice (Coster et al. variant), for
//! context and comparison with the cardinality-constrained construction.
//!
//! For weights a_1..a_n and target s, the lattice has rows e_i with a
//! trailing column N a_i and a last row of halves with trailing column N s,
//! where N = ⌊√n / 2⌋ + 1. A solution x embeds as Σ x_i b_i - b_{n+1}, a
//! vector of ±1/2 entries and zero last coordinate, so its squared ℓ₂ norm
//! is at most n/4. Whether an exact SVP oracle recovers it depends on the
//! instance density n / log₂(max a_i); below 0.9408 recovery is the expected
//! behaviour, and the experiment here measures it instance by instance.

use crate::exactmath::NormIndex;
use crate::instances::{Assignment, SubsetSumInstance};
use crate::linalg;
use crate::reduce::LatticeBasis;
use crate::svp::{shortest_vector, SvpError, SvpQuery};
use crate::{baseline, exactmath};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CjlossError {
    #[error("density needs a weight of at least 2, maximum weight is {0}")]
    MaxWeightTooSmall(BigInt),
}

/// Density of an instance with the attackability flag decided exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    /// n / log₂(max a_i), as a double-precision approximation for display.
    pub approx: f64,
    /// d < 0.9408, decided by the integer comparison
    /// 2^(625 n) < (max a_i)^588.
    pub below_attack_threshold: bool,
}

/// Computes the density report; the threshold flag never relies on floats.
pub fn density(ss: &SubsetSumInstance) -> Result<DensityReport, CjlossError> {
    let max = ss
        .weights()
        .iter()
        .max()
        .expect("instances are non-empty")
        .clone();
    if max < BigInt::from(2) {
        return Err(CjlossError::MaxWeightTooSmall(max));
    }
    let n = ss.len();
    // d < 0.9408 = 588/625  <=>  625 n < 588 log2(max)  <=>  2^(625 n) < max^588.
    let lhs = BigInt::one() << (625usize * n);
    let rhs = max.pow(588u32);
    let below_attack_threshold = lhs < rhs;
    let approx = n as f64 / log2_approx(&max);
    Ok(DensityReport {
        approx,
        below_attack_threshold,
    })
}

/// log₂ of a positive big integer via its top 53 bits.
fn log2_approx(value: &BigInt) -> f64 {
    let bits = value.bits();
    if bits <= 53 {
        value.to_f64().expect("fits in 53 bits").log2()
    } else {
        let shift = bits - 53;
        let mantissa = (value >> shift).to_f64().expect("53 bits by construction");
        mantissa.log2() + shift as f64
    }
}

/// Builds the low-density attack basis in x2 integer form: rows 2 e_i with
/// trailing column 2 N a_i, last row of ones with trailing column 2 N s.
pub fn build_cjloss(ss: &SubsetSumInstance) -> LatticeBasis {
    let n = ss.len();
    let half = num_rational::BigRational::new(BigInt::one(), BigInt::from(2));
    let p2 = NormIndex::new(2).expect("2 >= 1");
    let big_n = exactmath::floor_scaled_root(&BigInt::from(n), p2, &half)
        .expect("n >= 1 and alpha = 1/2 are valid")
        + 1;
    let two_n = BigInt::from(2) * &big_n;
    let mut rows = Vec::with_capacity(n + 1);
    for (i, weight) in ss.weights().iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + 1];
        row[i] = BigInt::from(2);
        row[n] = &two_n * weight;
        rows.push(row);
    }
    let mut last = vec![BigInt::one(); n + 1];
    last[n] = &two_n * ss.target();
    rows.push(last);
    LatticeBasis::from_scaled_rows(rows, BigInt::from(2))
}

/// The x2-scaled embedding Σ x_i b_i - b_{n+1} of a solution: entries
/// 2 x_i - 1 and a last coordinate proportional to the residual Σ a_i x_i - s
/// (zero exactly when x solves the instance).
pub fn embedded_vector(ss: &SubsetSumInstance, a: &Assignment) -> Vec<BigInt> {
    let n = ss.len();
    debug_assert_eq!(a.len(), n);
    let half = num_rational::BigRational::new(BigInt::one(), BigInt::from(2));
    let p2 = NormIndex::new(2).expect("2 >= 1");
    let big_n = exactmath::floor_scaled_root(&BigInt::from(n), p2, &half)
        .expect("n >= 1 and alpha = 1/2 are valid")
        + 1;
    let mut v = Vec::with_capacity(n + 1);
    for &bit in a.bits() {
        v.push(if bit { BigInt::one() } else { BigInt::from(-1) });
    }
    let residual = a.selected_sum(ss.weights()) - ss.target();
    v.push(BigInt::from(2) * big_n * residual);
    v
}

/// Per-instance outcome of the low-density experiment.
#[derive(Debug, Clone)]
pub struct CjlossReport {
    pub density: Option<DensityReport>,
    pub solvable: bool,
    /// Squared ℓ₂ norm of the embedded solution vector in x2 form (at most n
    /// whenever the instance is solvable).
    pub embedded_norm_pow: Option<BigInt>,
    /// Whether the embedding is confirmed to lie in the lattice.
    pub embedded_in_lattice: bool,
    /// Whether the exact SVP minimizer decodes to a solution.
    pub recovered: bool,
    /// True when 2s = Σ a_i, which makes the square generating set singular;
    /// the SVP step is skipped for such instances.
    pub degenerate: bool,
}

/// Runs the embed-and-recover experiment on one instance.
///
/// Solvability comes from the subset-sum oracle; the SVP step uses the exact
/// solver, so the dimension cap applies (n + 1 rows). Instances with
/// 2s = Σ a_i have a rank-deficient generating set (the half-row becomes a
/// rational combination of the others) and are reported as degenerate.
pub fn cjloss_experiment(
    ss: &SubsetSumInstance,
    dimension_cap: usize,
) -> Result<CjlossReport, SvpError> {
    let density = density(ss).ok();
    let basis = build_cjloss(ss);
    let witness = baseline::dp_subset_sum(ss);
    let solvable = witness.is_some();
    let degenerate = BigInt::from(2) * ss.target() == ss.weight_sum();

    let (embedded_norm_pow, embedded_in_lattice) = match &witness {
        Some(a) => {
            let v = embedded_vector(ss, a);
            let norm = linalg::dot_int(&v, &v);
            let inside = !degenerate
                && linalg::integer_coefficients(basis.scaled_rows(), &v).is_some();
            (Some(norm), inside)
        }
        None => (None, false),
    };

    let recovered = if degenerate {
        false
    } else {
        let query = SvpQuery {
            basis: basis.scaled_rows().to_vec(),
            p: NormIndex::new(2).expect("2 >= 1"),
            radius_pow: None,
            dimension_cap,
        };
        shortest_vector(&query)?
            .vector
            .map(|sv| decode(&sv.vector, ss).is_some())
            .unwrap_or(false)
    };

    Ok(CjlossReport {
        density,
        solvable,
        embedded_norm_pow,
        embedded_in_lattice,
        recovered,
        degenerate,
    })
}

/// Decodes a x2-scaled lattice vector of shape (±1, ..., ±1, 0) back to a
/// solution, trying both signs.
pub fn decode(v_scaled: &[BigInt], ss: &SubsetSumInstance) -> Option<Assignment> {
    let n = ss.len();
    if v_scaled.len() != n + 1 || !v_scaled[n].is_zero() {
        return None;
    }
    for negate in [false, true] {
        let mut bits = Vec::with_capacity(n);
        let mut ok = true;
        for value in &v_scaled[..n] {
            let signed = if negate { -value } else { value.clone() };
            if signed == BigInt::one() {
                bits.push(true);
            } else if signed == BigInt::from(-1) {
                bits.push(false);
            } else {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let assignment = Assignment::new(bits);
        if ss.check_assignment(&assignment).unwrap_or(false) {
            return Some(assignment);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn plain(ws: &[i64], s: i64) -> SubsetSumInstance {
        SubsetSumInstance::new(bigints(ws), BigInt::from(s)).unwrap()
    }

    #[test]
    fn density_hand_values() {
        let ws: Vec<i64> = (1..=9).map(|i| i * 100).chain([1024]).collect();
        let d = density(&plain(&ws, 5)).unwrap();
        assert!((d.approx - 1.0).abs() < 1e-12);
        assert!(!d.below_attack_threshold);

        let ws: Vec<i64> = (1..=8).map(|i| i * 100).chain([1024]).collect();
        let d = density(&plain(&ws, 5)).unwrap();
        assert!((d.approx - 0.9).abs() < 1e-12);
        assert!(d.below_attack_threshold);

        let d = density(&plain(&[2; 10], 2)).unwrap();
        assert!((d.approx - 10.0).abs() < 1e-12);
        assert!(!d.below_attack_threshold);

        assert!(matches!(
            density(&plain(&[1, 1], 1)),
            Err(CjlossError::MaxWeightTooSmall(_))
        ));
    }

    #[test]
    fn basis_matches_hand_construction_at_n4() {
        let ss = plain(&[1, 5, 9, 11], 6);
        let basis = build_cjloss(&ss);
        let rows = basis.scaled_rows();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0], bigints(&[2, 0, 0, 0, 4]));
        assert_eq!(rows[2], bigints(&[0, 0, 2, 0, 36]));
        assert_eq!(rows[4], bigints(&[1, 1, 1, 1, 24]));
    }

    #[test]
    fn embedding_of_a_solution_is_short_and_inside() {
        let ss = plain(&[1, 5, 9], 6);
        let witness = baseline::dp_subset_sum(&ss).unwrap();
        let v = embedded_vector(&ss, &witness);
        assert_eq!(v, bigints(&[1, 1, -1, 0]));
        let norm = linalg::dot_int(&v, &v);
        assert!(norm <= BigInt::from(3));
        let basis = build_cjloss(&ss);
        assert!(linalg::integer_coefficients(basis.scaled_rows(), &v).is_some());
    }

    #[test]
    fn experiment_recovers_a_low_density_instance() {
        let ss = plain(&[1749, 1225, 981, 1666], 2206);
        let report = cjloss_experiment(&ss, 16).unwrap();
        assert!(report.solvable);
        assert!(report.embedded_in_lattice);
        assert!(report.embedded_norm_pow.unwrap() <= BigInt::from(4));
        assert!(report.recovered);
        assert!(!report.degenerate);
    }

    #[test]
    fn half_sum_targets_are_flagged_degenerate() {
        // 2s = Σ a_i collapses the rank of the generating set.
        let ss = plain(&[3, 5, 8], 8);
        let report = cjloss_experiment(&ss, 16).unwrap();
        assert!(report.degenerate);
        assert!(report.solvable);
        assert!(!report.recovered);
    }

    #[test]
    fn unsolvable_instances_report_no_embedding() {
        let ss = plain(&[2, 4, 8], 5);
        let report = cjloss_experiment(&ss, 16).unwrap();
        assert!(!report.solvable);
        assert_eq!(report.embedded_norm_pow, None);
        assert!(!report.recovered);
    }
}
