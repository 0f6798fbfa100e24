//! The deterministic reduction chain from plain subset-sum to a GapSVP
//! instance, plus the parameter planner and solution lifting.
//!
//! The chain has three steps:
//!
//! 1. `to_half_full` appends n zero weights, forcing witnesses to use exactly
//!    half of the 2n weights.
//! 2. `to_c_full` appends `m * n` padding weights, each one larger than the
//!    weight sum. In the dense variant the target grows by the padding sum so
//!    every witness must take all padding; in the sparse variant the target
//!    stays and every witness must omit it. Either way, solvability is
//!    preserved exactly.
//! 3. `build_lattice` embeds a c-full instance with n weights into an
//!    (n+1)-row lattice in n+2 columns. If the instance is solvable, every
//!    solution x appears as the vector (x_1 - 1/2, ..., x_n - 1/2, 0, 0) of
//!    ℓ_p norm n^(1/p)/2, and nothing else in the lattice is within factor
//!    2 - ε of that length, provided the planner's side conditions hold and
//!    the weights carry no dependency certificate.
//!
//! Everything is kept exact: the basis has a canonical x2 integer form (the
//! half entries of the last row become ones), thresholds are rationals, and
//! all side conditions are checked by integer comparisons.

use crate::dependency::{
    self, below_dependency_threshold, DependencyCertificate, DependencyOutcome, DependencyQuery,
};
use crate::exactmath::{floor_scaled_root, rational_pow, ExactMathError, NormIndex};
use crate::instances::{
    Assignment, CardinalityInstance, InstanceError, PaddingVariant, ReductionTrace,
    SubsetSumInstance,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsilonOutOfRange(BigRational),
    #[error("approximation factor must be at least 1, got {0}")]
    GammaBelowOne(BigRational),
    #[error("expected a half-full instance (ratio 1/2), got ratio {0}")]
    NotHalfFull(BigRational),
    #[error("half-full instances need an even number of weights, got {0}")]
    OddLength(usize),
    #[error("sparse padding requires target <= weight sum; target exceeds it by {0}")]
    SparseTargetTooLarge(BigInt),
    #[error("cardinality ratio {ratio} is not above 1 - epsilon/4 = {bound}")]
    RatioBelowBound {
        ratio: BigRational,
        bound: BigRational,
    },
    #[error("dimension bound fails: {n} weights is not below (3^p - 1)/((2-eps)^p - 1) = {bound}")]
    DimensionBound { n: usize, bound: BigRational },
    #[error("weights admit a dependency certificate; the instance is outside the promise class")]
    DependentWeights(DependencyCertificate),
    #[error("dependency search was inconclusive within the node budget")]
    IndependenceUndecided,
    #[error("trace does not match the assignment being lifted")]
    TraceMismatch,
}

/// Planner output: every quantity the reduction chain needs, as exact values,
/// together with the status of the side conditions that make the lattice
/// step sound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannerParams {
    pub epsilon: BigRational,
    /// α = 1 - ε/2; the norm-bound scale for dependency certificates.
    pub alpha: BigRational,
    /// Smallest m with (m + 1/2)/(m + 1) > 1 - ε/4.
    pub m: u32,
    /// Cardinality ratio c = (m + 1/2)/(m + 1) of the dense padded instance.
    pub cardinality_ratio: BigRational,
    /// Total weight count after both padding steps: 2 (m + 1) n_original.
    pub n_total: BigInt,
    /// Smallest norm index satisfying both side conditions below.
    pub p_hat: NormIndex,
    /// The coarser value ⌈log(n_total + 1) / log(1/α)⌉ used when a closed
    /// form is preferred over the tight threshold; reported for comparison.
    pub p_hat_coarse: NormIndex,
    /// N = ⌊α n_total^(1/p̂)⌋ + 1, the column scaling factor of the lattice.
    pub scaling_factor: BigInt,
    pub side_conditions: SideConditions,
}

/// The three conditions the lattice construction relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideConditions {
    /// c > 1 - ε/4.
    pub ratio_above_bound: bool,
    /// ε = 1, or n_total < (3^p - 1)/((2-ε)^p - 1).
    pub dimension_bound: bool,
    /// n_total < 2 α^{-p}, which rules out dependency certificates outright.
    pub independence_threshold: bool,
}

impl SideConditions {
    pub fn all_hold(&self) -> bool {
        self.ratio_above_bound && self.dimension_bound && self.independence_threshold
    }
}

fn check_epsilon(epsilon: &BigRational) -> Result<(), ReduceError> {
    if !epsilon.is_positive() || *epsilon > BigRational::one() {
        return Err(ReduceError::EpsilonOutOfRange(epsilon.clone()));
    }
    Ok(())
}

/// ε = 1 or n < (3^p - 1)/((2-ε)^p - 1), decided exactly.
///
/// This is the bound under which a lattice vector with any coordinate of
/// magnitude >= 3/2 (in the rational form) already exceeds the gap radius.
pub fn dimension_bound_holds(n: &BigInt, p: NormIndex, epsilon: &BigRational) -> bool {
    if epsilon.is_one() {
        return true;
    }
    let gap = BigRational::from_integer(BigInt::from(2)) - epsilon; // 2 - ε in (1, 2)
    let gap_pow = rational_pow(&gap, p.get());
    let lhs = BigRational::from_integer(n.clone()) * (gap_pow - BigRational::one());
    let rhs = BigRational::from_integer(BigInt::from(3).pow(p.get()) - 1);
    lhs < rhs
}

fn independence_threshold_holds(n: &BigInt, p: NormIndex, alpha: &BigRational) -> bool {
    let lhs = n * alpha.numer().pow(p.get());
    let rhs = BigInt::from(2) * alpha.denom().pow(p.get());
    lhs < rhs
}

/// Chooses m, α, p̂ and the scaling factor for a given ε and original
/// instance size. Both norm-index candidates are found by exact upward
/// search; the tight one is used.
pub fn plan_parameters(
    epsilon: &BigRational,
    n_original: &BigInt,
) -> Result<PlannerParams, ReduceError> {
    check_epsilon(epsilon)?;
    if !n_original.is_positive() {
        return Err(ReduceError::Math(ExactMathError::NonPositive(
            n_original.clone(),
        )));
    }
    let one = BigRational::one();
    let quarter_bound = &one - epsilon / BigRational::from_integer(BigInt::from(4));
    let mut m = 1u32;
    let cardinality_ratio = loop {
        let ratio = dense_ratio(m);
        if ratio > quarter_bound {
            break ratio;
        }
        m += 1;
    };
    let alpha = &one - epsilon / BigRational::from_integer(BigInt::from(2));
    let n_total = BigInt::from(2) * (m + 1) * n_original;

    let mut p = 1u32;
    let p_hat = loop {
        let idx = NormIndex::new(p).expect("p >= 1");
        if independence_threshold_holds(&n_total, idx, &alpha)
            && dimension_bound_holds(&n_total, idx, epsilon)
        {
            break idx;
        }
        p += 1;
    };

    // Smallest p with (1/α)^p >= n_total + 1.
    let mut p = 1u32;
    let p_hat_coarse = loop {
        let lhs = alpha.denom().pow(p);
        let rhs = (&n_total + BigInt::one()) * alpha.numer().pow(p);
        if lhs >= rhs {
            break NormIndex::new(p).expect("p >= 1");
        }
        p += 1;
    };

    let scaling_factor = floor_scaled_root(&n_total, p_hat, &alpha)? + BigInt::one();
    let side_conditions = SideConditions {
        ratio_above_bound: cardinality_ratio > quarter_bound,
        dimension_bound: dimension_bound_holds(&n_total, p_hat, epsilon),
        independence_threshold: independence_threshold_holds(&n_total, p_hat, &alpha),
    };
    Ok(PlannerParams {
        epsilon: epsilon.clone(),
        alpha,
        m,
        cardinality_ratio,
        n_total,
        p_hat,
        p_hat_coarse,
        scaling_factor,
        side_conditions,
    })
}

fn dense_ratio(m: u32) -> BigRational {
    BigRational::new(BigInt::from(2 * m as u64 + 1), BigInt::from(2 * (m as u64 + 1)))
}

/// Appends n zero weights: witnesses of the result use exactly half of the
/// 2n weights, and solvability is unchanged.
pub fn to_half_full(ss: &SubsetSumInstance) -> (CardinalityInstance, ReductionTrace) {
    let n = ss.len();
    let mut weights = ss.weights().to_vec();
    weights.extend(std::iter::repeat_n(BigInt::zero(), n));
    let inst = CardinalityInstance::from_required_count(weights, ss.target().clone(), n)
        .expect("2n weights with count n is a valid ratio");
    (inst, ReductionTrace::HalfFull { original_len: n })
}

/// Appends `m * n` copies of (weight sum + 1) to a half-full instance.
///
/// Dense: the target grows by the padding sum, so witnesses must contain all
/// padding; the ratio becomes (m + 1/2)/(m + 1). Sparse: the target is
/// unchanged, so witnesses must omit the padding; the ratio becomes
/// 1/(2(m+1)). The sparse direction is only sound when the target does not
/// exceed the weight sum (otherwise a padding weight alone could fake a
/// solution), so that case is rejected.
pub fn to_c_full(
    hf: &CardinalityInstance,
    m: u32,
    variant: PaddingVariant,
) -> Result<(CardinalityInstance, ReductionTrace), ReduceError> {
    let n = hf.len();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if *hf.ratio() != half {
        return Err(ReduceError::NotHalfFull(hf.ratio().clone()));
    }
    if !n.is_multiple_of(2) {
        return Err(ReduceError::OddLength(n));
    }
    let weight_sum = hf.weight_sum();
    if variant == PaddingVariant::Sparse && *hf.target() > weight_sum {
        return Err(ReduceError::SparseTargetTooLarge(hf.target() - weight_sum));
    }
    let padding_value = &weight_sum + BigInt::one();
    let padding_count = m as usize * n;
    let padding_sum = &padding_value * BigInt::from(padding_count);

    let mut weights = hf.weights().to_vec();
    weights.extend(std::iter::repeat_n(padding_value.clone(), padding_count));

    let (target, required, target_shift) = match variant {
        PaddingVariant::Dense => (
            hf.target() + &padding_sum,
            padding_count + n / 2,
            padding_sum,
        ),
        PaddingVariant::Sparse => (hf.target().clone(), n / 2, BigInt::zero()),
    };
    let inst = CardinalityInstance::from_required_count(weights, target, required)?;
    let trace = ReductionTrace::CFull {
        variant,
        original_len: n,
        padding_count,
        padding_value,
        target_shift,
    };
    Ok((inst, trace))
}

/// A row basis stored in scaled integer form: the true (possibly rational)
/// basis is the integer matrix divided by `scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    scaled_rows: Vec<Vec<BigInt>>,
    scale: BigInt,
}

impl LatticeBasis {
    pub fn from_integer_rows(rows: Vec<Vec<BigInt>>) -> Self {
        LatticeBasis {
            scaled_rows: rows,
            scale: BigInt::one(),
        }
    }

    pub fn from_scaled_rows(rows: Vec<Vec<BigInt>>, scale: BigInt) -> Self {
        debug_assert!(scale.is_positive());
        LatticeBasis {
            scaled_rows: rows,
            scale,
        }
    }

    /// Integer rows of the scaled lattice (`scale` times the true basis).
    pub fn scaled_rows(&self) -> &[Vec<BigInt>] {
        &self.scaled_rows
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn nrows(&self) -> usize {
        self.scaled_rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.scaled_rows.first().map_or(0, |r| r.len())
    }

    /// The true basis rows as rationals (scaled rows divided by the scale).
    pub fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        self.scaled_rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| BigRational::new(v.clone(), self.scale.clone()))
                    .collect()
            })
            .collect()
    }
}

/// A GapSVP instance: basis, norm index, distance threshold δ (stored as
/// δ^p), and approximation factor γ.
///
/// YES promises λ_p <= δ, NO promises λ_p > γδ; anything in between is a gap
/// violation, which the decision oracle reports as a first-class verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSvpInstance {
    pub basis: LatticeBasis,
    pub p: NormIndex,
    /// δ^p for the *unscaled* (rational) lattice.
    pub delta_pow: BigRational,
    pub gamma: BigRational,
}

impl GapSvpInstance {
    pub fn new(
        basis: LatticeBasis,
        p: NormIndex,
        delta_pow: BigRational,
        gamma: BigRational,
    ) -> Result<Self, ReduceError> {
        if !delta_pow.is_positive() {
            return Err(ReduceError::Math(ExactMathError::NonPositive(
                delta_pow.numer().clone(),
            )));
        }
        if gamma < BigRational::one() {
            return Err(ReduceError::GammaBelowOne(gamma));
        }
        Ok(GapSvpInstance {
            basis,
            p,
            delta_pow,
            gamma,
        })
    }

    /// δ^p for the scaled integer lattice the solver actually works on.
    pub fn scaled_delta_pow(&self) -> BigRational {
        let scale_pow = BigRational::from_integer(self.basis.scale().clone());
        &self.delta_pow * rational_pow(&scale_pow, self.p.get())
    }

    /// (γ δ)^p for the scaled integer lattice.
    pub fn scaled_gap_radius_pow(&self) -> BigRational {
        self.scaled_delta_pow() * rational_pow(&self.gamma, self.p.get())
    }
}

/// How the no-dependency precondition of the lattice step was discharged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndependenceEvidence {
    /// n < 2 α^{-p}: no certificate can exist, no search needed.
    BelowThreshold,
    /// An exhaustive search covered the feasible region and found nothing.
    CertifiedSearch { nodes_visited: u64 },
}

/// A GapSVP instance together with the c-full instance it encodes and the
/// exact parameters of the construction. Only `build_lattice` creates these,
/// so the structure-aware solver can rely on the side conditions having been
/// checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedLattice {
    pub gap: GapSvpInstance,
    pub source: CardinalityInstance,
    pub epsilon: BigRational,
    pub alpha: BigRational,
    /// N, the factor on the two bookkeeping columns.
    pub scaling_factor: BigInt,
    pub evidence: IndependenceEvidence,
}

/// Builds the lattice of a c-full instance, checking every side condition.
///
/// Row i (1 <= i <= n) of the x2 integer form is 2 e_i with trailing columns
/// (2N, 2N a_i); the last row is all ones with trailing columns (2N r, 2N s).
/// The distance threshold is δ^p = n / 2^p and the gap factor γ = 2 - ε.
pub fn build_lattice(
    cf: &CardinalityInstance,
    p: NormIndex,
    epsilon: &BigRational,
    dependency_budget: u64,
) -> Result<ConstructedLattice, ReduceError> {
    check_epsilon(epsilon)?;
    let n = cf.len();
    let n_big = BigInt::from(n);

    let quarter_bound =
        BigRational::one() - epsilon / BigRational::from_integer(BigInt::from(4));
    if *cf.ratio() <= quarter_bound {
        return Err(ReduceError::RatioBelowBound {
            ratio: cf.ratio().clone(),
            bound: quarter_bound,
        });
    }
    if !dimension_bound_holds(&n_big, p, epsilon) {
        let gap = BigRational::from_integer(BigInt::from(2)) - epsilon;
        let gap_pow = rational_pow(&gap, p.get());
        let bound = BigRational::from_integer(BigInt::from(3).pow(p.get()) - 1)
            / (gap_pow - BigRational::one());
        return Err(ReduceError::DimensionBound { n, bound });
    }

    let alpha = BigRational::one() - epsilon / BigRational::from_integer(BigInt::from(2));
    let evidence = if below_dependency_threshold(n, p, &alpha) {
        IndependenceEvidence::BelowThreshold
    } else {
        let query = DependencyQuery::new(cf.weights().to_vec(), p, alpha.clone())
            .expect("instance weights are valid");
        match dependency::find_dependency(&query, dependency_budget) {
            DependencyOutcome::Independent(report) => IndependenceEvidence::CertifiedSearch {
                nodes_visited: report.nodes_visited,
            },
            DependencyOutcome::Dependent(cert) => {
                return Err(ReduceError::DependentWeights(cert))
            }
            DependencyOutcome::Inconclusive(_) => {
                return Err(ReduceError::IndependenceUndecided)
            }
        }
    };

    let scaling_factor = floor_scaled_root(&n_big, p, &alpha)? + BigInt::one();
    let two_n = BigInt::from(2) * &scaling_factor;

    let mut rows = Vec::with_capacity(n + 1);
    for (i, weight) in cf.weights().iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + 2];
        row[i] = BigInt::from(2);
        row[n] = two_n.clone();
        row[n + 1] = &two_n * weight;
        rows.push(row);
    }
    let mut last = vec![BigInt::one(); n + 2];
    last[n] = &two_n * BigInt::from(cf.required_count());
    last[n + 1] = &two_n * cf.target();
    rows.push(last);

    let basis = LatticeBasis::from_scaled_rows(rows, BigInt::from(2));
    let delta_pow = BigRational::new(n_big, BigInt::from(2).pow(p.get()));
    let gamma = BigRational::from_integer(BigInt::from(2)) - epsilon;
    let gap = GapSvpInstance::new(basis, p, delta_pow, gamma)?;

    Ok(ConstructedLattice {
        gap,
        source: cf.clone(),
        epsilon: epsilon.clone(),
        alpha,
        scaling_factor,
        evidence,
    })
}

/// The x2-scaled lattice vector encoding a solution: entries 2 x_i - 1 over
/// the first n coordinates, zeros on the two bookkeeping columns.
pub fn embed_solution(cf: &CardinalityInstance, a: &Assignment) -> Vec<BigInt> {
    let n = cf.len();
    debug_assert_eq!(a.len(), n);
    let mut v = Vec::with_capacity(n + 2);
    for &bit in a.bits() {
        v.push(if bit { BigInt::one() } else { BigInt::from(-1) });
    }
    v.push(BigInt::zero());
    v.push(BigInt::zero());
    v
}

/// Inverts the embedding: tries x = (v + 1)/2 and x = (-v + 1)/2 on the
/// first n coordinates of a x2-scaled lattice vector and returns whichever
/// passes the instance check, if either does.
pub fn extract_solution(v_scaled: &[BigInt], cf: &CardinalityInstance) -> Option<Assignment> {
    let n = cf.len();
    if v_scaled.len() != n + 2 {
        return None;
    }
    if !v_scaled[n].is_zero() || !v_scaled[n + 1].is_zero() {
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
        if cf.check_assignment(&assignment).unwrap_or(false) {
            return Some(assignment);
        }
    }
    None
}

/// Undoes the padding steps recorded in `traces` (applied in order) and
/// returns an assignment for the original instance.
pub fn lift_solution(traces: &[ReductionTrace], a: &Assignment) -> Result<Assignment, ReduceError> {
    let mut current = a.clone();
    for trace in traces.iter().rev() {
        current = match trace {
            ReductionTrace::HalfFull { original_len } => {
                if current.len() != 2 * original_len {
                    return Err(ReduceError::TraceMismatch);
                }
                Assignment::new(current.bits()[..*original_len].to_vec())
            }
            ReductionTrace::CFull {
                variant,
                original_len,
                padding_count,
                ..
            } => {
                if current.len() != original_len + padding_count {
                    return Err(ReduceError::TraceMismatch);
                }
                let padding_bits = &current.bits()[*original_len..];
                let expected = matches!(variant, PaddingVariant::Dense);
                if padding_bits.iter().any(|&b| b != expected) {
                    return Err(ReduceError::TraceMismatch);
                }
                Assignment::new(current.bits()[..*original_len].to_vec())
            }
        };
    }
    Ok(current)
}

/// Norm^p of the alternative solution embedding that uses the cardinality
/// ratio itself in place of the halves: n (c (1-c)^p + c^p (1-c)).
///
/// Exposed as a diagnostic only; the construction above always uses halves.
pub fn ratio_embedding_norm_pow(n: usize, c: &BigRational, p: NormIndex) -> BigRational {
    let one_minus = BigRational::one() - c;
    let term = c * rational_pow(&one_minus, p.get()) + rational_pow(c, p.get()) * &one_minus;
    BigRational::from_integer(BigInt::from(n)) * term
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dependency::DEFAULT_NODE_BUDGET;
    use num_traits::ToPrimitive;

    fn bigints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn plain(ws: &[i64], s: i64) -> SubsetSumInstance {
        SubsetSumInstance::new(bigints(ws), BigInt::from(s)).unwrap()
    }

    #[test]
    fn planner_reproduces_reference_values() {
        let one = rat(1, 1);
        let params = plan_parameters(&one, &BigInt::from(10_000)).unwrap();
        assert_eq!(params.m, 2);
        assert_eq!(params.cardinality_ratio, rat(5, 6));
        assert_eq!(params.alpha, rat(1, 2));
        assert_eq!(params.n_total, BigInt::from(60_000));
        assert_eq!(params.p_hat.get(), 15);
        assert_eq!(params.p_hat_coarse.get(), 16);
        assert!(params.side_conditions.all_hold());

        let huge = BigInt::from(10u32).pow(82u32);
        let params = plan_parameters(&one, &huge).unwrap();
        assert_eq!(params.p_hat.get(), 274);
    }

    #[test]
    fn planner_handles_smaller_epsilon() {
        let params = plan_parameters(&rat(1, 2), &BigInt::from(1)).unwrap();
        assert_eq!(params.m, 4);
        assert_eq!(params.cardinality_ratio, rat(9, 10));
        assert_eq!(params.alpha, rat(3, 4));
        assert_eq!(params.n_total, BigInt::from(10));
        assert_eq!(params.p_hat.get(), 6);
        assert!(params.side_conditions.all_hold());
    }

    #[test]
    fn half_full_construction_is_verbatim() {
        let (hf, trace) = to_half_full(&plain(&[3, 5], 5));
        assert_eq!(hf.weights(), &bigints(&[3, 5, 0, 0])[..]);
        assert_eq!(hf.required_count(), 2);
        assert_eq!(*hf.target(), BigInt::from(5));
        assert_eq!(trace, ReductionTrace::HalfFull { original_len: 2 });

        let (hf, _) = to_half_full(&plain(&[7], 7));
        assert_eq!(hf.weights(), &bigints(&[7, 0])[..]);
        assert_eq!(hf.required_count(), 1);
    }

    #[test]
    fn dense_padding_matches_hand_computation() {
        let (hf, _) = to_half_full(&plain(&[3, 5], 5));
        let (cf, trace) = to_c_full(&hf, 2, PaddingVariant::Dense).unwrap();
        assert_eq!(cf.len(), 12);
        assert_eq!(&cf.weights()[4..], &bigints(&[9; 8])[..]);
        assert_eq!(*cf.ratio(), rat(5, 6));
        assert_eq!(cf.required_count(), 10);
        assert_eq!(*cf.target(), BigInt::from(77));
        match trace {
            ReductionTrace::CFull {
                variant: PaddingVariant::Dense,
                original_len: 4,
                padding_count: 8,
                ref padding_value,
                ref target_shift,
            } => {
                assert_eq!(*padding_value, BigInt::from(9));
                assert_eq!(*target_shift, BigInt::from(72));
            }
            other => panic!("unexpected trace {other:?}"),
        }
    }

    #[test]
    fn sparse_padding_matches_hand_computation() {
        let (hf, _) = to_half_full(&plain(&[3, 5], 5));
        let (cf, _) = to_c_full(&hf, 2, PaddingVariant::Sparse).unwrap();
        assert_eq!(cf.len(), 12);
        assert_eq!(*cf.ratio(), rat(1, 6));
        assert_eq!(cf.required_count(), 2);
        assert_eq!(*cf.target(), BigInt::from(5));
    }

    #[test]
    fn sparse_rejects_oversized_targets() {
        let (hf, _) = to_half_full(&plain(&[1, 1], 3));
        assert!(matches!(
            to_c_full(&hf, 1, PaddingVariant::Sparse),
            Err(ReduceError::SparseTargetTooLarge(_))
        ));
        // Dense handles the same target without losing soundness.
        let (cf, _) = to_c_full(&hf, 1, PaddingVariant::Dense).unwrap();
        assert_eq!(crate::baseline::dp_cardinality(&cf), None);
    }

    #[test]
    fn lattice_rows_match_hand_computation() {
        let (hf, _) = to_half_full(&plain(&[3, 5], 5));
        let (cf, _) = to_c_full(&hf, 2, PaddingVariant::Dense).unwrap();
        let one = rat(1, 1);
        let params = plan_parameters(&one, &BigInt::from(2)).unwrap();
        assert_eq!(params.n_total.to_usize().unwrap(), cf.len());
        let built = build_lattice(&cf, params.p_hat, &one, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(built.scaling_factor, BigInt::from(2));
        assert_eq!(built.evidence, IndependenceEvidence::BelowThreshold);

        let rows = built.gap.basis.scaled_rows();
        assert_eq!(rows.len(), 13);
        assert_eq!(rows[0].len(), 14);
        // First row: 2 e_1 with bookkeeping columns (2N, 2N a_1).
        assert_eq!(rows[0][0], BigInt::from(2));
        assert_eq!(rows[0][12], BigInt::from(4));
        assert_eq!(rows[0][13], BigInt::from(12));
        // Last row: ones then (2N r, 2N s).
        assert!(rows[12][..12].iter().all(|v| *v == BigInt::one()));
        assert_eq!(rows[12][12], BigInt::from(40));
        assert_eq!(rows[12][13], BigInt::from(308));
        // Thresholds: δ^p = n / 2^p, γ = 1 for ε = 1.
        assert_eq!(built.gap.delta_pow, rat(12, 8));
        assert_eq!(built.gap.gamma, rat(1, 1));
        assert_eq!(built.gap.scaled_delta_pow(), rat(12, 1));
    }

    #[test]
    fn lattice_refuses_bad_ratio() {
        let cf = CardinalityInstance::from_required_count(bigints(&[1, 2, 3, 4]), BigInt::from(3), 2)
            .unwrap();
        let p = NormIndex::new(2).unwrap();
        assert!(matches!(
            build_lattice(&cf, p, &rat(1, 1), DEFAULT_NODE_BUDGET),
            Err(ReduceError::RatioBelowBound { .. })
        ));
    }

    #[test]
    fn lattice_refuses_dependent_weights() {
        // 12 weights with many equal values and ratio 11/12 > 3/4; at p = 4,
        // n = 12 >= 2 * 2^4 / ... the threshold does not apply and the pair
        // of equal weights is a certificate.
        let ws = bigints(&[5, 5, 1, 2, 3, 4, 6, 7, 8, 9, 10, 11]);
        let total: BigInt = ws.iter().sum();
        let cf = CardinalityInstance::from_required_count(ws, total - 11, 11).unwrap();
        let p = NormIndex::new(2).unwrap();
        match build_lattice(&cf, p, &rat(1, 1), DEFAULT_NODE_BUDGET) {
            Err(ReduceError::DependentWeights(cert)) => {
                assert_eq!(cert.coefficients.iter().filter(|v| !v.is_zero()).count(), 2);
            }
            other => panic!("expected dependent weights, got {other:?}"),
        }
    }

    #[test]
    fn dimension_bound_is_enforced_for_small_epsilon() {
        // ε = 1/2 at p = 1: (3 - 1)/((3/2) - 1) = 4, so 10 weights fail.
        let ws: Vec<BigInt> = (1..=10).map(BigInt::from).collect();
        let cf = CardinalityInstance::from_required_count(ws, BigInt::from(30), 9).unwrap();
        let p = NormIndex::new(1).unwrap();
        assert!(matches!(
            build_lattice(&cf, p, &rat(1, 2), DEFAULT_NODE_BUDGET),
            Err(ReduceError::DimensionBound { .. })
        ));
    }

    #[test]
    fn embedding_and_extraction_invert() {
        let cf = CardinalityInstance::from_required_count(
            bigints(&[3, 5, 0, 0]),
            BigInt::from(5),
            2,
        )
        .unwrap();
        let a = Assignment::new(vec![false, true, true, false]);
        assert!(cf.check_assignment(&a).unwrap());
        let v = embed_solution(&cf, &a);
        assert_eq!(v, bigints(&[-1, 1, 1, -1, 0, 0]));
        assert_eq!(extract_solution(&v, &cf), Some(a.clone()));
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        assert_eq!(extract_solution(&neg, &cf), Some(a));
        // A coordinate of magnitude 3 cannot come from a 0/1 assignment.
        let bad = bigints(&[3, 1, 1, -1, 0, 0]);
        assert_eq!(extract_solution(&bad, &cf), None);
    }

    #[test]
    fn lifting_strips_padding_and_zeros() {
        let original = plain(&[3, 5], 5);
        let (hf, t1) = to_half_full(&original);
        let (cf, t2) = to_c_full(&hf, 2, PaddingVariant::Dense).unwrap();
        let witness = crate::baseline::dp_cardinality(&cf).unwrap();
        let lifted = lift_solution(&[t1, t2], &witness).unwrap();
        assert!(original.check_assignment(&lifted).unwrap());
    }

    #[test]
    fn ratio_embedding_matches_half_case() {
        // At c = 1/2 the alternative embedding length collapses to n / 2^p.
        let p = NormIndex::new(3).unwrap();
        assert_eq!(
            ratio_embedding_norm_pow(12, &rat(1, 2), p),
            rat(12, 8)
        );
        let c = rat(5, 6);
        let value = ratio_embedding_norm_pow(6, &c, p);
        // 6 * (5/6 * (1/6)^3 + (5/6)^3 * 1/6) = 6 * (5/1296 + 125/1296).
        assert_eq!(value, rat(130, 216));
    }
}
