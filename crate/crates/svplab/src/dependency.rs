//! Dependency certificates for weight vectors under ℓ_p norm bounds.
//!
//! Non-negative weights a_1..a_n are called p-dependent with respect to a
//! scale 0 < α < 1 if some nonzero integer vector x satisfies
//!
//! ```text
//! Σ a_i x_i = 0,   Σ x_i = 0,   ‖x‖_p <= α · n^(1/p).
//! ```
//!
//! Such an x is orthogonal to both the weight vector and the all-ones vector.
//! Its existence is what lets short non-solution vectors hide inside the
//! lattice built by [`crate::reduce::build_lattice`], so the reduction only
//! accepts weight vectors that are certified independent.
//!
//! The search here is exhaustive within the exact feasible region: every
//! candidate obeys ‖x‖_p^p <= α^p n, hence |x_i| <= ⌊α n^(1/p)⌋ per
//! coordinate and the support size is bounded by ⌊α^p n⌋. Supports are
//! scanned in ascending size, values lexicographically, so the first
//! certificate found is deterministic. A node budget guards against blow-up;
//! exhausting the budget yields an inconclusive report, never an
//! independence claim.

use crate::exactmath::{floor_scaled_root, lp_pow, ExactMathError, NormIndex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DependencyError {
    #[error(transparent)]
    Math(#[from] ExactMathError),
    #[error("weights must be non-negative, position {0} is not")]
    NegativeWeight(usize),
    #[error("weights are empty")]
    EmptyWeights,
    #[error("certificate has {got} entries for {expected} weights")]
    LengthMismatch { expected: usize, got: usize },
    #[error("search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: u64 },
}

/// One dependency question: weights, norm index, and scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyQuery {
    weights: Vec<BigInt>,
    p: NormIndex,
    alpha: BigRational,
}

impl DependencyQuery {
    pub fn new(
        weights: Vec<BigInt>,
        p: NormIndex,
        alpha: BigRational,
    ) -> Result<Self, DependencyError> {
        if weights.is_empty() {
            return Err(DependencyError::EmptyWeights);
        }
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(DependencyError::NegativeWeight(i));
            }
        }
        if !alpha.is_positive() || alpha >= BigRational::one() {
            return Err(DependencyError::Math(ExactMathError::ScaleOutOfRange(
                alpha,
            )));
        }
        Ok(DependencyQuery { weights, p, alpha })
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn p(&self) -> NormIndex {
        self.p
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// A witness of dependency; always passes [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyCertificate {
    pub coefficients: Vec<BigInt>,
}

/// Description of the region an (attempted) exhaustive search covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    /// Per-coordinate bound ⌊α n^(1/p)⌋ on |x_i|.
    pub coordinate_bound: BigInt,
    /// Maximum support size ⌊α^p n⌋ (capped at n).
    pub max_support: usize,
    /// Nodes visited before returning.
    pub nodes_visited: u64,
    /// True only if the full region was enumerated.
    pub exhausted: bool,
}

/// Outcome of a dependency search.
///
/// `Independent` is only ever produced together with an exhausted report;
/// running out of budget yields `Inconclusive`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DependencyOutcome {
    Dependent(DependencyCertificate),
    Independent(SearchReport),
    Inconclusive(SearchReport),
}

impl DependencyOutcome {
    pub fn is_dependent(&self) -> bool {
        matches!(self, DependencyOutcome::Dependent(_))
    }

    pub fn is_independent(&self) -> bool {
        matches!(self, DependencyOutcome::Independent(_))
    }
}

/// Default node budget for searches driven by the planner and the tests.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// n < 2 α^{-p}, the size threshold below which no dependency vector can
/// exist: the cheapest nonzero balanced vector has two entries of ±1 and
/// already violates the norm bound.
pub fn below_dependency_threshold(n: usize, p: NormIndex, alpha: &BigRational) -> bool {
    let lhs = BigInt::from(n) * alpha.numer().pow(p.get());
    let rhs = BigInt::from(2) * alpha.denom().pow(p.get());
    lhs < rhs
}

/// Searches for a dependency certificate, exhaustively within the budget.
pub fn find_dependency(q: &DependencyQuery, budget: u64) -> DependencyOutcome {
    let mut search = Search::new(q, budget, false);
    search.run();
    search.into_outcome()
}

/// Enumerates every dependency vector (both signs) inside the norm bound.
///
/// Fails if the budget is exhausted before the region is covered, so a
/// successful return is a complete listing.
pub fn enumerate_dependency_vectors(
    q: &DependencyQuery,
    budget: u64,
) -> Result<Vec<Vec<BigInt>>, DependencyError> {
    let mut search = Search::new(q, budget, true);
    search.run();
    if !search.exhausted {
        return Err(DependencyError::BudgetExceeded { budget });
    }
    let mut all: Vec<Vec<BigInt>> = Vec::with_capacity(search.found.len() * 2);
    for x in search.found {
        let neg: Vec<BigInt> = x.iter().map(|v| -v).collect();
        all.push(x);
        all.push(neg);
    }
    all.sort();
    Ok(all)
}

/// Checks all four certificate conditions exactly.
pub fn verify_certificate(q: &DependencyQuery, x: &[BigInt]) -> Result<bool, DependencyError> {
    if x.len() != q.len() {
        return Err(DependencyError::LengthMismatch {
            expected: q.len(),
            got: x.len(),
        });
    }
    if x.iter().all(|v| v.is_zero()) {
        return Ok(false);
    }
    let weighted: BigInt = x.iter().zip(q.weights()).map(|(v, w)| v * w).sum();
    if !weighted.is_zero() {
        return Ok(false);
    }
    let balance: BigInt = x.iter().sum();
    if !balance.is_zero() {
        return Ok(false);
    }
    let n = BigInt::from(q.len());
    let p = q.p().get();
    let lhs = lp_pow(x, q.p()) * q.alpha().denom().pow(p);
    let rhs = q.alpha().numer().pow(p) * n;
    Ok(lhs <= rhs)
}

/// The weight family N, N^2, ..., N^n with N = ⌊α n^(1/p)⌋ + 1.
///
/// Distinct powers of a base exceeding the coordinate bound leave no room
/// for a balanced zero combination, so the family is expected to be
/// independent; the tests confirm this exhaustively for small n and p.
pub fn geometric_family(
    n: usize,
    p: NormIndex,
    alpha: &BigRational,
) -> Result<Vec<BigInt>, DependencyError> {
    if n == 0 {
        return Err(DependencyError::EmptyWeights);
    }
    let base = floor_scaled_root(&BigInt::from(n), p, alpha)? + BigInt::one();
    let mut weights = Vec::with_capacity(n);
    let mut current = base.clone();
    for _ in 0..n {
        weights.push(current.clone());
        current *= &base;
    }
    Ok(weights)
}

/// Result of checking one structural property of the dependency notion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyResult {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        matches!(self, PropertyResult::Pass)
    }
}

/// Pass/fail report for the four structural laws of dependency:
/// invariance under scaling the weights, persistence under appending
/// weights, monotonicity downwards in the norm index, and forced
/// independence below the size threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertySuiteReport {
    pub scaling_invariance: PropertyResult,
    pub extension_persistence: PropertyResult,
    pub norm_monotonicity: PropertyResult,
    pub threshold_independence: PropertyResult,
}

impl PropertySuiteReport {
    pub fn all_passed(&self) -> bool {
        self.scaling_invariance.passed()
            && self.extension_persistence.passed()
            && self.norm_monotonicity.passed()
            && self.threshold_independence.passed()
    }
}

/// Runs the four structural checks against exhaustive searches on both sides
/// of each implication. Intended for the small-n regime where exhaustion is
/// guaranteed within the budget.
pub fn property_suite(q: &DependencyQuery, budget: u64) -> PropertySuiteReport {
    let base = find_dependency(q, budget);

    let scaling_invariance = check_scaling(q, &base, budget);
    let extension_persistence = check_extension(q, &base, budget);
    let norm_monotonicity = check_norm_monotonicity(q, &base, budget);
    let threshold_independence = check_threshold(q, &base);

    PropertySuiteReport {
        scaling_invariance,
        extension_persistence,
        norm_monotonicity,
        threshold_independence,
    }
}

fn check_scaling(q: &DependencyQuery, base: &DependencyOutcome, budget: u64) -> PropertyResult {
    if matches!(base, DependencyOutcome::Inconclusive(_)) {
        return PropertyResult::Inconclusive("base search hit the budget".into());
    }
    for lambda in [2u32, 3] {
        let scaled: Vec<BigInt> = q.weights().iter().map(|w| w * lambda).collect();
        let scaled_q = DependencyQuery::new(scaled, q.p(), q.alpha().clone())
            .expect("scaling keeps weights valid");
        let outcome = find_dependency(&scaled_q, budget);
        match (&base, &outcome) {
            (DependencyOutcome::Dependent(cert), DependencyOutcome::Dependent(_)) => {
                // The same certificate must transfer verbatim.
                if !verify_certificate(&scaled_q, &cert.coefficients).unwrap_or(false) {
                    return PropertyResult::Fail(format!(
                        "certificate did not survive scaling by {lambda}"
                    ));
                }
            }
            (DependencyOutcome::Independent(_), DependencyOutcome::Independent(_)) => {}
            (_, DependencyOutcome::Inconclusive(_)) => {
                return PropertyResult::Inconclusive(format!(
                    "scaled search (lambda = {lambda}) hit the budget"
                ));
            }
            _ => {
                return PropertyResult::Fail(format!(
                    "verdict changed under scaling by {lambda}"
                ));
            }
        }
    }
    PropertyResult::Pass
}

fn check_extension(q: &DependencyQuery, base: &DependencyOutcome, budget: u64) -> PropertyResult {
    let cert = match base {
        DependencyOutcome::Dependent(cert) => cert,
        DependencyOutcome::Independent(_) => return PropertyResult::Pass,
        DependencyOutcome::Inconclusive(_) => {
            return PropertyResult::Inconclusive("base search hit the budget".into())
        }
    };
    let extras: Vec<BigInt> = vec![q.weights().iter().sum::<BigInt>() + 1, BigInt::zero()];
    let mut extended = q.weights().to_vec();
    extended.extend(extras);
    let extended_q = DependencyQuery::new(extended, q.p(), q.alpha().clone())
        .expect("extension keeps weights valid");
    // The padded certificate must verify, and the search must agree.
    let mut padded = cert.coefficients.clone();
    padded.extend([BigInt::zero(), BigInt::zero()]);
    if !verify_certificate(&extended_q, &padded).unwrap_or(false) {
        return PropertyResult::Fail("padded certificate failed on the extended weights".into());
    }
    match find_dependency(&extended_q, budget) {
        DependencyOutcome::Dependent(_) => PropertyResult::Pass,
        DependencyOutcome::Independent(_) => {
            PropertyResult::Fail("extension lost a certified dependency".into())
        }
        DependencyOutcome::Inconclusive(_) => {
            PropertyResult::Inconclusive("extended search hit the budget".into())
        }
    }
}

fn check_norm_monotonicity(
    q: &DependencyQuery,
    base: &DependencyOutcome,
    budget: u64,
) -> PropertyResult {
    let cert = match base {
        DependencyOutcome::Dependent(cert) => cert,
        DependencyOutcome::Independent(_) => return PropertyResult::Pass,
        DependencyOutcome::Inconclusive(_) => {
            return PropertyResult::Inconclusive("base search hit the budget".into())
        }
    };
    for lower in 1..q.p().get() {
        let lower_p = NormIndex::new(lower).expect("lower >= 1");
        let lower_q = DependencyQuery::new(q.weights().to_vec(), lower_p, q.alpha().clone())
            .expect("same weights stay valid");
        if !verify_certificate(&lower_q, &cert.coefficients).unwrap_or(false) {
            return PropertyResult::Fail(format!(
                "certificate failed at lowered norm index {lower}"
            ));
        }
        match find_dependency(&lower_q, budget) {
            DependencyOutcome::Dependent(_) => {}
            DependencyOutcome::Independent(_) => {
                return PropertyResult::Fail(format!(
                    "search found independence at lowered norm index {lower}"
                ))
            }
            DependencyOutcome::Inconclusive(_) => {
                return PropertyResult::Inconclusive(format!(
                    "search at norm index {lower} hit the budget"
                ))
            }
        }
    }
    PropertyResult::Pass
}

fn check_threshold(q: &DependencyQuery, base: &DependencyOutcome) -> PropertyResult {
    if !below_dependency_threshold(q.len(), q.p(), q.alpha()) {
        return PropertyResult::Pass;
    }
    match base {
        DependencyOutcome::Independent(_) => PropertyResult::Pass,
        DependencyOutcome::Dependent(_) => {
            PropertyResult::Fail("dependency found below the size threshold".into())
        }
        DependencyOutcome::Inconclusive(_) => {
            PropertyResult::Inconclusive("base search hit the budget".into())
        }
    }
}

/// Coordinate values the search can reasonably iterate over.
const COORDINATE_BOUND_CAP: u64 = 1 << 20;

struct Search<'a> {
    query: &'a DependencyQuery,
    budget: u64,
    collect_all: bool,
    coordinate_bound: BigInt,
    bound_small: i64,
    max_support: usize,
    /// Norm budget as an integer: Σ |x_i|^p * den(α)^p must stay within it.
    norm_budget: BigInt,
    pow_cost: Vec<BigInt>,
    nodes: u64,
    exhausted: bool,
    found: Vec<Vec<BigInt>>,
}

impl<'a> Search<'a> {
    fn new(query: &'a DependencyQuery, budget: u64, collect_all: bool) -> Self {
        let n = query.len();
        let p = query.p();
        let coordinate_bound = floor_scaled_root(&BigInt::from(n), p, query.alpha())
            .expect("query construction validated n and alpha");
        let norm_scale = query.alpha().denom().pow(p.get());
        let norm_budget = query.alpha().numer().pow(p.get()) * BigInt::from(n);
        // Largest support size k with k * den^p <= num^p * n.
        let max_support = {
            let quotient = &norm_budget / &norm_scale;
            quotient.to_usize().map_or(n, |k| k.min(n))
        };
        let bound_small = coordinate_bound
            .to_u64()
            .filter(|&b| b <= COORDINATE_BOUND_CAP)
            .map(|b| b as i64)
            .unwrap_or(-1);
        let pow_cost = if bound_small >= 0 {
            (0..=bound_small as u64)
                .map(|v| BigInt::from(v).pow(p.get()) * &norm_scale)
                .collect()
        } else {
            Vec::new()
        };
        Search {
            query,
            budget,
            collect_all,
            coordinate_bound,
            bound_small,
            max_support,
            norm_budget,
            pow_cost,
            nodes: 0,
            exhausted: false,
            found: Vec::new(),
        }
    }

    fn run(&mut self) {
        if self.max_support < 2 || self.bound_small == 0 {
            // No room for two nonzero entries: independent by arithmetic.
            self.exhausted = true;
            return;
        }
        if self.bound_small < 0 {
            // Coordinate bound too large to iterate; report inconclusive.
            self.exhausted = false;
            return;
        }
        let n = self.query.len();
        let mut support = Vec::with_capacity(self.max_support);
        let exhausted = self.supports(n, &mut support);
        self.exhausted = exhausted;
    }

    /// Enumerates supports of size 2..=max_support in lexicographic order as
    /// ascending index tuples, smaller sizes first. Returns false if the
    /// budget ran out.
    fn supports(&mut self, n: usize, support: &mut Vec<usize>) -> bool {
        for size in 2..=self.max_support {
            if !self.choose(0, n, size, support) {
                return false;
            }
            if !self.collect_all && !self.found.is_empty() {
                return true;
            }
        }
        true
    }

    fn choose(&mut self, start: usize, n: usize, size: usize, support: &mut Vec<usize>) -> bool {
        if support.len() == size {
            return self.assign_values(support);
        }
        let needed = size - support.len();
        if n - start < needed {
            return true;
        }
        for i in start..=(n - needed) {
            support.push(i);
            let ok = self.choose(i + 1, n, size, support);
            support.pop();
            if !ok {
                return false;
            }
            if !self.collect_all && !self.found.is_empty() {
                return true;
            }
        }
        true
    }

    /// Fills nonzero values over a fixed support, pruning on the exact norm
    /// budget, the balance condition, and the weighted-sum condition.
    fn assign_values(&mut self, support: &[usize]) -> bool {
        let k = support.len();
        // Suffix bounds for feasibility pruning.
        let mut suffix_weight_sum = vec![BigInt::zero(); k + 1];
        for pos in (0..k).rev() {
            suffix_weight_sum[pos] =
                &suffix_weight_sum[pos + 1] + &self.query.weights()[support[pos]];
        }
        let mut values = vec![0i64; k];
        self.fill(
            support,
            &suffix_weight_sum,
            0,
            BigInt::zero(),
            0i128,
            BigInt::zero(),
            &mut values,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &mut self,
        support: &[usize],
        suffix_weight_sum: &[BigInt],
        pos: usize,
        norm_used: BigInt,
        balance: i128,
        weighted: BigInt,
        values: &mut Vec<i64>,
    ) -> bool {
        let k = support.len();
        if pos == k {
            if balance == 0 && weighted.is_zero() {
                let mut x = vec![BigInt::zero(); self.query.len()];
                for (idx, &i) in support.iter().enumerate() {
                    x[i] = BigInt::from(values[idx]);
                }
                self.found.push(x);
            }
            return true;
        }
        let remaining = k - pos - 1;
        let bound = self.bound_small;
        // The leading support entry is forced negative, which picks one
        // representative per ± pair and halves the search.
        let upper = if pos == 0 { -1 } else { bound };
        for v in -bound..=upper {
            if v == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let cost = &self.pow_cost[v.unsigned_abs() as usize];
            let norm_next = &norm_used + cost;
            if norm_next > self.norm_budget {
                continue;
            }
            let balance_next = balance + v as i128;
            // The remaining entries can move the balance by at most
            // remaining * bound in either direction.
            if balance_next.unsigned_abs() > (remaining as u128) * (bound as u128) {
                continue;
            }
            let weighted_next = &weighted + &self.query.weights()[support[pos]] * v;
            // Likewise for the weighted sum.
            let reach = &suffix_weight_sum[pos + 1] * bound;
            if weighted_next.abs() > reach {
                continue;
            }
            values[pos] = v;
            let ok = self.fill(
                support,
                suffix_weight_sum,
                pos + 1,
                norm_next,
                balance_next,
                weighted_next,
                values,
            );
            values[pos] = 0;
            if !ok {
                return false;
            }
            if !self.collect_all && !self.found.is_empty() {
                return true;
            }
        }
        true
    }

    fn report(&self) -> SearchReport {
        SearchReport {
            coordinate_bound: self.coordinate_bound.clone(),
            max_support: self.max_support,
            nodes_visited: self.nodes,
            exhausted: self.exhausted,
        }
    }

    fn into_outcome(self) -> DependencyOutcome {
        if let Some(first) = self.found.first() {
            return DependencyOutcome::Dependent(DependencyCertificate {
                coefficients: first.clone(),
            });
        }
        let report = self.report();
        if self.exhausted {
            DependencyOutcome::Independent(report)
        } else {
            DependencyOutcome::Inconclusive(report)
        }
    }
}
