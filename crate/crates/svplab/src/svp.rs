//! Exact shortest-vector computation and bounded enumeration in ℓ_p norms
//! for small integer lattices, plus the GapSVP decision oracle.
//!
//! The generic path is branch-and-bound over basis coefficients in the
//! Fincke-Pohst style: exact rational Gram-Schmidt data gives interval
//! bounds per level, pruning happens in the ℓ₂ relaxation of the ℓ_p ball
//! (radius inflated by m^(1/2 - 1/p) for p > 2, which is safe by the norm
//! comparison inequality), and leaves are filtered with exact p-th-power
//! comparisons. LLL preprocessing shrinks the search tree but is never load
//! bearing for correctness.
//!
//! Enumeration cost grows quickly with the dimension, so the generic
//! entry points refuse to run above a configurable cap instead of degrading
//! to heuristics. Lattices produced by [`crate::reduce::build_lattice`]
//! carry enough structure to be solved at any size by
//! [`enumerate_structured`], which replays the case analysis behind the
//! construction: short vectors have zero bookkeeping columns and last-row
//! coefficient in {-1, 0, 1}; the ±1 branches are exactly the solution
//! embeddings (found by the cardinality oracle) and the 0 branch is exactly
//! the set of dependency vectors (empty for certified instances).

use crate::baseline;
use crate::dependency::{
    self, below_dependency_threshold, DependencyError, DependencyQuery,
};
use crate::exactmath::{lp_pow, norm_pow_within, NormIndex};
use crate::linalg::{self, GramSchmidt};
use crate::reduce::{embed_solution, ConstructedLattice, GapSvpInstance};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Above this many basis rows the generic solver refuses to enumerate.
pub const DEFAULT_DIMENSION_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SvpError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("basis rows have inconsistent lengths")]
    RaggedRows,
    #[error("basis rows are linearly dependent")]
    RankDeficient,
    #[error("lattice has {got} rows, above the enumeration cap of {cap}")]
    DimensionCapExceeded { cap: usize, got: usize },
    #[error("enumeration needs a radius; set radius_pow on the query")]
    MissingRadius,
    #[error("radius exceeds the gap radius the structured solver is valid for")]
    RadiusAboveGap,
    #[error(transparent)]
    Dependency(#[from] DependencyError),
}

/// A shortest-vector / enumeration query over an integer row basis.
#[derive(Debug, Clone)]
pub struct SvpQuery {
    pub basis: Vec<Vec<BigInt>>,
    pub p: NormIndex,
    /// ℓ_p^p bound for enumeration; optional starting bound for the
    /// shortest-vector search.
    pub radius_pow: Option<BigRational>,
    pub dimension_cap: usize,
}

impl SvpQuery {
    pub fn new(basis: Vec<Vec<BigInt>>, p: NormIndex) -> Self {
        SvpQuery {
            basis,
            p,
            radius_pow: None,
            dimension_cap: DEFAULT_DIMENSION_CAP,
        }
    }

    pub fn with_radius_pow(mut self, radius_pow: BigRational) -> Self {
        self.radius_pow = Some(radius_pow);
        self
    }

    pub fn with_dimension_cap(mut self, cap: usize) -> Self {
        self.dimension_cap = cap;
        self
    }
}

/// A lattice vector together with its exact ℓ_p^p value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShortVector {
    pub norm_pow: BigInt,
    pub vector: Vec<BigInt>,
}

/// Result of a shortest-vector search. `vector` is None when an explicit
/// radius was given and nothing nonzero lies within it; `complete` records
/// that the search region was fully enumerated (always true on success).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestVectorResult {
    pub vector: Option<ShortVector>,
    pub complete: bool,
}

/// Verdict of the GapSVP decision oracle. The gap violation case is legal
/// for arbitrary inputs; instances produced by the reduction never trigger
/// it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVerdict {
    Yes,
    No,
    GapViolation,
}

impl std::fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GapVerdict::Yes => write!(f, "YES"),
            GapVerdict::No => write!(f, "NO"),
            GapVerdict::GapViolation => write!(f, "GAP_VIOLATION"),
        }
    }
}

/// Exact minimizer of ‖·‖_p over nonzero lattice vectors, within the query
/// radius if one is set. Ties are broken by the lexicographically smallest
/// vector whose leading nonzero entry is positive.
pub fn shortest_vector(q: &SvpQuery) -> Result<ShortestVectorResult, SvpError> {
    let prepared = Prepared::build(q)?;
    // Starting radius: the given one, or the best basis row.
    let row_best: BigInt = prepared
        .rows
        .iter()
        .map(|row| lp_pow(row, q.p))
        .min()
        .expect("basis is non-empty");
    let radius_pow = match &q.radius_pow {
        Some(given) => {
            let row_rat = BigRational::from_integer(row_best);
            if row_rat < *given {
                row_rat
            } else {
                given.clone()
            }
        }
        None => BigRational::from_integer(row_best),
    };
    let mut enumerator = Enumerator::new(&prepared, q.p, radius_pow, true);
    enumerator.run();
    let found = enumerator.finish();
    let best_pow = found.iter().map(|sv| sv.norm_pow.clone()).min();
    let vector = best_pow.map(|best| {
        let mut candidates: Vec<Vec<BigInt>> = found
            .into_iter()
            .filter(|sv| sv.norm_pow == best)
            .map(|sv| canonical_sign(sv.vector))
            .collect();
        candidates.sort();
        candidates.dedup();
        ShortVector {
            norm_pow: best,
            vector: candidates.remove(0),
        }
    });
    // Nothing within an explicit radius is a complete answer, not a failure.
    Ok(ShortestVectorResult {
        vector,
        complete: true,
    })
}

/// All nonzero lattice vectors v with ‖v‖_p^p <= radius_pow, in
/// deterministic order (by norm, then lexicographically). With
/// `collapse_signs` only the representative with positive leading entry of
/// each ± pair is returned.
pub fn enumerate_below(q: &SvpQuery, collapse_signs: bool) -> Result<Vec<ShortVector>, SvpError> {
    let radius_pow = q.radius_pow.clone().ok_or(SvpError::MissingRadius)?;
    let prepared = Prepared::build(q)?;
    let mut enumerator = Enumerator::new(&prepared, q.p, radius_pow, false);
    enumerator.run();
    let mut found = enumerator.finish();
    if collapse_signs {
        for sv in &mut found {
            let v = std::mem::take(&mut sv.vector);
            sv.vector = canonical_sign(v);
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Decides a GapSVP instance by exact enumeration: YES if λ_p <= δ, NO if
/// λ_p > γδ, gap violation in between.
pub fn decide_gapsvp(g: &GapSvpInstance, dimension_cap: usize) -> Result<GapVerdict, SvpError> {
    let radius = g.scaled_gap_radius_pow();
    let query = SvpQuery {
        basis: g.basis.scaled_rows().to_vec(),
        p: g.p,
        radius_pow: Some(radius),
        dimension_cap,
    };
    let inside = enumerate_below(&query, true)?;
    Ok(classify(
        inside.first().map(|sv| &sv.norm_pow),
        &g.scaled_delta_pow(),
    ))
}

fn classify(min_norm_pow: Option<&BigInt>, scaled_delta_pow: &BigRational) -> GapVerdict {
    match min_norm_pow {
        None => GapVerdict::No,
        Some(min) if norm_pow_within(min, scaled_delta_pow) => GapVerdict::Yes,
        Some(_) => GapVerdict::GapViolation,
    }
}

/// Replays the structural case analysis on a constructed lattice instead of
/// enumerating coefficients, so it works at any dimension. Output matches
/// [`enumerate_below`] on the scaled basis at the same radius.
///
/// `radius_pow` must not exceed (γδ)^p of the scaled lattice, which is the
/// region the case analysis covers; it defaults to exactly that radius.
pub fn enumerate_structured(
    c: &ConstructedLattice,
    radius_pow: Option<&BigRational>,
    dependency_budget: u64,
) -> Result<Vec<ShortVector>, SvpError> {
    let gap_radius = c.gap.scaled_gap_radius_pow();
    let radius = match radius_pow {
        Some(given) => {
            if *given > gap_radius {
                return Err(SvpError::RadiusAboveGap);
            }
            given.clone()
        }
        None => gap_radius,
    };
    let mut found: Vec<ShortVector> = Vec::new();

    // Last-row coefficient ±1: exactly the ± solution embeddings, each of
    // norm^p = n in the x2 form.
    let n_pow = BigInt::from(c.source.len());
    if norm_pow_within(&n_pow, &radius) {
        for witness in baseline::enumerate_cardinality_witnesses(&c.source) {
            let v = embed_solution(&c.source, &witness);
            let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
            found.push(ShortVector {
                norm_pow: n_pow.clone(),
                vector: v,
            });
            found.push(ShortVector {
                norm_pow: n_pow.clone(),
                vector: neg,
            });
        }
    }

    // Last-row coefficient 0: dependency vectors, doubled by the scaling.
    // Certified instances cannot have any; the search only runs when the
    // size threshold does not already rule them out.
    if !below_dependency_threshold(c.source.len(), c.gap.p, &c.alpha) {
        let query = DependencyQuery::new(c.source.weights().to_vec(), c.gap.p, c.alpha.clone())
            .expect("constructed instances have valid weights");
        for y in dependency::enumerate_dependency_vectors(&query, dependency_budget)? {
            let v: Vec<BigInt> = y
                .iter()
                .map(|x| x * 2)
                .chain([BigInt::zero(), BigInt::zero()])
                .collect();
            let norm_pow = lp_pow(&v, c.gap.p);
            if norm_pow_within(&norm_pow, &radius) {
                found.push(ShortVector { norm_pow, vector: v });
            }
        }
    }

    found.sort();
    found.dedup();
    Ok(found)
}

/// Decides a constructed instance through the structural route; also returns
/// the embedded witness vector on YES.
pub fn decide_constructed(
    c: &ConstructedLattice,
) -> Result<(GapVerdict, Option<ShortVector>), SvpError> {
    match baseline::dp_cardinality(&c.source) {
        Some(witness) => {
            let v = embed_solution(&c.source, &witness);
            let norm_pow = lp_pow(&v, c.gap.p);
            debug_assert!(norm_pow_within(&norm_pow, &c.gap.scaled_delta_pow()));
            Ok((
                GapVerdict::Yes,
                Some(ShortVector {
                    norm_pow,
                    vector: v,
                }),
            ))
        }
        // No solution and certified independence: the gap ball is empty.
        None => Ok((GapVerdict::No, None)),
    }
}

/// Flips the sign so the leading nonzero entry is positive.
fn canonical_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// Validated and LLL-preprocessed basis with Gram-Schmidt data.
struct Prepared {
    rows: Vec<Vec<BigInt>>,
    gs: GramSchmidt,
    ambient: usize,
}

impl Prepared {
    fn build(q: &SvpQuery) -> Result<Self, SvpError> {
        if q.basis.is_empty() {
            return Err(SvpError::EmptyBasis);
        }
        let ambient = q.basis[0].len();
        if ambient == 0 || q.basis.iter().any(|row| row.len() != ambient) {
            return Err(SvpError::RaggedRows);
        }
        if q.basis.len() > q.dimension_cap {
            return Err(SvpError::DimensionCapExceeded {
                cap: q.dimension_cap,
                got: q.basis.len(),
            });
        }
        let mut rows = q.basis.clone();
        if !linalg::lll_reduce(&mut rows) {
            return Err(SvpError::RankDeficient);
        }
        let gs = linalg::gram_schmidt(&rows).ok_or(SvpError::RankDeficient)?;
        Ok(Prepared { rows, gs, ambient })
    }
}

/// Smallest integer X with X^p >= m^(p-2) * radius_pow^2; an exact upper
/// bound for the squared ℓ₂ radius enclosing the ℓ_p ball when p > 2.
fn l2_radius_sq_bound(radius_pow: &BigRational, p: NormIndex, ambient: usize) -> BigRational {
    if !radius_pow.is_positive() {
        return BigRational::zero();
    }
    match p.get() {
        1 => radius_pow * radius_pow,
        2 => radius_pow.clone(),
        exp => {
            let a = BigInt::from(ambient).pow(exp - 2) * radius_pow.numer() * radius_pow.numer();
            let b = radius_pow.denom() * radius_pow.denom();
            let mut root = a.div_floor(&b).nth_root(exp);
            if root.clone().pow(exp) * &b < a {
                root += 1;
            }
            BigRational::from_integer(root)
        }
    }
}

struct Enumerator<'a> {
    prepared: &'a Prepared,
    p: NormIndex,
    radius_pow: BigRational,
    r2_sq: BigRational,
    shrink: bool,
    found: Vec<ShortVector>,
    coeffs: Vec<BigInt>,
}

impl<'a> Enumerator<'a> {
    fn new(prepared: &'a Prepared, p: NormIndex, radius_pow: BigRational, shrink: bool) -> Self {
        let r2_sq = l2_radius_sq_bound(&radius_pow, p, prepared.ambient);
        let k = prepared.rows.len();
        Enumerator {
            prepared,
            p,
            radius_pow,
            r2_sq,
            shrink,
            found: Vec::new(),
            coeffs: vec![BigInt::zero(); k],
        }
    }

    fn run(&mut self) {
        let top = self.prepared.rows.len() - 1;
        self.descend(top, &BigRational::zero());
    }

    fn finish(self) -> Vec<ShortVector> {
        if !self.shrink {
            return self.found;
        }
        let Some(best) = self.found.iter().map(|sv| sv.norm_pow.clone()).min() else {
            return Vec::new();
        };
        self.found
            .into_iter()
            .filter(|sv| sv.norm_pow == best)
            .collect()
    }

    /// Projection center for the coefficient at `level`, determined by the
    /// coefficients already fixed above it.
    fn center(&self, level: usize) -> BigRational {
        let mut c = BigRational::zero();
        for j in (level + 1)..self.prepared.rows.len() {
            if !self.coeffs[j].is_zero() {
                c -= BigRational::from_integer(self.coeffs[j].clone())
                    * &self.prepared.gs.mu[j][level];
            }
        }
        c
    }

    fn descend(&mut self, level: usize, above_sq: &BigRational) {
        let c = self.center(level);
        let b_sq = self.prepared.gs.norms_sq[level].clone();
        let start = linalg::round_to_nearest(&c);

        // Scan outward from the rounded center; the per-level term grows
        // monotonically with the distance from the true center, so each
        // direction stops at the first violation.
        let mut y = start.clone();
        loop {
            let diff = BigRational::from_integer(y.clone()) - &c;
            let partial = above_sq + &diff * &diff * &b_sq;
            if partial > self.r2_sq {
                break;
            }
            self.enter(level, y.clone(), &partial);
            y += 1;
        }
        let mut y = start - BigInt::one();
        loop {
            let diff = BigRational::from_integer(y.clone()) - &c;
            let partial = above_sq + &diff * &diff * &b_sq;
            if partial > self.r2_sq {
                break;
            }
            self.enter(level, y.clone(), &partial);
            y -= 1;
        }
    }

    fn enter(&mut self, level: usize, y: BigInt, partial: &BigRational) {
        self.coeffs[level] = y;
        if level == 0 {
            self.leaf();
        } else {
            self.descend(level - 1, partial);
        }
        self.coeffs[level] = BigInt::zero();
    }

    fn leaf(&mut self) {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return;
        }
        let mut v = vec![BigInt::zero(); self.prepared.ambient];
        for (coeff, row) in self.coeffs.iter().zip(&self.prepared.rows) {
            if coeff.is_zero() {
                continue;
            }
            for (acc, x) in v.iter_mut().zip(row) {
                *acc += coeff * x;
            }
        }
        let norm_pow = lp_pow(&v, self.p);
        if !norm_pow_within(&norm_pow, &self.radius_pow) {
            return;
        }
        if self.shrink {
            let tighter = BigRational::from_integer(norm_pow.clone());
            if tighter < self.radius_pow {
                self.radius_pow = tighter;
                self.r2_sq = l2_radius_sq_bound(&self.radius_pow, self.p, self.prepared.ambient);
            }
        }
        self.found.push(ShortVector {
            norm_pow,
            vector: v,
        });
    }
}
