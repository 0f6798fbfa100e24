//! End-to-end driver: plan, pad, build the lattice, decide, and lift a
//! witness back to the original instance.

use crate::exactmath::norm_pow_within;
use crate::instances::{Assignment, PaddingVariant, ReductionTrace, SubsetSumInstance};
use crate::reduce::{
    build_lattice, extract_solution, lift_solution, plan_parameters, to_c_full, to_half_full,
    ConstructedLattice, PlannerParams, ReduceError,
};
use crate::svp::{decide_constructed, GapVerdict, SvpError};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Svp(#[from] SvpError),
    #[error("internal check failed: {0}")]
    Inconsistent(&'static str),
}

/// Everything produced by one pipeline run.
#[derive(Debug)]
pub struct PipelineOutcome {
    pub params: PlannerParams,
    pub traces: Vec<ReductionTrace>,
    pub constructed: ConstructedLattice,
    pub verdict: GapVerdict,
    /// Witness for the *original* instance, present exactly on YES.
    pub witness: Option<Assignment>,
}

/// Runs the full chain on a plain subset-sum instance.
///
/// The verdict comes from the lattice side: the embedded instance is decided
/// through the structure-aware solver, the witness vector is pulled out of
/// the lattice, inverted, and lifted through the padding traces, and the
/// result is re-checked against the original instance.
pub fn run(ss: &SubsetSumInstance, epsilon: &BigRational) -> Result<PipelineOutcome, PipelineError> {
    let params = plan_parameters(epsilon, &BigInt::from(ss.len()))?;
    let (half, half_trace) = to_half_full(ss);
    let (cfull, cfull_trace) = to_c_full(&half, params.m, PaddingVariant::Dense)?;
    let constructed = build_lattice(&cfull, params.p_hat, epsilon, crate::dependency::DEFAULT_NODE_BUDGET)?;
    let traces = vec![half_trace, cfull_trace];

    let (verdict, short) = decide_constructed(&constructed)?;
    let witness = match (verdict, short) {
        (GapVerdict::Yes, Some(sv)) => {
            if !norm_pow_within(&sv.norm_pow, &constructed.gap.scaled_delta_pow()) {
                return Err(PipelineError::Inconsistent(
                    "witness vector is longer than the distance threshold",
                ));
            }
            let on_cfull = extract_solution(&sv.vector, &cfull)
                .ok_or(PipelineError::Inconsistent("witness vector did not invert"))?;
            let lifted = lift_solution(&traces, &on_cfull)?;
            if !ss.check_assignment(&lifted).unwrap_or(false) {
                return Err(PipelineError::Inconsistent(
                    "lifted witness fails on the original instance",
                ));
            }
            Some(lifted)
        }
        (GapVerdict::Yes, None) => {
            return Err(PipelineError::Inconsistent("YES verdict without a vector"))
        }
        _ => None,
    };

    Ok(PipelineOutcome {
        params,
        traces,
        constructed,
        verdict,
        witness,
    })
}
