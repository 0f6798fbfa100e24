//! Exact reductions from subset-sum to the decision shortest vector problem
//! in ℓ_p norms, with the verification oracles needed to machine-check every
//! step at desk scale.
//!
//! The crate is organized around a deterministic pipeline
//!
//! ```text
//! subset-sum  ->  half-full subset-sum  ->  c-full subset-sum  ->  GapSVP_p lattice
//! ```
//!
//! together with exact solvers for both ends: pseudo-polynomial and
//! exhaustive subset-sum oracles in [`baseline`], and exact shortest-vector
//! computation in [`svp`]. All arithmetic in decision paths is big-integer or
//! big-rational; norms are only ever compared through their p-th powers.
//!
//! Entry points:
//! - [`reduce::plan_parameters`] picks the norm index and cardinality ratio
//!   for a given gap parameter ε and instance size.
//! - [`pipeline::run`] drives the whole chain on one instance and lifts a
//!   witness back if there is one.
//! - [`svp::shortest_vector`] / [`svp::enumerate_below`] are the generic
//!   exact solvers; [`svp::enumerate_structured`] is the fast path for
//!   lattices produced by [`reduce::build_lattice`].
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `svplab` binary exposes the same operations as subcommands.

pub mod baseline;
pub mod basisfile;
pub mod cjloss;
pub mod cli;
pub mod dependency;
pub mod exactmath;
pub mod instances;
pub mod linalg;
pub mod pipeline;
pub mod reduce;
pub mod svp;

pub use exactmath::NormIndex;
pub use instances::{Assignment, CardinalityInstance, SubsetSumInstance};
pub use reduce::{ConstructedLattice, GapSvpInstance, LatticeBasis, PlannerParams};
pub use svp::GapVerdict;
