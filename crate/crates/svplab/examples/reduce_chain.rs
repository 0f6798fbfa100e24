//! The reduction chain step by step on one small instance: half-full
//! padding, dense cardinality padding, lattice construction, decision, and
//! witness lifting.
//!
//! Run with: cargo run --example reduce_chain

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use svplab::basisfile;
use svplab::dependency::DEFAULT_NODE_BUDGET;
use svplab::instances::{PaddingVariant, SubsetSumInstance};
use svplab::reduce::{
    build_lattice, extract_solution, lift_solution, plan_parameters, to_c_full, to_half_full,
};
use svplab::svp::{decide_constructed, GapVerdict};

fn main() {
    let instance = SubsetSumInstance::new(
        vec![BigInt::from(3), BigInt::from(5)],
        BigInt::from(5),
    )
    .expect("valid instance");
    println!("original: weights {:?} target {}", instance.weights(), instance.target());

    let epsilon = BigRational::one();
    let params = plan_parameters(&epsilon, &BigInt::from(instance.len())).expect("valid");
    println!(
        "planned: m={} c={} p={} N={}",
        params.m, params.cardinality_ratio, params.p_hat, params.scaling_factor
    );

    let (half, half_trace) = to_half_full(&instance);
    println!(
        "half-full: {} weights, required count {}",
        half.len(),
        half.required_count()
    );

    let (cfull, cfull_trace) = to_c_full(&half, params.m, PaddingVariant::Dense).expect("dense");
    println!(
        "c-full: {} weights, required count {}, target {}",
        cfull.len(),
        cfull.required_count(),
        cfull.target()
    );

    let built = build_lattice(&cfull, params.p_hat, &epsilon, DEFAULT_NODE_BUDGET).expect("sound");
    println!(
        "lattice: {} rows x {} cols, delta^p = {}, gamma = {}",
        built.gap.basis.nrows(),
        built.gap.basis.ncols(),
        built.gap.delta_pow,
        built.gap.gamma
    );
    print!("{}", basisfile::write_gap_instance(&built.gap, &[]));

    let (verdict, vector) = decide_constructed(&built).expect("structured decision");
    println!("verdict: {verdict}");
    if verdict == GapVerdict::Yes {
        let sv = vector.expect("YES carries a vector");
        println!("short vector (x2 form): {:?} with norm^p {}", sv.vector, sv.norm_pow);
        let on_cfull = extract_solution(&sv.vector, &cfull).expect("inverts");
        let lifted = lift_solution(&[half_trace, cfull_trace], &on_cfull).expect("lifts");
        println!("lifted witness: {lifted}");
        assert!(instance.check_assignment(&lifted).unwrap());
    }
}
