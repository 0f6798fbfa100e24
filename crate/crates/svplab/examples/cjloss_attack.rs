//! Low-density attack experiment: embed subset-sum solutions as short
//! vectors and measure how often the exact SVP oracle recovers them, bucketed
//! by density.
//!
//! Run with: cargo run --release --example cjloss_attack

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svplab::cjloss::{cjloss_experiment, density};
use svplab::instances::SubsetSumInstance;

fn solvable_instance(rng: &mut ChaCha8Rng, n: usize, bits: u32) -> SubsetSumInstance {
    let low = 1u64 << (bits - 1);
    loop {
        let weights: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(low + rng.gen_range(0..low)))
            .collect();
        let mut target = BigInt::zero();
        for w in &weights {
            if rng.gen_bool(0.5) {
                target += w;
            }
        }
        if target.is_zero() {
            target = weights[0].clone();
        }
        // Targets at exactly half the weight sum make the square generating
        // set singular; resample those.
        let total: BigInt = weights.iter().sum();
        if BigInt::from(2) * &target != total {
            return SubsetSumInstance::new(weights, target).expect("valid weights");
        }
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 8;
    println!("bits  density  recovered/total");
    for bits in [4u32, 6, 9, 12, 16] {
        let mut recovered = 0usize;
        let total = 10usize;
        let mut density_sum = 0.0;
        for _ in 0..total {
            let inst = solvable_instance(&mut rng, n, bits);
            density_sum += density(&inst).expect("weights >= 2").approx;
            let report = cjloss_experiment(&inst, 16).expect("within the cap");
            assert!(report.solvable && report.embedded_in_lattice);
            if report.recovered {
                recovered += 1;
            }
        }
        println!(
            "{bits:>4}  {:>7.3}  {recovered}/{total}",
            density_sum / total as f64
        );
    }
    println!();
    println!("low densities (many bits per weight) recover reliably;");
    println!("high densities may fail, which is what the cardinality-");
    println!("constrained construction removes.");
}
