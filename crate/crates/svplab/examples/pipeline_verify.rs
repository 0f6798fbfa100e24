//! End-to-end cross-validation: pipeline verdicts against the exhaustive
//! oracle on a seeded random suite.
//!
//! Run with: cargo run --release --example pipeline_verify

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svplab::baseline::exhaustive_subset_sum;
use svplab::instances::SubsetSumInstance;
use svplab::pipeline;
use svplab::svp::GapVerdict;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let one = BigRational::one();
    let count = 100usize;
    let mut agreed = 0usize;
    let mut yes = 0usize;
    for index in 0..count {
        let n = rng.gen_range(1..=8usize);
        let weights: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(0..=40u64)))
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
            BigInt::from(rng.gen_range(0..=u64::try_from(&total).unwrap_or(u64::MAX)))
        };
        let inst = SubsetSumInstance::new(weights, target).expect("valid");

        let outcome = pipeline::run(&inst, &one).expect("pipeline runs");
        let oracle = exhaustive_subset_sum(&inst).expect("n <= 8");
        let ok = (outcome.verdict == GapVerdict::Yes) == oracle.is_some();
        if ok {
            agreed += 1;
        }
        if outcome.verdict == GapVerdict::Yes {
            yes += 1;
            let witness = outcome.witness.expect("YES carries a witness");
            assert!(inst.check_assignment(&witness).unwrap());
        }
        if !ok {
            println!("instance {index}: MISMATCH on {inst:?}");
        }
    }
    println!("{agreed}/{count} verdicts agree with the oracle ({yes} YES)");
    assert_eq!(agreed, count);
}
