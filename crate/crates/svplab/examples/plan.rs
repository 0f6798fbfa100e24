//! Parameter planning: which norm index, padding multiplier, and scaling
//! factor the reduction chain uses for a given gap parameter ε and original
//! instance size.
//!
//! Run with: cargo run --example plan

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use svplab::reduce::plan_parameters;

fn show(epsilon: &BigRational, n: &BigInt) {
    let params = plan_parameters(epsilon, n).expect("valid epsilon and size");
    println!(
        "eps={epsilon} n={n}: m={} c={} alpha={} n_total={} p_hat={} (coarse {}) N={}",
        params.m,
        params.cardinality_ratio,
        params.alpha,
        params.n_total,
        params.p_hat,
        params.p_hat_coarse,
        params.scaling_factor
    );
    assert!(params.side_conditions.all_hold());
}

fn main() {
    let one = BigRational::one();
    // Growing instances at the exact-gap setting: the norm index grows like
    // the logarithm of the padded size.
    for n in [1u64, 10, 100, 10_000] {
        show(&one, &BigInt::from(n));
    }
    // A size far beyond anything enumerable still plans instantly.
    show(&one, &BigInt::from(10u32).pow(82));

    // Narrower gaps need a larger padding multiplier and a finer norm index.
    for (num, den) in [(1i64, 2i64), (1, 4), (3, 4)] {
        let eps = BigRational::new(BigInt::from(num), BigInt::from(den));
        show(&eps, &BigInt::from(10u64));
    }
}
