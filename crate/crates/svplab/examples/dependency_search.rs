//! Dependency certificates: exhaustive search, verification, the geometric
//! family that never admits one, and the structural law suite.
//!
//! Run with: cargo run --example dependency_search

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use svplab::dependency::{
    find_dependency, geometric_family, property_suite, verify_certificate, DependencyOutcome,
    DependencyQuery, DEFAULT_NODE_BUDGET,
};
use svplab::exactmath::NormIndex;

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn main() {
    let p2 = NormIndex::new(2).unwrap();

    // Weights 1, 5, 9 hide the combination -1*1 + 2*5 - 1*9 = 0 with
    // balanced coefficients; at n = 25 the norm bound has enough room.
    let mut weights: Vec<BigInt> = [1i64, 5, 9].iter().map(|&v| BigInt::from(v)).collect();
    weights.extend((1..=22).map(|i| BigInt::from(100 * i)));
    let query = DependencyQuery::new(weights, p2, half()).unwrap();
    match find_dependency(&query, DEFAULT_NODE_BUDGET) {
        DependencyOutcome::Dependent(cert) => {
            let shown: Vec<&BigInt> = cert.coefficients.iter().filter(|v| !v.is_zero()).collect();
            println!("certificate found, nonzero entries {shown:?}");
            assert!(verify_certificate(&query, &cert.coefficients).unwrap());
        }
        other => println!("unexpected outcome {other:?}"),
    }

    // Powers of N = ⌊α n^(1/p)⌋ + 1 never admit a certificate; confirmed by
    // exhaustive search at desk scale.
    for n in [4usize, 6, 8] {
        let family = geometric_family(n, p2, &half()).unwrap();
        let q = DependencyQuery::new(family.clone(), p2, half()).unwrap();
        let outcome = find_dependency(&q, DEFAULT_NODE_BUDGET);
        println!(
            "geometric family {:?}: independent = {}",
            family,
            outcome.is_independent()
        );
    }

    // The four structural laws, checked by exhaustive search on both sides.
    let small = DependencyQuery::new(
        [3i64, 1, 4, 1].iter().map(|&v| BigInt::from(v)).collect(),
        p2,
        half(),
    )
    .unwrap();
    let report = property_suite(&small, DEFAULT_NODE_BUDGET);
    println!("law suite on (3,1,4,1): all passed = {}", report.all_passed());
}
