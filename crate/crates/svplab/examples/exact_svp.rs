//! Exact shortest vectors and bounded enumeration in several ℓ_p norms,
//! and the three-way GapSVP verdict on hand-built lattices.
//!
//! Run with: cargo run --example exact_svp

use num_bigint::BigInt;
use num_rational::BigRational;
use svplab::exactmath::NormIndex;
use svplab::reduce::{GapSvpInstance, LatticeBasis};
use svplab::svp::{decide_gapsvp, enumerate_below, shortest_vector, SvpQuery};

fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
    data.iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn main() {
    // The minimizer depends on the norm: this lattice contains (0, 5) and
    // (3, -2), and which one is shorter flips between p = 1 and p >= 2.
    let basis = rows(&[&[3, 3], &[3, -2]]);
    for p in [1u32, 2, 3] {
        let q = SvpQuery::new(basis.clone(), NormIndex::new(p).unwrap());
        let sv = shortest_vector(&q).unwrap().vector.unwrap();
        println!("p={p}: shortest vector {:?} with norm^p {}", sv.vector, sv.norm_pow);
    }

    // Everything within a radius, both signs, deterministic order.
    let q = SvpQuery::new(rows(&[&[2, 0], &[1, 2]]), NormIndex::new(2).unwrap())
        .with_radius_pow(rational(8, 1));
    println!("vectors with squared length <= 8 in the (2,0),(1,2) lattice:");
    for sv in enumerate_below(&q, false).unwrap() {
        println!("  {:?} norm^p {}", sv.vector, sv.norm_pow);
    }

    // GapSVP on the one-dimensional lattice 3Z: moving the threshold walks
    // through all three verdicts.
    let p2 = NormIndex::new(2).unwrap();
    for (delta_pow, gamma, label) in [
        (rational(9, 1), rational(1, 1), "delta = 3"),
        (rational(1, 1), rational(2, 1), "delta = 1, gamma = 2"),
        (rational(4, 1), rational(2, 1), "delta = 2, gamma = 2"),
    ] {
        let g = GapSvpInstance::new(
            LatticeBasis::from_integer_rows(rows(&[&[3]])),
            p2,
            delta_pow,
            gamma,
        )
        .unwrap();
        println!("3Z with {label}: {}", decide_gapsvp(&g, 8).unwrap());
    }
}
