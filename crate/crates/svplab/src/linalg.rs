//! Exact rational linear algebra shared by the lattice routines: dot
//! products, Gram-Schmidt data, a textbook LLL reduction over big integers,
//! and coefficient recovery against a basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rounds to the nearest integer, halves away from zero.
pub fn round_to_nearest(r: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let num = r.numer();
    let den = r.denom();
    if num.is_negative() {
        -((-num * &two + den) / (den * &two))
    } else {
        (num * &two + den) / (den * &two)
    }
}

/// Gram-Schmidt data of a row basis: orthogonal vectors, projection
/// coefficients mu[i][j] for j < i, and squared norms of the orthogonal
/// vectors. Returns None if the rows are linearly dependent.
pub struct GramSchmidt {
    pub orthogonal: Vec<Vec<BigRational>>,
    pub mu: Vec<Vec<BigRational>>,
    pub norms_sq: Vec<BigRational>,
}

pub fn gram_schmidt(rows: &[Vec<BigInt>]) -> Option<GramSchmidt> {
    let k = rows.len();
    let mut orthogonal: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norms_sq = Vec::with_capacity(k);
    for (i, row) in rows.iter().enumerate() {
        let mut current: Vec<BigRational> = row
            .iter()
            .map(|v| BigRational::from_integer(v.clone()))
            .collect();
        for j in 0..i {
            let numer: BigRational = row
                .iter()
                .zip(&orthogonal[j])
                .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                .sum();
            let coeff = numer / &norms_sq[j];
            for (c, o) in current.iter_mut().zip(&orthogonal[j]) {
                *c -= &coeff * o;
            }
            mu[i][j] = coeff;
        }
        let norm_sq: BigRational = current.iter().map(|c| c * c).sum();
        if norm_sq.is_zero() {
            return None;
        }
        orthogonal.push(current);
        norms_sq.push(norm_sq);
    }
    Some(GramSchmidt {
        orthogonal,
        mu,
        norms_sq,
    })
}

/// LLL reduction with parameter 3/4, entirely in exact arithmetic.
///
/// Only used as preprocessing before enumeration; correctness of the solvers
/// never depends on the reduction quality. Returns false if the rows turn
/// out to be linearly dependent.
pub fn lll_reduce(rows: &mut [Vec<BigInt>]) -> bool {
    let k = rows.len();
    if k <= 1 {
        return gram_schmidt(rows).is_some();
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut gs = match gram_schmidt(rows) {
        Some(gs) => gs,
        None => return false,
    };
    let mut i = 1;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while i < k {
        // Size-reduce row i against all previous rows.
        for j in (0..i).rev() {
            if gs.mu[i][j].abs() > half {
                let r = round_to_nearest(&gs.mu[i][j]);
                if !r.is_zero() {
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                        *x -= &r * y;
                    }
                    gs = gram_schmidt(rows).expect("size reduction preserves rank");
                }
            }
        }
        // Lovász condition between rows i-1 and i.
        let lhs = &gs.norms_sq[i];
        let rhs = (&delta - &gs.mu[i][i - 1] * &gs.mu[i][i - 1]) * &gs.norms_sq[i - 1];
        if *lhs >= rhs {
            i += 1;
        } else {
            rows.swap(i, i - 1);
            gs = gram_schmidt(rows).expect("swap preserves rank");
            i = i.saturating_sub(1).max(1);
        }
    }
    true
}

/// Solves y * rows = v exactly over the rationals for a full-row-rank basis,
/// then checks integrality. Returns the integer coefficients if v lies in
/// the lattice spanned by the rows.
pub fn integer_coefficients(rows: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = rows.len();
    if k == 0 {
        return None;
    }
    // Normal equations: y * (B B^T) = v * B^T, a k x k rational system.
    let mut gram = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = BigRational::from_integer(dot_int(&rows[i], &rows[j]));
        }
    }
    let rhs: Vec<BigRational> = rows
        .iter()
        .map(|row| BigRational::from_integer(dot_int(v, row)))
        .collect();
    let y = solve_square(&mut gram, rhs)?;
    let mut coeffs = Vec::with_capacity(k);
    for value in y {
        if !value.is_integer() {
            return None;
        }
        coeffs.push(value.to_integer());
    }
    // The normal equations only guarantee the projection matches; confirm the
    // combination reproduces v exactly.
    let m = v.len();
    let mut rebuilt = vec![BigInt::zero(); m];
    for (c, row) in coeffs.iter().zip(rows) {
        for (r, x) in rebuilt.iter_mut().zip(row) {
            *r += c * x;
        }
    }
    if rebuilt == v { Some(coeffs) } else { None }
}

/// Gaussian elimination with exact pivoting; consumes the matrix.
fn solve_square(matrix: &mut [Vec<BigRational>], mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let k = rhs.len();
    for col in 0..k {
        let pivot_row = (col..k).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = matrix[col][col].clone();
        for r in (col + 1)..k {
            if matrix[r][col].is_zero() {
                continue;
            }
            let factor = &matrix[r][col] / &pivot;
            let (pivot_rows, rest) = matrix.split_at_mut(col + 1);
            let pivot_row = &pivot_rows[col];
            for (value, above) in rest[r - col - 1].iter_mut().zip(pivot_row).skip(col) {
                *value -= &factor * above;
            }
            let sub = &factor * &rhs[col];
            rhs[r] -= sub;
        }
    }
    let mut solution = vec![BigRational::zero(); k];
    for row in (0..k).rev() {
        let mut acc = rhs[row].clone();
        for col in (row + 1)..k {
            acc -= &matrix[row][col] * &solution[col];
        }
        solution[row] = acc / &matrix[row][row];
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn rounding_halves_away_from_zero() {
        let cases = [
            ((3, 2), 2),
            ((-3, 2), -2),
            ((1, 3), 0),
            ((5, 3), 2),
            ((-1, 3), 0),
            ((7, 1), 7),
        ];
        for ((num, den), expected) in cases {
            let r = BigRational::new(BigInt::from(num), BigInt::from(den));
            assert_eq!(round_to_nearest(&r), BigInt::from(expected), "{num}/{den}");
        }
    }

    #[test]
    fn gram_schmidt_detects_rank_deficiency() {
        assert!(gram_schmidt(&rows(&[&[1, 2], &[2, 4]])).is_none());
        assert!(gram_schmidt(&rows(&[&[1, 0], &[0, 1]])).is_some());
    }

    #[test]
    fn lll_shortens_a_classic_basis() {
        let mut basis = rows(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        assert!(lll_reduce(&mut basis));
        let shortest_sq: BigInt = basis
            .iter()
            .map(|row| dot_int(row, row))
            .min()
            .unwrap();
        assert!(shortest_sq <= BigInt::from(2));
        // The reduced rows still span the same lattice: original rows are
        // integer combinations of them.
        for original in rows(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]) {
            assert!(integer_coefficients(&basis, &original).is_some());
        }
    }

    #[test]
    fn coefficient_recovery_rejects_outsiders() {
        let basis = rows(&[&[2, 0], &[1, 2]]);
        let inside: Vec<BigInt> = vec![BigInt::from(3), BigInt::from(2)];
        assert_eq!(
            integer_coefficients(&basis, &inside),
            Some(vec![BigInt::from(1), BigInt::from(1)])
        );
        let outside: Vec<BigInt> = vec![BigInt::from(1), BigInt::from(0)];
        assert_eq!(integer_coefficients(&basis, &outside), None);
        let off_lattice: Vec<BigInt> = vec![BigInt::from(0), BigInt::from(1)];
        assert_eq!(integer_coefficients(&basis, &off_lattice), None);
    }

    #[test]
    fn coefficient_recovery_handles_rectangular_bases() {
        let basis = rows(&[&[1, 0, 5], &[0, 1, 7]]);
        let v: Vec<BigInt> = vec![BigInt::from(2), BigInt::from(-1), BigInt::from(3)];
        assert_eq!(
            integer_coefficients(&basis, &v),
            Some(vec![BigInt::from(2), BigInt::from(-1)])
        );
    }
}
