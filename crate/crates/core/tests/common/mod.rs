//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use tournament_core::IntMatrix;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] as i128 * cofactor_det(&minor);
    }
    total
}

/// Coefficients of `det(xI - M)`, ascending: the coefficient of `x^(n-k)` is
/// `(-1)^k` times the sum of all `k x k` principal minors.
pub fn charpoly_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut coeffs = vec![0i128; n + 1];
    for mask in 0u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect();
        let k = idx.len();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[n - k] += sign * cofactor_det(&sub);
    }
    coeffs
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = -v;
        }
    }
    m
}

pub fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
    if m.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(m).unwrap()
}

pub fn big(v: i128) -> BigInt {
    BigInt::from(v)
}
