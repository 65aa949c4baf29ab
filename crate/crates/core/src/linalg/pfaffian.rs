//! Pfaffians of skew-symmetric integer matrices.
//!
//! Small orders use the signed perfect-matching expansion along the first
//! row. Larger orders use a fraction-free skew elimination: after eliminating
//! the pivot pairs `{0,1},..,{2k,2k+1}` the working entry `(i,j)` equals the
//! Pfaffian of the principal submatrix on those pivots plus `{i,j}`, and the
//! Pfaffian analogue of Sylvester's identity makes each division by the
//! previous pivot exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Orders below this use the matching expansion.
pub const EXPANSION_LIMIT: usize = 12;

/// Pfaffian with the convention `Pf([[0,1],[-1,0]]) = 1`.
pub fn pfaffian(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if !m.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    if n < EXPANSION_LIMIT {
        Ok(pfaffian_expansion(m))
    } else {
        Ok(pfaffian_elimination(m))
    }
}

/// Signed sum over perfect matchings. Exponential; also used as the
/// independent check for [`pfaffian_elimination`].
pub fn pfaffian_expansion(m: &IntMatrix) -> BigInt {
    let idx: Vec<usize> = (0..m.rows()).collect();
    expand(m, &idx)
}

fn expand(m: &IntMatrix, idx: &[usize]) -> BigInt {
    if idx.is_empty() {
        return BigInt::one();
    }
    let first = idx[0];
    let mut total = BigInt::zero();
    let mut rest: Vec<usize> = Vec::with_capacity(idx.len().saturating_sub(2));
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = m.get(first, j);
        if a.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(idx[1..].iter().copied().filter(|&x| x != j));
        let term = a * expand(m, &rest);
        // partner at position `pos` contributes sign (-1)^(pos+1)
        if pos % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Fraction-free skew elimination, `O(n^3)` ring operations.
pub fn pfaffian_elimination(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut w: Vec<BigInt> = m.entries().to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n / 2 {
        let p = 2 * k;
        let q = p + 1;
        if w[p * n + q].is_zero() {
            let Some(j) = (q + 1..n).find(|&j| !w[p * n + j].is_zero()) else {
                return BigInt::zero();
            };
            swap_index(&mut w, n, q, j);
            negate = !negate;
        }
        let pivot = w[p * n + q].clone();
        if q + 1 == n {
            return if negate { -pivot } else { pivot };
        }
        for i in q + 1..n {
            for j in i + 1..n {
                let num = &pivot * &w[i * n + j] - &w[p * n + i] * &w[q * n + j]
                    + &w[p * n + j] * &w[q * n + i];
                let (val, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Pfaffian elimination division must be exact");
                w[j * n + i] = -&val;
                w[i * n + j] = val;
            }
        }
        prev = pivot;
    }
    unreachable!("loop returns at the last pivot pair")
}

/// Simultaneous row and column transposition.
fn swap_index(w: &mut [BigInt], n: usize, a: usize, b: usize) {
    for j in 0..n {
        w.swap(a * n + j, b * n + j);
    }
    for i in 0..n {
        w.swap(i * n + a, i * n + b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    #[test]
    fn convention() {
        let j = IntMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(pfaffian(&j).unwrap(), BigInt::from(1));
        assert_eq!(pfaffian_elimination(&j), BigInt::from(1));
    }

    #[test]
    fn four_by_four_formula() {
        // Pf = a01 a23 - a02 a13 + a03 a12
        let (a01, a02, a03, a12, a13, a23) = (2i64, 3, 5, 7, 11, 13);
        let m = IntMatrix::from_rows(&[
            [0, a01, a02, a03],
            [-a01, 0, a12, a13],
            [-a02, -a12, 0, a23],
            [-a03, -a13, -a23, 0],
        ])
        .unwrap();
        let expected = BigInt::from(a01 * a23 - a02 * a13 + a03 * a12);
        assert_eq!(pfaffian_expansion(&m), expected);
        assert_eq!(pfaffian_elimination(&m), expected);
    }

    #[test]
    fn needs_pivot_swap() {
        // zero in position (0,1) forces a column exchange
        let m = IntMatrix::from_rows(&[
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
        ])
        .unwrap();
        assert_eq!(pfaffian_expansion(&m), BigInt::from(-1));
        assert_eq!(pfaffian_elimination(&m), BigInt::from(-1));
        assert_eq!(det(&m).unwrap(), BigInt::from(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            pfaffian(&IntMatrix::zeros(3, 3)),
            Err(Error::OddOrder(3))
        ));
        let not_skew = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(pfaffian(&not_skew), Err(Error::NotSkewSymmetric)));
    }
}
