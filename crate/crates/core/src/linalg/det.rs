//! Fraction-free (Bareiss) determinants.
//!
//! After step `k` every working entry below and right of the pivot is a
//! `(k+1)x(k+1)` minor of the input, so each division by the previous pivot
//! is exact and intermediates never leave the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::Result;

/// Exact determinant of a square integer matrix.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    if let Some(small) = m.to_i64_vec() {
        let mut work: Vec<i128> = small.into_iter().map(i128::from).collect();
        if let Some(d) = bareiss_i128(&mut work, n) {
            return Ok(BigInt::from(d));
        }
    }
    Ok(bareiss_big(m.entries().to_vec(), n))
}

/// Determinant of the principal submatrix on `idx`.
pub fn principal_minor(m: &IntMatrix, idx: &[usize]) -> Result<BigInt> {
    m.require_square()?;
    det(&m.principal_submatrix(idx))
}

/// In-place Bareiss elimination on a row-major `n x n` buffer.
///
/// Returns `None` if any intermediate overflows `i128`; the buffer is then
/// left in an unspecified state.
pub fn bareiss_i128(a: &mut [i128], n: usize) -> Option<i128> {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let lhs = a[i * n + j].checked_mul(pivot)?;
                let rhs = aik.checked_mul(a[k * n + j])?;
                a[i * n + j] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { -d } else { d })
}

fn bareiss_big(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let num = &a[i * n + j] * &pivot - &aik * &a[k * n + j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i * n + j] = q;
            }
        }
        prev = pivot;
    }
    let d = a.swap_remove(n * n - 1);
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(det(&m(&[&[0, 1], &[-1, 0]])).unwrap(), BigInt::from(1));
        assert_eq!(det(&IntMatrix::identity(0)).unwrap(), BigInt::from(1));
        assert_eq!(det(&m(&[&[2, 3], &[4, 5]])).unwrap(), BigInt::from(-2));
        // needs a row swap
        assert_eq!(
            det(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn diamond_is_nine() {
        let s = m(&[
            &[0, 1, 1, 1],
            &[-1, 0, 1, -1],
            &[-1, -1, 0, 1],
            &[-1, 1, -1, 0],
        ]);
        assert_eq!(det(&s).unwrap(), BigInt::from(9));
    }

    #[test]
    fn non_square_rejected() {
        assert!(det(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn big_path_matches_small_path() {
        // entries large enough to overflow i128 products
        let big: BigInt = BigInt::from(1u64) << 100;
        let mut a = IntMatrix::identity(3);
        a.set(0, 0, big.clone());
        a.set(1, 1, big.clone());
        a.set(0, 1, 7);
        a.set(2, 0, 3);
        let expected = &big * &big;
        assert_eq!(det(&a).unwrap(), expected);
        assert_eq!(bareiss_big(a.entries().to_vec(), 3), det(&a).unwrap());
    }
}
