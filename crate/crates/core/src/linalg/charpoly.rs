//! Division-free characteristic polynomial (Berkowitz) and the unimodular
//! inverse it enables through Cayley-Hamilton.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{det, IntMatrix, IntPoly};
use crate::error::{Error, Result};

/// `det(xI - M)` as a monic integer polynomial.
///
/// Uses Berkowitz's recurrence over the leading principal submatrices:
/// bordering `A_r` by column `c`, row `R` and corner `a` multiplies the
/// coefficient vector of `A_r` by a lower-triangular Toeplitz matrix whose
/// first column is `1, -a, -R c, -R A_r c, -R A_r^2 c, ...`.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    let n = m.require_square()?;
    // descending coefficients of the current leading block
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let corner = m.get(r, r);
        let col: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let row: Vec<BigInt> = (0..r).map(|j| m.get(r, j).clone()).collect();

        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-corner);
        let mut v = col;
        for step in 0..r {
            let dot: BigInt = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            toeplitz.push(-dot);
            if step + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).map(|j| m.get(i, j) * &v[j]).sum())
                    .collect();
            }
        }

        let mut next = vec![BigInt::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for j in 0..=r.min(i) {
                if i - j < toeplitz.len() {
                    *out += &toeplitz[i - j] * &p[j];
                }
            }
        }
        p = next;
    }
    p.reverse();
    Ok(IntPoly::new(p))
}

/// Exact inverse of an integer matrix with determinant `+1` or `-1`.
///
/// With `phi(x) = x^n + ... + a_1 x + a_0`, Cayley-Hamilton gives
/// `M^{-1} = -(M^{n-1} + ... + a_1 I) / a_0` and `a_0 = (-1)^n det(M)`.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.require_square()?;
    let d = det(m)?;
    if !d.abs().is_one() {
        return Err(Error::NotUnimodular(d));
    }
    if n == 0 {
        return Ok(IntMatrix::identity(0));
    }
    let phi = charpoly(m)?;
    let a = phi.coeffs();
    let mut acc = IntMatrix::identity(n);
    for coeff in a[1..n].iter().rev() {
        acc = &(&acc * m) + &IntMatrix::identity(n).scale(coeff);
    }
    // -1/a0 = -a0 since a0 is a unit
    let inv = acc.scale(&-&a[0]);
    if !(m * &inv).is_identity() {
        return Err(Error::Inconsistent(
            "Cayley-Hamilton inverse failed the M * M^-1 = I check".into(),
        ));
    }
    Ok(inv)
}

/// `sigma_k` in `phi(x) = x^n + sigma_1 x^{n-1} + ... + sigma_n`, for k = 0..=n.
pub fn sigma_coefficients(phi: &IntPoly) -> Vec<BigInt> {
    phi.coeffs().iter().rev().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn two_tournament() {
        let s = IntMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(charpoly(&s).unwrap(), poly(&[1, 0, 1]));
    }

    #[test]
    fn general_2x2_and_3x3() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]).unwrap();
        // x^2 - 5x - 2
        assert_eq!(charpoly(&a).unwrap(), poly(&[-2, -5, 1]));
        let b = IntMatrix::from_rows(&[[2, 0, 0], [0, 3, 0], [0, 0, 5]]).unwrap();
        // (x-2)(x-3)(x-5) = x^3 - 10x^2 + 31x - 30
        assert_eq!(charpoly(&b).unwrap(), poly(&[-30, 31, -10, 1]));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(charpoly(&IntMatrix::identity(0)).unwrap(), poly(&[1]));
    }

    #[test]
    fn inverse_small() {
        let i4 = IntMatrix::identity(4);
        assert_eq!(inverse_unimodular(&i4).unwrap(), i4);
        let j = IntMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(
            inverse_unimodular(&j).unwrap(),
            IntMatrix::from_rows(&[[0, -1], [1, 0]]).unwrap()
        );
        let odd = IntMatrix::from_rows(&[[2, 1, 0], [1, 1, 0], [0, 0, -1]]).unwrap();
        let inv = inverse_unimodular(&odd).unwrap();
        assert!((&odd * &inv).is_identity());
    }

    #[test]
    fn inverse_rejects_non_unit_det() {
        let a = IntMatrix::from_rows(&[[3, 0], [0, 3]]).unwrap();
        match inverse_unimodular(&a) {
            Err(Error::NotUnimodular(d)) => assert_eq!(d, BigInt::from(9)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
