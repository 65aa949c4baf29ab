use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer polynomial with coefficients stored from the constant term up.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Pseudo-remainder `prem(self, divisor)`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let t = rem[top].clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[top - dd + j] -= &t * d;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Self::new(rem)
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = IntPoly {
            coeffs: (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        };
        out.trim();
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = IntPoly {
            coeffs: (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        };
        out.trim();
        out
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    /// Coefficients from the constant term up, as decimal strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// One factor `g` of a squarefree decomposition, appearing as `g^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    pub factor: IntPoly,
    pub multiplicity: u32,
}

/// Yun's squarefree decomposition of a monic integer polynomial.
///
/// Returns the nonconstant factors `g_j` (monic, squarefree, pairwise coprime)
/// with `p = prod g_j^j`, ordered by increasing multiplicity. Every division
/// is by a monic polynomial, so the computation stays in `Z[x]`.
pub fn squarefree_decomposition(p: &IntPoly) -> Result<Vec<SquarefreeFactor>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let (mut b, _) = p.div_rem_monic(&g)?;
    let (mut c, _) = dp.div_rem_monic(&g)?;
    let mut mult = 1u32;
    loop {
        let d = &c - &b.derivative();
        if d.is_zero() {
            if b.degree().unwrap_or(0) > 0 {
                out.push(SquarefreeFactor {
                    factor: b,
                    multiplicity: mult,
                });
            }
            break;
        }
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push(SquarefreeFactor {
                factor: a.clone(),
                multiplicity: mult,
            });
        }
        b = b.div_rem_monic(&a)?.0;
        c = d.div_rem_monic(&a)?.0;
        mult += 1;
    }
    let rebuilt = out
        .iter()
        .fold(IntPoly::one(), |acc, f| &acc * &f.factor.pow(f.multiplicity));
    if &rebuilt != p {
        return Err(Error::Inconsistent(format!(
            "squarefree factors of {p} multiply to {rebuilt}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[9, 0, 6, 0, 1]).to_string(), "x^4 + 6x^2 + 9");
        assert_eq!(poly(&[-1, 1]).to_string(), "x - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn division_by_monic() {
        let p = poly(&[9, 0, 6, 0, 1]);
        let (q, r) = p.div_rem_monic(&poly(&[3, 0, 1])).unwrap();
        assert_eq!(q, poly(&[3, 0, 1]));
        assert!(r.is_zero());
        assert!(p.div_rem_monic(&poly(&[1, 2])).is_err());
    }

    #[test]
    fn gcd_is_primitive() {
        let a = &poly(&[-1, 1]) * &poly(&[2, 0, 1]);
        let b = &poly(&[-1, 1]) * &poly(&[3, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        assert_eq!(poly(&[4, 2]).gcd(&IntPoly::zero()), poly(&[2, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let sq = squarefree_decomposition(&poly(&[9, 0, 6, 0, 1])).unwrap();
        assert_eq!(
            sq,
            vec![SquarefreeFactor {
                factor: poly(&[3, 0, 1]),
                multiplicity: 2
            }]
        );

        let sf = squarefree_decomposition(&poly(&[1, 0, 6, 0, 1])).unwrap();
        assert_eq!(sf.len(), 1);
        assert_eq!(sf[0].factor, poly(&[1, 0, 6, 0, 1]));
        assert_eq!(sf[0].multiplicity, 1);

        // x^2 (x^2 + 1)
        let mixed = squarefree_decomposition(&poly(&[0, 0, 1, 0, 1])).unwrap();
        assert_eq!(
            mixed,
            vec![
                SquarefreeFactor {
                    factor: poly(&[1, 0, 1]),
                    multiplicity: 1
                },
                SquarefreeFactor {
                    factor: IntPoly::x(),
                    multiplicity: 2
                },
            ]
        );
    }

    #[test]
    fn squarefree_rejects_zero_and_non_monic() {
        assert!(matches!(
            squarefree_decomposition(&IntPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            squarefree_decomposition(&poly(&[1, 2])),
            Err(Error::NotMonic)
        ));
        assert!(squarefree_decomposition(&IntPoly::one()).unwrap().is_empty());
    }

    #[test]
    fn palindromes() {
        assert!(poly(&[1, 0, 1]).is_palindromic());
        assert!(!poly(&[9, 0, 6, 0, 1]).is_palindromic());
    }
}
