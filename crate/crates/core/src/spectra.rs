//! Spectral predicates of tournaments, all computed exactly from the
//! characteristic polynomial and minors of the skew-adjacency matrix.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    bareiss_i128, bigint_string, charpoly, det, inverse_unimodular, sigma_coefficients,
    squarefree_decomposition, IntMatrix, IntPoly, SquarefreeFactor,
};
use crate::tournament::Tournament;

/// `det(S)` of the skew-adjacency matrix.
pub fn determinant(t: &Tournament) -> BigInt {
    let n = t.order();
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let mut buf = t.skew_i128();
    match bareiss_i128(&mut buf, n) {
        Some(d) => BigInt::from(d),
        None => det(&t.skew_matrix()).expect("square"),
    }
}

/// Determinant exactly `1`.
pub fn is_unimodular(t: &Tournament) -> bool {
    t.order() % 2 == 0 && determinant(t).is_one()
}

/// The odd `m >= 1` with `det(T) = m^2`; only defined for even order.
pub fn mccarthy_root(t: &Tournament) -> Result<BigInt> {
    let n = t.order();
    if n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "determinant of an odd tournament is 0; order {n}"
        )));
    }
    odd_square_root(&determinant(t))
}

fn odd_square_root(d: &BigInt) -> Result<BigInt> {
    if d.is_negative() {
        return Err(Error::Inconsistent(format!("negative tournament determinant {d}")));
    }
    let m = d.sqrt();
    if &(&m * &m) != d || m.is_even() {
        return Err(Error::Inconsistent(format!(
            "tournament determinant {d} is not the square of an odd integer"
        )));
    }
    Ok(m)
}

/// `sigma_1 .. sigma_n` of `phi_S(x) = x^n + sigma_1 x^{n-1} + ... + sigma_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaVector(Vec<BigInt>);

impl SigmaVector {
    pub fn from_charpoly(phi: &IntPoly) -> Self {
        SigmaVector(sigma_coefficients(phi))
    }

    /// `sigma_k`, with `sigma_0 = 1`.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.0[k]
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    /// Checks the identities every tournament satisfies: odd sigmas vanish,
    /// `sigma_2 = C(n,2)`.
    pub fn check_tournament_identities(&self) -> Result<()> {
        let n = self.order();
        for k in (1..=n).step_by(2) {
            if !self.0[k].is_zero() {
                return Err(Error::Inconsistent(format!("sigma_{k} = {} is nonzero", self.0[k])));
            }
        }
        if n >= 2 && self.0[2] != BigInt::from(binomial(n as u64, 2)) {
            return Err(Error::Inconsistent(format!("sigma_2 = {} != C({n},2)", self.0[2])));
        }
        Ok(())
    }
}

pub fn char_poly(t: &Tournament) -> IntPoly {
    charpoly(&t.skew_matrix()).expect("square")
}

pub fn sigma_vector(t: &Tournament) -> SigmaVector {
    SigmaVector::from_charpoly(&char_poly(t))
}

/// A 4-tournament is a diamond iff its score sequence is (3,1,1,1) or (0,2,2,2).
fn is_diamond(t: &Tournament, q: [usize; 4]) -> bool {
    let mut scores = [0usize; 4];
    for a in 0..4 {
        for b in a + 1..4 {
            if t.dominates(q[a], q[b]) {
                scores[a] += 1;
            } else {
                scores[b] += 1;
            }
        }
    }
    scores.sort_unstable();
    scores == [1, 1, 1, 3] || scores == [0, 2, 2, 2]
}

/// Number of 4-subsets inducing a diamond, by direct scan.
pub fn diamond_count_direct(t: &Tournament) -> u64 {
    let n = t.order();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if is_diamond(t, [a, b, c, d]) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Number of diamonds, computed both by scanning 4-subsets and from
/// `sigma_4 = 8 delta + C(n,4)`; the two must agree.
pub fn diamond_count(t: &Tournament) -> Result<u64> {
    let n = t.order();
    if n < 4 {
        return Err(Error::InvalidParameter(format!("diamonds need order >= 4, got {n}")));
    }
    diamond_count_with(t, &sigma_vector(t))
}

fn diamond_count_with(t: &Tournament, sigma: &SigmaVector) -> Result<u64> {
    let n = t.order() as u64;
    let direct = diamond_count_direct(t);
    let excess = sigma.get(4) - BigInt::from(binomial(n, 4));
    let (q, r) = excess.div_rem(&BigInt::from(8));
    if !r.is_zero() || q != BigInt::from(direct) {
        return Err(Error::Inconsistent(format!(
            "diamond scan found {direct} but sigma_4 = {} gives ({excess})/8",
            sigma.get(4)
        )));
    }
    Ok(direct)
}

/// The three equivalent invertibility criteria for a unimodular tournament.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertibilityCriteria {
    /// All off-diagonal entries of `S^-1` are `+-1`.
    pub inverse_is_tournament: bool,
    /// Every subtournament on `n-2` vertices is unimodular.
    pub all_deletions_unimodular: bool,
    /// `sigma_{n-2} = C(n,2)`.
    pub sigma_criterion: bool,
    /// Every off-diagonal entry of `S^-1` is odd.
    pub off_diagonal_odd: bool,
}

impl InvertibilityCriteria {
    pub fn agree(&self) -> bool {
        self.inverse_is_tournament == self.all_deletions_unimodular
            && self.all_deletions_unimodular == self.sigma_criterion
    }
}

fn require_unimodular(t: &Tournament) -> Result<()> {
    let d = determinant(t);
    if d.is_one() && t.order() % 2 == 0 {
        Ok(())
    } else {
        Err(Error::NotUnimodular(d))
    }
}

/// Evaluates every invertibility criterion independently.
pub fn invertibility_criteria(t: &Tournament) -> Result<(InvertibilityCriteria, IntMatrix)> {
    require_unimodular(t)?;
    let n = t.order();
    let s = t.skew_matrix();
    let inv = inverse_unimodular(&s)?;

    let mut inverse_is_tournament = true;
    let mut off_diagonal_odd = true;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let e = inv.get(i, j);
            inverse_is_tournament &= e.abs().is_one();
            off_diagonal_odd &= e.is_odd();
        }
    }

    let mut all_deletions_unimodular = true;
    let mut keep: Vec<usize> = Vec::with_capacity(n);
    'outer: for i in 0..n {
        for j in i + 1..n {
            keep.clear();
            keep.extend((0..n).filter(|&v| v != i && v != j));
            if !induced_unimodular(t, &keep) {
                all_deletions_unimodular = false;
                break 'outer;
            }
        }
    }

    let sigma = sigma_vector(t);
    let sigma_criterion = n < 2 || *sigma.get(n - 2) == BigInt::from(binomial(n as u64, 2));

    Ok((
        InvertibilityCriteria {
            inverse_is_tournament,
            all_deletions_unimodular,
            sigma_criterion,
            off_diagonal_odd,
        },
        inv,
    ))
}

/// Unimodularity of the subtournament on `keep`; the empty one counts as unimodular.
pub(crate) fn induced_unimodular(t: &Tournament, keep: &[usize]) -> bool {
    keep.is_empty() || is_unimodular(&t.induced_unchecked(keep))
}

/// Whether the unimodular tournament `t` has an inverse tournament.
pub fn is_invertible(t: &Tournament) -> Result<bool> {
    let (c, _) = invertibility_criteria(t)?;
    if !c.agree() {
        return Err(Error::Inconsistent(format!("invertibility criteria disagree: {c:?}")));
    }
    if !c.off_diagonal_odd {
        return Err(Error::Inconsistent("inverse has an even off-diagonal entry".into()));
    }
    Ok(c.inverse_is_tournament)
}

/// The tournament whose skew-adjacency matrix is `S^-1`.
pub fn inverse_tournament(t: &Tournament) -> Result<Tournament> {
    let (c, inv) = invertibility_criteria(t)?;
    if !c.agree() {
        return Err(Error::Inconsistent(format!("invertibility criteria disagree: {c:?}")));
    }
    if !c.inverse_is_tournament {
        return Err(Error::InvalidParameter("tournament is not invertible".into()));
    }
    Tournament::from_skew_matrix(&inv)
}

pub fn is_palindromic(t: &Tournament) -> bool {
    char_poly(t).is_palindromic()
}

/// `S^2 = (1 - n) I`, checked exactly.
pub fn is_skew_conference(t: &Tournament) -> bool {
    let n = t.order();
    let s = t.skew_i128();
    let target = 1 - n as i128;
    for i in 0..n {
        for j in 0..n {
            let v: i128 = (0..n).map(|k| s[i * n + k] * s[k * n + j]).sum();
            if v != if i == j { target } else { 0 } {
                return false;
            }
        }
    }
    true
}

/// One entry of the squarefree profile of `phi_S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub degree: usize,
    pub multiplicity: u32,
    #[serde(with = "bigint_string")]
    pub abs_constant: BigInt,
}

pub fn squarefree_profile(phi: &IntPoly) -> Result<Vec<ProfileEntry>> {
    Ok(squarefree_decomposition(phi)?
        .into_iter()
        .map(|SquarefreeFactor { factor, multiplicity }| ProfileEntry {
            degree: factor.degree().unwrap_or(0),
            multiplicity,
            abs_constant: factor.constant_term().abs(),
        })
        .collect())
}

fn nu_from_profile(profile: &[ProfileEntry]) -> u32 {
    profile
        .iter()
        .filter(|e| !e.abs_constant.is_one())
        .map(|e| e.multiplicity)
        .max()
        .unwrap_or(0)
}

/// Largest multiplicity of a non-unit eigenvalue of `S`, or 0 when every
/// eigenvalue is an algebraic unit.
///
/// A squarefree factor `g_j` of `phi_S = prod g_j^j` has only unit roots iff
/// `|g_j(0)| = 1`, so the answer is the largest `j` with `|g_j(0)| != 1`.
pub fn nu(t: &Tournament) -> u32 {
    let profile = squarefree_profile(&char_poly(t)).expect("charpoly is monic");
    nu_from_profile(&profile)
}

/// All eigenvalues are algebraic units; cross-checked against `|det S| = 1`.
pub fn unit_spectrum_check(t: &Tournament) -> Result<bool> {
    let profile = squarefree_profile(&char_poly(t))?;
    let units = profile.iter().all(|e| e.abs_constant.is_one());
    if units != is_unimodular(t) {
        return Err(Error::Inconsistent(format!(
            "unit spectrum {units} but determinant {}",
            determinant(t)
        )));
    }
    Ok(units)
}

/// Everything the spectral module knows about one tournament.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    #[serde(with = "bigint_string")]
    pub determinant: BigInt,
    pub unimodular: bool,
    #[serde(with = "bigint_string::option")]
    pub mccarthy_root: Option<BigInt>,
    pub diamonds: u64,
    pub invertible: bool,
    pub palindromic: bool,
    pub skew_conference: bool,
    pub nu: u32,
    pub squarefree_profile: Vec<ProfileEntry>,
}

pub fn analyze(t: &Tournament) -> Result<SpectralReport> {
    let n = t.order();
    let phi = char_poly(t);
    let sigma = SigmaVector::from_charpoly(&phi);
    sigma.check_tournament_identities()?;

    let determinant = determinant(t);
    if sigma.get(n) != &determinant {
        return Err(Error::Inconsistent(format!(
            "sigma_n = {} but det = {determinant}",
            sigma.get(n)
        )));
    }
    let unimodular = n % 2 == 0 && determinant.is_one();
    let mccarthy_root = if n % 2 == 0 {
        Some(odd_square_root(&determinant)?)
    } else {
        None
    };
    let diamonds = if n >= 4 { diamond_count_with(t, &sigma)? } else { 0 };
    let invertible = unimodular && is_invertible(t)?;
    let profile = squarefree_profile(&phi)?;
    if profile.iter().all(|e| e.abs_constant.is_one()) != unimodular {
        return Err(Error::Inconsistent("unit spectrum disagrees with determinant".into()));
    }

    Ok(SpectralReport {
        n,
        unimodular,
        mccarthy_root,
        diamonds,
        invertible,
        palindromic: phi.is_palindromic(),
        skew_conference: is_skew_conference(t),
        nu: nu_from_profile(&profile),
        squarefree_profile: profile,
        determinant,
    })
}
