//! Randomized checks of the theory's identities and bounds on seeded inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{removal_upper_bound, u_minus, u_plus, UPlusOptions};
use crate::constructions::{paley_conference, random_with, rng_from_seed, sample_h_with, Seed};
use crate::decomp::{is_in_h, switching_decomposable, switching_witness};
use crate::error::Result;
use crate::linalg::{det, inverse_unimodular, pfaffian, principal_minor, IntMatrix};
use crate::spectra::{
    determinant, diamond_count, invertibility_criteria, is_skew_conference, is_unimodular,
    mccarthy_root, nu, sigma_vector,
};
use crate::tournament::{Tournament, VertexSet};

/// Largest order for the randomized identities.
const MAX_ORDER: usize = 10;
/// Largest order handed to the `u_plus` search.
const MAX_SEARCH_ORDER: usize = 7;
/// Enumeration cap for the `u_plus` searches run here.
const SEARCH_BUDGET: u32 = 24;
const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Trials where a search hit its budget before the claim could be decided.
    pub inconclusive: usize,
    /// Up to five failing inputs.
    pub witnesses: Vec<Value>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: Seed,
    pub trials: usize,
    pub passed: bool,
    pub claims: Vec<ClaimResult>,
}

enum Outcome {
    Pass,
    Inconclusive,
    Fail(Value),
}

fn check(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

fn tj(t: &Tournament) -> Value {
    json!({ "n": t.order(), "arcs": t.arc_string() })
}

fn random_order(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

fn random_t(rng: &mut ChaCha8Rng, n: usize) -> Tournament {
    random_with(n, rng).expect("positive order")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    VertexSet::new((0..n).filter(|_| rng.gen_bool(0.5))).expect("sorted")
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            m.set(i, j, BigInt::from(v));
            m.set(j, i, BigInt::from(-v));
        }
    }
    m
}

fn mat_json(m: &IntMatrix) -> Value {
    json!(m.row_vecs().iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn claim(
    name: &'static str,
    trials: usize,
    rng: &mut ChaCha8Rng,
    mut f: impl FnMut(&mut ChaCha8Rng) -> Result<Outcome>,
) -> Result<ClaimResult> {
    let mut r = ClaimResult {
        name,
        trials,
        failures: 0,
        inconclusive: 0,
        witnesses: Vec::new(),
    };
    for _ in 0..trials {
        match f(rng)? {
            Outcome::Pass => {}
            Outcome::Inconclusive => r.inconclusive += 1,
            Outcome::Fail(w) => {
                r.failures += 1;
                if r.witnesses.len() < MAX_WITNESSES {
                    r.witnesses.push(w);
                }
            }
        }
    }
    Ok(r)
}

fn join_even(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let p = 2 * random_order(rng, 1, MAX_ORDER / 4);
    let q = 2 * random_order(rng, 1, MAX_ORDER / 4);
    let (a, b) = (random_t(rng, p), random_t(rng, q));
    let joined = determinant(&Tournament::join(&a, &b));
    Ok(check(joined == determinant(&a) * determinant(&b), || {
        json!({ "t1": tj(&a), "t2": tj(&b) })
    }))
}

fn join_odd(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let p = 2 * random_order(rng, 0, MAX_ORDER / 4 - 1) + 1;
    let q = 2 * random_order(rng, 0, MAX_ORDER / 4 - 1) + 1;
    let (a, b) = (random_t(rng, p), random_t(rng, q));
    let joined = determinant(&Tournament::join(&a, &b));
    Ok(check(
        joined == determinant(&a.plus()) * determinant(&b.plus()),
        || json!({ "t1": tj(&a), "t2": tj(&b) }),
    ))
}

fn mccarthy(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = 2 * random_order(rng, 1, MAX_ORDER / 2);
    let t = random_t(rng, n);
    let ok = matches!(mccarthy_root(&t), Ok(m) if m.is_odd() && &m * &m == determinant(&t));
    Ok(check(ok, || tj(&t)))
}

fn switch_invariance(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, MAX_ORDER);
    let t = random_t(rng, n);
    let x = random_subset(rng, n);
    let s = t.switch(&x)?;
    let d = determinant(&t);
    let witness_ok = switching_witness(&t, &s)?.is_some_and(|w| w.verify(&t, &s));
    let dsd = t.skew_matrix().sign_conjugate(
        &(0..n).map(|v| if x.contains(v) { -1 } else { 1 }).collect::<Vec<_>>(),
    );
    Ok(check(
        witness_ok
            && dsd == s.skew_matrix()
            && determinant(&s) == d
            && determinant(&t.converse()) == d
            && sigma_vector(&s) == sigma_vector(&t),
        || json!({ "t": tj(&t), "x": x.as_slice() }),
    ))
}

fn sigma_identities(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, MAX_ORDER);
    let t = random_t(rng, n);
    let sigma = sigma_vector(&t);
    let ok = sigma.check_tournament_identities().is_ok() && *sigma.get(n) == determinant(&t);
    Ok(check(ok, || tj(&t)))
}

fn diamond_formula(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 4, MAX_ORDER);
    let t = random_t(rng, n);
    Ok(check(diamond_count(&t).is_ok(), || tj(&t)))
}

fn invertibility(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = 2 * random_order(rng, 1, MAX_ORDER / 2);
    // half the draws are random (often not unimodular), half come from class H
    let t = if rng.gen_bool(0.5) {
        random_t(rng, n)
    } else {
        sample_h_with(n, rng)?
    };
    if !is_unimodular(&t) {
        return Ok(Outcome::Pass);
    }
    let (c, _) = invertibility_criteria(&t)?;
    Ok(check(c.agree() && c.off_diagonal_odd, || {
        json!({ "t": tj(&t), "criteria": format!("{c:?}") })
    }))
}

fn hat_sign(n: usize) -> Vec<i8> {
    (0..2 * n).map(|i| if i < n { 1 } else { -1 }).collect()
}

fn hat_inverse(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, 6);
    let t = random_t(rng, n);
    let s = t.hat().skew_matrix();
    let ok = matches!(inverse_unimodular(&s), Ok(inv) if inv == s.sign_conjugate(&hat_sign(n)));
    Ok(check(ok, || tj(&t)))
}

fn hat_palindromic(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, 6);
    let t = random_t(rng, n);
    Ok(check(crate::spectra::is_palindromic(&t.hat()), || tj(&t)))
}

fn hat_minors(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, 6);
    let t = random_t(rng, n);
    let s = t.hat().skew_matrix();
    for _ in 0..100 {
        let i = random_subset(rng, 2 * n);
        let c = i.complement(2 * n);
        if principal_minor(&s, i.as_slice())? != principal_minor(&s, c.as_slice())? {
            return Ok(Outcome::Fail(json!({ "t": tj(&t), "subset": i.as_slice() })));
        }
    }
    Ok(Outcome::Pass)
}

/// `M = [[A, B], [-B^t, D]]` with `A` skew and invertible, `B = a b^t`.
fn schur_rank_one(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let p = 2 * random_order(rng, 1, 3);
    let q = random_order(rng, 1, 5);
    let a = loop {
        let a = random_skew(rng, p, 2);
        if !det(&a)?.is_zero() {
            break a;
        }
    };
    let d = random_skew(rng, q, 2);
    let alpha: Vec<i64> = (0..p).map(|_| rng.gen_range(-3..=3)).collect();
    let beta: Vec<i64> = (0..q).map(|_| rng.gen_range(-3..=3)).collect();
    let b = IntMatrix::from_fn(p, q, |i, j| BigInt::from(alpha[i] * beta[j]));
    let m = IntMatrix::block(&a, &b, &(-&b.transpose()), &d)?;
    let ok = det(&m)? == det(&a)? * det(&d)?;
    Ok(check(ok, || json!({ "m": mat_json(&m) })))
}

fn pfaffian_squared(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = 2 * random_order(rng, 1, 7);
    let m = random_skew(rng, n, 3);
    let pf = pfaffian(&m)?;
    Ok(check(&pf * &pf == det(&m)?, || json!({ "m": mat_json(&m) })))
}

fn search_opts(seed_with_nu: bool) -> UPlusOptions {
    UPlusOptions {
        budget_bits: SEARCH_BUDGET,
        seed_with_nu,
    }
}

/// With the sweep started at the parity minimum rather than at the bound.
fn nu_lower_bound(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, MAX_SEARCH_ORDER);
    let t = random_t(rng, n);
    if is_unimodular(&t) {
        return Ok(Outcome::Pass);
    }
    let r = u_plus(&t, search_opts(false))?;
    let v = nu(&t) as usize;
    Ok(match r.value() {
        Some(u) => check(v <= u, || tj(&t)),
        None if v > r.upper => Outcome::Fail(tj(&t)),
        None => Outcome::Inconclusive,
    })
}

fn bracket(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, MAX_SEARCH_ORDER);
    let t = random_t(rng, n);
    let (um, _) = u_minus(&t);
    let r = u_plus(&t, search_opts(true))?;
    let ok = r.lower <= r.upper
        && r.upper <= um
        && (r.exact || r.upper == um)
        && (is_unimodular(&t) || nu(&t) as usize <= r.lower);
    Ok(check(ok, || tj(&t)))
}

fn log_bound(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, 9);
    let t = random_t(rng, n);
    let (um, _) = u_minus(&t);
    Ok(check(um <= removal_upper_bound(n), || tj(&t)))
}

fn parity(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, MAX_SEARCH_ORDER);
    let t = random_t(rng, n);
    let (um, _) = u_minus(&t);
    let r = u_plus(&t, search_opts(true))?;
    Ok(check(
        (n - um) % 2 == 0 && (n + r.lower) % 2 == 0 && (n + r.upper) % 2 == 0,
        || tj(&t),
    ))
}

fn subadditivity(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let p = random_order(rng, 1, 4);
    let q = random_order(rng, 1, 6 - p.max(2));
    let (a, b) = (random_t(rng, p), random_t(rng, q));
    let joined = Tournament::join(&a, &b);
    let opts = search_opts(true);
    let (ra, rb, rj) = (u_plus(&a, opts)?, u_plus(&b, opts)?, u_plus(&joined, opts)?);
    // every u_plus value is bracketed, so decide from the bracket ends
    let witness = || json!({ "t1": tj(&a), "t2": tj(&b) });
    Ok(if rj.upper <= ra.lower + rb.lower {
        Outcome::Pass
    } else if rj.lower > ra.upper + rb.upper {
        Outcome::Fail(witness())
    } else if rj.exact && ra.exact && rb.exact {
        check(rj.upper <= ra.upper + rb.upper, witness)
    } else {
        Outcome::Inconclusive
    })
}

fn certificates(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, MAX_SEARCH_ORDER);
    let t = random_t(rng, n);
    let (um, removal) = u_minus(&t);
    let r = u_plus(&t, search_opts(true))?;
    let mut ok = removal.verify(&t) && removal.removed.len() == um && r.certificate.verify(&t);
    if n >= 4 {
        if let Some(c) = switching_decomposable(&t)? {
            ok &= c.verify(&t);
        }
    }
    let h = sample_h_with(2 * random_order(rng, 1, 4), rng)?;
    ok &= is_in_h(&h)?.is_some_and(|d| d.verify(&h));
    Ok(check(ok, || json!({ "t": tj(&t), "h": tj(&h) })))
}

fn skew_conference(q: usize) -> Result<Outcome> {
    let t = paley_conference(q)?;
    let n = t.order();
    let r = u_plus(&t, search_opts(true))?;
    Ok(check(
        is_skew_conference(&t) && nu(&t) as usize == n / 2 && r.lower >= n / 2,
        || json!({ "q": q }),
    ))
}

fn blow_up(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = random_order(rng, 1, 5);
    let t = random_t(rng, n);
    let h = t.hat();
    Ok(check(is_in_h(&h)?.is_some_and(|d| d.verify(&h)), || tj(&t)))
}

type ClaimFn = fn(&mut ChaCha8Rng) -> Result<Outcome>;

const CLAIMS: &[(&str, ClaimFn)] = &[
    ("join_determinant_even", join_even),
    ("join_determinant_odd", join_odd),
    ("mccarthy_parity", mccarthy),
    ("switch_and_converse_invariance", switch_invariance),
    ("sigma_identities", sigma_identities),
    ("diamond_formula", diamond_formula),
    ("invertibility_equivalence", invertibility),
    ("hat_inverse", hat_inverse),
    ("hat_palindromic", hat_palindromic),
    ("hat_complementary_minors", hat_minors),
    ("schur_rank_one", schur_rank_one),
    ("pfaffian_squared", pfaffian_squared),
    ("nu_lower_bound", nu_lower_bound),
    ("u_plus_bracket", bracket),
    ("u_minus_log_bound", log_bound),
    ("parity", parity),
    ("subadditivity", subadditivity),
    ("certificates_verify", certificates),
    ("blow_up_in_h", blow_up),
];

/// Runs every claim `trials` times. Each claim draws from its own stream
/// derived from `seed`, so adding a claim never changes the others' inputs.
pub fn verify_suite(seed: Seed, trials: usize) -> Result<VerifyReport> {
    let mut master = rng_from_seed(seed);
    let mut claims = Vec::with_capacity(CLAIMS.len() + 1);
    for &(name, f) in CLAIMS {
        let mut rng = rng_from_seed(master.next_u64());
        claims.push(claim(name, trials, &mut rng, f)?);
    }
    let qs = [3, 7, 11];
    let mut conf = ClaimResult {
        name: "skew_conference_bound",
        trials: qs.len(),
        failures: 0,
        inconclusive: 0,
        witnesses: Vec::new(),
    };
    for q in qs {
        if let Outcome::Fail(w) = skew_conference(q)? {
            conf.failures += 1;
            conf.witnesses.push(w);
        }
    }
    claims.push(conf);
    Ok(VerifyReport {
        seed,
        trials,
        passed: claims.iter().all(ClaimResult::passed),
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = verify_suite(7, 3).unwrap();
        for c in &report.claims {
            assert!(c.passed(), "{} failed: {:?}", c.name, c.witnesses);
        }
        assert!(report.passed);
        assert_eq!(report.claims.len(), CLAIMS.len() + 1);
    }

    #[test]
    fn deterministic() {
        assert_eq!(verify_suite(11, 2).unwrap(), verify_suite(11, 2).unwrap());
    }

    #[test]
    fn helpers() {
        let mut rng = rng_from_seed(1);
        let m = random_skew(&mut rng, 4, 2);
        assert!(m.is_skew_symmetric());
    }
}
