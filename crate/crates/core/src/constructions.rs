//! Generators for the tournament families used throughout the crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::spectra::is_skew_conference;
use crate::tournament::Tournament;

/// Seed for the reproducible generators. Output is stable within a build;
/// the stream is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
pub type Seed = u64;

pub fn rng_from_seed(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `i` dominates `j` iff `i < j`.
pub fn transitive(n: usize) -> Result<Tournament> {
    Tournament::from_fn(n, |_, _| true)
}

/// Circular tournament on `Z_n`, `n` odd: `i` dominates `j` iff
/// `i - j mod n` lies in `1..=(n-1)/2`.
pub fn circular(n: usize) -> Result<Tournament> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "circular tournaments need odd n >= 3, got {n}"
        )));
    }
    let half = (n - 1) / 2;
    Tournament::from_fn(n, |i, j| {
        let d = (i + n - j) % n;
        (1..=half).contains(&d)
    })
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn check_paley_order(q: usize) -> Result<()> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidParameter(format!(
            "Paley tournaments need a prime q = 3 mod 4, got {q}"
        )));
    }
    Ok(())
}

/// Paley tournament on `GF(q)` for a prime `q = 3 (mod 4)`: `x` dominates `y`
/// iff `x - y` is a nonzero square.
pub fn paley(q: usize) -> Result<Tournament> {
    check_paley_order(q)?;
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    Tournament::from_fn(q, |x, y| residue[(x + q - y) % q])
}

/// `paley(q)` bordered by a vertex `q` dominating every other vertex. The
/// result has a skew-conference matrix, `S^2 = -q I`, which is verified here.
pub fn paley_conference(q: usize) -> Result<Tournament> {
    let p = paley(q)?;
    let t = Tournament::from_fn(q + 1, |i, j| j < q && p.dominates(i, j))?;
    if !is_skew_conference(&t) {
        return Err(Error::Inconsistent(format!(
            "bordered Paley tournament of order {} failed S^2 = -{q} I",
            q + 1
        )));
    }
    Ok(t)
}

/// Each pair oriented by one bit from the seeded stream.
pub fn random_tournament(n: usize, seed: Seed) -> Result<Tournament> {
    random_with(n, &mut rng_from_seed(seed))
}

pub fn random_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tournament> {
    Tournament::from_fn(n, |_, _| rng.gen::<bool>())
}

/// A random member of the class generated from the 2-tournament by joins and
/// switches: split into two even parts, build each recursively, join them,
/// then switch on a uniformly random subset.
pub fn sample_h(n: usize, seed: Seed) -> Result<Tournament> {
    sample_h_with(n, &mut rng_from_seed(seed))
}

pub fn sample_h_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tournament> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "class-H tournaments have even order >= 2, got {n}"
        )));
    }
    Ok(sample_h_rec(n, rng))
}

fn sample_h_rec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tournament {
    let joined = if n == 2 {
        transitive(2).expect("n = 2")
    } else {
        // left part size uniform over 2, 4, .., n-2
        let left = 2 * rng.gen_range(1..n / 2);
        let a = sample_h_rec(left, rng);
        let b = sample_h_rec(n - left, rng);
        Tournament::join(&a, &b)
    };
    let inside: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    joined.switch_by(|v| inside[v])
}

const EXAMPLE_8: [[i64; 8]; 8] = [
    [0, -1, -1, -1, 1, -1, -1, -1],
    [1, 0, -1, -1, -1, -1, -1, -1],
    [1, 1, 0, -1, -1, 1, -1, -1],
    [1, 1, 1, 0, -1, -1, -1, -1],
    [-1, 1, 1, 1, 0, -1, -1, -1],
    [1, 1, -1, 1, 1, 0, 1, -1],
    [1, 1, 1, 1, 1, -1, 0, -1],
    [1, 1, 1, 1, 1, 1, 1, 0],
];

const EXAMPLE_9: [[i64; 9]; 9] = [
    [0, -1, -1, -1, -1, -1, -1, 1, -1],
    [1, 0, -1, -1, -1, -1, -1, -1, 1],
    [1, 1, 0, -1, -1, -1, 1, -1, -1],
    [1, 1, 1, 0, -1, -1, -1, 1, -1],
    [1, 1, 1, 1, 0, -1, -1, -1, -1],
    [1, 1, 1, 1, 1, 0, -1, -1, 1],
    [1, 1, -1, 1, 1, 1, 0, -1, -1],
    [-1, 1, 1, -1, 1, 1, 1, 0, -1],
    [1, -1, 1, 1, 1, -1, 1, 1, 0],
];

/// A unimodular 8-tournament that is not switching equivalent to any join of
/// two tournaments with at least two vertices each.
pub fn example_8() -> Tournament {
    let m = IntMatrix::from_rows(&EXAMPLE_8).expect("rectangular");
    Tournament::from_skew_matrix(&m).expect("valid tournament matrix")
}

/// A 9-tournament that becomes unimodular after adding one dominating vertex
/// but needs three vertex removals.
pub fn example_9() -> Tournament {
    let m = IntMatrix::from_rows(&EXAMPLE_9).expect("rectangular");
    Tournament::from_skew_matrix(&m).expect("valid tournament matrix")
}
