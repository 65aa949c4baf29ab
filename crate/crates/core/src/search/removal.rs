use rayon::prelude::*;
use serde::Serialize;

use super::minor_is_one;
use crate::spectra::is_unimodular;
use crate::tournament::{Tournament, VertexSet};

/// Vertices whose removal leaves a unimodular tournament.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalCertificate {
    pub removed: VertexSet,
}

impl RemovalCertificate {
    /// Re-checks the certificate; removing every vertex counts as unimodular.
    pub fn verify(&self, t: &Tournament) -> bool {
        if self.removed.check_within(t.order()).is_err() {
            return false;
        }
        let keep = self.removed.complement(t.order());
        keep.is_empty() || is_unimodular(&t.induced(&keep).expect("nonempty"))
    }
}

/// Next `r`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

const CHUNK: usize = 4096;

/// Lexicographically first `r`-subset of `0..n` whose removal leaves a
/// unimodular tournament.
fn first_removal(skew: &[i128], n: usize, r: usize) -> Option<Vec<usize>> {
    let mut comb: Vec<usize> = (0..r).collect();
    let mut more = true;
    while more {
        let mut chunk = Vec::with_capacity(CHUNK);
        while more && chunk.len() < CHUNK {
            chunk.push(comb.clone());
            more = next_combination(&mut comb, n);
        }
        let hit = chunk.into_par_iter().find_first(|removed| {
            let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
            minor_is_one(skew, n, &keep, &mut Vec::new())
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Smallest number of vertices to delete to leave a unimodular tournament,
/// with the lexicographically least deletion set of that size.
///
/// Sizes are swept upward through values with `n - r` even, since odd-order
/// tournaments have determinant 0. Removing everything is accepted, so the
/// sweep always terminates; the transitive-subtournament bound guarantees it
/// stops by `n - floor(log2 n)`.
pub fn u_minus(t: &Tournament) -> (usize, RemovalCertificate) {
    let n = t.order();
    let skew = t.skew_i128();
    let mut r = n % 2;
    loop {
        if let Some(removed) = first_removal(&skew, n, r) {
            let removed = VertexSet::new(removed).expect("combination is a set");
            return (r, RemovalCertificate { removed });
        }
        r += 2;
        assert!(r <= n, "removing every vertex always succeeds");
    }
}
