use rayon::prelude::*;
use serde::Serialize;

use super::removal::u_minus;
use crate::error::{Error, Result};
use crate::linalg::bareiss_i128;
use crate::spectra::{is_unimodular, nu};
use crate::tournament::{Tournament, VertexSet};

/// `k` new vertices, labeled `n..n+k`, and their arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCertificate {
    pub added: usize,
    /// Bit `t*n + i` set: new vertex `n+t` dominates old vertex `i`.
    pub new_vs_old: String,
    /// Pairs `(t, u)`, `t < u`, lexicographic; set: `n+t` dominates `n+u`.
    pub new_vs_new: String,
    pub extension: Tournament,
}

impl ExtensionCertificate {
    fn from_extension(n: usize, ext: Tournament) -> Self {
        let k = ext.order() - n;
        let mut new_vs_old = String::with_capacity(k * n);
        for t in 0..k {
            for i in 0..n {
                new_vs_old.push(if ext.dominates(n + t, i) { '1' } else { '0' });
            }
        }
        let mut new_vs_new = String::new();
        for t in 0..k {
            for u in t + 1..k {
                new_vs_new.push(if ext.dominates(n + t, n + u) { '1' } else { '0' });
            }
        }
        ExtensionCertificate {
            added: k,
            new_vs_old,
            new_vs_new,
            extension: ext,
        }
    }

    /// The extension is unimodular, contains `t` on `0..n`, and matches the bit strings.
    pub fn verify(&self, t: &Tournament) -> bool {
        let n = t.order();
        let ext = &self.extension;
        if ext.order() != n + self.added {
            return false;
        }
        let Ok(base) = ext.induced(&VertexSet::range(0, n)) else {
            return false;
        };
        let rebuilt = ExtensionCertificate::from_extension(n, ext.clone());
        base == *t
            && rebuilt.new_vs_old == self.new_vs_old
            && rebuilt.new_vs_new == self.new_vs_new
            && (ext.order() == 0 || is_unimodular(ext))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UPlusOptions {
    /// Largest `k*n + k(k-1)/2` enumerated at a single level.
    pub budget_bits: u32,
    /// Start the sweep at the non-unit eigenvalue multiplicity, which is a
    /// lower bound for non-unimodular tournaments. Disable to test that bound.
    pub seed_with_nu: bool,
}

impl Default for UPlusOptions {
    fn default() -> Self {
        UPlusOptions {
            budget_bits: 34,
            seed_with_nu: true,
        }
    }
}

/// Result of the `u_plus` sweep: `lower <= u_plus(T) <= upper`, with a
/// certificate achieving `upper`. `exact` iff the bounds meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UPlusResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// Levels enumerated exhaustively without success.
    pub exhausted_levels: Vec<usize>,
    /// `u_minus(T)`, when it was computed for the bracket.
    pub u_minus: Option<usize>,
    pub certificate: ExtensionCertificate,
}

impl UPlusResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

fn level_bits(n: usize, k: usize) -> usize {
    k * n + k * k.saturating_sub(1) / 2
}

/// Lexicographically least orientation vector (old-vs-new bits first, read
/// most significant first) making the `k`-vertex extension unimodular.
fn first_extension(t: &Tournament, k: usize) -> Option<Tournament> {
    let n = t.order();
    let m = level_bits(n, k);
    let size = n + k;
    let base = t.skew_i128();
    let build = |code: u64, buf: &mut Vec<i128>| {
        buf.clear();
        buf.resize(size * size, 0);
        for i in 0..n {
            buf[i * size..i * size + n].copy_from_slice(&base[i * n..i * n + n]);
        }
        let bit = |idx: usize| (code >> (m - 1 - idx)) & 1 == 1;
        for s in 0..k {
            for i in 0..n {
                // set: new vertex dominates old vertex
                let v = if bit(s * n + i) { 1 } else { -1 };
                buf[(n + s) * size + i] = v;
                buf[i * size + n + s] = -v;
            }
        }
        let mut idx = k * n;
        for s in 0..k {
            for u in s + 1..k {
                let v = if bit(idx) { 1 } else { -1 };
                buf[(n + s) * size + n + u] = v;
                buf[(n + u) * size + n + s] = -v;
                idx += 1;
            }
        }
    };
    let hit = (0u64..1 << m)
        .into_par_iter()
        .map_init(Vec::new, |buf, code| {
            build(code, buf);
            (code, bareiss_i128(buf, size) == Some(1))
        })
        .find_first(|&(_, ok)| ok)?;
    let mut buf = Vec::new();
    build(hit.0, &mut buf);
    Some(
        Tournament::from_fn(size, |i, j| buf[i * size + j] == 1).expect("nonempty"),
    )
}

/// Exact `u_plus` by exhaustive extension search within `budget_bits`, or a
/// bracket `[lower, u_minus]` with the doubling-based certificate.
pub fn u_plus(t: &Tournament, opts: UPlusOptions) -> Result<UPlusResult> {
    let n = t.order();
    if opts.budget_bits > 62 {
        return Err(Error::InvalidParameter(format!(
            "budget of {} bits is beyond enumeration range",
            opts.budget_bits
        )));
    }
    if is_unimodular(t) {
        return Ok(UPlusResult {
            lower: 0,
            upper: 0,
            exact: true,
            exhausted_levels: Vec::new(),
            u_minus: None,
            certificate: ExtensionCertificate::from_extension(n, t.clone()),
        });
    }
    let parity_min = if n % 2 == 0 { 2 } else { 1 };
    let mut k = parity_min;
    if opts.seed_with_nu {
        let nu = nu(t) as usize;
        while k < nu {
            k += 2;
        }
    }
    let (u_minus, _) = u_minus(t);
    if k > u_minus {
        return Err(Error::Inconsistent(format!(
            "sweep starts at {k} but u_minus = {u_minus}"
        )));
    }
    let mut exhausted = Vec::new();
    while k <= u_minus && level_bits(n, k) <= opts.budget_bits as usize {
        if let Some(ext) = first_extension(t, k) {
            return Ok(UPlusResult {
                lower: k,
                upper: k,
                exact: true,
                exhausted_levels: exhausted,
                u_minus: Some(u_minus),
                certificate: ExtensionCertificate::from_extension(n, ext),
            });
        }
        if k == u_minus {
            return Err(Error::Inconsistent(format!(
                "no extension by u_minus = {u_minus} vertices found"
            )));
        }
        exhausted.push(k);
        k += 2;
    }
    let embed = embed_via_double(t)?;
    let certificate = ExtensionCertificate::from_extension(n, embed.tournament);
    if certificate.added != u_minus {
        return Err(Error::Inconsistent("doubling embedding has the wrong size".into()));
    }
    Ok(UPlusResult {
        lower: k,
        upper: u_minus,
        exact: k == u_minus,
        exhausted_levels: exhausted,
        u_minus: Some(u_minus),
        certificate,
    })
}

/// A unimodular tournament containing `T` on its first `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbedResult {
    pub tournament: Tournament,
    /// Copy-side vertices of the doubling kept besides `T`, as labels `0..n`
    /// of the copy.
    pub copies_kept: VertexSet,
}

/// Embeds `T` with exactly `u_minus(T)` extra vertices: if removing `I` from
/// the copy side of the doubling leaves a unimodular tournament, then the
/// complementary principal minor, on `T` plus the copies of `I`, is 1 too.
pub fn embed_via_double(t: &Tournament) -> Result<EmbedResult> {
    let n = t.order();
    if is_unimodular(t) {
        return Ok(EmbedResult {
            tournament: t.clone(),
            copies_kept: VertexSet::empty(),
        });
    }
    let hat = t.hat();
    let copy = hat.induced(&VertexSet::range(n, 2 * n))?;
    let (_, cert) = u_minus(&copy);
    let keep = VertexSet::new((0..n).chain(cert.removed.iter().map(|i| n + i)))?;
    let tournament = hat.induced(&keep)?;
    if !is_unimodular(&tournament) {
        return Err(Error::Inconsistent(
            "complementary minor of the doubling is not 1".into(),
        ));
    }
    Ok(EmbedResult {
        tournament,
        copies_kept: cert.removed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example_9, transitive};

    fn diamond() -> Tournament {
        let mut t = Tournament::new(4).unwrap();
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)] {
            t.set_arc(a, b);
        }
        t
    }

    #[test]
    fn unimodular_needs_nothing() {
        let t = transitive(4).unwrap();
        let r = u_plus(&t, UPlusOptions::default()).unwrap();
        assert_eq!(r.value(), Some(0));
        assert_eq!(r.certificate.added, 0);
        assert!(r.certificate.verify(&t));
        assert_eq!(embed_via_double(&t).unwrap().tournament, t);
    }

    #[test]
    fn example_9_needs_one() {
        let t = example_9();
        let r = u_plus(&t, UPlusOptions::default()).unwrap();
        assert_eq!(r.value(), Some(1));
        assert!(r.certificate.verify(&t));
        assert_eq!(r.u_minus, Some(3));
    }

    #[test]
    fn diamond_needs_two() {
        let d = diamond();
        for seed_with_nu in [true, false] {
            let r = u_plus(
                &d,
                UPlusOptions {
                    budget_bits: 34,
                    seed_with_nu,
                },
            )
            .unwrap();
            assert_eq!(r.value(), Some(2));
            assert!(r.certificate.verify(&d));
            assert_eq!(r.certificate.new_vs_old.len(), 8);
            assert_eq!(r.certificate.new_vs_new.len(), 1);
        }
    }

    #[test]
    fn tiny_budget_gives_bracket() {
        let t = example_9();
        let r = u_plus(
            &t,
            UPlusOptions {
                budget_bits: 4,
                seed_with_nu: true,
            },
        )
        .unwrap();
        assert!(!r.exact);
        assert_eq!((r.lower, r.upper), (1, 3));
        assert!(r.certificate.verify(&t));
        assert_eq!(r.certificate.added, 3);
    }

    #[test]
    fn doubling_embeddings() {
        let d = diamond();
        let e = embed_via_double(&d).unwrap();
        assert_eq!(e.tournament.order(), 6);
        assert!(is_unimodular(&e.tournament));
        assert_eq!(e.tournament.induced(&VertexSet::range(0, 4)).unwrap(), d);

        let t9 = example_9();
        let e9 = embed_via_double(&t9).unwrap();
        assert_eq!(e9.tournament.order(), 12);
        assert!(is_unimodular(&e9.tournament));
    }

    #[test]
    fn tampered_certificate_rejected() {
        let d = diamond();
        let mut r = u_plus(&d, UPlusOptions::default()).unwrap();
        r.certificate.new_vs_new = "x".into();
        assert!(!r.certificate.verify(&d));
    }
}
