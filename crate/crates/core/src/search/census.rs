use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{random_with, rng_from_seed, Seed};
use crate::decomp::is_in_h;
use crate::error::{Error, Result};
use crate::linalg::bigint_string;
use crate::spectra::{char_poly, determinant, diamond_count_direct, is_invertible};
use crate::tournament::Tournament;

/// Largest order enumerated exhaustively without `allow_large`.
pub const EXHAUSTIVE_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub exhaustive: bool,
    /// Number of random tournaments in sampled mode.
    pub samples: u64,
    pub seed: Seed,
    /// Permit exhaustive enumeration beyond [`EXHAUSTIVE_LIMIT`].
    pub allow_large: bool,
    /// Run the class-H membership test on every tournament.
    pub check_h: bool,
    /// Also roll counts up by isomorphism class (brute-force canonical form).
    pub classes: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            exhaustive: true,
            samples: 1000,
            seed: 42,
            allow_large: false,
            check_h: true,
            classes: false,
        }
    }
}

/// Counts over one order `n`. In sampled mode every count refers to the
/// `examined` sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<Seed>,
    /// `2^(n(n-1)/2)`.
    #[serde(with = "bigint_string")]
    pub labeled: BigInt,
    pub examined: u64,
    pub unimodular: u64,
    pub invertible: u64,
    pub palindromic: u64,
    pub in_h: u64,
    /// Unimodular tournaments without a class-H derivation.
    pub unimodular_not_in_h: u64,
    pub diamonds_total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassRow>>,
}

/// One isomorphism class, keyed by its lexicographically least labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub canonical: String,
    pub labeled: u64,
    #[serde(with = "bigint_string")]
    pub determinant: BigInt,
    pub unimodular: bool,
    pub in_h: Option<bool>,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    examined: u64,
    unimodular: u64,
    invertible: u64,
    palindromic: u64,
    in_h: u64,
    unimodular_not_in_h: u64,
    diamonds: u64,
    bad_derivations: u64,
}

impl Counts {
    fn merge(mut self, o: Counts) -> Counts {
        self.examined += o.examined;
        self.unimodular += o.unimodular;
        self.invertible += o.invertible;
        self.palindromic += o.palindromic;
        self.in_h += o.in_h;
        self.unimodular_not_in_h += o.unimodular_not_in_h;
        self.diamonds += o.diamonds;
        self.bad_derivations += o.bad_derivations;
        self
    }
}

fn examine(t: &Tournament, check_h: bool) -> Result<Counts> {
    let d = determinant(t);
    let unimodular = t.order() % 2 == 0 && d == BigInt::from(1);
    let mut c = Counts {
        examined: 1,
        unimodular: unimodular as u64,
        diamonds: diamond_count_direct(t),
        palindromic: char_poly(t).is_palindromic() as u64,
        ..Counts::default()
    };
    if unimodular {
        c.invertible = is_invertible(t)? as u64;
    }
    if check_h {
        match is_in_h(t)? {
            Some(deriv) => {
                if deriv.verify(t) && unimodular {
                    c.in_h = 1;
                } else {
                    c.bad_derivations = 1;
                }
            }
            None => c.unimodular_not_in_h = unimodular as u64,
        }
    }
    Ok(c)
}

/// Smallest pair-bit code over all relabelings.
fn canonical_code(t: &Tournament) -> u64 {
    let n = t.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let r = t.relabel(&perm).expect("valid permutation");
        best = best.min(r.code());
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exact counts over all labeled tournaments of order `n` (exhaustive mode),
/// or counts over a seeded random sample.
pub fn census(n: usize, opts: CensusOptions) -> Result<CensusRow> {
    if n == 0 {
        return Err(Error::InvalidParameter("census order must be positive".into()));
    }
    let pairs = n * (n - 1) / 2;
    let labeled = BigInt::from(1) << pairs;
    let tournaments: Vec<Tournament> = if opts.exhaustive {
        if n > EXHAUSTIVE_LIMIT && !opts.allow_large {
            return Err(Error::InvalidParameter(format!(
                "exhaustive census of order {n} enumerates 2^{pairs} tournaments; \
                 limit is {EXHAUSTIVE_LIMIT} without the override"
            )));
        }
        Tournament::all_labeled(n)?.collect()
    } else {
        let mut rng = rng_from_seed(opts.seed);
        (0..opts.samples)
            .map(|_| {
                let s: u64 = rng.gen();
                random_with(n, &mut rng_from_seed(s))
            })
            .collect::<Result<_>>()?
    };

    let counts = tournaments
        .par_iter()
        .map(|t| examine(t, opts.check_h))
        .try_reduce(Counts::default, |a, b| Ok(a.merge(b)))?;
    if counts.bad_derivations > 0 {
        return Err(Error::Inconsistent(format!(
            "{} class-H derivations failed replay",
            counts.bad_derivations
        )));
    }

    let classes = if opts.classes {
        let keyed: Vec<(u64, &Tournament)> =
            tournaments.par_iter().map(|t| (canonical_code(t), t)).collect();
        let mut groups: BTreeMap<u64, u64> = BTreeMap::new();
        for (code, _) in &keyed {
            *groups.entry(*code).or_default() += 1;
        }
        Some(
            groups
                .into_iter()
                .map(|(code, count)| {
                    let rep = Tournament::from_code(n, code);
                    let det = determinant(&rep);
                    let in_h = if opts.check_h {
                        Some(is_in_h(&rep)?.is_some())
                    } else {
                        None
                    };
                    Ok(ClassRow {
                        canonical: rep.arc_string(),
                        labeled: count,
                        unimodular: n % 2 == 0 && det == BigInt::from(1),
                        determinant: det,
                        in_h,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };

    Ok(CensusRow {
        n,
        mode: if opts.exhaustive { "exhaustive" } else { "sampled" },
        seed: (!opts.exhaustive).then_some(opts.seed),
        labeled,
        examined: counts.examined,
        unimodular: counts.unimodular,
        invertible: counts.invertible,
        palindromic: counts.palindromic,
        in_h: counts.in_h,
        unimodular_not_in_h: counts.unimodular_not_in_h,
        diamonds_total: counts.diamonds,
        classes,
    })
}

/// File name determined by the census parameters, so re-runs overwrite the
/// same file with the same content.
pub fn census_file_name(n: usize, opts: &CensusOptions) -> String {
    let mut name = if opts.exhaustive {
        format!("census-n{n}-exhaustive")
    } else {
        format!("census-n{n}-sampled-s{}-m{}", opts.seed, opts.samples)
    };
    if !opts.check_h {
        name.push_str("-noh");
    }
    if opts.classes {
        name.push_str("-classes");
    }
    name.push_str(".jsonl");
    name
}

/// Writes the row as JSON lines: the summary first (without classes), then
/// one line per isomorphism class.
pub fn write_census(dir: &Path, row: &CensusRow, opts: &CensusOptions) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(census_file_name(row.n, opts));
    let mut summary = row.clone();
    let classes = summary.classes.take();
    let mut out = Vec::new();
    serde_json::to_writer(&mut out, &summary)?;
    out.push(b'\n');
    for class in classes.iter().flatten() {
        serde_json::to_writer(&mut out, class)?;
        out.push(b'\n');
    }
    let mut f = fs::File::create(&path)?;
    f.write_all(&out)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two() {
        let row = census(2, CensusOptions::default()).unwrap();
        assert_eq!(row.labeled, BigInt::from(2));
        assert_eq!(row.unimodular, 2);
        assert_eq!(row.in_h, 2);
    }

    #[test]
    fn order_four() {
        let row = census(4, CensusOptions::default()).unwrap();
        assert_eq!(row.examined, 64);
        assert_eq!(row.unimodular, 48);
        assert_eq!(row.diamonds_total, 16);
        assert_eq!(row.unimodular_not_in_h, 0);
        assert_eq!(row.in_h, 48);
    }

    #[test]
    fn isomorphism_classes() {
        // 4 classes of 4-tournaments: transitive, two diamonds, one with a 4-cycle
        let opts = CensusOptions {
            classes: true,
            ..CensusOptions::default()
        };
        let row = census(4, opts).unwrap();
        let classes = row.classes.unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(classes.iter().map(|c| c.labeled).sum::<u64>(), 64);
        assert_eq!(classes.iter().filter(|c| !c.unimodular).count(), 2);
        // 2, 4 and 12 classes at orders 3, 5, 6
        for (n, expected) in [(3, 2), (5, 12)] {
            let r = census(n, CensusOptions { classes: true, check_h: false, ..opts }).unwrap();
            assert_eq!(r.classes.unwrap().len(), expected, "order {n}");
        }
    }

    #[test]
    fn exhaustive_limit() {
        assert!(census(7, CensusOptions::default()).is_err());
    }

    #[test]
    fn sampled_mode() {
        let opts = CensusOptions {
            exhaustive: false,
            samples: 50,
            seed: 3,
            ..CensusOptions::default()
        };
        let a = census(8, opts).unwrap();
        assert_eq!(a.examined, 50);
        assert_eq!(a.mode, "sampled");
        assert_eq!(a, census(8, opts).unwrap());
        assert_eq!(a.unimodular_not_in_h + a.in_h, a.unimodular);
    }

    #[test]
    fn files_are_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let opts = CensusOptions {
            classes: true,
            ..CensusOptions::default()
        };
        let row = census(4, opts).unwrap();
        let p1 = write_census(dir.path(), &row, &opts).unwrap();
        let first = fs::read_to_string(&p1).unwrap();
        let p2 = write_census(dir.path(), &census(4, opts).unwrap(), &opts).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(first, fs::read_to_string(&p2).unwrap());
        assert_eq!(first.lines().count(), 5);
        let summary: serde_json::Value = serde_json::from_str(first.lines().next().unwrap()).unwrap();
        assert_eq!(summary["labeled"], "64");
        assert!(summary.get("classes").is_none());
    }
}
