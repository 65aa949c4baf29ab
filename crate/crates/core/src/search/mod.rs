//! Certificate-producing searches for the number of vertices that must be
//! removed from (`u_minus`) or added to (`u_plus`) a tournament to reach a
//! unimodular one, plus the small-order census and the randomized
//! verification suite.
//!
//! Enumeration is split across rayon workers, but every search returns the
//! first hit in a fixed enumeration order, so results never depend on the
//! number of workers.

mod census;
mod extension;
mod removal;
mod verify;

use rayon::ThreadPoolBuilder;

use crate::error::{Error, Result};

pub use census::{census, census_file_name, write_census, CensusOptions, CensusRow, ClassRow};
pub use extension::{
    embed_via_double, u_plus, EmbedResult, ExtensionCertificate, UPlusOptions, UPlusResult,
};
pub use removal::{u_minus, RemovalCertificate};
pub use verify::{verify_suite, ClaimResult, VerifyReport};

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool
/// when `workers` is `None`.
pub fn with_workers<R, F>(workers: Option<usize>, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match workers {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidParameter("worker count must be positive".into())),
        Some(w) => {
            let pool = ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// `floor(log2 n)` for `n >= 1`.
pub fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Upper bound on `u_minus` from the transitive subtournament of order
/// `floor(log2 n) + 1` every `n`-tournament contains.
pub fn removal_upper_bound(n: usize) -> usize {
    n - floor_log2(n)
}

/// Determinant of the principal submatrix of a flat skew matrix on `keep`.
/// The empty matrix has determinant 1.
pub(crate) fn minor_is_one(skew: &[i128], n: usize, keep: &[usize], buf: &mut Vec<i128>) -> bool {
    let m = keep.len();
    if m % 2 == 1 {
        return false;
    }
    buf.clear();
    for &i in keep {
        buf.extend(keep.iter().map(|&j| skew[i * n + j]));
    }
    crate::linalg::bareiss_i128(buf, m) == Some(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_bound() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(8), 3);
        assert_eq!(floor_log2(9), 3);
        assert_eq!(removal_upper_bound(9), 6);
        assert_eq!(removal_upper_bound(1), 1);
    }

    #[test]
    fn worker_pool() {
        assert_eq!(with_workers(Some(2), rayon::current_num_threads).unwrap(), 2);
        assert!(with_workers(Some(0), || ()).is_err());
    }
}
