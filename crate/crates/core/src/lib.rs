//! Separated point sets whose pairwise distances crowd into a few short
//! windows.
//!
//! The crate is organised around four layers:
//!
//! * [`geometry`] holds [`PointSet`], the sorted distance multiset and the
//!   isometric hyperplane re-embedding used by the simplex-type generators.
//! * [`constructions`] generates the extremal configurations: stacked
//!   column sets, few-distance product sets and the `m(d, k)` maximisation,
//!   simplex-sum sets and their clustered Turán blow-ups.
//! * [`spectrum`] counts pairs falling in unions of windows, finds the best
//!   placement of `k` windows and evaluates Turán numbers.
//! * [`verification`] checks k-distance and weakly `(eps, k)`-distance
//!   properties, the Schütte ratio bound, and builds the recursive
//!   decomposition certificate bounding `|P| <= (d + 1)^k`.
//!
//! [`oracle`] contains slow brute-force reference implementations used to
//! cross-check the fast paths.

pub mod constructions;
pub mod error;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod spectrum;
pub mod verification;

pub use error::{Error, Result};
pub use geometry::{DistanceMultiset, PointSet};

/// Default relative tolerance for geometric comparisons.
pub const REL_TOL: f64 = 1e-9;

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
