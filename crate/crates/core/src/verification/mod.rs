//! Checkers for k-distance and weakly `(eps, k)`-distance sets, the Schütte
//! ratio bound, the table of maximal two-distance set sizes, and the
//! recursive decomposition certificate.

mod decomposition;

use serde::{Deserialize, Serialize};

pub use decomposition::{
    certify_decomposition, DecompositionNode, DecompositionTree, NodeKind, DEFAULT_SPLIT_RATIO,
};

use crate::error::{input, Error, Result};
use crate::geometry::{distance_multiset, max_min_ratio, PointSet};
use crate::{binomial, REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceCluster {
    pub min: f64,
    pub max: f64,
    pub multiplicity: usize,
}

impl DistanceCluster {
    pub fn relative_width(&self) -> f64 {
        self.max / self.min - 1.0
    }
}

/// Ordered, disjoint clusters covering a distance multiset.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DistanceClusters {
    pub clusters: Vec<DistanceCluster>,
}

impl DistanceClusters {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn total(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }
}

/// Greedy left-to-right clustering of sorted values: a new cluster opens
/// when a value exceeds `cluster_min * (1 + rel_tol)`.
pub fn cluster_sorted(values: &[f64], rel_tol: f64) -> DistanceClusters {
    let mut clusters: Vec<DistanceCluster> = Vec::new();
    for &v in values {
        match clusters.last_mut() {
            Some(c) if v <= c.min * (1.0 + rel_tol) => {
                c.max = v;
                c.multiplicity += 1;
            }
            _ => clusters.push(DistanceCluster {
                min: v,
                max: v,
                multiplicity: 1,
            }),
        }
    }
    DistanceClusters { clusters }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KDistanceVerdict {
    pub ok: bool,
    pub clusters: DistanceClusters,
}

/// Whether the distances of `points` take at most `k` values, up to
/// relative width `rel_tol` per value.
pub fn verify_k_distance_set(
    points: &PointSet,
    k: usize,
    rel_tol: f64,
) -> Result<KDistanceVerdict> {
    if rel_tol.is_nan() || rel_tol < 0.0 {
        return input("rel_tol must be non-negative");
    }
    let ms = distance_multiset(points)?;
    let clusters = cluster_sorted(&ms.values, rel_tol);
    Ok(KDistanceVerdict {
        ok: clusters.len() <= k,
        clusters,
    })
}

/// Minimum multiplicative cover of a distance multiset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakCover {
    pub eps: f64,
    pub window_count: usize,
    pub anchors: Vec<f64>,
}

/// Whether `x` lies in `[t, t (1 + eps)]`, with the crate's boundary slack.
pub fn in_multiplicative_window(x: f64, t: f64, eps: f64) -> bool {
    x >= t * (1.0 - REL_TOL) && x <= t * (1.0 + eps) * (1.0 + REL_TOL)
}

/// Anchors of the greedy cover of sorted values by windows
/// `[t, t (1 + eps)]`, each anchored at the smallest uncovered value.
/// Greedy is optimal for covering points on a line with equal windows
/// (here equal on a log scale).
pub fn greedy_multiplicative_cover(values: &[f64], eps: f64) -> Vec<f64> {
    let mut anchors: Vec<f64> = Vec::new();
    for &v in values {
        match anchors.last() {
            Some(&t) if in_multiplicative_window(v, t, eps) => {}
            _ => anchors.push(v),
        }
    }
    anchors
}

/// Least number of windows `[t, t (1 + eps)]` covering every distance.
pub fn verify_weak_eps_k(points: &PointSet, eps: f64) -> Result<WeakCover> {
    if !(eps.is_finite() && eps > 0.0) {
        return input(format!("eps must be positive, got {eps}"));
    }
    let ms = distance_multiset(points)?;
    if ms.min() == 0.0 {
        let (i, j) = ms.pairs[0];
        return Err(Error::DuplicatePoints(i, j));
    }
    let anchors = greedy_multiplicative_cover(&ms.values, eps);
    Ok(WeakCover {
        eps,
        window_count: anchors.len(),
        anchors,
    })
}

/// Sharp lower bound on max/min distance ratio for `d + 2` points in `R^d`.
pub fn schuette_bound(d: usize) -> Result<f64> {
    if d == 0 {
        return input("dimension must be positive");
    }
    let d = d as f64;
    let sq = if (d as usize).is_multiple_of(2) {
        1.0 + 2.0 / d
    } else {
        1.0 + 2.0 * (d + 2.0) / (d * (d + 2.0) - 1.0)
    };
    Ok(sq.sqrt())
}

/// Checks `max/min >= schuette_bound(dim) - 1e-9` for a set of `dim + 2`
/// points.
pub fn check_schuette(points: &PointSet) -> Result<bool> {
    let d = points.dim();
    if points.len() != d + 2 {
        return input(format!(
            "Schütte check needs exactly {} points in R^{d}, got {}",
            d + 2,
            points.len()
        ));
    }
    Ok(max_min_ratio(points)? >= schuette_bound(d)? - 1e-9)
}

/// How a tabulated maximal two-distance set size is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Elementary argument.
    Elementary,
    /// Classical hand proof.
    Classical,
    /// Established by exhaustive computer search.
    ComputerSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdEntry {
    pub d: usize,
    pub value: Option<u32>,
    pub lower: u64,
    pub upper: u64,
    pub provenance: Option<Provenance>,
}

const MD_VALUES: [(u32, Provenance); 8] = [
    (3, Provenance::Elementary),
    (5, Provenance::Classical),
    (6, Provenance::Classical),
    (10, Provenance::ComputerSearch),
    (16, Provenance::ComputerSearch),
    (27, Provenance::ComputerSearch),
    (29, Provenance::ComputerSearch),
    (45, Provenance::ComputerSearch),
];

/// Maximal size `m_d` of a two-distance set in `R^d`, with the general
/// bounds `C(d+1, 2) <= m_d <= C(d+2, 2)`. Values are known for `d <= 8`.
pub fn md_table(d: usize) -> Result<MdEntry> {
    if d == 0 {
        return input("dimension must be positive");
    }
    let lower = binomial(d as u64 + 1, 2);
    let upper = binomial(d as u64 + 2, 2);
    let known = MD_VALUES.get(d - 1).copied();
    if let Some((v, _)) = known {
        assert!(lower <= u64::from(v) && u64::from(v) <= upper);
    }
    Ok(MdEntry {
        d,
        value: known.map(|(v, _)| v),
        lower,
        upper,
        provenance: known.map(|(_, p)| p),
    })
}
