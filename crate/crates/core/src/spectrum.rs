//! Counting pairs whose distances fall in a union of windows, optimal
//! placement of `k` windows, and Turán numbers.

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::geometry::{distance_multiset, PointSet};
use crate::verification::md_table;
use crate::{binomial, REL_TOL};

/// Shape shared by every window of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WindowShape {
    /// `[t, t + length]`
    Additive { length: f64 },
    /// `[t, t (1 + eps)]`
    Multiplicative { eps: f64 },
}

impl WindowShape {
    pub fn validate(&self) -> Result<()> {
        let w = self.width();
        if !(w.is_finite() && w > 0.0) {
            return input(format!("window width must be positive and finite, got {w}"));
        }
        Ok(())
    }

    /// Right end of the window anchored at `t`.
    pub fn upper(&self, t: f64) -> f64 {
        match *self {
            WindowShape::Additive { length } => t + length,
            WindowShape::Multiplicative { eps } => t * (1.0 + eps),
        }
    }

    /// Smallest anchor whose window still reaches `v`.
    fn lowest_anchor_reaching(&self, v: f64) -> f64 {
        match *self {
            WindowShape::Additive { length } => v - length,
            WindowShape::Multiplicative { eps } => v / (1.0 + eps),
        }
    }

    pub fn width(&self) -> f64 {
        match *self {
            WindowShape::Additive { length } => length,
            WindowShape::Multiplicative { eps } => eps,
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            WindowShape::Additive { .. } => "additive",
            WindowShape::Multiplicative { .. } => "multiplicative",
        }
    }
}

/// `k` closed windows of a common shape with strictly increasing anchors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalFamily {
    pub shape: WindowShape,
    pub anchors: Vec<f64>,
}

impl IntervalFamily {
    pub fn new(shape: WindowShape, anchors: Vec<f64>) -> Result<Self> {
        shape.validate()?;
        if anchors.is_empty() {
            return input("interval family needs at least one anchor");
        }
        if anchors.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return input("anchors must be positive and finite");
        }
        if anchors.windows(2).any(|w| w[0] >= w[1]) {
            return input("anchors must be strictly increasing");
        }
        Ok(Self { shape, anchors })
    }

    pub fn additive(length: f64, anchors: Vec<f64>) -> Result<Self> {
        Self::new(WindowShape::Additive { length }, anchors)
    }

    pub fn multiplicative(eps: f64, anchors: Vec<f64>) -> Result<Self> {
        Self::new(WindowShape::Multiplicative { eps }, anchors)
    }

    pub fn k(&self) -> usize {
        self.anchors.len()
    }

    /// Bounds of window `p`, without tolerance.
    pub fn window(&self, p: usize) -> (f64, f64) {
        let t = self.anchors[p];
        (t, self.shape.upper(t))
    }

    pub fn window_contains(&self, p: usize, x: f64) -> bool {
        let (lo, hi) = self.window(p);
        x >= lo - REL_TOL * lo.abs() && x <= hi + REL_TOL * hi.abs()
    }

    /// Closed-union membership with relative boundary tolerance.
    pub fn contains(&self, x: f64) -> bool {
        (0..self.k()).any(|p| self.window_contains(p, x))
    }
}

/// Number of values lying in the union of the family's windows.
pub fn count_values_in_family(values: &[f64], family: &IntervalFamily) -> u64 {
    values.iter().filter(|&&x| family.contains(x)).count() as u64
}

/// Number of pairs `i < j` whose distance lies in the union of the windows;
/// a pair is counted once even if two windows overlap on it.
pub fn count_pairs_in_family(points: &PointSet, family: &IntervalFamily) -> u64 {
    if points.len() < 2 {
        return 0;
    }
    let ms = distance_multiset(points).expect("at least two points");
    count_values_in_family(&ms.values, family)
}

/// Optimal placement of windows found by [`best_windows_sorted`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowPlacement {
    pub count: u64,
    pub family: IntervalFamily,
}

/// Best placement of `k` additive windows of length `length` over the
/// pairwise distances of `points`.
pub fn best_k_windows(points: &PointSet, k: usize, length: f64) -> Result<WindowPlacement> {
    best_k_windows_shaped(points, k, WindowShape::Additive { length })
}

pub fn best_k_windows_shaped(
    points: &PointSet,
    k: usize,
    shape: WindowShape,
) -> Result<WindowPlacement> {
    let ms = distance_multiset(points)?;
    best_windows_sorted(&ms.values, k, shape)
}

/// Maximum number of values (sorted ascending) covered by `k` windows.
///
/// Any window can slide left until its right end meets the largest value
/// it covers, so it suffices to consider windows whose right end sits on a
/// value. With `lo(i)` the first index still reachable from value `i`,
///
/// `f(j, i) = max(f(j, i-1), f(j-1, lo(i)-1) + i - lo(i) + 1)`.
///
/// The reported family anchors each chosen window at its leftmost covered
/// value. Ties prefer skipping, which keeps anchors as small as possible.
pub fn best_windows_sorted(
    values: &[f64],
    k: usize,
    shape: WindowShape,
) -> Result<WindowPlacement> {
    shape.validate()?;
    if k == 0 {
        return input("k must be at least 1");
    }
    if values.is_empty() {
        return input("no distances to cover");
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return input("values must be sorted ascending");
    }
    let m = values.len();

    // lo[i] for 0-based i: smallest index whose value is >= the lowest
    // anchor that still reaches values[i]
    let mut lo = vec![0usize; m];
    let mut start = 0;
    for (i, &v) in values.iter().enumerate() {
        let reach = shape.lowest_anchor_reaching(v);
        while values[start] < reach {
            start += 1;
        }
        lo[i] = start;
    }

    // table[j][i]: best cover of the first i values with j windows
    let mut table = vec![vec![0u64; m + 1]; k + 1];
    for j in 1..=k {
        for i in 1..=m {
            let skip = table[j][i - 1];
            let l = lo[i - 1];
            let take = table[j - 1][l] + (i - l) as u64;
            table[j][i] = skip.max(take);
        }
    }

    let mut anchors = Vec::with_capacity(k);
    let (mut j, mut i) = (k, m);
    while j > 0 && i > 0 {
        if table[j][i] == table[j][i - 1] {
            i -= 1;
            continue;
        }
        let l = lo[i - 1];
        anchors.push(values[l]);
        j -= 1;
        i = l;
    }
    anchors.reverse();
    anchors.dedup();

    Ok(WindowPlacement {
        count: table[k][m],
        family: IntervalFamily::new(shape, anchors)?,
    })
}

/// Maximum edge count of an `n`-vertex graph with no complete subgraph on
/// `s` vertices: the balanced complete `(s-1)`-partite graph.
pub fn turan_number(n: u64, s: u64) -> Result<u64> {
    if s < 2 {
        return input(format!("Turán number needs s >= 2, got {s}"));
    }
    let parts = s - 1;
    let (q, r) = (n / parts, n % parts);
    Ok(binomial(n, 2) - r * binomial(q + 1, 2) - (parts - r) * binomial(q, 2))
}

/// Number of pairs split between different classes of a partition with the
/// given class sizes.
pub fn cross_class_pairs(class_sizes: &[usize]) -> u64 {
    let n: u64 = class_sizes.iter().map(|&s| s as u64).sum();
    binomial(n, 2)
        - class_sizes
            .iter()
            .map(|&s| binomial(s as u64, 2))
            .sum::<u64>()
}

/// Which Turán-type bound a spectrum report compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `T(n, m_{d-1} + 1)`, two nearly equal distances.
    TuranM,
    /// `T(n, (d+1)^k + 1)`, `k` multiplicative windows.
    TuranDk,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::TuranM => "turan_m",
            BoundKind::TuranDk => "turan_dk",
        }
    }

    /// Forbidden clique size `s` of the Turán bound for dimension `d`.
    pub fn clique_size(&self, d: usize, k: usize) -> Result<u64> {
        match self {
            BoundKind::TuranM => {
                if d < 2 {
                    return input("turan_m bound needs dimension >= 2");
                }
                match md_table(d - 1)?.value {
                    Some(m) => Ok(u64::from(m) + 1),
                    None => Err(Error::Unsupported(format!(
                        "m_{} is not tabulated (known for 1..=8)",
                        d - 1
                    ))),
                }
            }
            BoundKind::TuranDk => {
                let base = d as u64 + 1;
                base.checked_pow(k as u32)
                    .and_then(|v| v.checked_add(1))
                    .ok_or_else(|| {
                        Error::Unsupported(format!("(d+1)^k overflows for d={d}, k={k}"))
                    })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub anchor: f64,
    pub lower: f64,
    pub upper: f64,
    pub count: u64,
}

/// Coverage of the best `k`-window placement compared with a Turán bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    pub mode: String,
    pub length_or_eps: f64,
    pub count: u64,
    pub anchors: Vec<f64>,
    pub turan_reference: u64,
    pub bound_name: String,
    pub ratio_count_over_bound: Option<f64>,
    pub histogram: Vec<HistogramBin>,
}

impl SpectrumReport {
    pub fn family(&self) -> Result<IntervalFamily> {
        let shape = match self.mode.as_str() {
            "additive" => WindowShape::Additive {
                length: self.length_or_eps,
            },
            _ => WindowShape::Multiplicative {
                eps: self.length_or_eps,
            },
        };
        IntervalFamily::new(shape, self.anchors.clone())
    }
}

pub fn spectrum_report(
    points: &PointSet,
    k: usize,
    shape: WindowShape,
    bound: BoundKind,
) -> Result<SpectrumReport> {
    let s = bound.clique_size(points.dim(), k)?;
    let ms = distance_multiset(points)?;
    let placement = best_windows_sorted(&ms.values, k, shape)?;
    let n = points.len();
    let turan_reference = turan_number(n as u64, s)?;
    let family = &placement.family;
    let histogram = (0..family.k())
        .map(|p| {
            let (lower, upper) = family.window(p);
            HistogramBin {
                anchor: lower,
                lower,
                upper,
                count: ms
                    .values
                    .iter()
                    .filter(|&&x| family.window_contains(p, x))
                    .count() as u64,
            }
        })
        .collect();
    Ok(SpectrumReport {
        n,
        dim: points.dim(),
        k,
        mode: shape.mode_name().to_string(),
        length_or_eps: shape.width(),
        count: placement.count,
        anchors: family.anchors.clone(),
        turan_reference,
        bound_name: bound.name().to_string(),
        ratio_count_over_bound: (turan_reference > 0)
            .then(|| placement.count as f64 / turan_reference as f64),
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointSet {
        PointSet::new(1, xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn counts_pairs_in_union() {
        let p = line(&[0.0, 1.0, 2.0]);
        let one = IntervalFamily::additive(0.5, vec![1.0]).unwrap();
        assert_eq!(count_pairs_in_family(&p, &one), 2);
        let two = IntervalFamily::additive(0.5, vec![1.0, 2.0]).unwrap();
        assert_eq!(count_pairs_in_family(&p, &two), 3);
        // overlapping windows do not double count
        let overlap = IntervalFamily::additive(1.5, vec![0.5, 1.0]).unwrap();
        assert_eq!(count_pairs_in_family(&p, &overlap), 3);
    }

    #[test]
    fn family_validation() {
        assert!(IntervalFamily::additive(1.0, vec![]).is_err());
        assert!(IntervalFamily::additive(0.0, vec![1.0]).is_err());
        assert!(IntervalFamily::additive(1.0, vec![2.0, 1.0]).is_err());
        assert!(IntervalFamily::multiplicative(0.1, vec![1.0, 1.0]).is_err());
        assert!(IntervalFamily::multiplicative(0.1, vec![-1.0]).is_err());
    }

    #[test]
    fn boundary_membership_is_tolerant() {
        let f = IntervalFamily::additive(1.0, vec![10.0]).unwrap();
        assert!(f.contains(10.0 * (1.0 - 1e-12)));
        assert!(f.contains(11.0 * (1.0 + 1e-12)));
        assert!(!f.contains(11.001));
    }

    #[test]
    fn dp_example() {
        // exhaustive placement gives 5: windows [1,2] and [10,11]
        let vals = [1.0, 1.0, 2.0, 10.0, 10.5];
        let best = best_windows_sorted(&vals, 2, WindowShape::Additive { length: 1.0 }).unwrap();
        assert_eq!(best.count, 5);
        assert_eq!(best.family.anchors, vec![1.0, 10.0]);
        let one = best_windows_sorted(&vals, 1, WindowShape::Additive { length: 1.0 }).unwrap();
        assert_eq!(one.count, 3);
        assert_eq!(one.family.anchors, vec![1.0]);
    }

    #[test]
    fn dp_prefers_smaller_anchor_on_ties() {
        let vals = [1.0, 5.0];
        let best = best_windows_sorted(&vals, 1, WindowShape::Additive { length: 1.0 }).unwrap();
        assert_eq!(best.count, 1);
        assert_eq!(best.family.anchors, vec![1.0]);
    }

    #[test]
    fn dp_with_more_windows_than_values() {
        let vals = [1.0, 4.0];
        let best = best_windows_sorted(&vals, 5, WindowShape::Additive { length: 0.5 }).unwrap();
        assert_eq!(best.count, 2);
        assert_eq!(best.family.anchors, vec![1.0, 4.0]);
    }

    #[test]
    fn one_wide_window_covers_everything() {
        let p = line(&[0.0, 1.0, 3.0, 7.0, 8.5]);
        let best = best_k_windows(&p, 1, 8.5 - 1.0).unwrap();
        assert_eq!(best.count, 10);
    }

    #[test]
    fn multiplicative_dp() {
        let vals = [1.0, 1.05, 1.2, 2.0, 2.1];
        let best = best_windows_sorted(&vals, 1, WindowShape::Multiplicative { eps: 0.1 }).unwrap();
        assert_eq!(best.count, 2);
        let best = best_windows_sorted(&vals, 2, WindowShape::Multiplicative { eps: 0.1 }).unwrap();
        assert_eq!(best.count, 4);
        assert_eq!(best.family.anchors, vec![1.0, 2.0]);
    }

    #[test]
    fn dp_rejects_bad_input() {
        let add = WindowShape::Additive { length: 1.0 };
        assert!(best_windows_sorted(&[1.0], 0, add).is_err());
        assert!(best_windows_sorted(&[], 1, add).is_err());
        assert!(best_windows_sorted(&[2.0, 1.0], 1, add).is_err());
    }

    #[test]
    fn turan_values() {
        assert_eq!(turan_number(6, 3).unwrap(), 9);
        assert_eq!(turan_number(30, 4).unwrap(), 300);
        assert_eq!(turan_number(5, 7).unwrap(), 10);
        assert_eq!(turan_number(0, 3).unwrap(), 0);
        assert_eq!(turan_number(7, 2).unwrap(), 0);
        assert!(turan_number(4, 1).is_err());
    }

    #[test]
    fn turan_recurrence_and_saturation() {
        for s in 2..9u64 {
            for n in 1..60u64 {
                let step = (n - 1) - (n - 1) / (s - 1);
                assert_eq!(
                    turan_number(n, s).unwrap(),
                    turan_number(n - 1, s).unwrap() + step,
                    "n={n} s={s}"
                );
                if s > n {
                    assert_eq!(turan_number(n, s).unwrap(), n * (n - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn turan_matches_exhaustive_graph_search() {
        // largest K_s-free edge set on n <= 6 vertices, by trying every graph
        fn has_clique(adj: &[u32], s: usize, n: usize) -> bool {
            (0u32..1 << n).any(|set| {
                set.count_ones() as usize == s
                    && (0..n)
                        .filter(|v| set >> v & 1 == 1)
                        .all(|v| (set & !(1 << v)) & !adj[v] == 0)
            })
        }
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            for s in 2..=n + 1 {
                let mut best = 0;
                for mask in 0u32..1 << pairs.len() {
                    let edges = mask.count_ones();
                    if edges <= best {
                        continue;
                    }
                    let mut adj = vec![0u32; n];
                    for (b, &(i, j)) in pairs.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            adj[i] |= 1 << j;
                            adj[j] |= 1 << i;
                        }
                    }
                    if !has_clique(&adj, s, n) {
                        best = edges;
                    }
                }
                assert_eq!(turan_number(n as u64, s as u64).unwrap(), u64::from(best));
            }
        }
    }

    #[test]
    fn cross_class_pair_counts() {
        assert_eq!(cross_class_pairs(&[3, 3, 3]), 27);
        assert_eq!(cross_class_pairs(&[4]), 0);
        assert_eq!(cross_class_pairs(&[2, 1, 1, 0]), 5);
    }

    #[test]
    fn report_needs_tabulated_md() {
        let p = PointSet::new(
            10,
            vec![vec![0.0; 10], {
                let mut v = vec![0.0; 10];
                v[0] = 1.0;
                v
            }],
        )
        .unwrap();
        let err = spectrum_report(
            &p,
            2,
            WindowShape::Additive { length: 1.0 },
            BoundKind::TuranM,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }
}
