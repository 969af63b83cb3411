//! Simplices, binomial few-distance sets, arithmetic progressions and the
//! known maximal two-distance sets.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{input, Error, Result};
use crate::geometry::{embed_hyperplane, PointSet};

/// `d + 1` points in `R^d` at mutual distance `edge`.
///
/// Vertex `k` sits above the centroid of vertices `0..k` along axis `k - 1`,
/// so the first vertex is the origin and `d = 1` gives `{0, edge}`.
pub fn regular_simplex(d: usize, edge: f64) -> Result<PointSet> {
    if d == 0 {
        return input("simplex dimension must be positive");
    }
    if !(edge.is_finite() && edge > 0.0) {
        return input(format!("edge length must be positive, got {edge}"));
    }
    let mut verts: Vec<Vec<f64>> = vec![vec![0.0; d]];
    for k in 1..=d {
        let mut centroid = vec![0.0; d];
        for v in &verts {
            centroid.iter_mut().zip(v).for_each(|(c, x)| *c += x);
        }
        centroid.iter_mut().for_each(|c| *c /= k as f64);
        let r2: f64 = centroid.iter().map(|c| c * c).sum();
        centroid[k - 1] = (edge * edge - r2).sqrt();
        verts.push(centroid);
    }
    PointSet::new(d, verts)
}

/// All `p`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..p).rev().find(|&i| idx[i] != i + n - p) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..p {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// The `C(e+1, p)` points of `R^(e+1)` with exactly `p` coordinates equal to
/// `lambda / sqrt(2)`, re-embedded isometrically in `R^e`. Their distances
/// are `lambda * sqrt(r)` for `r = 1..=p`.
pub fn binomial_simplex_set(e: usize, p: usize, lambda: f64) -> Result<PointSet> {
    if e == 0 {
        return input("binomial set needs e >= 1");
    }
    if p == 0 || 2 * p > e + 1 {
        return input(format!("need 1 <= p <= (e+1)/2, got e={e}, p={p}"));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return input(format!("lambda must be positive, got {lambda}"));
    }
    let h = lambda / SQRT_2;
    let mut lifted = PointSet::empty(e + 1)?;
    let mut row = vec![0.0; e + 1];
    for subset in combinations(e + 1, p) {
        row.iter_mut().for_each(|x| *x = 0.0);
        for i in subset {
            row[i] = h;
        }
        lifted.push(&row)?;
    }
    embed_hyperplane(&lifted, &vec![1.0; e + 1])
}

/// `q + 1` points `0, mu, ..., q mu` on the line.
pub fn arithmetic_progression(q: usize, mu: f64) -> Result<PointSet> {
    if !(mu.is_finite() && mu > 0.0) {
        return input(format!("step must be positive, got {mu}"));
    }
    PointSet::new(1, (0..=q).map(|i| vec![i as f64 * mu]).collect())
}

/// Regular pentagon with unit side, centred at the origin.
pub fn regular_pentagon() -> PointSet {
    let radius = 1.0 / (2.0 * (PI / 5.0).sin());
    let pts = (0..5)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / 5.0;
            vec![radius * a.cos(), radius * a.sin()]
        })
        .collect();
    PointSet::new(2, pts).expect("finite coordinates")
}

/// A maximum two-distance set in `R^d` with smallest distance 1, for
/// `1 <= d <= 4`: three collinear points, the pentagon, the octahedron and
/// the 10-point binomial set.
pub fn known_two_distance_set(d: usize) -> Result<PointSet> {
    match d {
        0 => input("dimension must be positive"),
        1 => PointSet::new(1, vec![vec![0.0], vec![1.0], vec![2.0]]),
        2 => Ok(regular_pentagon()),
        3 => binomial_simplex_set(3, 2, 1.0),
        4 => binomial_simplex_set(4, 2, 1.0),
        _ => Err(Error::Unsupported(format!(
            "no explicit maximal two-distance set stored for d = {d}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{distance_multiset, min_separation};
    use crate::verification::{cluster_sorted, verify_k_distance_set};
    use approx::assert_relative_eq;

    fn distinct(points: &PointSet) -> Vec<f64> {
        let ms = distance_multiset(points).unwrap();
        cluster_sorted(&ms.values, 1e-9)
            .clusters
            .iter()
            .map(|c| c.min)
            .collect()
    }

    #[test]
    fn simplices_are_regular() {
        assert_eq!(regular_simplex(1, 1.0).unwrap().coords(), &[0.0, 1.0]);
        let tri = distance_multiset(&regular_simplex(2, 1.0).unwrap()).unwrap();
        assert_eq!(tri.len(), 3);
        for v in tri.values {
            assert_relative_eq!(v, 1.0, max_relative = 1e-12);
        }
        for d in 1..=8 {
            let s = regular_simplex(d, 2.0).unwrap();
            assert_eq!(s.len(), d + 1);
            for v in distance_multiset(&s).unwrap().values {
                assert_relative_eq!(v, 2.0, max_relative = 1e-9);
            }
        }
        assert!(regular_simplex(0, 1.0).is_err());
        assert!(regular_simplex(2, -1.0).is_err());
    }

    #[test]
    fn combinations_in_order() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn binomial_sets() {
        let tri = binomial_simplex_set(2, 1, 1.0).unwrap();
        assert_eq!((tri.dim(), tri.len()), (2, 3));
        assert_eq!(distinct(&tri).len(), 1);
        assert_relative_eq!(distinct(&tri)[0], 1.0, max_relative = 1e-12);

        // octahedron: 15 pairs, 12 edges of length 1 and 3 diagonals
        let oct = binomial_simplex_set(3, 2, 1.0).unwrap();
        assert_eq!((oct.dim(), oct.len()), (3, 6));
        let ms = distance_multiset(&oct).unwrap();
        let ones = ms
            .values
            .iter()
            .filter(|v| (*v - 1.0).abs() < 1e-12)
            .count();
        let diags = ms
            .values
            .iter()
            .filter(|v| (*v - SQRT_2).abs() < 1e-12)
            .count();
        assert_eq!((ones, diags), (12, 3));

        let pair = binomial_simplex_set(1, 1, 5.0).unwrap();
        assert_relative_eq!(distinct(&pair)[0], 5.0, max_relative = 1e-12);

        let big = binomial_simplex_set(6, 3, 2.0).unwrap();
        assert_eq!(big.len(), 35);
        let ds = distinct(&big);
        assert_eq!(ds.len(), 3);
        for (r, d) in ds.iter().enumerate() {
            assert_relative_eq!(*d, 2.0 * ((r + 1) as f64).sqrt(), max_relative = 1e-9);
        }
        assert_relative_eq!(min_separation(&big).unwrap(), 2.0, max_relative = 1e-9);

        assert!(binomial_simplex_set(3, 3, 1.0).is_err());
        assert!(binomial_simplex_set(3, 0, 1.0).is_err());
        assert!(binomial_simplex_set(0, 1, 1.0).is_err());
    }

    #[test]
    fn disjoint_supports_are_sqrt2_apart() {
        let s = binomial_simplex_set(3, 2, 1.0).unwrap();
        let subsets = combinations(4, 2);
        for i in 0..6 {
            for j in i + 1..6 {
                let disjoint = subsets[i].iter().all(|x| !subsets[j].contains(x));
                let d = s.pair_distance(i, j);
                let expect = if disjoint { SQRT_2 } else { 1.0 };
                assert_relative_eq!(d, expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn progressions() {
        assert_eq!(arithmetic_progression(0, 1.0).unwrap().len(), 1);
        let ms = distance_multiset(&arithmetic_progression(2, 1.0).unwrap()).unwrap();
        assert_eq!(ms.values, vec![1.0, 1.0, 2.0]);
        let ds = distinct(&arithmetic_progression(3, 2.0).unwrap());
        assert_eq!(ds, vec![2.0, 4.0, 6.0]);
    }

    #[test]
    fn known_sets_are_two_distance() {
        let sizes = [3, 5, 6, 10];
        for d in 1..=4 {
            let s = known_two_distance_set(d).unwrap();
            assert_eq!((s.dim(), s.len()), (d, sizes[d - 1]));
            let v = verify_k_distance_set(&s, 2, 1e-9).unwrap();
            assert!(v.ok, "d={d}");
            assert_eq!(v.clusters.len(), 2);
            assert_relative_eq!(v.clusters.clusters[0].min, 1.0, max_relative = 1e-9);
        }
        let pent = verify_k_distance_set(&known_two_distance_set(2).unwrap(), 2, 1e-9).unwrap();
        assert_eq!(pent.clusters.clusters[0].multiplicity, 5);
        assert_relative_eq!(
            pent.clusters.clusters[1].min,
            (1.0 + 5f64.sqrt()) / 2.0,
            max_relative = 1e-12
        );
        assert!(matches!(
            known_two_distance_set(5),
            Err(Error::Unsupported(_))
        ));
    }
}
