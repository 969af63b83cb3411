//! Point sets in `R^d`, Euclidean distances and the pairwise distance multiset.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::REL_TOL;

/// An ordered collection of points in `R^dim`, stored row-major.
///
/// A point's identity is its index; the order never changes once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// An empty set in `R^dim`.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return input("dimension must be positive");
        }
        Ok(Self {
            dim,
            coords: Vec::new(),
        })
    }

    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        let mut set = Self::empty(dim)?;
        set.coords.reserve(dim * points.len());
        for p in &points {
            set.push(p)?;
        }
        Ok(set)
    }

    /// Builds a set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return input("dimension must be positive");
        }
        if !coords.len().is_multiple_of(dim) {
            return input(format!(
                "coordinate buffer of length {} is not a multiple of dimension {dim}",
                coords.len()
            ));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return input(format!("non-finite coordinate in point {}", pos / dim));
        }
        Ok(Self { dim, coords })
    }

    pub fn push(&mut self, point: &[f64]) -> Result<()> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        if point.iter().any(|c| !c.is_finite()) {
            return input(format!("non-finite coordinate in point {}", self.len()));
        }
        self.coords.extend_from_slice(point);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Distance between the points with indices `i` and `j`.
    pub fn pair_distance(&self, i: usize, j: usize) -> f64 {
        euclid(self.point(i), self.point(j))
    }

    /// Returns the subset with the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet {
            dim: self.dim,
            coords,
        }
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: f64) -> PointSet {
        PointSet {
            dim: self.dim,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// All index pairs `(i, j)`, `i < j`, whose points coincide exactly.
    pub fn duplicate_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.point(i) == self.point(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[inline]
pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Euclidean distance between two coordinate vectors of equal length.
pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.iter().chain(b).any(|c| !c.is_finite()) {
        return input("non-finite coordinate");
    }
    Ok(euclid(a, b))
}

/// All `n(n-1)/2` pairwise distances, sorted ascending.
///
/// Ties are ordered by the pair index `(i, j)`, so the result is identical
/// regardless of how the pair enumeration is scheduled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMultiset {
    pub values: Vec<f64>,
    pub pairs: Vec<(usize, usize)>,
}

impl DistanceMultiset {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

pub fn distance_multiset(points: &PointSet) -> Result<DistanceMultiset> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut entries: Vec<(f64, (usize, usize))> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (i + 1..n).map(move |j| (points.pair_distance(i, j), (i, j))))
        .collect();
    // Stable sort on the value alone keeps the (i, j) enumeration order
    // among ties.
    entries.par_sort_by(|a, b| a.0.total_cmp(&b.0));
    let (values, pairs) = entries.into_iter().unzip();
    Ok(DistanceMultiset { values, pairs })
}

/// Smallest pairwise distance; `0` when the set contains duplicates.
pub fn min_separation(points: &PointSet) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            best = best.min(points.pair_distance(i, j));
        }
    }
    Ok(best)
}

/// Whether every pair is at least `threshold` apart, up to relative `rel_tol`.
pub fn is_separated(points: &PointSet, threshold: f64, rel_tol: f64) -> Result<bool> {
    let sep = min_separation(points)?;
    Ok(sep > 0.0 && sep >= threshold * (1.0 - rel_tol))
}

/// Ratio of the largest to the smallest pairwise distance.
pub fn max_min_ratio(points: &PointSet) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let d = points.pair_distance(i, j);
            if d == 0.0 {
                return Err(Error::DuplicatePoints(i, j));
            }
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    Ok(hi / lo)
}

/// Re-coordinatises a point set lying in the hyperplane `<x, normal> = c` of
/// `R^m` as a point set in `R^(m-1)` with the same pairwise distances.
///
/// `c` is read off the first point. The orthonormal frame is obtained by
/// Gram-Schmidt over the standard basis vectors projected onto the
/// hyperplane, in index order, skipping vectors that collapse to zero. The
/// origin of the new frame is the foot of the perpendicular from `0`.
pub fn embed_hyperplane(points: &PointSet, normal: &[f64]) -> Result<PointSet> {
    let m = points.dim();
    if normal.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: normal.len(),
        });
    }
    if m < 2 {
        return input("cannot embed a hyperplane of R^1");
    }
    let norm = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return input("hyperplane normal must be finite and non-zero");
    }
    let unit: Vec<f64> = normal.iter().map(|x| x / norm).collect();
    let mut out = PointSet::empty(m - 1)?;
    if points.is_empty() {
        return Ok(out);
    }

    let offset = dot(points.point(0), &unit);
    for (i, p) in points.iter().enumerate() {
        let scale = p
            .iter()
            .fold(offset.abs().max(1.0), |acc, x| acc.max(x.abs()));
        if (dot(p, &unit) - offset).abs() > REL_TOL * scale {
            return input(format!("point {i} does not lie on the hyperplane"));
        }
    }

    let basis = hyperplane_basis(&unit);
    let origin: Vec<f64> = unit.iter().map(|u| u * offset).collect();
    let mut shifted = vec![0.0; m];
    let mut row = vec![0.0; m - 1];
    for p in points.iter() {
        for (s, (x, o)) in shifted.iter_mut().zip(p.iter().zip(&origin)) {
            *s = x - o;
        }
        for (r, b) in row.iter_mut().zip(&basis) {
            *r = dot(&shifted, b);
        }
        out.push(&row)?;
    }
    Ok(out)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn hyperplane_basis(unit_normal: &[f64]) -> Vec<Vec<f64>> {
    let m = unit_normal.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m - 1);
    for axis in 0..m {
        if basis.len() == m - 1 {
            break;
        }
        let mut v: Vec<f64> = (0..m)
            .map(|i| f64::from(u8::from(i == axis)) - unit_normal[axis] * unit_normal[i])
            .collect();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            let c = dot(&v, unit_normal);
            v.iter_mut().zip(unit_normal).for_each(|(x, u)| *x -= c * u);
            for b in &basis {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let len = dot(&v, &v).sqrt();
        if len < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= len);
        basis.push(v);
    }
    basis
}
