//! Configurations whose cross-class pairs realise Turán-graph counts: stacked
//! columns over a base set, the three-column example, simplex sums and their
//! clustered blow-ups.

use super::factors::regular_simplex;
use crate::error::{input, Error, Result};
use crate::geometry::{min_separation, PointSet};

/// Sizes of `m` classes partitioning `n`: the first `n mod m` classes get
/// `ceil(n/m)`, the rest `floor(n/m)`.
pub fn class_sizes(n: usize, m: usize) -> Vec<usize> {
    if m == 0 {
        return Vec::new();
    }
    let (base, extra) = (n / m, n % m);
    (0..m).map(|i| base + usize::from(i < extra)).collect()
}

/// Columns of unit-spaced points erected over `scale * base`:
/// `{scale * x_i + j e_d : 0 <= j < n_i}` in `R^(dim + 1)`.
pub fn stacked_set(base: &PointSet, n: usize, scale: f64) -> Result<PointSet> {
    if base.is_empty() {
        return input("base set must be non-empty");
    }
    if n == 0 {
        return input("n must be at least 1");
    }
    if !(scale.is_finite() && scale > 0.0) {
        return input(format!("scale must be positive, got {scale}"));
    }
    if base.len() >= 2 && min_separation(base)? <= 0.0 {
        let (i, j) = base.duplicate_pairs()[0];
        return Err(Error::DuplicatePoints(i, j));
    }
    let dim = base.dim() + 1;
    let mut out = PointSet::empty(dim)?;
    let mut row = vec![0.0; dim];
    for (x, size) in base.iter().zip(class_sizes(n, base.len())) {
        for (r, c) in row.iter_mut().zip(x) {
            *r = scale * c;
        }
        for j in 0..size {
            row[dim - 1] = j as f64;
            out.push(&row)?;
        }
    }
    Ok(out)
}

/// Three unit-spaced vertical columns at abscissas `0`, `t1` and `t1 + t2`.
///
/// The second value reports whether `t1, t2 >= n^2`; below that the
/// cross-column distances may spill out of unit windows.
pub fn columns_set(t1: f64, t2: f64, n: usize) -> Result<(PointSet, bool)> {
    if n < 3 {
        return input(format!("columns set needs n >= 3, got {n}"));
    }
    if !(t1.is_finite() && t1 > 0.0 && t2.is_finite() && t2 > 0.0) {
        return input("column offsets must be positive");
    }
    let xs = [0.0, t1, t1 + t2];
    let mut out = PointSet::empty(2)?;
    for (x, size) in xs.iter().zip(class_sizes(n, 3)) {
        for i in 0..size {
            out.push(&[*x, i as f64])?;
        }
    }
    let nn = (n * n) as f64;
    Ok((out, t1 >= nn && t2 >= nn))
}

/// Largest `eps1` for which the simplex-sum windows have ratio at most
/// `1 + eps`: `eps1 / (1 - eps1) <= eps / (2 + eps)`.
pub fn eps1_max(eps: f64) -> f64 {
    eps / (2.0 + 2.0 * eps)
}

pub fn default_eps1(eps: f64) -> f64 {
    (eps / 4.0).min(0.01)
}

/// Multiplicative window width guaranteed by `eps1`, the inverse of
/// [`eps1_max`]: `(1 + r) / (1 - r) - 1` with `r = eps1 / (1 - eps1)`.
pub fn window_eps_for(eps1: f64) -> f64 {
    2.0 * eps1 / (1.0 - 2.0 * eps1)
}

fn check_eps1(eps1: f64) -> Result<()> {
    if !(eps1 > 0.0 && eps1 < 0.5) {
        return input(format!("eps1 must lie in (0, 1/2), got {eps1}"));
    }
    Ok(())
}

/// Edge of the `p`-th simplex (0-based): `eps1^p`.
fn edge(eps1: f64, p: usize) -> f64 {
    eps1.powi(p as i32)
}

/// Lower window anchors `t_p = s_p - sum_{q>p} s_q - extra`, one per level,
/// ascending.
pub(crate) fn level_anchors(k: usize, eps1: f64, extra: f64) -> Vec<f64> {
    let mut anchors: Vec<f64> = (0..k)
        .map(|p| edge(eps1, p) - (p + 1..k).map(|q| edge(eps1, q)).sum::<f64>() - extra)
        .collect();
    anchors.reverse();
    anchors
}

/// `(d+1)^k` sums `v_{1,i_1} + ... + v_{k,i_k}` of vertices of regular
/// simplices with edges `1, eps1, ..., eps1^(k-1)`, ordered
/// lexicographically in `(i_1, ..., i_k)`.
pub fn simplex_sum_set(d: usize, k: usize, eps1: f64) -> Result<PointSet> {
    if k == 0 {
        return input("k must be at least 1");
    }
    check_eps1(eps1)?;
    let count = (d + 1)
        .checked_pow(k as u32)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| Error::Budget(format!("(d+1)^k too large for d = {d}, k = {k}")))?;
    let simplices: Vec<PointSet> = (0..k)
        .map(|p| regular_simplex(d, edge(eps1, p)))
        .collect::<Result<_>>()?;
    let mut out = PointSet::empty(d)?;
    let mut row = vec![0.0; d];
    for flat in 0..count {
        row.iter_mut().for_each(|x| *x = 0.0);
        let mut rest = flat;
        for s in simplices.iter().rev() {
            let v = s.point(rest % (d + 1));
            rest /= d + 1;
            row.iter_mut().zip(v).for_each(|(r, x)| *r += x);
        }
        out.push(&row)?;
    }
    Ok(out)
}

/// `n` points in `(d+1)^k` balanced classes, class `c` lying on a short
/// segment `anchor_c + (j eps1^k / n) e_1` next to the `c`-th simplex-sum
/// point. Pairs from different classes fall in the `k` windows of
/// [`window_eps_for`]`(eps1)`; pairs inside a class are shorter than
/// `eps1^k`.
pub fn clustered_turan_set(d: usize, k: usize, eps1: f64, n: usize) -> Result<PointSet> {
    if n == 0 {
        return input("n must be at least 1");
    }
    let anchors = simplex_sum_set(d, k, eps1)?;
    let step = edge(eps1, k) / n as f64;
    let mut out = PointSet::empty(d)?;
    let mut row = vec![0.0; d];
    for (c, size) in class_sizes(n, anchors.len()).into_iter().enumerate() {
        row.copy_from_slice(anchors.point(c));
        let x0 = row[0];
        for j in 0..size {
            row[0] = x0 + j as f64 * step;
            out.push(&row)?;
        }
    }
    Ok(out)
}
