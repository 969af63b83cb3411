//! Slow reference implementations used to cross-check the fast paths.
//!
//! Each routine here takes a deliberately different route from the code it
//! checks: direct pair loops instead of the sorted multiset, exhaustive
//! subset search instead of dynamic programming or greedy sweeps, and a flat
//! mixed-radix enumeration (including unbalanced splits) instead of the
//! recursive witness generator.

use crate::binomial;
use crate::geometry::{distance, PointSet};

/// Calls `visit` with every `size`-subset of `0..n` (as sorted indices).
fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        visit(&idx);
        let mut pos = size;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < n - size + pos {
                break;
            }
            if pos == 0 {
                return;
            }
        }
        idx[pos] += 1;
        for i in pos + 1..size {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// Pairs `i < j` whose distance satisfies `accept`, by a direct double loop.
pub fn count_pairs_brute(points: &PointSet, accept: impl Fn(f64) -> bool) -> u64 {
    let n = points.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(points.point(i), points.point(j)).expect("same dimension");
            if accept(d) {
                count += 1;
            }
        }
    }
    count
}

/// Maximum number of values covered by at most `k` windows `[a, upper(a)]`,
/// trying every choice of left ends among the values.
pub fn best_windows_exhaustive(values: &[f64], k: usize, upper: impl Fn(f64) -> f64) -> u64 {
    let mut lefts: Vec<f64> = values.to_vec();
    lefts.sort_by(f64::total_cmp);
    lefts.dedup();
    let size = k.min(lefts.len());
    let mut best = 0;
    for_each_subset(lefts.len(), size, |chosen| {
        let covered = values
            .iter()
            .filter(|&&x| {
                chosen
                    .iter()
                    .any(|&c| x >= lefts[c] && x <= upper(lefts[c]))
            })
            .count() as u64;
        best = best.max(covered);
    });
    best
}

/// Smallest number of windows `[t, t (1 + eps)]` (with the crate's `1e-9`
/// boundary slack) covering all values, by increasing subset size.
pub fn min_multiplicative_cover_brute(values: &[f64], eps: f64) -> usize {
    let mut anchors: Vec<f64> = values.to_vec();
    anchors.sort_by(f64::total_cmp);
    anchors.dedup();
    let inside = |x: f64, t: f64| x >= t * (1.0 - 1e-9) && x <= t * (1.0 + eps) * (1.0 + 1e-9);
    for size in 1..=anchors.len() {
        let mut found = false;
        for_each_subset(anchors.len(), size, |chosen| {
            if !found
                && values
                    .iter()
                    .all(|&x| chosen.iter().any(|&c| inside(x, anchors[c])))
            {
                found = true;
            }
        });
        if found {
            return size;
        }
    }
    0
}

/// `T(n, s)` via `T(n, s) = T(n-1, s) + (n-1) - floor((n-1)/(s-1))`.
pub fn turan_by_recurrence(n: u64, s: u64) -> u64 {
    assert!(s >= 2);
    (1..n).map(|m| m - m / (s - 1)).sum()
}

/// `m(d, k)` by a flat scan: `e_i` from the cut bitmask of `e`, `p_i` by a
/// mixed-radix counter, and every split of `q` over the `f` lines, balanced
/// or not unless `balanced_only`.
pub fn m_dk_flat(d: usize, k: usize, balanced_only: bool) -> u64 {
    assert!(d >= 2 && k >= 1);
    let mut best = 0u64;
    for e in 0..d {
        let f = d - 1 - e;
        let masks: u32 = if e == 0 { 1 } else { 1 << (e - 1) };
        for mask in 0..masks {
            let mut parts = Vec::new();
            if e > 0 {
                let mut run = 1;
                for gap in 0..e - 1 {
                    if mask >> gap & 1 == 1 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
            }
            let radix: Vec<usize> = parts.iter().map(|&x: &usize| x.div_ceil(2)).collect();
            let mut digits = vec![1usize; parts.len()];
            'counter: loop {
                let p: usize = digits.iter().sum();
                if p <= k {
                    let simplex: u64 = parts
                        .iter()
                        .zip(&digits)
                        .map(|(&a, &b)| binomial(a as u64 + 1, b as u64))
                        .product();
                    let q_max = if f == 0 { 0 } else { k - p };
                    for q in 0..=q_max {
                        let lines = best_line_product(q, f, balanced_only);
                        best = best.max(simplex * lines);
                    }
                }
                for i in 0..digits.len() {
                    if digits[i] < radix[i] {
                        digits[i] += 1;
                        continue 'counter;
                    }
                    digits[i] = 1;
                }
                break;
            }
        }
    }
    best
}

fn best_line_product(q: usize, f: usize, balanced_only: bool) -> u64 {
    if f == 0 {
        return 1;
    }
    let mut best = 0;
    let mut split = vec![0usize; f];
    split_rec(q, 0, &mut split, &mut |s| {
        let balanced = s.iter().all(|&x| x == q / f || x == q.div_ceil(f));
        if balanced || !balanced_only {
            best = best.max(s.iter().map(|&x| x as u64 + 1).product());
        }
    });
    best
}

fn split_rec(rest: usize, i: usize, split: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    if i + 1 == split.len() {
        split[i] = rest;
        visit(split);
        return;
    }
    for x in 0..=rest {
        split[i] = x;
        split_rec(rest - x, i + 1, split, visit);
    }
}
