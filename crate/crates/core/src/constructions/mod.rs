//! Generators for the extremal configurations, each paired with a metadata
//! record predicting its cardinality, the windows its distances fall into
//! and how many pairs those windows capture.

mod factors;
mod mdk;
mod product;
mod turan_sets;

use serde::{Deserialize, Serialize};

pub use factors::{
    arithmetic_progression, binomial_simplex_set, known_two_distance_set, regular_pentagon,
    regular_simplex,
};
pub use mdk::{
    admissible_witnesses, balanced_split, for_each_witness, maximize_m, product_value, MdkWitness,
    MAX_D, MAX_K,
};
pub use product::{product_set, ScaleCascade};
pub use turan_sets::{
    class_sizes, clustered_turan_set, columns_set, default_eps1, eps1_max, simplex_sum_set,
    stacked_set, window_eps_for,
};

use crate::error::Result;
use crate::geometry::{distance_multiset, PointSet};
use crate::spectrum::{cross_class_pairs, IntervalFamily, WindowShape};
use crate::verification::cluster_sorted;
use crate::{binomial, REL_TOL};

/// Window width used to describe exact few-distance sets.
pub const EXACT_WINDOW_EPS: f64 = 1e-9;

/// Window width used to describe product sets.
pub const PRODUCT_WINDOW_EPS: f64 = 1e-3;

/// Default multiplicative window width for the simplex-sum family; the
/// default `eps1` derived from it is `0.01`.
pub const DEFAULT_EPS: f64 = 0.1;

/// A fully parameterised construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    RegularSimplex {
        d: usize,
        edge: f64,
    },
    BinomialSimplex {
        e: usize,
        p: usize,
        lambda: f64,
    },
    Progression {
        q: usize,
        mu: f64,
    },
    TwoDistance {
        d: usize,
    },
    /// Product set of the `m(d, k)`-maximising witness.
    Product {
        d: usize,
        k: usize,
        cascade: ScaleCascade,
    },
    /// Columns over the maximal two-distance set of `R^(d-1)`.
    Stacked {
        d: usize,
        n: usize,
        scale: f64,
    },
    SimplexSum {
        d: usize,
        k: usize,
        eps1: f64,
    },
    ClusteredTuran {
        d: usize,
        k: usize,
        eps1: f64,
        n: usize,
    },
    Columns {
        t1: f64,
        t2: f64,
        n: usize,
    },
}

impl ConstructionSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructionSpec::RegularSimplex { .. } => "regular-simplex",
            ConstructionSpec::BinomialSimplex { .. } => "binomial-simplex",
            ConstructionSpec::Progression { .. } => "progression",
            ConstructionSpec::TwoDistance { .. } => "two-distance",
            ConstructionSpec::Product { .. } => "product",
            ConstructionSpec::Stacked { .. } => "stacked",
            ConstructionSpec::SimplexSum { .. } => "simplex-sum",
            ConstructionSpec::ClusteredTuran { .. } => "clustered-turan",
            ConstructionSpec::Columns { .. } => "columns",
        }
    }
}

/// Sidecar describing what a generated set is expected to satisfy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionMeta {
    pub construction: String,
    pub parameters: serde_json::Value,
    pub expected_cardinality: usize,
    pub expected_window_anchors: Vec<f64>,
    pub window: WindowShape,
    /// Pairs whose distance is predicted to fall in the windows.
    pub expected_pair_count: u64,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl ConstructionMeta {
    /// The predicted windows, or `None` when the set has no distances.
    pub fn expected_family(&self) -> Option<IntervalFamily> {
        IntervalFamily::new(self.window, self.expected_window_anchors.clone()).ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub points: PointSet,
    pub meta: ConstructionMeta,
}

fn all_pairs(n: usize) -> u64 {
    binomial(n as u64, 2)
}

fn distinct_distances(points: &PointSet) -> Vec<f64> {
    match distance_multiset(points) {
        Ok(ms) => cluster_sorted(&ms.values, REL_TOL)
            .clusters
            .into_iter()
            .map(|c| c.min)
            .collect(),
        Err(_) => Vec::new(),
    }
}

fn sorted_dedup(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|b, a| *b <= *a * (1.0 + REL_TOL));
    v
}

fn exact(spec: &ConstructionSpec, points: PointSet) -> Generated {
    let anchors = distinct_distances(&points);
    Generated {
        meta: ConstructionMeta {
            construction: spec.name().into(),
            parameters: serde_json::to_value(spec).expect("plain data"),
            expected_cardinality: points.len(),
            expected_window_anchors: anchors,
            window: WindowShape::Multiplicative {
                eps: EXACT_WINDOW_EPS,
            },
            expected_pair_count: all_pairs(points.len()),
            warnings: Vec::new(),
        },
        points,
    }
}

/// Stacked columns over an arbitrary base; anchors are the base's distinct
/// distances times `scale`, with unit windows.
pub fn generate_stacked_over(base: &PointSet, n: usize, scale: f64) -> Result<Generated> {
    let points = stacked_set(base, n, scale)?;
    let sizes = class_sizes(n, base.len());
    let anchors: Vec<f64> = distinct_distances(base).iter().map(|d| d * scale).collect();
    let mut warnings = Vec::new();
    let height = sizes.iter().copied().max().unwrap_or(1).saturating_sub(1) as f64;
    if let Some(&shortest) = anchors.first() {
        if height * height > 2.0 * shortest + 1.0 {
            warnings.push(format!(
                "scale {scale} too small: cross-column distances may exceed unit windows"
            ));
        }
    }
    let spec = serde_json::json!({ "n": n, "scale": scale, "base_size": base.len(), "base_dim": base.dim() });
    Ok(Generated {
        meta: ConstructionMeta {
            construction: "stacked".into(),
            parameters: spec,
            expected_cardinality: n,
            expected_window_anchors: anchors,
            window: WindowShape::Additive { length: 1.0 },
            expected_pair_count: cross_class_pairs(&sizes),
            warnings,
        },
        points,
    })
}

pub fn generate(spec: &ConstructionSpec) -> Result<Generated> {
    let params = serde_json::to_value(spec).expect("plain data");
    let meta = |points: &PointSet, anchors: Vec<f64>, window, pairs, warnings| ConstructionMeta {
        construction: spec.name().into(),
        parameters: params.clone(),
        expected_cardinality: points.len(),
        expected_window_anchors: anchors,
        window,
        expected_pair_count: pairs,
        warnings,
    };
    match *spec {
        ConstructionSpec::RegularSimplex { d, edge } => Ok(exact(spec, regular_simplex(d, edge)?)),
        ConstructionSpec::BinomialSimplex { e, p, lambda } => {
            Ok(exact(spec, binomial_simplex_set(e, p, lambda)?))
        }
        ConstructionSpec::Progression { q, mu } => Ok(exact(spec, arithmetic_progression(q, mu)?)),
        ConstructionSpec::TwoDistance { d } => Ok(exact(spec, known_two_distance_set(d)?)),
        ConstructionSpec::Product { d, k, cascade } => {
            let witness = maximize_m(d, k)?;
            let points = product_set(&witness, &cascade)?;
            let facs = product::factors(&witness, &cascade);
            let anchors = sorted_dedup(facs.iter().flat_map(|f| f.distances()).collect());
            let mut warnings = Vec::new();
            if product_spread(&facs) > PRODUCT_WINDOW_EPS {
                warnings.push(format!(
                    "cascade ratio {} too small for windows of width {PRODUCT_WINDOW_EPS}",
                    cascade.ratio
                ));
            }
            let mut g = Generated {
                meta: meta(
                    &points,
                    anchors,
                    WindowShape::Multiplicative {
                        eps: PRODUCT_WINDOW_EPS,
                    },
                    all_pairs(points.len()),
                    warnings,
                ),
                points,
            };
            g.meta.parameters["witness"] = serde_json::to_value(&witness).expect("plain data");
            Ok(g)
        }
        ConstructionSpec::Stacked { d, n, scale } => {
            if d < 2 {
                return crate::error::input("stacked sets need d >= 2");
            }
            let base = known_two_distance_set(d - 1)?;
            let mut g = generate_stacked_over(&base, n, scale)?;
            g.meta.parameters = params;
            Ok(g)
        }
        ConstructionSpec::SimplexSum { d, k, eps1 } => {
            let points = simplex_sum_set(d, k, eps1)?;
            let anchors = turan_sets::level_anchors(k, eps1, 0.0);
            let pairs = all_pairs(points.len());
            Ok(Generated {
                meta: meta(
                    &points,
                    anchors,
                    WindowShape::Multiplicative {
                        eps: window_eps_for(eps1),
                    },
                    pairs,
                    Vec::new(),
                ),
                points,
            })
        }
        ConstructionSpec::ClusteredTuran { d, k, eps1, n } => {
            let points = clustered_turan_set(d, k, eps1, n)?;
            let classes = (d + 1).pow(k as u32);
            let anchors = turan_sets::level_anchors(k, eps1, eps1.powi(k as i32));
            let pairs = cross_class_pairs(&class_sizes(n, classes));
            Ok(Generated {
                meta: meta(
                    &points,
                    anchors,
                    WindowShape::Multiplicative {
                        eps: window_eps_for(eps1),
                    },
                    pairs,
                    Vec::new(),
                ),
                points,
            })
        }
        ConstructionSpec::Columns { t1, t2, n } => {
            let (points, wide_enough) = columns_set(t1, t2, n)?;
            let mut warnings = Vec::new();
            if !wide_enough {
                warnings.push(format!(
                    "t1 = {t1}, t2 = {t2} below n^2 = {}: cross-column distances may leave the unit windows",
                    n * n
                ));
            }
            let anchors = sorted_dedup(vec![t1, t2, t1 + t2]);
            let pairs = cross_class_pairs(&class_sizes(n, 3));
            Ok(Generated {
                meta: meta(
                    &points,
                    anchors,
                    WindowShape::Additive { length: 1.0 },
                    pairs,
                    warnings,
                ),
                points,
            })
        }
    }
}

/// Upper bound on the relative excess of a product-set distance over its
/// anchor: `sum of later squared diameters / (2 * smallest distance^2)`,
/// maximised over factors.
fn product_spread(facs: &[product::Factor]) -> f64 {
    let diam2: Vec<f64> = facs
        .iter()
        .map(|f| f.distances().last().map_or(0.0, |d| d * d))
        .collect();
    facs.iter()
        .enumerate()
        .filter_map(|(i, f)| {
            let first = *f.distances().first()?;
            let later: f64 = diam2[i + 1..].iter().sum();
            Some(later / (2.0 * first * first))
        })
        .fold(0.0, f64::max)
}
