//! Recursive small/large decomposition certifying `|P| <= (d + 1)^k` for a
//! weakly `(eps, k)`-distance set `P` in `R^d`.
//!
//! At each node the member distances are covered greedily by windows with
//! anchors `t_1 < ... < t_j`. If `t_j / t_1 <= D` the node is a
//! ratio-bounded leaf whose cardinality is checked against `(d + 1)^j`.
//! Otherwise the least `l` with `t_{l+1} / t_l > D^{1/(j-1)}` splits the
//! distances into small (windows `1..=l`) and large ones; "equal or at small
//! distance" must be an equivalence relation, which is verified rather than
//! assumed. Each class is certified with budget `l` and a set of class
//! representatives with budget `j - l`.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::greedy_multiplicative_cover;
use crate::error::{input, Error, Result};
use crate::geometry::PointSet;

pub const DEFAULT_SPLIT_RATIO: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    RatioBounded,
    Split {
        ell: usize,
        class_bound: u64,
        representative_bound: u64,
        classes: Vec<DecompositionNode>,
        representatives: Box<DecompositionNode>,
    },
    /// The small-distance relation failed to be transitive: `a ~ b`,
    /// `b ~ c`, but `a` and `c` are at a large distance.
    Intransitive {
        triple: [usize; 3],
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionNode {
    /// Indices into the certified point set, ascending.
    pub members: Vec<usize>,
    pub cardinality: usize,
    /// Windows found at this node (never padded up to the budget).
    pub windows: usize,
    pub anchors: Vec<f64>,
    pub bound: u64,
    #[serde(flatten)]
    pub kind: NodeKind,
    pub failure: Option<String>,
}

impl DecompositionNode {
    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a DecompositionNode)) {
        f(self);
        if let NodeKind::Split {
            classes,
            representatives,
            ..
        } = &self.kind
        {
            for c in classes {
                c.walk(f);
            }
            representatives.walk(f);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTree {
    pub dim: usize,
    pub k: usize,
    pub eps: f64,
    pub split_ratio: f64,
    pub root: DecompositionNode,
}

impl DecompositionTree {
    /// True when no node carries a failure marker.
    pub fn is_certified(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.root.walk(&mut |n| {
            if let Some(f) = &n.failure {
                out.push(f.clone());
            }
        });
        out
    }

    /// Structural invariants: split cardinalities add up, the representative
    /// set has one point per class, split bounds multiply, and every node
    /// respects its bound.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.root.walk(&mut |n| {
            if n.cardinality != n.members.len() {
                out.push(format!("node {:?}: cardinality mismatch", n.members));
            }
            if n.cardinality as u64 > n.bound {
                out.push(format!(
                    "node {:?}: cardinality {} exceeds bound {}",
                    n.members, n.cardinality, n.bound
                ));
            }
            if let NodeKind::Split {
                class_bound,
                representative_bound,
                classes,
                representatives,
                ..
            } = &n.kind
            {
                let total: usize = classes.iter().map(|c| c.cardinality).sum();
                if total != n.cardinality {
                    out.push(format!("node {:?}: classes sum to {total}", n.members));
                }
                if representatives.cardinality != classes.len() {
                    out.push(format!(
                        "node {:?}: {} representatives for {} classes",
                        n.members,
                        representatives.cardinality,
                        classes.len()
                    ));
                }
                if class_bound.saturating_mul(*representative_bound) != n.bound {
                    out.push(format!(
                        "node {:?}: split bound is not a product",
                        n.members
                    ));
                }
                for c in classes {
                    if c.bound > *class_bound {
                        out.push(format!("class {:?}: bound above budget", c.members));
                    }
                }
                if representatives.bound > *representative_bound {
                    out.push(format!(
                        "node {:?}: representative bound above budget",
                        n.members
                    ));
                }
            }
        });
        out
    }
}

struct Ctx<'a> {
    points: &'a PointSet,
    base: u64,
    eps: f64,
    split_ratio: f64,
}

fn pow_bound(base: u64, exp: usize) -> u64 {
    base.checked_pow(exp as u32).unwrap_or(u64::MAX)
}

/// Builds the decomposition certificate for `points` as a weakly
/// `(eps, k)`-distance set, splitting when the anchor spread exceeds
/// `split_ratio` (the constant `D`).
pub fn certify_decomposition(
    points: &PointSet,
    k: usize,
    eps: f64,
    split_ratio: f64,
) -> Result<DecompositionTree> {
    if k == 0 {
        return input("k must be at least 1");
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return input(format!("eps must lie in (0, 1], got {eps}"));
    }
    if !(split_ratio.is_finite() && split_ratio > 2.0) {
        return input(format!("split ratio must exceed 2, got {split_ratio}"));
    }
    if let Some(&(i, j)) = points.duplicate_pairs().first() {
        return Err(Error::DuplicatePoints(i, j));
    }
    let ctx = Ctx {
        points,
        base: points.dim() as u64 + 1,
        eps,
        split_ratio,
    };
    let members: Vec<usize> = (0..points.len()).collect();
    let windows = greedy_multiplicative_cover(&ctx.sorted_distances(&members), eps).len();
    if windows > k {
        return input(format!(
            "not a weakly (eps, k)-distance set: {windows} windows needed, k = {k}"
        ));
    }
    let root = ctx.node(members, k);
    Ok(DecompositionTree {
        dim: points.dim(),
        k,
        eps,
        split_ratio,
        root,
    })
}

impl Ctx<'_> {
    fn dist(&self, a: usize, b: usize) -> f64 {
        self.points.pair_distance(a, b)
    }

    fn sorted_distances(&self, members: &[usize]) -> Vec<f64> {
        let mut v: Vec<f64> = members
            .iter()
            .enumerate()
            .flat_map(|(x, &a)| members[x + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.dist(a, b))
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    fn node(&self, members: Vec<usize>, budget: usize) -> DecompositionNode {
        let cardinality = members.len();
        let anchors = greedy_multiplicative_cover(&self.sorted_distances(&members), self.eps);
        let j = anchors.len();
        let mut failure = None;
        if j > budget {
            failure = Some(format!(
                "node {members:?}: {j} windows exceed budget {budget}"
            ));
        }
        let bound = pow_bound(self.base, j.min(budget));

        let spread = if j >= 2 {
            anchors[j - 1] / anchors[0]
        } else {
            1.0
        };
        if j < 2 || spread <= self.split_ratio {
            if cardinality as u64 > bound && failure.is_none() {
                failure = Some(format!(
                    "ratio-bounded node {members:?}: {cardinality} points exceed bound {bound}"
                ));
            }
            return DecompositionNode {
                members,
                cardinality,
                windows: j,
                anchors,
                bound,
                kind: NodeKind::RatioBounded,
                failure,
            };
        }

        let threshold = self.split_ratio.powf(1.0 / (j - 1) as f64);
        // at least one consecutive quotient exceeds the threshold because
        // their product exceeds split_ratio
        let ell = (1..j)
            .find(|&l| anchors[l] / anchors[l - 1] > threshold)
            .unwrap_or(j - 1);
        let large_from = anchors[ell];
        let small = |a: usize, b: usize| self.dist(a, b) < large_from;

        let classes = self.small_components(&members, &small);
        if let Some(triple) = self.transitivity_witness(&classes, &small) {
            return DecompositionNode {
                failure: Some(format!(
                    "small-distance relation is not transitive on {triple:?}"
                )),
                members,
                cardinality,
                windows: j,
                anchors,
                bound,
                kind: NodeKind::Intransitive { triple },
            };
        }

        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let class_nodes: Vec<DecompositionNode> =
            classes.into_par_iter().map(|c| self.node(c, ell)).collect();
        let rep_node = self.node(reps, j - ell);

        let class_bound = pow_bound(self.base, ell);
        let representative_bound = pow_bound(self.base, j - ell);
        let bound = class_bound.saturating_mul(representative_bound);
        if failure.is_none() && cardinality as u64 > bound {
            failure = Some(format!(
                "split node {members:?}: {cardinality} points exceed bound {bound}"
            ));
        }
        DecompositionNode {
            members,
            cardinality,
            windows: j,
            anchors,
            bound,
            kind: NodeKind::Split {
                ell,
                class_bound,
                representative_bound,
                classes: class_nodes,
                representatives: Box::new(rep_node),
            },
            failure,
        }
    }

    /// Connected components of the small-distance graph, each sorted, ordered
    /// by smallest member.
    fn small_components(
        &self,
        members: &[usize],
        small: &impl Fn(usize, usize) -> bool,
    ) -> Vec<Vec<usize>> {
        let m = members.len();
        let mut comp = vec![usize::MAX; m];
        let mut out = Vec::new();
        for start in 0..m {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut class = vec![members[start]];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in 0..m {
                    if comp[y] == usize::MAX && small(members[x], members[y]) {
                        comp[y] = id;
                        class.push(members[y]);
                        queue.push_back(y);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// Finds `a ~ b ~ c` with `a`, `c` far apart inside some component.
    fn transitivity_witness(
        &self,
        classes: &[Vec<usize>],
        small: &impl Fn(usize, usize) -> bool,
    ) -> Option<[usize; 3]> {
        for class in classes {
            for (x, &a) in class.iter().enumerate() {
                for &c in &class[x + 1..] {
                    if !small(a, c) {
                        return Some(path_witness(class, a, c, small));
                    }
                }
            }
        }
        None
    }
}

/// Walks a shortest small-distance path from `a` to `c` and returns the
/// first step where the path leaves the small neighbourhood of `a`.
fn path_witness(
    class: &[usize],
    a: usize,
    c: usize,
    small: &impl Fn(usize, usize) -> bool,
) -> [usize; 3] {
    let mut parent: Vec<Option<usize>> = vec![None; class.len()];
    let pos = |v: usize| class.iter().position(|&x| x == v).unwrap();
    let (sa, sc) = (pos(a), pos(c));
    parent[sa] = Some(sa);
    let mut queue = VecDeque::from([sa]);
    while let Some(x) = queue.pop_front() {
        if x == sc {
            break;
        }
        for y in 0..class.len() {
            if parent[y].is_none() && small(class[x], class[y]) {
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![sc];
    let mut cur = sc;
    while cur != sa {
        cur = parent[cur].expect("c is reachable from a");
        path.push(cur);
    }
    path.reverse();
    let first_far = (1..path.len())
        .find(|&i| !small(a, class[path[i]]))
        .expect("c itself is far from a");
    [a, class[path[first_far - 1]], class[path[first_far]]]
}
