//! Parameter compositions of the few-distance product construction and the
//! maximisation defining `m(d, k)`.
//!
//! `R^(d-1) = R^e x R^f`; the `e` part is split into `l` blocks of sizes
//! `e_i`, each carrying a binomial set with `p_i` distances and
//! `C(e_i + 1, p_i)` points, and each of the `f` lines carries an arithmetic
//! progression with `q_j + 1` points. At most `k` distances are used in
//! total: `sum p_i + sum q_j <= k`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{input, Error, Result};

pub const MAX_D: usize = 12;
pub const MAX_K: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdkWitness {
    pub d: usize,
    pub k: usize,
    pub e: usize,
    pub f: usize,
    pub ell: usize,
    pub e_parts: Vec<usize>,
    pub p_parts: Vec<usize>,
    pub q_total: usize,
    pub q_parts: Vec<usize>,
    pub value: u64,
}

/// `q` split into `f` parts of sizes `floor(q/f)` and `ceil(q/f)`, smaller
/// parts first.
pub fn balanced_split(q: usize, f: usize) -> Vec<usize> {
    if f == 0 {
        return Vec::new();
    }
    let (base, extra) = (q / f, q % f);
    (0..f).map(|j| base + usize::from(j >= f - extra)).collect()
}

pub fn product_value(e_parts: &[usize], p_parts: &[usize], q_parts: &[usize]) -> u64 {
    let simplex: u64 = e_parts
        .iter()
        .zip(p_parts)
        .map(|(&e, &p)| binomial(e as u64 + 1, p as u64))
        .product();
    let lines: u64 = q_parts.iter().map(|&q| q as u64 + 1).product();
    simplex * lines
}

impl MdkWitness {
    /// Builds a witness from its free parameters, computing `e`, `f`, `l`,
    /// the balanced `q` split and the value, then validates it.
    pub fn new(
        d: usize,
        k: usize,
        e_parts: Vec<usize>,
        p_parts: Vec<usize>,
        q_total: usize,
    ) -> Result<Self> {
        if d < 2 {
            return input("d must be at least 2");
        }
        let e: usize = e_parts.iter().sum();
        if e > d - 1 {
            return input(format!("e = {e} exceeds d - 1 = {}", d - 1));
        }
        let f = d - 1 - e;
        let q_parts = balanced_split(q_total, f);
        let w = MdkWitness {
            d,
            k,
            e,
            f,
            ell: e_parts.len(),
            value: product_value(&e_parts, &p_parts, &q_parts),
            e_parts,
            p_parts,
            q_total,
            q_parts,
        };
        w.validate()?;
        Ok(w)
    }

    /// Checks every admissibility constraint and the stored value.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Input(format!("inconsistent witness: {m}")));
        if self.d < 2 || self.k < 1 {
            return bad("need d >= 2, k >= 1".into());
        }
        if self.e + self.f != self.d - 1 {
            return bad(format!(
                "e + f = {} but d - 1 = {}",
                self.e + self.f,
                self.d - 1
            ));
        }
        if self.e_parts.len() != self.ell || self.p_parts.len() != self.ell {
            return bad("e_parts and p_parts must both have l entries".into());
        }
        if self.e_parts.iter().sum::<usize>() != self.e {
            return bad("e_parts do not sum to e".into());
        }
        if self.e == 0 && self.ell != 0 {
            return bad("e = 0 requires l = 0".into());
        }
        if self.e > 0 && self.ell == 0 {
            return bad("e > 0 requires at least one block".into());
        }
        for (&e, &p) in self.e_parts.iter().zip(&self.p_parts) {
            if e == 0 || p == 0 || 2 * p > e + 1 {
                return bad(format!(
                    "block (e_i = {e}, p_i = {p}) violates 1 <= p_i <= (e_i+1)/2"
                ));
            }
        }
        let p: usize = self.p_parts.iter().sum();
        if self.f == 0 && self.q_total != 0 {
            return bad("f = 0 requires q = 0".into());
        }
        if p + self.q_total > self.k {
            return bad(format!(
                "p + q = {} exceeds k = {}",
                p + self.q_total,
                self.k
            ));
        }
        if self.q_parts.len() != self.f || self.q_parts.iter().sum::<usize>() != self.q_total {
            return bad("q_parts must split q into f parts".into());
        }
        if let Some(lo) = self.q_total.checked_div(self.f) {
            let hi = self.q_total.div_ceil(self.f);
            if self.q_parts.iter().any(|&q| q < lo || q > hi) {
                return bad("q_parts are not balanced".into());
            }
        }
        if self.value != product_value(&self.e_parts, &self.p_parts, &self.q_parts) {
            return bad("value does not match the product formula".into());
        }
        Ok(())
    }

    pub fn p_total(&self) -> usize {
        self.p_parts.iter().sum()
    }

    /// Ordering used to break ties between witnesses of equal value.
    fn tie_key_cmp(&self, other: &Self) -> Ordering {
        (
            self.e,
            self.ell,
            &self.e_parts,
            &self.p_parts,
            &self.q_parts,
        )
            .cmp(&(
                other.e,
                other.ell,
                &other.e_parts,
                &other.p_parts,
                &other.q_parts,
            ))
    }
}

fn check_budget(d: usize, k: usize) -> Result<()> {
    if d < 2 {
        return input(format!("d must be at least 2, got {d}"));
    }
    if k < 1 {
        return input("k must be at least 1");
    }
    if d > MAX_D || k > MAX_K {
        return Err(Error::Budget(format!(
            "m(d, k) enumeration is limited to d <= {MAX_D}, k <= {MAX_K} (got d = {d}, k = {k})"
        )));
    }
    Ok(())
}

/// Ordered compositions of `n` into positive parts, lexicographic.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=rest {
            cur.push(first);
            rec(rest - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Visits every admissible witness for `(d, k)`.
pub fn for_each_witness(d: usize, k: usize, mut visit: impl FnMut(MdkWitness)) -> Result<()> {
    check_budget(d, k)?;
    for e in 0..d {
        let f = d - 1 - e;
        let blocks = if e == 0 {
            vec![Vec::new()]
        } else {
            compositions(e)
        };
        for e_parts in blocks {
            let mut p_parts = Vec::with_capacity(e_parts.len());
            visit_p_parts(&e_parts, k, &mut p_parts, &mut |p_parts| {
                let p: usize = p_parts.iter().sum();
                let q_max = if f == 0 { 0 } else { k - p };
                for q in 0..=q_max {
                    let q_parts = balanced_split(q, f);
                    visit(MdkWitness {
                        d,
                        k,
                        e,
                        f,
                        ell: e_parts.len(),
                        value: product_value(&e_parts, p_parts, &q_parts),
                        e_parts: e_parts.clone(),
                        p_parts: p_parts.to_vec(),
                        q_total: q,
                        q_parts,
                    });
                }
            });
        }
    }
    Ok(())
}

fn visit_p_parts(
    e_parts: &[usize],
    budget: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    let i = cur.len();
    if i == e_parts.len() {
        visit(cur);
        return;
    }
    // the remaining blocks each need at least one distance
    let reserve = e_parts.len() - i - 1;
    let cap = e_parts[i].div_ceil(2).min(budget.saturating_sub(reserve));
    for p in 1..=cap {
        cur.push(p);
        visit_p_parts(e_parts, budget - p, cur, visit);
        cur.pop();
    }
}

/// All admissible witnesses for `(d, k)`, in enumeration order.
pub fn admissible_witnesses(d: usize, k: usize) -> Result<Vec<MdkWitness>> {
    let mut out = Vec::new();
    for_each_witness(d, k, |w| out.push(w))?;
    Ok(out)
}

/// `m(d, k)`: the largest product-construction cardinality, with the
/// witness attaining it. Among equal values the witness with the
/// lexicographically smallest `(e, l, e_parts, p_parts, q_parts)` wins.
pub fn maximize_m(d: usize, k: usize) -> Result<MdkWitness> {
    let mut best: Option<MdkWitness> = None;
    for_each_witness(d, k, |w| {
        let better = match &best {
            None => true,
            Some(b) => w.value > b.value || (w.value == b.value && w.tie_key_cmp(b).is_lt()),
        };
        if better {
            best = Some(w);
        }
    })?;
    Ok(best.expect("e = 0, q = 0 is always admissible"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_splits() {
        assert_eq!(balanced_split(5, 3), vec![1, 2, 2]);
        assert_eq!(balanced_split(6, 3), vec![2, 2, 2]);
        assert_eq!(balanced_split(0, 2), vec![0, 0]);
        assert!(balanced_split(3, 0).is_empty());
    }

    #[test]
    fn compositions_of_three() {
        assert_eq!(
            compositions(3),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]
        );
        assert!(compositions(0).is_empty());
    }

    #[test]
    fn small_values() {
        for d in 2..=8 {
            assert_eq!(maximize_m(d, 1).unwrap().value, d as u64, "m({d},1)");
        }
        for k in 1..=6 {
            assert_eq!(maximize_m(2, k).unwrap().value, k as u64 + 1);
        }
        assert_eq!(maximize_m(3, 2).unwrap().value, 4);
    }

    #[test]
    fn tie_break_prefers_small_e() {
        // (e = 0, q = (1, 1)), (e = 1, ...) and (e = 2, l = 2) all reach 4
        let w = maximize_m(3, 2).unwrap();
        assert_eq!((w.e, w.ell, w.q_parts.clone()), (0, 0, vec![1, 1]));
        let alt = MdkWitness::new(3, 2, vec![1, 1], vec![1, 1], 0).unwrap();
        assert_eq!(alt.value, 4);
    }

    #[test]
    fn every_enumerated_witness_validates() {
        for d in 2..=7 {
            for k in 1..=5 {
                for w in admissible_witnesses(d, k).unwrap() {
                    w.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn witness_validation_errors() {
        assert!(MdkWitness::new(3, 2, vec![2], vec![2], 0).is_err()); // p > (e+1)/2
        assert!(MdkWitness::new(3, 1, vec![1, 1], vec![1, 1], 0).is_err()); // p > k
        assert!(MdkWitness::new(3, 2, vec![2], vec![1], 1).is_err()); // f = 0, q > 0
        assert!(MdkWitness::new(3, 2, vec![3], vec![1], 0).is_err()); // e > d-1
        let mut w = MdkWitness::new(4, 3, vec![], vec![], 3).unwrap();
        assert_eq!(w.q_parts, vec![1, 1, 1]);
        w.q_parts = vec![0, 0, 3];
        w.value = 4;
        assert!(w.validate().is_err());
    }

    #[test]
    fn budget_limits() {
        assert!(matches!(maximize_m(13, 2), Err(Error::Budget(_))));
        assert!(matches!(maximize_m(3, 13), Err(Error::Budget(_))));
        assert!(matches!(maximize_m(1, 2), Err(Error::Input(_))));
        assert!(matches!(maximize_m(3, 0), Err(Error::Input(_))));
        assert!(maximize_m(12, 12).is_ok());
    }

    #[test]
    fn monotone_in_d_and_k() {
        for d in 2..=9 {
            for k in 1..=7 {
                let v = maximize_m(d, k).unwrap().value;
                assert!(maximize_m(d, k + 1).unwrap().value >= v);
                assert!(maximize_m(d + 1, k).unwrap().value >= v);
            }
        }
    }
}
