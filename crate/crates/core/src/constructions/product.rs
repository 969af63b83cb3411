use serde::{Deserialize, Serialize};

use super::factors::{arithmetic_progression, binomial_simplex_set};
use super::mdk::MdkWitness;
use crate::error::{input, Result};
use crate::geometry::PointSet;

/// Geometric sequence of factor scales: slot `s` gets `base * ratio^s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleCascade {
    pub ratio: f64,
    pub base: f64,
}

impl Default for ScaleCascade {
    fn default() -> Self {
        Self {
            ratio: 1e4,
            base: 1.0,
        }
    }
}

impl ScaleCascade {
    pub fn new(ratio: f64, base: f64) -> Result<Self> {
        let c = Self { ratio, base };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ratio.is_finite() && self.ratio > 1.0) {
            return input(format!("cascade ratio must exceed 1, got {}", self.ratio));
        }
        if !(self.base.is_finite() && self.base >= 1.0) {
            return input(format!(
                "cascade base must be at least 1, got {}",
                self.base
            ));
        }
        Ok(())
    }

    pub fn scale(&self, slot: usize) -> f64 {
        self.base * self.ratio.powi(slot as i32)
    }
}

/// One factor of a product set with the scale it was given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Factor {
    Simplex { e: usize, p: usize, lambda: f64 },
    Progression { q: usize, mu: f64 },
}

impl Factor {
    /// Distinct distances realised inside this factor.
    pub(crate) fn distances(&self) -> Vec<f64> {
        match *self {
            Factor::Simplex { p, lambda, .. } => {
                (1..=p).map(|r| lambda * (r as f64).sqrt()).collect()
            }
            Factor::Progression { q, mu } => (1..=q).map(|r| r as f64 * mu).collect(),
        }
    }

    fn points(&self) -> Result<PointSet> {
        match *self {
            Factor::Simplex { e, p, lambda } => binomial_simplex_set(e, p, lambda),
            Factor::Progression { q, mu } => arithmetic_progression(q, mu),
        }
    }
}

/// Factors in cascade order: simplex blocks first, then lines, with scales
/// decreasing from the first factor to the last.
pub(crate) fn factors(witness: &MdkWitness, cascade: &ScaleCascade) -> Vec<Factor> {
    let slots = witness.ell + witness.f;
    let simplex = witness
        .e_parts
        .iter()
        .zip(&witness.p_parts)
        .map(|(&e, &p)| (e, p));
    let mut out = Vec::with_capacity(slots);
    for (i, (e, p)) in simplex.enumerate() {
        out.push(Factor::Simplex {
            e,
            p,
            lambda: cascade.scale(slots - 1 - i),
        });
    }
    for (j, &q) in witness.q_parts.iter().enumerate() {
        out.push(Factor::Progression {
            q,
            mu: cascade.scale(slots - 1 - witness.ell - j),
        });
    }
    out
}

/// Cartesian product of the witness's binomial sets and progressions in
/// `R^(d-1)`, with `|P| = witness.value`. Points are ordered
/// lexicographically, first factor most significant.
pub fn product_set(witness: &MdkWitness, cascade: &ScaleCascade) -> Result<PointSet> {
    witness.validate()?;
    cascade.validate()?;
    let parts: Vec<PointSet> = factors(witness, cascade)
        .iter()
        .map(Factor::points)
        .collect::<Result<_>>()?;
    let dim = witness.d - 1;
    let mut out = PointSet::empty(dim)?;
    let mut idx = vec![0usize; parts.len()];
    let mut row = Vec::with_capacity(dim);
    loop {
        row.clear();
        for (f, &i) in parts.iter().zip(&idx) {
            row.extend_from_slice(f.point(i));
        }
        out.push(&row)?;
        // odometer, last factor fastest
        let mut pos = parts.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < parts[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
