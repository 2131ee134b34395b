//! Vectors, eventually-constant sequences, weights and tolerances.
//!
//! Finite vectors are plain `[f64]` slices. Infinite sequences are encoded
//! as [`TailVector`]s: a finite head followed by a constant tail, which is
//! enough to evaluate sup norms, `limsup` terms and truncations exactly.

use crate::error::{Error, Result};

/// An eventually-constant sequence `(head_1, ..., head_N, c, c, c, ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailVector {
    pub head: Vec<f64>,
    pub tail: f64,
}

impl TailVector {
    pub fn new(head: Vec<f64>, tail: f64) -> Self {
        Self { head, tail }
    }

    /// The constant sequence `(c, c, c, ...)`.
    pub fn constant(c: f64) -> Self {
        Self::new(Vec::new(), c)
    }

    /// A finitely supported sequence.
    pub fn finite(head: Vec<f64>) -> Self {
        Self::new(head, 0.0)
    }

    /// Entry `k` (0-based) of the represented sequence.
    pub fn get(&self, k: usize) -> f64 {
        self.head.get(k).copied().unwrap_or(self.tail)
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.head).max(self.tail.abs())
    }

    /// `limsup_n |x_n|`, which for an eventually-constant sequence is `|c|`.
    pub fn limsup_abs(&self) -> f64 {
        self.tail.abs()
    }

    pub fn scale(&self, t: f64) -> Self {
        Self::new(self.head.iter().map(|v| v * t).collect(), self.tail * t)
    }

    /// Whether both encodings describe the same sequence.
    pub fn same_sequence(&self, other: &TailVector) -> bool {
        let len = self.head.len().max(other.head.len());
        self.tail == other.tail && (0..len).all(|k| self.get(k) == other.get(k))
    }

    pub fn check_finite(&self) -> Result<()> {
        check_finite(&self.head)?;
        if !self.tail.is_finite() {
            return Err(Error::NonFinite(self.head.len() + 1));
        }
        Ok(())
    }
}

pub fn check_finite(x: &[f64]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(k) => Err(Error::NonFinite(k + 1)),
        None => Ok(()),
    }
}

pub fn sup_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

pub fn l1_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Natural projection `P_N` on a finite vector: keeps the first `n`
/// coordinates and zeroes the rest. The dimension is unchanged.
pub fn project(x: &[f64], n: usize) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(k, &v)| if k < n { v } else { 0.0 })
        .collect()
}

/// Natural projection `P_N` on an eventually-constant sequence. The result
/// has a head of exactly `n` entries and a zero tail.
pub fn project_tail(x: &TailVector, n: usize) -> TailVector {
    TailVector::finite((0..n).map(|k| x.get(k)).collect())
}

/// Strictly positive weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Uniform weights `1/n`.
    pub fn uniform(n: usize) -> Result<Self> {
        renormalize_weights(&vec![1.0; n])
    }
}

impl AsRef<[f64]> for WeightVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

fn check_positive(alpha: &[f64]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::EmptyWeights);
    }
    check_finite(alpha)?;
    match alpha.iter().position(|&a| a <= 0.0) {
        Some(k) => Err(Error::NonPositiveWeight(k + 1)),
        None => Ok(()),
    }
}

/// Accepts `alpha` unchanged if every entry is positive and the sum is
/// within `tol.weight` of one.
pub fn validate_weights(alpha: &[f64], tol: &Tolerances) -> Result<WeightVector> {
    check_positive(alpha)?;
    let sum: f64 = alpha.iter().sum();
    if (sum - 1.0).abs() > tol.weight {
        return Err(Error::SumMismatch(sum));
    }
    Ok(WeightVector(alpha.to_vec()))
}

/// Divides positive weights by their sum.
pub fn renormalize_weights(alpha: &[f64]) -> Result<WeightVector> {
    check_positive(alpha)?;
    let sum: f64 = alpha.iter().sum();
    Ok(WeightVector(alpha.iter().map(|a| a / sum).collect()))
}

/// Numeric tolerances shared by the solver and the certificate checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub weight: f64,
    /// Frank-Wolfe stopping gap.
    pub gap: f64,
    pub certificate: f64,
    pub line_search: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            weight: 1e-10,
            gap: 1e-9,
            certificate: 1e-6,
            line_search: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let named = [
            (self.weight, "weight"),
            (self.gap, "gap"),
            (self.certificate, "certificate"),
            (self.line_search, "line_search"),
        ];
        for (v, name) in named {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidTolerance(name));
            }
        }
        Ok(())
    }
}
