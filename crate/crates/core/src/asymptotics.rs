//! Truncation behaviour of sequence norms: tables of `||P_N||`, finite
//! estimates of `liminf_N ||P_N x||`, and the refuter for the limsup norm.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::norms::{projection_norm, Block, NormSpec};
use crate::seq::{project_tail, TailVector};

/// Largest `N` the refuter will try.
pub const SEARCH_LIMIT: usize = 1_000_000;
const CONSISTENCY_TOL: f64 = 1e-9;
const BOUND_SLACK: f64 = 1e-9;

/// A norm on sequences, truncated to a polyhedral norm for each `N`.
#[derive(Debug, Clone, PartialEq)]
pub enum NormFamily {
    /// Sup norm on `R^(N+1)`.
    Sup,
    /// `coef * ||x||_inf` on `R^(N+1)`, written as a composite norm.
    ScaledSup(f64),
    /// The Example-2 norm on `R^(N+1)`, where `||P_N|| = 1 + 2^-N`.
    Example2,
    /// The limsup norm, probed on [`crate::norms::example1_test_family`].
    Example1Tail,
    /// One fixed norm for every `N`.
    Fixed(NormSpec),
}

impl NormFamily {
    /// The norm in which `P_N` is measured. One spare coordinate past `N`
    /// keeps the projection nontrivial.
    pub fn at(&self, n: usize) -> Result<NormSpec> {
        Ok(match self {
            Self::Sup => NormSpec::Sup(n + 1),
            Self::ScaledSup(c) => NormSpec::composite(vec![Block::identity(*c, n + 1)])?,
            Self::Example2 => NormSpec::Example2(n + 1),
            Self::Example1Tail => NormSpec::Example1Tail,
            Self::Fixed(spec) => spec.clone(),
        })
    }

    /// Known upper bound on `||P_N||`.
    pub fn bound(&self, n: usize) -> Option<f64> {
        match self {
            Self::Example2 => Some(1.0 + 0.5f64.powi(n as i32)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PnRow {
    pub n: usize,
    pub pn_norm: f64,
    pub bound: Option<f64>,
}

impl PnRow {
    pub fn within_bound(&self) -> bool {
        self.pn_norm >= 1.0 - BOUND_SLACK
            && self.bound.map_or(true, |b| self.pn_norm <= b + BOUND_SLACK)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PnTable {
    pub rows: Vec<PnRow>,
}

impl PnTable {
    pub fn within_bounds(&self) -> bool {
        self.rows.iter().all(PnRow::within_bound)
    }
}

pub fn pn_table(family: &NormFamily, range: RangeInclusive<usize>) -> Result<PnTable> {
    let rows = range
        .map(|n| {
            Ok(PnRow {
                n,
                pn_norm: projection_norm(&family.at(n)?, n)?,
                bound: family.bound(n),
            })
        })
        .collect::<Result<_>>()?;
    Ok(PnTable { rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiminfCheck {
    /// Minimum of `||P_N x||` over the upper half of the range.
    pub limit_estimate: f64,
    pub norm_value: f64,
    pub consistent: bool,
}

/// Compares `||x||` with a finite surrogate for `liminf_N ||P_N x||`.
pub fn liminf_check(
    spec: &NormSpec,
    x: &TailVector,
    range: RangeInclusive<usize>,
) -> Result<LiminfCheck> {
    let ns: Vec<usize> = range.collect();
    if ns.is_empty() {
        return Err(Error::InvalidCandidate("empty N range".into()));
    }
    let upper = &ns[ns.len() / 2..];
    let mut limit_estimate = f64::INFINITY;
    for &n in upper {
        limit_estimate = limit_estimate.min(spec.eval_tail(&project_tail(x, n))?);
    }
    let norm_value = spec.eval_tail(x)?;
    Ok(LiminfCheck {
        limit_estimate,
        norm_value,
        consistent: (limit_estimate - norm_value).abs() <= CONSISTENCY_TOL,
    })
}

/// Closed-form weight sequences indexed from `k = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaRule {
    /// `alpha_k = (1 - r) r^(k-1)`, which sums to one.
    Geometric { ratio: f64 },
}

impl AlphaRule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Geometric { ratio } if ratio > 0.0 && ratio < 1.0 => Ok(()),
            Self::Geometric { ratio } => Err(Error::InvalidCandidate(format!(
                "geometric ratio {ratio} is outside (0, 1)"
            ))),
        }
    }

    pub fn weight(&self, k: usize) -> f64 {
        match *self {
            Self::Geometric { ratio } => (1.0 - ratio) * ratio.powi(k as i32 - 1),
        }
    }

    /// The first `n` weights.
    pub fn truncate(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|k| self.weight(k)).collect()
    }
}

/// A sign vector `x` with `||x|| = 1` for the limsup norm and
/// `sum_k x_k phi_k = value > 1`, where `phi_k = alpha_k / w_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefutationWitness {
    pub n: usize,
    pub x: TailVector,
    pub value: f64,
}

/// Shows that `phi_k = alpha_k / w_k` has dual norm above one for the limsup
/// norm, by finding the first `N` with `sum_{k <= N} alpha_k / |w_k| > 1`.
pub fn example1_refute(w: &TailVector, alpha: AlphaRule) -> Result<RefutationWitness> {
    alpha.validate()?;
    w.check_finite()?;
    if w.tail == 0.0 {
        return Err(Error::InvalidCandidate(
            "the tail constant is zero, so w_k = 0 for all large k".into(),
        ));
    }
    if let Some(k) = w.head.iter().position(|&v| v == 0.0) {
        return Err(Error::InvalidCandidate(format!("w_{} is zero", k + 1)));
    }
    let norm = NormSpec::Example1Tail.eval_tail(w)?;
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidCandidate(format!(
            "||w|| = {norm}, expected 1"
        )));
    }

    let mut value = 0.0;
    for n in 1..=SEARCH_LIMIT {
        value += alpha.weight(n) / w.get(n - 1).abs();
        if value > 1.0 {
            let signs = (0..n).map(|k| w.get(k).signum()).collect();
            return Ok(RefutationWitness {
                n,
                x: TailVector::finite(signs),
                value,
            });
        }
    }
    Err(Error::SearchLimitExceeded(SEARCH_LIMIT))
}
