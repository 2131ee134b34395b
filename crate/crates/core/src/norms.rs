//! Norm descriptions, evaluation, and the dual-norm oracle.
//!
//! Every finite-dimensional norm here is polyhedral: a positive combination
//! `sum_j c_j * ||A_j x||_inf`. Its unit ball is `{x : <u, x> <= 1}` for the
//! finite generator set `u = sum_j c_j * s_j * (row r_j of A_j)` with signs
//! `s_j` and row choices `r_j`, so `||x|| = max_u <u, x>` and the dual norm
//! of `g` is the value of a small linear program.

use std::borrow::Cow;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lp;
use crate::seq::{check_finite, dot, l1_norm, project, project_tail, sup_norm, TailVector};

pub const DEFAULT_GENERATOR_LIMIT: usize = 1_000_000;
const RANK_THRESHOLD: f64 = 1e-10;

/// One term `coef * ||matrix * x||_inf` of a composite norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub coef: f64,
    pub matrix: Vec<Vec<f64>>,
}

impl Block {
    pub fn new(coef: f64, matrix: Vec<Vec<f64>>) -> Self {
        Self { coef, matrix }
    }

    pub fn identity(coef: f64, n: usize) -> Self {
        Self::new(coef, identity(n))
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let m = self
            .matrix
            .iter()
            .fold(0.0f64, |m, row| m.max(dot(row, x).abs()));
        self.coef * m
    }
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// `w = (1, 1/2, 1/4, ...)` truncated to `n` entries.
pub fn example2_w(n: usize) -> Vec<f64> {
    (0..n).map(|k| 0.5f64.powi(k as i32)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    /// `||x||_inf` on `R^n`.
    Sup(usize),
    /// `sum_j coef_j * ||A_j x||_inf`; build with [`NormSpec::composite`].
    Composite { dim: usize, blocks: Vec<Block> },
    /// `||x||_inf + ||x - x_1 w||_inf` with `w_k = 2^-(k-1)`.
    ///
    /// On `R^n` this is the composite norm with blocks `I` and `I - w e_1^T`.
    /// On eventually-constant sequences it is evaluated as the norm of the
    /// full sequence space, including the contribution of coordinates past
    /// the head.
    Example2(usize),
    /// `||x||_inf + limsup_n |x_n|` on eventually-constant sequences.
    Example1Tail,
}

impl NormSpec {
    /// Validated composite norm: positive finite coefficients, rows of
    /// equal length, and stacked rows of full column rank.
    pub fn composite(blocks: Vec<Block>) -> Result<Self> {
        let dim = blocks
            .first()
            .and_then(|b| b.matrix.first())
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidNorm("composite norm needs a nonempty block".into()))?;
        if dim == 0 {
            return Err(Error::InvalidNorm("zero-dimensional block".into()));
        }
        for (j, b) in blocks.iter().enumerate() {
            if !(b.coef > 0.0 && b.coef.is_finite()) {
                return Err(Error::InvalidNorm(format!(
                    "block {} has coefficient {}",
                    j + 1,
                    b.coef
                )));
            }
            if b.matrix.is_empty() {
                return Err(Error::InvalidNorm(format!("block {} has no rows", j + 1)));
            }
            for row in &b.matrix {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        actual: row.len(),
                    });
                }
                check_finite(row)?;
            }
        }
        let rows: Vec<&[f64]> = blocks
            .iter()
            .flat_map(|b| b.matrix.iter().map(Vec::as_slice))
            .collect();
        let rank = column_rank(&rows, dim);
        if rank < dim {
            return Err(Error::RankDeficientNorm { rank, dim });
        }
        Ok(Self::Composite { dim, blocks })
    }

    /// `||diag(d) x||_inf`.
    pub fn weighted_sup(d: &[f64]) -> Result<Self> {
        let m = d
            .iter()
            .enumerate()
            .map(|(i, &di)| {
                (0..d.len())
                    .map(|j| if i == j { di } else { 0.0 })
                    .collect()
            })
            .collect();
        Self::composite(vec![Block::new(1.0, m)])
    }

    /// The same norm multiplied by `t > 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        let blocks = self
            .blocks()
            .ok_or(Error::Unsupported("scaling a non-polyhedral norm"))?;
        Self::composite(
            blocks
                .iter()
                .map(|b| Block::new(b.coef * t, b.matrix.clone()))
                .collect(),
        )
    }

    /// Ambient dimension; `None` for norms on sequences.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Sup(n) | Self::Example2(n) => Some(*n),
            Self::Composite { dim, .. } => Some(*dim),
            Self::Example1Tail => None,
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        !matches!(self, Self::Example1Tail)
    }

    /// Block form of a polyhedral norm.
    pub fn blocks(&self) -> Option<Cow<'_, [Block]>> {
        match self {
            Self::Sup(n) => Some(Cow::Owned(vec![Block::identity(1.0, *n)])),
            Self::Composite { blocks, .. } => Some(Cow::Borrowed(blocks)),
            Self::Example2(n) => {
                let w = example2_w(*n);
                let second = (0..*n)
                    .map(|k| {
                        let mut row = vec![0.0; *n];
                        row[k] += 1.0;
                        row[0] -= w[k];
                        row
                    })
                    .collect();
                Some(Cow::Owned(vec![
                    Block::identity(1.0, *n),
                    Block::new(1.0, second),
                ]))
            }
            Self::Example1Tail => None,
        }
    }

    /// Norm of a finite vector. For [`NormSpec::Example1Tail`] the vector is
    /// read as a finitely supported sequence.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_finite(x)?;
        if let Some(n) = self.dim() {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: x.len(),
                });
            }
        }
        Ok(match self {
            Self::Sup(_) | Self::Example1Tail => sup_norm(x),
            _ => self
                .blocks()
                .expect("polyhedral")
                .iter()
                .map(|b| b.eval(x))
                .sum(),
        })
    }

    /// Norm of an eventually-constant sequence.
    pub fn eval_tail(&self, x: &TailVector) -> Result<f64> {
        x.check_finite()?;
        match self {
            Self::Sup(_) => Ok(x.sup_norm()),
            Self::Example1Tail => Ok(x.sup_norm() + x.limsup_abs()),
            Self::Example2(_) => Ok(example2_sequence_norm(x)),
            Self::Composite { dim, .. } => {
                if x.tail != 0.0 || x.head.iter().skip(*dim).any(|&v| v != 0.0) {
                    return Err(Error::Unsupported(
                        "composite norms accept only sequences supported on their dimension",
                    ));
                }
                let mut v = x.head.clone();
                v.resize(*dim, 0.0);
                self.eval(&v)
            }
        }
    }

    pub fn generators(&self) -> Result<GeneratorSet> {
        self.generators_with_limit(DEFAULT_GENERATOR_LIMIT)
    }

    pub fn generators_with_limit(&self, limit: usize) -> Result<GeneratorSet> {
        let blocks = self
            .blocks()
            .ok_or(Error::Unsupported("generators of a non-polyhedral norm"))?;
        let dim = self.dim().expect("polyhedral norms have a dimension");
        let count = blocks
            .iter()
            .try_fold(1u128, |acc, b| acc.checked_mul(2 * b.matrix.len() as u128))
            .unwrap_or(u128::MAX);
        if count > limit as u128 {
            return Err(Error::GeneratorBlowup { count, limit });
        }
        // Mixed-radix counter over (sign, row) choices, one digit per block.
        let radix: Vec<usize> = blocks.iter().map(|b| 2 * b.matrix.len()).collect();
        let mut digits = vec![0usize; blocks.len()];
        let mut functionals = Vec::with_capacity(count as usize);
        loop {
            let mut u = vec![0.0; dim];
            for (b, &d) in blocks.iter().zip(&digits) {
                let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
                for (uj, rj) in u.iter_mut().zip(&b.matrix[d / 2]) {
                    *uj += b.coef * sign * rj;
                }
            }
            functionals.push(u);
            let mut j = 0;
            loop {
                if j == digits.len() {
                    return Ok(GeneratorSet { dim, functionals });
                }
                digits[j] += 1;
                if digits[j] < radix[j] {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
        }
    }
}

/// `||x||_inf + ||x - x_1 w||_inf` on the full sequence. Past the head the
/// sequence `c - x_1 t` ranges over `t` in `(0, 2^-L]`, whose supremum of
/// absolute values is attained at an endpoint of that interval.
fn example2_sequence_norm(x: &TailVector) -> f64 {
    let len = x.head.len();
    let x1 = x.get(0);
    let c = x.tail;
    let mut second = (c - x1 * 0.5f64.powi(len as i32)).abs().max(c.abs());
    for k in 1..len {
        second = second.max((x.head[k] - x1 * 0.5f64.powi(k as i32)).abs());
    }
    x.sup_norm() + second
}

/// Rank of the stacked rows by Gaussian elimination with full pivoting.
fn column_rank(rows: &[&[f64]], dim: usize) -> usize {
    let mut a: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    let mut cols: Vec<usize> = (0..dim).collect();
    while rank < dim && rank < a.len() {
        let mut best = (0.0, rank, 0);
        for i in rank..a.len() {
            for (ci, &c) in cols.iter().enumerate() {
                if a[i][c].abs() > best.0 {
                    best = (a[i][c].abs(), i, ci);
                }
            }
        }
        if best.0 <= RANK_THRESHOLD * scale {
            break;
        }
        let (_, pr, pci) = best;
        a.swap(rank, pr);
        let pc = cols.swap_remove(pci);
        for i in rank + 1..a.len() {
            let f = a[i][pc] / a[rank][pc];
            for &c in &cols {
                a[i][c] -= f * a[rank][c];
            }
            a[i][pc] = 0.0;
        }
        rank += 1;
    }
    rank
}

/// Finite description of the dual unit ball: `||x|| = max_u <u, x>`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub dim: usize,
    pub functionals: Vec<Vec<f64>>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    /// `max_u <u, x>`.
    pub fn support(&self, x: &[f64]) -> f64 {
        self.functionals
            .iter()
            .map(|u| dot(u, x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distinct functionals, with `-0.0` folded into `0.0`.
    fn distinct(&self) -> Vec<Vec<f64>> {
        let mut seen = HashSet::new();
        self.functionals
            .iter()
            .map(|u| u.iter().map(|v| v + 0.0).collect::<Vec<f64>>())
            .filter(|u| seen.insert(u.iter().map(|v| v.to_bits()).collect::<Vec<u64>>()))
            .collect()
    }
}

/// Value of the dual norm together with a maximizer over the unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct DualValue {
    pub value: f64,
    pub achiever: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceConstants {
    /// Largest `c` with `c ||x||_inf <= ||x||`.
    pub c_lower: f64,
    /// Smallest `C` with `||x|| <= C ||x||_inf`.
    pub c_upper: f64,
}

/// A polyhedral norm with its generator set and LP constraints cached, so
/// repeated oracle calls do not rebuild them.
#[derive(Debug, Clone)]
pub struct PolyhedralNorm {
    spec: NormSpec,
    generators: GeneratorSet,
    constraints: Vec<Vec<f64>>,
    ones: Vec<f64>,
}

impl PolyhedralNorm {
    pub fn new(spec: NormSpec) -> Result<Self> {
        Self::with_limit(spec, DEFAULT_GENERATOR_LIMIT)
    }

    pub fn with_limit(spec: NormSpec, limit: usize) -> Result<Self> {
        let generators = spec.generators_with_limit(limit)?;
        let constraints = generators.distinct();
        let ones = vec![1.0; constraints.len()];
        Ok(Self {
            spec,
            generators,
            constraints,
            ones,
        })
    }

    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.dim
    }

    /// Distinct generators; the unit ball is `{x : <u, x> <= 1}` over these.
    pub fn constraints(&self) -> &[Vec<f64>] {
        &self.constraints
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.spec.eval(x)
    }

    /// Linear maximization oracle: `max <g, x>` over `||x|| <= 1`.
    pub fn lmo(&self, g: &[f64]) -> Result<DualValue> {
        if g.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: g.len(),
            });
        }
        check_finite(g)?;
        let res = lp::solve(g, &self.constraints, &self.ones)?;
        match res.status {
            lp::LpStatus::Optimal => Ok(DualValue {
                value: res.value.max(0.0),
                achiever: res.point,
            }),
            status => {
                Err(lp::LpError::Malformed(format!("dual-norm program reported {status:?}")).into())
            }
        }
    }

    pub fn dual_norm(&self, g: &[f64]) -> Result<f64> {
        Ok(self.lmo(g)?.value)
    }

    /// Operator norm of the truncation `P_N`, as the largest dual norm of a
    /// truncated generator.
    pub fn projection_norm(&self, n: usize) -> Result<f64> {
        let mut seen = HashSet::new();
        let mut best = 0.0f64;
        for u in &self.constraints {
            let mut v = project(u, n);
            // u and -u give the same dual norm; keep one sign.
            if let Some(first) = v.iter().find(|x| **x != 0.0) {
                if *first < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            } else {
                continue;
            }
            v.iter_mut().for_each(|x| *x += 0.0);
            if !seen.insert(v.iter().map(|x| x.to_bits()).collect::<Vec<u64>>()) {
                continue;
            }
            best = best.max(self.dual_norm(&v)?);
        }
        Ok(best)
    }

    pub fn equivalence_constants(&self) -> Result<EquivalenceConstants> {
        let c_upper = self
            .generators
            .functionals
            .iter()
            .map(|u| l1_norm(u))
            .fold(0.0, f64::max);
        let n = self.dim();
        let mut widest = 0.0f64;
        for k in 0..n {
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            widest = widest.max(self.dual_norm(&e)?);
        }
        Ok(EquivalenceConstants {
            c_lower: 1.0 / widest,
            c_upper,
        })
    }
}

pub fn eval_norm(spec: &NormSpec, x: &[f64]) -> Result<f64> {
    spec.eval(x)
}

pub fn generators(spec: &NormSpec) -> Result<GeneratorSet> {
    spec.generators()
}

pub fn dual_norm_lmo(spec: &NormSpec, g: &[f64]) -> Result<DualValue> {
    PolyhedralNorm::new(spec.clone())?.lmo(g)
}

/// `||P_N||` for a polyhedral norm via its generators. For
/// [`NormSpec::Example1Tail`], whose ball is not polyhedral, the ratio
/// `||P_N x|| / ||x||` is maximized over [`example1_test_family`].
pub fn projection_norm(spec: &NormSpec, n: usize) -> Result<f64> {
    match spec {
        NormSpec::Example1Tail => {
            let mut best = 0.0f64;
            for x in example1_test_family(n) {
                let denom = spec.eval_tail(&x)?;
                if denom > 0.0 {
                    best = best.max(spec.eval_tail(&project_tail(&x, n))? / denom);
                }
            }
            Ok(best)
        }
        _ => PolyhedralNorm::new(spec.clone())?.projection_norm(n),
    }
}

pub fn equivalence_constants(spec: &NormSpec) -> Result<EquivalenceConstants> {
    PolyhedralNorm::new(spec.clone())?.equivalence_constants()
}

/// Deterministic family of eventually-constant sequences used to bound
/// `||P_N||` for the limsup norm: the unit vector `u = (1, 0, 0, ...)`, the
/// constant sequences `e` and `e/2`, and sign/magnitude patterns with heads
/// of length `0..=n + 2` and tails in `{0, 1/2, -1, 1/4}`.
pub fn example1_test_family(n: usize) -> Vec<TailVector> {
    let mut family = vec![
        TailVector::finite(vec![1.0]),
        TailVector::constant(1.0),
        TailVector::constant(0.5),
    ];
    let pattern = [1.0, -0.5, 0.75, -1.0, 0.25, 0.6, -0.3];
    for len in 0..=n + 2 {
        for (s, &tail) in [0.0, 0.5, -1.0, 0.25].iter().enumerate() {
            let head = (0..len).map(|k| pattern[(k + s) % pattern.len()]).collect();
            family.push(TailVector::new(head, tail));
        }
    }
    family
}
