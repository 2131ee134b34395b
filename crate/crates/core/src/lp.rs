//! Dense simplex for small linear programs
//!
//! ```text
//!     maximize  <c, x>   subject to   <a_i, x> <= b_i,   x free.
//! ```
//!
//! The solver keeps a condensed (Tucker) tableau: one row per basic
//! variable, one column per nonbasic variable, so a pivot costs
//! `O(rows * n)` no matter how many constraints there are. Slack variables
//! `s_i = b_i - <a_i, x>` are nonnegative; the original variables are free
//! and, once pivoted into the basis, never leave it. Entering and leaving
//! variables are chosen with Bland's lowest-index rule.
//!
//! When some `b_i < 0` the origin is infeasible and a single artificial
//! variable is added to every row; a first phase drives it to zero.

use thiserror::Error;

use crate::seq::dot;

const MAX_PIVOTS: usize = 100_000;
/// Tableau entries below this magnitude are treated as zero in ratio tests.
const PIVOT_EPS: f64 = 1e-12;
const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("simplex exceeded {0} pivots")]
    MaxPivotsExceeded(usize),
    #[error("numerical breakdown (constraint violation {0:e})")]
    NumericalBreakdown(f64),
    #[error("instance too large for vertex enumeration: {0}")]
    TooLarge(String),
    #[error("no feasible vertex")]
    NoFeasibleVertex,
    #[error("malformed program: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    /// Maximized.
    pub objective: Vec<f64>,
    /// Constraint rows `a_i`; row `i` reads `<a_i, x> <= bounds[i]`.
    pub rows: Vec<Vec<f64>>,
    pub bounds: Vec<f64>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>, constraints: Vec<(Vec<f64>, f64)>) -> Self {
        let (rows, bounds) = constraints.into_iter().unzip();
        Self {
            objective,
            rows,
            bounds,
        }
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> Result<LpResult, LpError> {
        solve(&self.objective, &self.rows, &self.bounds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: f64,
    pub point: Vec<f64>,
    /// Constraints satisfied with equality (within 1e-9) at `point`.
    pub active_set: Vec<usize>,
}

impl LpResult {
    fn without_point(status: LpStatus, value: f64) -> Self {
        Self {
            status,
            value,
            point: Vec::new(),
            active_set: Vec::new(),
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpResult, LpError> {
    lp.solve()
}

/// Solves the program given as borrowed parts; see the module docs.
pub fn solve(objective: &[f64], rows: &[Vec<f64>], bounds: &[f64]) -> Result<LpResult, LpError> {
    let n = objective.len();
    if rows.len() != bounds.len() {
        return Err(LpError::Malformed(format!(
            "{} rows but {} bounds",
            rows.len(),
            bounds.len()
        )));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(LpError::Malformed(format!("row {i} has wrong length")));
    }
    if bounds.iter().chain(objective).any(|v| !v.is_finite()) {
        return Err(LpError::Malformed("non-finite data".into()));
    }

    let mut tab = Tableau::new(objective, rows, bounds);
    if tab.artificial.is_some() {
        tab.enter_artificial();
        tab.pivot_in_free_vars(Phase::One)?;
        tab.run(Phase::One)?;
        if tab.get(tab.objective_row(Phase::One), 0) < -FEAS_TOL * tab.bound_scale {
            return Ok(LpResult::without_point(LpStatus::Infeasible, f64::NAN));
        }
        tab.drop_artificial();
    }
    if let Some(LpStatus::Unbounded) = tab.pivot_in_free_vars(Phase::Two)? {
        return Ok(LpResult::without_point(LpStatus::Unbounded, f64::INFINITY));
    }
    if let Some(LpStatus::Unbounded) = tab.run(Phase::Two)? {
        return Ok(LpResult::without_point(LpStatus::Unbounded, f64::INFINITY));
    }

    let point = tab.primal_point();
    let mut worst = 0.0f64;
    let mut active_set = Vec::new();
    for (i, (row, &b)) in rows.iter().zip(bounds).enumerate() {
        let slack = b - dot(row, &point);
        worst = worst.max(-slack);
        if slack.abs() <= FEAS_TOL {
            active_set.push(i);
        }
    }
    if worst > FEAS_TOL * (1.0 + tab.bound_scale) {
        return Err(LpError::NumericalBreakdown(worst));
    }
    let value = dot(objective, &point);
    Ok(LpResult {
        status: LpStatus::Optimal,
        value,
        point,
        active_set,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

/// Condensed tableau. Row `r < rows` expresses basic variable `basic[r]`
/// as `t[r][0] + sum_c t[r][c] * nonbasic[c - 1]`. Row `rows` is the
/// objective, row `rows + 1` the phase-one objective `-artificial`.
struct Tableau {
    n: usize,
    rows: usize,
    cols: usize,
    t: Vec<f64>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    artificial: Option<usize>,
    obj_scale: f64,
    bound_scale: f64,
}

impl Tableau {
    fn new(objective: &[f64], rows: &[Vec<f64>], bounds: &[f64]) -> Self {
        let n = objective.len();
        let m = rows.len();
        let needs_artificial = bounds.iter().any(|&b| b < 0.0);
        let k = n + usize::from(needs_artificial);
        let cols = k + 1;
        let mut t = vec![0.0; (m + 2) * cols];
        for (i, (row, &b)) in rows.iter().zip(bounds).enumerate() {
            t[i * cols] = b;
            for (j, &a) in row.iter().enumerate() {
                t[i * cols + 1 + j] = -a;
            }
            if needs_artificial {
                t[i * cols + k] = 1.0;
            }
        }
        for (j, &c) in objective.iter().enumerate() {
            t[m * cols + 1 + j] = c;
        }
        let artificial = needs_artificial.then_some(n + m);
        if needs_artificial {
            t[(m + 1) * cols + k] = -1.0;
        }
        let mut nonbasic: Vec<usize> = (0..n).collect();
        if let Some(a) = artificial {
            nonbasic.push(a);
        }
        Self {
            n,
            rows: m,
            cols,
            t,
            basic: (n..n + m).collect(),
            nonbasic,
            artificial,
            obj_scale: objective.iter().fold(0.0f64, |s, v| s.max(v.abs())),
            bound_scale: bounds.iter().fold(0.0f64, |s, v| s.max(v.abs())),
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.cols + c]
    }

    fn is_free(&self, var: usize) -> bool {
        var < self.n
    }

    fn objective_row(&self, phase: Phase) -> usize {
        match phase {
            Phase::One => self.rows + 1,
            Phase::Two => self.rows,
        }
    }

    fn cost_eps(&self, phase: Phase) -> f64 {
        match phase {
            Phase::One => PIVOT_EPS,
            Phase::Two => PIVOT_EPS * self.obj_scale.max(f64::MIN_POSITIVE),
        }
    }

    /// Jordan exchange of basic row `r` with nonbasic column `q`.
    fn pivot(&mut self, r: usize, q: usize) {
        let cols = self.cols;
        let p = self.get(r, q);
        let inv = 1.0 / p;
        for c in 0..cols {
            self.t[r * cols + c] = if c == q {
                inv
            } else {
                -self.t[r * cols + c] * inv
            };
        }
        let pivot_row: Vec<f64> = self.t[r * cols..(r + 1) * cols].to_vec();
        for i in 0..self.rows + 2 {
            if i == r {
                continue;
            }
            let f = self.t[i * cols + q];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.t[i * cols..(i + 1) * cols];
            for c in 0..cols {
                if c == q {
                    row[c] = f * inv;
                } else {
                    row[c] += f * pivot_row[c];
                }
            }
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[q - 1]);
    }

    /// Smallest-ratio blocking row for moving column `q` in direction `dir`,
    /// ties broken by lowest basic variable index.
    fn ratio_test(&self, q: usize, dir: f64) -> Option<usize> {
        let mut best: Option<(f64, usize, usize)> = None;
        for r in 0..self.rows {
            if self.is_free(self.basic[r]) {
                continue;
            }
            let a = self.get(r, q) * dir;
            if a >= -PIVOT_EPS {
                continue;
            }
            let ratio = self.get(r, 0).max(0.0) / -a;
            let var = self.basic[r];
            best = match best {
                None => Some((ratio, var, r)),
                Some((br, bv, _)) if ratio < br || (ratio == br && var < bv) => {
                    Some((ratio, var, r))
                }
                keep => keep,
            };
        }
        best.map(|(_, _, r)| r)
    }

    fn enter_artificial(&mut self) {
        let q = self.nonbasic.len();
        let r = (0..self.rows)
            .min_by(|&a, &b| self.get(a, 0).total_cmp(&self.get(b, 0)).then(a.cmp(&b)))
            .expect("artificial variable implies at least one row");
        self.pivot(r, q);
    }

    /// Moves every nonbasic free variable into the basis so that the final
    /// point is a vertex. Returns `Unbounded` in phase two if a free
    /// variable improves the objective along an unblocked ray.
    fn pivot_in_free_vars(&mut self, phase: Phase) -> Result<Option<LpStatus>, LpError> {
        let orow = self.objective_row(phase);
        let eps = self.cost_eps(phase);
        let mut q = 1;
        while q <= self.nonbasic.len() {
            let var = self.nonbasic[q - 1];
            if !self.is_free(var) {
                q += 1;
                continue;
            }
            let cost = self.get(orow, q);
            let dir = if cost < -eps { -1.0 } else { 1.0 };
            let blocking = self.ratio_test(q, dir).or_else(|| {
                if cost.abs() <= eps {
                    self.ratio_test(q, -dir)
                } else {
                    None
                }
            });
            match blocking {
                Some(r) => {
                    self.pivot(r, q);
                    // Column q now holds a slack; rescan from the start.
                    q = 1;
                }
                None if cost.abs() > eps && phase == Phase::Two => {
                    return Ok(Some(LpStatus::Unbounded));
                }
                None => q += 1,
            }
        }
        Ok(None)
    }

    /// Bland's-rule simplex iterations on the given objective row.
    fn run(&mut self, phase: Phase) -> Result<Option<LpStatus>, LpError> {
        let orow = self.objective_row(phase);
        let eps = self.cost_eps(phase);
        for _ in 0..MAX_PIVOTS {
            let mut entering: Option<(usize, usize, f64)> = None;
            for q in 1..=self.nonbasic.len() {
                let var = self.nonbasic[q - 1];
                let cost = self.get(orow, q);
                let dir = if cost > eps {
                    1.0
                } else if self.is_free(var) && cost < -eps {
                    -1.0
                } else {
                    continue;
                };
                if entering.map_or(true, |(v, _, _)| var < v) {
                    entering = Some((var, q, dir));
                }
            }
            let Some((_, q, dir)) = entering else {
                return Ok(None);
            };
            match self.ratio_test(q, dir) {
                Some(r) => self.pivot(r, q),
                None => return Ok(Some(LpStatus::Unbounded)),
            }
        }
        Err(LpError::MaxPivotsExceeded(MAX_PIVOTS))
    }

    /// Removes the artificial variable after a successful first phase.
    fn drop_artificial(&mut self) {
        let Some(art) = self.artificial.take() else {
            return;
        };
        if let Some(r) = self.basic.iter().position(|&v| v == art) {
            let q = (1..=self.nonbasic.len())
                .filter(|&q| self.get(r, q).abs() > FEAS_TOL)
                .min_by_key(|&q| self.nonbasic[q - 1]);
            match q {
                Some(q) => self.pivot(r, q),
                None => self.remove_row(r),
            }
        }
        let q = 1 + self
            .nonbasic
            .iter()
            .position(|&v| v == art)
            .expect("artificial is nonbasic here");
        self.remove_column(q);
    }

    fn remove_row(&mut self, r: usize) {
        let cols = self.cols;
        self.t.drain(r * cols..(r + 1) * cols);
        self.basic.remove(r);
        self.rows -= 1;
    }

    fn remove_column(&mut self, q: usize) {
        let cols = self.cols;
        let mut t = Vec::with_capacity((self.rows + 2) * (cols - 1));
        for i in 0..self.rows + 2 {
            for c in 0..cols {
                if c != q {
                    t.push(self.t[i * cols + c]);
                }
            }
        }
        self.t = t;
        self.cols -= 1;
        self.nonbasic.remove(q - 1);
    }

    fn primal_point(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (r, &var) in self.basic.iter().enumerate() {
            if var < self.n {
                x[var] = self.get(r, 0);
            }
        }
        x
    }
}

/// Enumerates every `n`-subset of constraints, solves the equality system,
/// and returns the best feasible vertex. Test oracle for [`solve`].
pub fn brute_force_vertices(lp: &LinearProgram) -> Result<(f64, Vec<f64>), LpError> {
    let n = lp.dim();
    let m = lp.rows.len();
    if n == 0 || n > 6 || m > 24 {
        return Err(LpError::TooLarge(format!("n = {n}, constraints = {m}")));
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut subset: Vec<usize> = (0..n).collect();
    if m < n {
        return Err(LpError::NoFeasibleVertex);
    }
    loop {
        if let Some(x) = solve_square(&lp.rows, &lp.bounds, &subset) {
            let feasible = lp
                .rows
                .iter()
                .zip(&lp.bounds)
                .all(|(a, &b)| dot(a, &x) <= b + FEAS_TOL);
            if feasible {
                let v = dot(&lp.objective, &x);
                if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
                    best = Some((v, x));
                }
            }
        }
        // Next combination in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return best.ok_or(LpError::NoFeasibleVertex);
            }
            i -= 1;
            if subset[i] < m - n + i {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Gaussian elimination with partial pivoting on the selected rows.
fn solve_square(rows: &[Vec<f64>], bounds: &[f64], subset: &[usize]) -> Option<Vec<f64>> {
    let n = subset.len();
    let mut a: Vec<Vec<f64>> = subset
        .iter()
        .map(|&i| {
            let mut r = rows[i].clone();
            r.push(bounds[i]);
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            for j in col..=n {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (a[i][n] - s) / a[i][i];
    }
    Some(x)
}
