//! Conditional-gradient maximization of `F(x) = sum_k alpha_k log|x_k|`
//! over the unit ball of a polyhedral norm.
//!
//! At an iterate `x` the gradient is `g_k = alpha_k / x_k` and
//! `<g, x> = sum alpha_k = 1`, so the Frank-Wolfe gap
//! `max_{||s|| <= 1} <g, s - x>` equals `||g||_* - 1`. Driving the gap to
//! zero is the same as driving the dual norm of `phi = alpha / x` to one,
//! which is the certified property of the returned pair.
//!
//! Plain Frank-Wolfe converges only sublinearly when the maximizer sits in
//! the relative interior of a face of the ball, which is the typical case
//! for composite norms. When a short Frank-Wolfe phase has not reached the
//! target gap, a log-barrier Newton method over the generator constraints
//! takes over from the current iterate. The stopping test is the same dual
//! norm gap in both phases.

use crate::error::{Error, Result};
use crate::norms::{NormSpec, PolyhedralNorm};
use crate::seq::{dot, Tolerances, WeightVector};

pub const DEFAULT_MAX_ITERATIONS: usize = 20_000;

/// Frank-Wolfe iterations before switching to the barrier method.
const FW_PHASE_ITERATIONS: usize = 200;
/// Smallest barrier weight tried before giving up.
const MU_FLOOR: f64 = 1e-20;

/// Largest step fraction allowed before a coordinate would cross zero.
const ZERO_GUARD: f64 = 0.99;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone)]
pub struct ZengerProblem {
    pub norm: PolyhedralNorm,
    pub alpha: WeightVector,
    pub tol: Tolerances,
    pub max_iterations: usize,
}

impl ZengerProblem {
    pub fn new(spec: NormSpec, alpha: WeightVector, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        if !spec.is_polyhedral() {
            return Err(Error::Unsupported("the solver needs a polyhedral norm"));
        }
        let dim = spec.dim().expect("polyhedral");
        if alpha.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: alpha.len(),
            });
        }
        let norm = PolyhedralNorm::new(spec)?;
        Ok(Self {
            norm,
            alpha,
            tol,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        })
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn spec(&self) -> &NormSpec {
        self.norm.spec()
    }
}

/// One accepted Frank-Wolfe iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// `F` at the iterate where the gap was measured.
    pub objective: f64,
    pub gap: f64,
    pub step: f64,
    pub min_abs_coordinate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZengerPair {
    /// Optimal bundle, normalized to `||w|| = 1`.
    pub w: Vec<f64>,
    /// Supporting functional `phi_k = alpha_k / w_k`.
    pub phi: Vec<f64>,
    pub gap: f64,
    /// `F(w)`.
    pub objective: f64,
    /// Frank-Wolfe iterations plus barrier Newton steps.
    pub iterations: usize,
    /// Frank-Wolfe iterations only.
    pub trace: Vec<IterationRecord>,
    pub newton_steps: usize,
}

impl ZengerPair {
    fn from_point(x: &[f64], norm: &PolyhedralNorm, alpha: &[f64]) -> Result<Self> {
        let r = norm.eval(x)?;
        let w: Vec<f64> = x
            .iter()
            .zip(alpha)
            .map(|(&xk, &ak)| exact_factor(ak, xk / r))
            .collect();
        let phi = alpha.iter().zip(&w).map(|(a, wk)| a / wk).collect();
        Ok(Self {
            objective: objective(alpha, &w),
            w,
            phi,
            gap: f64::NAN,
            iterations: 0,
            trace: Vec::new(),
            newton_steps: 0,
        })
    }
}

/// `F(x) = sum_k alpha_k log|x_k|`.
pub fn objective(alpha: &[f64], x: &[f64]) -> f64 {
    alpha.iter().zip(x).map(|(a, v)| a * v.abs().ln()).sum()
}

/// Returns a float within a few ulps of `w` for which
/// `w * (alpha / w) == alpha` holds exactly, or `w` itself if none is found.
fn exact_factor(alpha: f64, w: f64) -> f64 {
    let exact = |v: f64| v * (alpha / v) == alpha;
    let (mut up, mut down) = (w, w);
    for _ in 0..32 {
        if exact(up) {
            return up;
        }
        if exact(down) {
            return down;
        }
        up = up.next_up();
        down = down.next_down();
    }
    w
}

/// Runs Frank-Wolfe from `x0 = v / (2 ||v||)`, `v = (1, ..., 1)`, falling
/// back to the barrier method if needed, until the gap drops below
/// `tol.gap`. The final iterate is rescaled onto the unit sphere.
pub fn solve_zenger(problem: &ZengerProblem) -> Result<ZengerPair> {
    let alpha = problem.alpha.as_slice();
    let norm = &problem.norm;
    let n = problem.dim();
    let ones = vec![1.0; n];
    let start = norm.eval(&ones)?;
    let mut x: Vec<f64> = ones.iter().map(|v| v / (2.0 * start)).collect();
    let mut trace = Vec::new();
    let mut gap = f64::INFINITY;

    for _ in 0..problem.max_iterations.min(FW_PHASE_ITERATIONS) {
        let g = gradient(alpha, &x);
        let oracle = norm.lmo(&g)?;
        gap = (oracle.value - dot(&g, &x)).max(0.0);
        let mut record = IterationRecord {
            objective: objective(alpha, &x),
            gap,
            step: 0.0,
            min_abs_coordinate: x.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())),
        };
        if gap <= problem.tol.gap {
            trace.push(record);
            break;
        }
        let step = line_search(
            &x,
            &oracle.achiever,
            &problem.alpha,
            problem.tol.line_search,
        );
        record.step = step;
        trace.push(record);
        if step == 0.0 {
            break;
        }
        for (xk, sk) in x.iter_mut().zip(&oracle.achiever) {
            *xk = (1.0 - step) * *xk + step * sk;
        }
    }

    let mut newton_steps = 0;
    if gap > problem.tol.gap {
        let budget = problem.max_iterations.saturating_sub(trace.len());
        let polished = barrier_polish(problem, &x, budget)?;
        newton_steps = polished.steps;
        if polished.gap < gap {
            x = polished.x;
            gap = polished.gap;
        }
    }

    let iterations = trace.len() + newton_steps;
    if gap > 10.0 * problem.tol.gap {
        return Err(Error::NonConvergence { gap, iterations });
    }
    let mut pair = ZengerPair::from_point(&x, norm, alpha)?;
    pair.gap = gap;
    pair.iterations = iterations;
    pair.trace = trace;
    pair.newton_steps = newton_steps;
    Ok(pair)
}

fn gradient(alpha: &[f64], x: &[f64]) -> Vec<f64> {
    alpha.iter().zip(x).map(|(a, v)| a / v).collect()
}

struct Polished {
    x: Vec<f64>,
    gap: f64,
    steps: usize,
}

/// Path-following on `F(y) + mu * sum_i log(1 - <u_i, y>)` with `mu`
/// shrinking tenfold per stage.
///
/// At the exact barrier maximizer `alpha / y = sum_i lambda_i u_i` with
/// `lambda_i = mu / (1 - <u_i, y>)`, which bounds the Frank-Wolfe gap by
/// `m * mu` for `m` constraints. The gap is measured with the oracle once
/// that bound is within reach of the tolerance.
fn barrier_polish(problem: &ZengerProblem, x: &[f64], budget: usize) -> Result<Polished> {
    let alpha = problem.alpha.as_slice();
    let us = problem.norm.constraints();
    let m = us.len() as f64;
    let r = us
        .iter()
        .map(|u| dot(u, x))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut y: Vec<f64> = x.iter().map(|v| 0.9 * v / r).collect();
    let mut best = Polished {
        x: x.to_vec(),
        gap: f64::INFINITY,
        steps: 0,
    };
    let mut mu = 1e-2;
    while mu >= MU_FLOOR && best.steps < budget {
        best.steps += center(alpha, us, &mut y, mu, budget - best.steps);
        if m * mu <= 10.0 * problem.tol.gap {
            let g = gradient(alpha, &y);
            let gap = (problem.norm.dual_norm(&g)? - dot(&g, &y)).max(0.0);
            if gap < best.gap {
                best.gap = gap;
                best.x.clone_from(&y);
            }
            if gap <= problem.tol.gap {
                break;
            }
        }
        mu /= 10.0;
    }
    Ok(best)
}

/// Damped Newton ascent on the barrier objective; returns the step count.
fn center(alpha: &[f64], us: &[Vec<f64>], y: &mut Vec<f64>, mu: f64, budget: usize) -> usize {
    let n = y.len();
    let phi = |y: &[f64]| -> f64 {
        let mut v = objective(alpha, y);
        for u in us {
            let s = 1.0 - dot(u, y);
            if s <= 0.0 {
                return f64::NEG_INFINITY;
            }
            v += mu * s.ln();
        }
        v
    };
    let mut steps = 0;
    while steps < budget.min(100) {
        let mut grad = gradient(alpha, y);
        let mut hess = vec![vec![0.0; n]; n];
        for k in 0..n {
            hess[k][k] = alpha[k] / (y[k] * y[k]);
        }
        let mut slack = Vec::with_capacity(us.len());
        for u in us {
            let s = 1.0 - dot(u, y);
            slack.push(s);
            for i in 0..n {
                grad[i] -= mu * u[i] / s;
                let ui = mu * u[i] / (s * s);
                if ui != 0.0 {
                    for j in 0..n {
                        hess[i][j] += ui * u[j];
                    }
                }
            }
        }
        let Some(d) = cholesky_solve(hess, &grad) else {
            break;
        };
        let decrement = dot(&grad, &d);
        if !(decrement > 1e-18) {
            break;
        }
        let mut t_max: f64 = 1.0;
        for (u, s) in us.iter().zip(&slack) {
            let ud = dot(u, &d);
            if ud > 0.0 {
                t_max = t_max.min(0.99 * s / ud);
            }
        }
        for (yk, dk) in y.iter().zip(&d) {
            if yk * dk < 0.0 {
                t_max = t_max.min(-0.99 * yk / dk);
            }
        }
        let base = phi(y);
        let mut t = t_max;
        let trial = |t: f64| -> Vec<f64> { y.iter().zip(&d).map(|(a, b)| a + t * b).collect() };
        while t > 1e-12 && phi(&trial(t)) < base + 0.25 * t * decrement {
            t *= 0.5;
        }
        if t <= 1e-12 {
            break;
        }
        *y = trial(t);
        steps += 1;
    }
    steps
}

/// Solves `A z = b` for symmetric positive definite `A`.
fn cholesky_solve(mut a: Vec<Vec<f64>>, b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for j in 0..n {
        let mut d = a[j][j];
        for k in 0..j {
            d -= a[j][k] * a[j][k];
        }
        if !(d > 0.0) {
            return None;
        }
        let d = d.sqrt();
        a[j][j] = d;
        for i in j + 1..n {
            let mut v = a[i][j];
            for k in 0..j {
                v -= a[i][k] * a[j][k];
            }
            a[i][j] = v / d;
        }
    }
    let mut z = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            z[i] -= a[i][k] * z[k];
        }
        z[i] /= a[i][i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            z[i] -= a[k][i] * z[k];
        }
        z[i] /= a[i][i];
    }
    Some(z)
}

/// Step `gamma` in `[0, gamma_max]` maximizing
/// `h(gamma) = sum_k alpha_k log|(1 - gamma) x_k + gamma s_k|`.
///
/// `gamma_max` stops short of the first zero crossing of any coordinate, so
/// every term is the log of a positive affine function and `h` is concave
/// on the interval. Golden-section search then brackets the maximizer to
/// within `tol`; the result never decreases `h` below `h(0)`.
///
/// The search evaluates `h(gamma) - h(0) = sum_k alpha_k log(1 + gamma (r_k - 1))`
/// with `r_k = s_k / x_k`, which depends on `x` and `s` only through their
/// ratios and avoids cancelling two large logarithms.
pub fn line_search(x: &[f64], s: &[f64], alpha: &WeightVector, tol: f64) -> f64 {
    let alpha = alpha.as_slice();
    let ratios: Vec<f64> = s.iter().zip(x).map(|(sk, xk)| sk / xk).collect();
    let mut gamma_max: f64 = 1.0 - 1e-12;
    for &r in &ratios {
        // 1 + g (r - 1) = 0 at g = 1 / (1 - r), inside (0, 1] iff r <= 0.
        if r <= 0.0 {
            gamma_max = gamma_max.min(ZERO_GUARD / (1.0 - r));
        }
    }
    let h = |g: f64| -> f64 {
        ratios
            .iter()
            .zip(alpha)
            .map(|(r, a)| a * (g * (r - 1.0)).ln_1p())
            .sum()
    };

    let (mut lo, mut hi) = (0.0, gamma_max);
    let mut a = hi - GOLDEN * (hi - lo);
    let mut b = lo + GOLDEN * (hi - lo);
    let (mut ha, mut hb) = (h(a), h(b));
    while hi - lo > tol {
        if ha < hb {
            lo = a;
            a = b;
            ha = hb;
            b = lo + GOLDEN * (hi - lo);
            hb = h(b);
        } else {
            hi = b;
            b = a;
            hb = ha;
            a = hi - GOLDEN * (hi - lo);
            ha = h(a);
        }
    }
    let mid = 0.5 * (lo + hi);
    let mut best = (h(0.0), 0.0);
    for g in [mid, gamma_max] {
        let v = h(g);
        if v > best.0 {
            best = (v, g);
        }
    }
    best.1
}

/// Residuals of the dual-pair conditions `||w|| = 1`, `||phi||_* = 1`,
/// `sum w_k phi_k = 1` and `w_k phi_k = alpha_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub norm_residual: f64,
    pub dual_residual: f64,
    pub pairing_residual: f64,
    pub factor_residual: f64,
    /// `||w||` and `||phi||_*` as measured.
    pub norm: f64,
    pub dual_norm: f64,
    pub tolerance: f64,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.worst() <= self.tolerance
    }

    pub fn worst(&self) -> f64 {
        [
            self.norm_residual,
            self.dual_residual,
            self.pairing_residual,
            self.factor_residual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn certify(pair: &ZengerPair, problem: &ZengerProblem) -> Result<Certificate> {
    let alpha = problem.alpha.as_slice();
    let n = problem.dim();
    for v in [&pair.w, &pair.phi] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: v.len(),
            });
        }
    }
    let norm = problem.norm.eval(&pair.w)?;
    let dual_norm = problem.norm.dual_norm(&pair.phi)?;
    let factor_residual = pair
        .w
        .iter()
        .zip(&pair.phi)
        .zip(alpha)
        .map(|((w, p), a)| (w * p - a).abs())
        .fold(0.0, f64::max);
    Ok(Certificate {
        norm_residual: (norm - 1.0).abs(),
        dual_residual: (dual_norm - 1.0).abs(),
        pairing_residual: (dot(&pair.w, &pair.phi) - 1.0).abs(),
        factor_residual,
        norm,
        dual_norm,
        tolerance: problem.tol.certificate,
    })
}

/// Grid-search oracle for `n <= 3`, independent of the LP machinery.
///
/// Since `sum alpha_k = 1`, `F(y / ||y||) = F(y) - log ||y||` depends only
/// on the direction of `y`. Directions are sampled on the positive simplex
/// at spacing `1e-3`, then the best one is refined by local grid searches
/// whose spacing shrinks fourfold each round, down to `1e-9`.
pub fn brute_force_zenger(problem: &ZengerProblem) -> Result<ZengerPair> {
    let n = problem.dim();
    if n > 3 {
        return Err(Error::TooLarge(format!("dimension {n} > 3")));
    }
    let alpha = problem.alpha.as_slice();
    let spec = problem.spec();
    let value = |y: &[f64]| -> f64 {
        if y.iter().any(|&v| v <= 0.0) {
            return f64::NEG_INFINITY;
        }
        match spec.eval(y) {
            Ok(r) => objective(alpha, y) - r.ln(),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    // Free coordinates y_1..y_{n-1}; y_n = 1 - sum.
    let complete = |free: &[f64]| -> Vec<f64> {
        let mut y = free.to_vec();
        y.push(1.0 - free.iter().sum::<f64>());
        y
    };

    let steps = 1000i64;
    let mut best_free: Vec<f64> = vec![];
    let mut best_val = f64::NEG_INFINITY;
    let consider = |free: Vec<f64>, best_free: &mut Vec<f64>, best_val: &mut f64| {
        let v = value(&complete(&free));
        if v > *best_val {
            *best_val = v;
            *best_free = free;
        }
    };
    match n {
        1 => consider(vec![], &mut best_free, &mut best_val),
        2 => {
            for i in 1..steps {
                consider(vec![i as f64 / steps as f64], &mut best_free, &mut best_val);
            }
        }
        _ => {
            for i in 1..steps {
                for j in 1..steps - i {
                    consider(
                        vec![i as f64 / steps as f64, j as f64 / steps as f64],
                        &mut best_free,
                        &mut best_val,
                    );
                }
            }
        }
    }

    // Hill-climb on a (2 * REACH + 1)^(n-1) neighbourhood until it stops
    // improving, then shrink the spacing.
    const REACH: i64 = 20;
    let offsets: Vec<Vec<i64>> = match n {
        1 => vec![],
        2 => (-REACH..=REACH).map(|a| vec![a]).collect(),
        _ => (-REACH..=REACH)
            .flat_map(|a| (-REACH..=REACH).map(move |b| vec![a, b]))
            .collect(),
    };
    let mut h = 1.0 / steps as f64;
    while h > 1e-9 && n > 1 {
        loop {
            let before = best_val;
            let center = best_free.clone();
            for off in &offsets {
                let free: Vec<f64> = center
                    .iter()
                    .zip(off)
                    .map(|(c, &o)| c + o as f64 * h)
                    .collect();
                consider(free, &mut best_free, &mut best_val);
            }
            if best_val <= before {
                break;
            }
        }
        h /= 4.0;
    }

    let y = complete(&best_free);
    let mut pair = ZengerPair::from_point(&y, &problem.norm, alpha)?;
    let g: Vec<f64> = alpha.iter().zip(&pair.w).map(|(a, w)| a / w).collect();
    pair.gap = (problem.norm.dual_norm(&g)? - dot(&g, &pair.w)).max(0.0);
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::Block;
    use crate::seq::renormalize_weights;

    fn problem(spec: NormSpec, alpha: &[f64]) -> ZengerProblem {
        let alpha = renormalize_weights(alpha).unwrap();
        ZengerProblem::new(spec, alpha, Tolerances::default()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn sup_norm_solution_is_all_ones() {
        let p = problem(NormSpec::Sup(3), &[0.5, 0.3, 0.2]);
        let pair = solve_zenger(&p).unwrap();
        assert!(close(&pair.w, &[1.0, 1.0, 1.0], 1e-10), "{:?}", pair.w);
        assert!(close(&pair.phi, &[0.5, 0.3, 0.2], 1e-10));
        assert!(pair.gap <= 1e-9);
        let cert = certify(&pair, &p).unwrap();
        assert!(cert.worst() <= 1e-12, "{cert:?}");
    }

    #[test]
    fn weighted_sup_is_separable() {
        let p = problem(
            NormSpec::weighted_sup(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
            &[1.0; 4],
        );
        let pair = solve_zenger(&p).unwrap();
        assert!(
            close(&pair.w, &[1.0, 0.5, 1.0 / 3.0, 0.25], 1e-9),
            "{:?}",
            pair.w
        );
        assert!(close(&pair.phi, &[0.25, 0.5, 0.75, 1.0], 1e-9));
        assert!(certify(&pair, &p).unwrap().passed());
    }

    #[test]
    fn scaled_pair_fails_certificate() {
        let p = problem(NormSpec::Sup(3), &[0.5, 0.3, 0.2]);
        let mut pair = solve_zenger(&p).unwrap();
        pair.w.iter_mut().for_each(|w| *w *= 1.01);
        let cert = certify(&pair, &p).unwrap();
        assert!((cert.norm_residual - 0.01).abs() < 1e-9);
        assert!((cert.pairing_residual - 0.01).abs() < 1e-9);
        assert!(!cert.passed());
    }

    #[test]
    fn factorization_is_exact() {
        let p = problem(NormSpec::Example2(5), &[0.3, 0.1, 0.2, 0.25, 0.15]);
        let pair = solve_zenger(&p).unwrap();
        for ((w, phi), a) in pair.w.iter().zip(&pair.phi).zip(p.alpha.as_slice()) {
            assert_eq!(w * phi, *a);
        }
    }

    #[test]
    fn line_search_stationary_segment() {
        let alpha = renormalize_weights(&[1.0, 2.0]).unwrap();
        let x = [0.3, -0.7];
        let g = line_search(&x, &x, &alpha, 1e-12);
        let h = |g: f64| {
            objective(
                alpha.as_slice(),
                &[x[0], x[1]].map(|v| v * (1.0 - g) + v * g),
            )
        };
        assert_eq!(h(g), h(0.0));
    }

    #[test]
    fn line_search_runs_to_the_guard_when_increasing() {
        let alpha = renormalize_weights(&[1.0]).unwrap();
        let g = line_search(&[0.5], &[1.0], &alpha, 1e-12);
        assert_eq!(g, 1.0 - 1e-12);
    }

    #[test]
    fn line_search_matches_dense_scan() {
        let alpha = renormalize_weights(&[1.0, 1.0]).unwrap();
        let (x, s) = ([0.5, 0.5], [1.0, -1.0]);
        let gamma = line_search(&x, &s, &alpha, 1e-12);
        let h = |g: f64| 0.5 * (0.5 + 0.5 * g).ln() + 0.5 * (0.5 - 1.5 * g).abs().ln();
        // Dense scan of [0, 0.99/3].
        let gmax = 0.99 / 3.0;
        let scan = (0..=100_000)
            .map(|i| gmax * i as f64 / 100_000.0)
            .max_by(|a, b| h(*a).total_cmp(&h(*b)))
            .unwrap();
        assert!((gamma - scan).abs() <= 1e-10, "{gamma} vs {scan}");
    }

    #[test]
    fn line_search_interior_maximum() {
        // h(g) = 0.5 log(0.2 + 0.8 g) + 0.5 log(0.9 - 0.8 g), maximized at g = 0.4375.
        let alpha = renormalize_weights(&[1.0, 1.0]).unwrap();
        let gamma = line_search(&[0.2, 0.9], &[1.0, 0.1], &alpha, 1e-12);
        assert!((gamma - 0.4375).abs() < 1e-8, "{gamma}");
    }

    #[test]
    fn brute_force_small_cases() {
        let p = problem(NormSpec::Sup(2), &[0.5, 0.5]);
        let b = brute_force_zenger(&p).unwrap();
        assert!(close(&b.w, &[1.0, 1.0], 1e-8), "{:?}", b.w);
        let p = problem(NormSpec::weighted_sup(&[1.0, 2.0]).unwrap(), &[0.5, 0.5]);
        let b = brute_force_zenger(&p).unwrap();
        assert!(close(&b.w, &[1.0, 0.5], 1e-8), "{:?}", b.w);
        let p = problem(NormSpec::Sup(4), &[1.0; 4]);
        assert!(matches!(brute_force_zenger(&p), Err(Error::TooLarge(_))));
    }

    #[test]
    fn problem_validation() {
        let alpha = renormalize_weights(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            ZengerProblem::new(NormSpec::Sup(3), alpha.clone(), Tolerances::default()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ZengerProblem::new(NormSpec::Example1Tail, alpha, Tolerances::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn exhausted_iterations_report_nonconvergence() {
        let spec = NormSpec::composite(vec![
            Block::identity(1.0, 3),
            Block::new(1.0, vec![vec![1.0, -0.4, 0.3], vec![0.2, 0.9, -0.5]]),
        ])
        .unwrap();
        let p = problem(spec, &[0.2, 0.5, 0.3]).with_max_iterations(1);
        assert!(matches!(
            solve_zenger(&p),
            Err(Error::NonConvergence { iterations: 1, .. })
        ));
    }
}
