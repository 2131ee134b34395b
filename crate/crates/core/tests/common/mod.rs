//! Random instance generators and independent oracles shared by the
//! integration tests and the acceptance suite.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use zenger::lp::LinearProgram;
use zenger::numrange::ComplexMatrix;
use zenger::seq::{renormalize_weights, WeightVector};
use zenger::{Block, NormSpec};

/// Composite norm on `R^n` with 1 to 3 blocks of random rows.
pub fn random_composite<R: Rng>(rng: &mut R, n: usize) -> NormSpec {
    loop {
        let blocks = (0..rng.gen_range(1..=3))
            .map(|_| {
                let rows = rng.gen_range(1..=n.max(2));
                let matrix = (0..rows)
                    .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                    .collect();
                Block::new(rng.gen_range(0.25..2.0), matrix)
            })
            .collect();
        if let Ok(spec) = NormSpec::composite(blocks) {
            return spec;
        }
    }
}

pub fn random_alpha<R: Rng>(rng: &mut R, n: usize) -> WeightVector {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    renormalize_weights(&raw).unwrap()
}

pub fn random_vec<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..scale)).collect()
}

/// Bounded LP: random rows plus the box `|x_i| <= 5`. Roughly one program
/// in four has a negative right-hand side somewhere.
pub fn random_lp<R: Rng>(rng: &mut R) -> LinearProgram {
    let n = rng.gen_range(1..=4);
    let extra = rng.gen_range(1..=8);
    let shifted = rng.gen_bool(0.25);
    let mut cons = Vec::new();
    for _ in 0..extra {
        let b = if shifted {
            rng.gen_range(-1.0..2.0)
        } else {
            rng.gen_range(0.1..2.0)
        };
        cons.push((random_vec(rng, n, 1.0), b));
    }
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut row = vec![0.0; n];
            row[i] = s;
            cons.push((row, 5.0));
        }
    }
    LinearProgram::new(random_vec(rng, n, 1.0), cons)
}

pub fn random_upper_triangular<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        Complex64::default()
                    } else {
                        Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
                    }
                })
                .collect()
        })
        .collect();
    ComplexMatrix::from_rows(rows).unwrap()
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut rows = vec![vec![Complex64::default(); n]; n];
    for i in 0..n {
        rows[i][i] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            rows[i][j] = z;
            rows[j][i] = z.conj();
        }
    }
    ComplexMatrix::from_rows(rows).unwrap()
}

/// Number of eigenvalues of the Hermitian `h` below `sigma`, from the signs
/// of the pivots of an `LDL^*` factorization of `h - sigma I` (Sylvester's
/// law of inertia).
pub fn count_below(h: &ComplexMatrix, sigma: f64) -> usize {
    let n = h.dim();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| h.get(i, j)).collect())
        .collect();
    for (k, row) in a.iter_mut().enumerate() {
        row[k] -= sigma;
    }
    let mut negatives = 0;
    for k in 0..n {
        let mut d = a[k][k].re;
        if d == 0.0 {
            d = -1e-300;
        }
        if d < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = a[i][k] / d;
            for j in k + 1..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
    }
    negatives
}

/// Eigenvalues by bisection on the inertia count, ascending.
pub fn bisection_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.dim();
    let r = h.frobenius() + 1.0;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-r, r);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(h, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}
