//! Numerical ranges of complex matrices through their support function.
//!
//! The support function of `W(A) = {<Ax, x> : |x|_2 = 1}` in direction `theta`
//! is the largest eigenvalue of the Hermitian part of `e^{-i theta} A`. For an
//! upper-triangular `A` the eigenvalues sit on the diagonal, so checking that
//! each of them lies under every support line tests the containment of the
//! spectral hull in the range.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 256;
pub const MARGIN_TOL: f64 = 1e-8;
const HERMITIAN_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Dense square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare("empty matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(j) = row
                .iter()
                .position(|z| !(z.re.is_finite() && z.im.is_finite()))
            {
                return Err(Error::NonFinite(i * n + j + 1));
            }
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Complex64::from).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut data = vec![Complex64::default(); n * n];
        for (k, &v) in d.iter().enumerate() {
            data[k * n + k] = v;
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|k| self.get(k, k)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max |H - H^*|` over entries.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// First nonzero entry below the diagonal, 1-based.
    pub fn check_upper_triangular(&self) -> Result<()> {
        for i in 1..self.n {
            for j in 0..i {
                if self.get(i, j) != Complex64::default() {
                    return Err(Error::NotTriangular {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(())
    }

    /// `(e^{-i theta} A + e^{i theta} A^*) / 2`, Hermitian by construction.
    pub fn rotated_hermitian_part(&self, theta: f64) -> Self {
        let rot = Complex64::from_polar(1.0, -theta);
        let mut h = Self {
            n: self.n,
            data: vec![Complex64::default(); self.n * self.n],
        };
        for i in 0..self.n {
            h.set(i, i, Complex64::from((rot * self.get(i, i)).re));
            for j in i + 1..self.n {
                let v = (rot * self.get(i, j) + (rot * self.get(j, i)).conj()) * 0.5;
                h.set(i, j, v);
                h.set(j, i, v.conj());
            }
        }
        h
    }

    fn off_diagonal_mass(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic Jacobi
/// rotations.
///
/// Each rotation first removes the phase of `h_pq` with a diagonal unitary
/// and then applies the real symmetric Jacobi rotation to rows and columns
/// `p, q`. Sweeps stop once the off-diagonal Frobenius mass is at most
/// `1e-12 * max(1, ||H||_F)`.
pub fn jacobi_eigen(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.n;
    let mut a = h.clone();
    for k in 0..n {
        let d = a.get(k, k).re;
        a.set(k, k, Complex64::from(d));
    }
    let target = OFF_DIAGONAL_TOL * a.frobenius().max(1.0);
    for _ in 0..MAX_SWEEPS {
        if a.off_diagonal_mass() <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|k| a.get(k, k).re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a.get(p, q);
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.n;
    // Column q times e^{-i arg b}, row q times e^{i arg b}: h_pq becomes |b|.
    let phase = b.conj() / mag;
    for k in 0..n {
        a.set(k, q, a.get(k, q) * phase);
    }
    for k in 0..n {
        a.set(q, k, a.get(q, k) * phase.conj());
    }

    let (app, aqq) = (a.get(p, p).re, a.get(q, q).re);
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        let (kp, kq) = (a.get(k, p), a.get(k, q));
        a.set(k, p, kp * c - kq * s);
        a.set(k, q, kp * s + kq * c);
    }
    for k in 0..n {
        let (pk, qk) = (a.get(p, k), a.get(q, k));
        a.set(p, k, pk * c - qk * s);
        a.set(q, k, pk * s + qk * c);
    }
    a.set(p, p, Complex64::from(app - t * mag));
    a.set(q, q, Complex64::from(aqq + t * mag));
    a.set(p, q, Complex64::default());
    a.set(q, p, Complex64::default());
}

/// `h(theta) = max Re(e^{-i theta} z)` over `z` in the numerical range.
pub fn support_function(a: &ComplexMatrix, theta: f64) -> Result<f64> {
    let eig = jacobi_eigen(&a.rotated_hermitian_part(theta))?;
    Ok(*eig.last().expect("nonempty matrix"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportCurve {
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
}

/// Support function on the uniform grid `theta_i = 2 pi i / grid`.
pub fn support_curve(a: &ComplexMatrix, grid: usize) -> Result<SupportCurve> {
    if grid < 8 {
        return Err(Error::InvalidGrid(grid));
    }
    let thetas: Vec<f64> = (0..grid)
        .map(|i| 2.0 * PI * i as f64 / grid as f64)
        .collect();
    let values = thetas
        .iter()
        .map(|&t| support_function(a, t))
        .collect::<Result<_>>()?;
    Ok(SupportCurve { thetas, values })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HullCheck {
    pub ok: bool,
    /// `min h(theta) - Re(e^{-i theta} lambda)` over eigenvalues and angles.
    pub worst_margin: f64,
    pub curve: SupportCurve,
}

pub fn spectrum_hull_check(a: &ComplexMatrix, grid: usize) -> Result<HullCheck> {
    a.check_upper_triangular()?;
    let curve = support_curve(a, grid)?;
    let mut worst_margin = f64::INFINITY;
    for (&theta, &h) in curve.thetas.iter().zip(&curve.values) {
        let rot = Complex64::from_polar(1.0, -theta);
        for k in 0..a.dim() {
            worst_margin = worst_margin.min(h - (rot * a.get(k, k)).re);
        }
    }
    Ok(HullCheck {
        ok: worst_margin >= -MARGIN_TOL,
        worst_margin,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_and_swap_eigenvalues() {
        let d = ComplexMatrix::from_real(vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ]);
        assert_eq!(jacobi_eigen(&d.unwrap()).unwrap(), vec![1.0, 2.0, 3.0]);
        let s = ComplexMatrix::from_real(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = jacobi_eigen(&s).unwrap();
        assert!(
            (e[0] + 1.0).abs() < 1e-15 && (e[1] - 1.0).abs() < 1e-15,
            "{e:?}"
        );
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let h = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0)],
        ]);
        let e = jacobi_eigen(&h.unwrap()).unwrap();
        assert!(e[0].abs() < 1e-14 && (e[1] - 2.0).abs() < 1e-14, "{e:?}");
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let a = ComplexMatrix::from_real(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(jacobi_eigen(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn support_function_examples() {
        let d = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(support_function(&d, 0.0).unwrap(), 1.0);
        assert!(support_function(&d, PI).unwrap().abs() < 1e-15);
        let shift = ComplexMatrix::from_real(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        for theta in [0.0, 0.3, 1.0, 2.5, 4.0] {
            assert!((support_function(&shift, theta).unwrap() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn hull_check_examples() {
        let d = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let r = spectrum_hull_check(&d, 64).unwrap();
        assert!(r.ok);
        assert_eq!(r.worst_margin, 0.0);
        let shift = ComplexMatrix::from_real(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = spectrum_hull_check(&shift, 64).unwrap();
        assert!(r.ok && (r.worst_margin - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hull_check_input_errors() {
        let lower = ComplexMatrix::from_real(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(
            spectrum_hull_check(&lower, 64).unwrap_err(),
            Error::NotTriangular { row: 2, col: 1 }
        );
        let d = ComplexMatrix::diagonal(&[c(1.0, 0.0)]);
        assert_eq!(
            spectrum_hull_check(&d, 4).unwrap_err(),
            Error::InvalidGrid(4)
        );
        assert!(matches!(
            ComplexMatrix::from_real(vec![vec![1.0, 2.0]]),
            Err(Error::NotSquare(_))
        ));
    }
}
