//! Weighted log-utility maximization over polyhedral unit balls.
//!
//! Given a norm on `R^n` and strictly positive weights `alpha` summing to
//! one, [`solver::solve_zenger`] finds `w` with `||w|| = 1` maximizing
//! `F(x) = sum_k alpha_k log|x_k|` and returns the functional
//! `phi_k = alpha_k / w_k`, whose dual norm is one at the optimum. The
//! [`solver::certify`] step checks that claim independently.
//!
//! Supporting modules: [`seq`] (vectors, weights, eventually-constant
//! sequences), [`norms`] (norm evaluation and the dual-norm oracle),
//! [`lp`] (simplex), [`asymptotics`] (truncation behaviour of norms on
//! sequence spaces), [`numrange`] (numerical range support functions) and
//! [`cli`] (problem files and reports).

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod lp;
pub mod norms;
pub mod numrange;
pub mod seq;
pub mod solver;

pub use error::{Error, Result};
pub use norms::{Block, NormSpec, PolyhedralNorm};
pub use seq::{TailVector, Tolerances, WeightVector};

pub use solver::{certify, solve_zenger, Certificate, ZengerPair, ZengerProblem};
