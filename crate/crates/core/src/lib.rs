//! Truncated power series and the differential transformation method.
//!
//! A [`Series`] holds the Taylor coefficients `W(0..=N)` of a function about
//! `x = 0`. The linear operator table (sum, scaling, Cauchy product,
//! derivative shift, monomials) lives in [`series`]; integer powers via
//! Miller's single-sum recurrence and the exponential of a series live in
//! [`nonlinear`], each paired with a naive construction used as an oracle.
//!
//! [`lang`] parses explicit ODEs such as `D(u,2) = -1 * exp(u)` and lowers
//! them to a per-order coefficient recurrence. [`bratu`] solves the planar
//! Bratu problem `u'' + λ e^u = 0`, `u(0) = u(1) = 0` by shooting on
//! `γ = u'(0)` and compares against the closed-form solution.

pub mod bratu;
pub mod error;
pub mod io;
pub mod lang;
pub mod nonlinear;
pub mod series;

pub use error::{Error, Result};
pub use nonlinear::{exp_naive, exp_naive_counted, exp_series, pow_int, pow_naive};
pub use series::{OpCount, Series};
