//! The planar Bratu problem `u'' + λ e^u = 0` on `[0, 1]`, `u(0) = u(1) = 0`.
//!
//! The series solution starts from `U(0) = 0`, `U(1) = γ`. Two recurrences
//! produce the remaining coefficients:
//!
//! * [`bratu_coeffs`], the closed single-sum form obtained by eliminating the
//!   exponential's coefficients:
//!   `U(k+2) = 1/(k(k+1)(k+2)) * sum_{j=1}^{k} j (k-j+1)(k-j+2) U(j) U(k-j+2)`
//!   with `U(2) = -(λ/2) e^{U(0)}`;
//! * [`bratu_coeffs_exp`], which keeps `W = e^u` explicit:
//!   `U(k+2) = -λ W(k) / ((k+1)(k+2))`.
//!
//! [`shoot`] picks `γ` so that the truncated sum `Σ U(k)` (the value at
//! `x = 1`) vanishes. The closed form `u(x) = -2 ln[cosh((x-1/2)θ/2)/cosh(θ/4)]`
//! with `θ = sqrt(2λ) cosh(θ/4)` serves as the reference.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinear::exp_step;
use crate::series::{rising, Series};

/// Which of the two solutions below the critical `λ`, ordered by `γ` (equivalently `θ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Lower,
    Upper,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Branch::Lower),
            "upper" => Ok(Branch::Upper),
            other => Err(Error::InvalidArgument(format!(
                "unknown branch '{other}' (expected lower or upper)"
            ))),
        }
    }
}

/// `λ > 0` and a truncation order `N >= 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BratuProblem {
    lambda: f64,
    order: usize,
}

impl BratuProblem {
    pub fn new(lambda: f64, order: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if order < 3 {
            return Err(Error::InvalidArgument(format!(
                "order must be at least 3, got {order}"
            )));
        }
        Ok(Self { lambda, order })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self, gamma: f64) -> Result<Series> {
        bratu_coeffs(self.lambda, gamma, self.order)
    }

    pub fn shoot(&self, branch: Branch, config: &ShootConfig) -> Result<BratuSolution> {
        shoot_with(self.lambda, self.order, branch, config)
    }
}

/// Outcome of [`shoot`].
#[derive(Debug, Clone, PartialEq)]
pub struct BratuSolution {
    pub lambda: f64,
    /// `γ = U(1) = u'(0)`.
    pub gamma: f64,
    pub coeffs: Series,
    /// `Σ_{k=0}^{N} U(k)`, the truncated value at `x = 1`.
    pub residual: f64,
    pub branch: Branch,
    /// Whether `|residual|` reached the configured tolerance.
    pub converged: bool,
    pub iterations: usize,
}

/// Bracketing scan and bisection settings for [`shoot_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootConfig {
    pub gamma_max: f64,
    pub gamma_step: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// A root is accepted only if `(|U(N-1)| + |U(N)|) / max_k |U(k)|` is at
    /// most this; otherwise the truncated series has not converged at `x = 1`
    /// and the sign change is an artifact of truncation.
    pub tail_ratio: f64,
}

impl Default for ShootConfig {
    fn default() -> Self {
        Self {
            gamma_max: 50.0,
            gamma_step: 0.25,
            tolerance: 1e-12,
            max_iterations: 200,
            tail_ratio: 0.1,
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 3 {
        return Err(Error::InvalidArgument(format!(
            "Bratu series needs order >= 3, got {order}"
        )));
    }
    Ok(())
}

fn coeffs_closed(lambda: f64, gamma: f64, order: usize) -> Vec<f64> {
    let mut u = Vec::with_capacity(order + 1);
    let u0: f64 = 0.0;
    u.push(u0);
    u.push(gamma);
    u.push(-(lambda / 2.0) * u0.exp());
    for k in 1..=order - 2 {
        let mut acc = 0.0;
        for j in 1..=k {
            let weight = (j * (k - j + 1) * (k - j + 2)) as f64;
            acc += weight * u[j] * u[k - j + 2];
        }
        u.push(acc / (k * (k + 1) * (k + 2)) as f64);
    }
    u
}

/// Series coefficients `U(0..=N)` from the closed single-sum recurrence.
pub fn bratu_coeffs(lambda: f64, gamma: f64, order: usize) -> Result<Series> {
    check_order(order)?;
    Series::from_vec_checked(coeffs_closed(lambda, gamma, order))
}

/// Series coefficients `U(0..=N)` through the explicit `W = e^u` recurrence.
///
/// Performs the same floating-point operations, in the same order, as the
/// equation `D(u,2) = -λ * exp(u)` run through [`crate::lang`].
pub fn bratu_coeffs_exp(lambda: f64, gamma: f64, order: usize) -> Result<Series> {
    check_order(order)?;
    let mut u = vec![0.0, gamma];
    let mut w = Vec::with_capacity(order - 1);
    let scale = -lambda;
    for k in 0..=order - 2 {
        let (wk, _) = exp_step(&u, &w, k);
        w.push(wk);
        u.push(scale * wk / rising(k, 2));
    }
    Series::from_vec_checked(u)
}

/// `Σ_{k=0}^{N} U(k)`: the truncated series evaluated at `x = 1`.
pub fn boundary_residual(lambda: f64, gamma: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    Ok(coeffs_closed(lambda, gamma, order)
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc + c))
}

/// [`shoot_with`] using [`ShootConfig::default`].
pub fn shoot(lambda: f64, order: usize, branch: Branch) -> Result<BratuSolution> {
    shoot_with(lambda, order, branch, &ShootConfig::default())
}

enum Bracket {
    Exact(f64),
    Interval { lo: f64, hi: f64, r_lo: f64 },
}

/// Finds `γ` with `Σ U(k) = 0` by scanning `[0, gamma_max]` for sign
/// changes and bisecting the smallest (lower) or largest (upper) one.
///
/// The truncated residual is a polynomial in `γ` and has sign changes that
/// belong to no solution; candidates whose series tail fails
/// [`ShootConfig::tail_ratio`] are skipped in favour of the next one.
pub fn shoot_with(
    lambda: f64,
    order: usize,
    branch: Branch,
    config: &ShootConfig,
) -> Result<BratuSolution> {
    check_order(order)?;
    if !(config.gamma_step > 0.0 && config.gamma_max >= 0.0) {
        return Err(Error::InvalidArgument(
            "gamma scan needs step > 0 and max >= 0".into(),
        ));
    }
    let residual = |g: f64| {
        coeffs_closed(lambda, g, order)
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc + c)
    };

    let steps = (config.gamma_max / config.gamma_step + 1e-9).floor() as usize;
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let g = i as f64 * config.gamma_step;
        let r = residual(g);
        if !r.is_finite() {
            prev = None;
            continue;
        }
        if r == 0.0 {
            brackets.push(Bracket::Exact(g));
        } else if let Some((pg, pr)) = prev {
            if pr != 0.0 && (pr < 0.0) != (r < 0.0) {
                brackets.push(Bracket::Interval {
                    lo: pg,
                    hi: g,
                    r_lo: pr,
                });
            }
        }
        prev = Some((g, r));
    }
    if branch == Branch::Upper {
        brackets.reverse();
    }
    let mut rejected = 0;
    for bracket in &brackets {
        let (gamma, iterations) = match *bracket {
            Bracket::Exact(g) => (g, 0),
            Bracket::Interval { lo, hi, r_lo } => bisect_residual(residual, lo, hi, r_lo, config),
        };
        let coeffs = bratu_coeffs(lambda, gamma, order)?;
        if tail_ratio(&coeffs) > config.tail_ratio {
            rejected += 1;
            continue;
        }
        let residual = residual(gamma);
        return Ok(BratuSolution {
            lambda,
            gamma,
            coeffs,
            residual,
            branch,
            converged: residual.abs() <= config.tolerance,
            iterations,
        });
    }
    Err(Error::NoSignChange {
        gamma_max: config.gamma_max,
        rejected,
    })
}

fn tail_ratio(u: &Series) -> f64 {
    let c = u.coeffs();
    let n = c.len() - 1;
    let max = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return 0.0;
    }
    (c[n].abs() + c[n - 1].abs()) / max
}

fn bisect_residual(
    residual: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    mut r_lo: f64,
    config: &ShootConfig,
) -> (f64, usize) {
    let mut best = (lo, r_lo.abs());
    let mut it = 0;
    while it < config.max_iterations {
        it += 1;
        let mid = 0.5 * (lo + hi);
        let r = residual(mid);
        if r.abs() < best.1 {
            best = (mid, r.abs());
        }
        if r.abs() <= config.tolerance || mid == lo || mid == hi {
            break;
        }
        if (r < 0.0) == (r_lo < 0.0) {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
        }
    }
    (best.0, it)
}

/// A root `θ` of `θ = sqrt(2λ) cosh(θ/4)` and the closed-form solution it defines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticBratu {
    pub lambda: f64,
    pub theta: f64,
}

impl AnalyticBratu {
    pub fn u(&self, x: f64) -> f64 {
        analytic_u(self.theta, x)
    }

    /// `u'(0) = θ tanh(θ/4)`.
    pub fn gamma(&self) -> f64 {
        self.theta * (self.theta / 4.0).tanh()
    }

    /// `θ - sqrt(2λ) cosh(θ/4)`.
    pub fn defect(&self) -> f64 {
        theta_defect(self.lambda, self.theta)
    }
}

fn theta_defect(lambda: f64, theta: f64) -> f64 {
    theta - (2.0 * lambda).sqrt() * (theta / 4.0).cosh()
}

const THETA_SCAN_STEP: f64 = 0.05;
const THETA_SCAN_MAX: f64 = 60.0;

/// All roots of `θ = sqrt(2λ) cosh(θ/4)` on `(0, 60]`, ascending. Zero,
/// one or two entries; a tangential double root at the critical `λ` is not
/// detected by the sign-change scan.
pub fn analytic_theta_roots(lambda: f64) -> Vec<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Vec::new();
    }
    let g = |t: f64| theta_defect(lambda, t);
    let steps = (THETA_SCAN_MAX / THETA_SCAN_STEP).round() as usize;
    let mut roots = Vec::new();
    let mut lo = 0.0;
    let mut g_lo = g(lo);
    for i in 1..=steps {
        let hi = i as f64 * THETA_SCAN_STEP;
        let g_hi = g(hi);
        if g_hi == 0.0 {
            roots.push(hi);
        } else if g_lo != 0.0 && (g_lo < 0.0) != (g_hi < 0.0) {
            roots.push(bisect(g, lo, hi, g_lo));
        }
        lo = hi;
        g_lo = g_hi;
    }
    roots
}

/// Bisects until the bracket stops shrinking in floating point.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Roots of the θ equation wrapped as closed-form solutions.
pub fn analytic_solutions(lambda: f64) -> Vec<AnalyticBratu> {
    analytic_theta_roots(lambda)
        .into_iter()
        .map(|theta| AnalyticBratu { lambda, theta })
        .collect()
}

/// `u(x) = -2 ln[cosh((x - 1/2) θ/2) / cosh(θ/4)]`.
pub fn analytic_u(theta: f64, x: f64) -> f64 {
    -2.0 * ((((x - 0.5) * theta / 2.0).cosh()) / (theta / 4.0).cosh()).ln()
}

/// Fold point of the solution curve: `λ(θ) = θ² / (2 cosh²(θ/4))` at its maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub theta: f64,
    pub lambda: f64,
}

/// `λ` as a function of `θ` along the solution curve.
pub fn lambda_of_theta(theta: f64) -> f64 {
    let c = (theta / 4.0).cosh();
    theta * theta / (2.0 * c * c)
}

/// Locates the critical `λ` by golden-section maximization of [`lambda_of_theta`].
pub fn critical_lambda() -> CriticalPoint {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 20.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    while (b - a).abs() > 1e-12 {
        if lambda_of_theta(c) > lambda_of_theta(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    let theta = 0.5 * (a + b);
    CriticalPoint {
        theta,
        lambda: lambda_of_theta(theta),
    }
}

/// One row of the grid comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRow {
    pub x: f64,
    pub u_dtm: f64,
    pub u_analytic: f64,
    pub abs_err: f64,
}

/// Shooting solution checked against the closed form on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub solution: BratuSolution,
    pub theta: f64,
    pub rows: Vec<GridRow>,
    pub max_abs_err: f64,
}

/// [`compare_with`] using [`ShootConfig::default`].
pub fn compare(
    lambda: f64,
    order: usize,
    grid_points: usize,
    branch: Branch,
) -> Result<Comparison> {
    compare_with(lambda, order, grid_points, branch, &ShootConfig::default())
}

/// Shoots for `branch` and evaluates both solutions at `x = i / (grid_points - 1)`.
/// The lower branch pairs with the smaller `θ`, the upper with the larger.
pub fn compare_with(
    lambda: f64,
    order: usize,
    grid_points: usize,
    branch: Branch,
    config: &ShootConfig,
) -> Result<Comparison> {
    if grid_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2 points, got {grid_points}"
        )));
    }
    let solution = shoot_with(lambda, order, branch, config)?;
    let roots = analytic_theta_roots(lambda);
    let theta = match branch {
        Branch::Lower => roots.first(),
        Branch::Upper => roots.last(),
    }
    .copied()
    .ok_or(Error::NoAnalyticRoot { lambda })?;

    let last = (grid_points - 1) as f64;
    let rows: Vec<GridRow> = (0..grid_points)
        .map(|i| {
            let x = i as f64 / last;
            let u_dtm = solution.coeffs.evaluate(x);
            let u_analytic = analytic_u(theta, x);
            GridRow {
                x,
                u_dtm,
                u_analytic,
                abs_err: (u_dtm - u_analytic).abs(),
            }
        })
        .collect();
    let max_abs_err = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    Ok(Comparison {
        solution,
        theta,
        rows,
        max_abs_err,
    })
}
