//! Plain-Rust demo operations. Each returns a serializable value; the wasm
//! layer in the crate root only turns them into JSON.

use dtm_core::bratu::{
    analytic_theta_roots, compare, critical_lambda, lambda_of_theta, AnalyticBratu, Branch,
    CriticalPoint, GridRow,
};
use dtm_core::{exp_naive_counted, exp_series, pow_int, pow_naive, Series};
use serde::Serialize;

/// Largest series order the page accepts; keeps the naive path interactive.
pub const MAX_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub lambda: f64,
    pub branch: Branch,
    pub gamma: f64,
    pub theta: f64,
    pub residual: f64,
    pub max_abs_err: f64,
    pub rows: Vec<GridRow>,
}

/// Shoots for `u'(0)`, sums the series on a grid and sets it beside the closed form.
pub fn bratu_profile(
    lambda: f64,
    order: usize,
    branch: &str,
    grid: usize,
) -> Result<Profile, String> {
    if !(1e-3..=10.0).contains(&lambda) {
        return Err(format!("lambda must lie in [0.001, 10], got {lambda}"));
    }
    if order > MAX_ORDER {
        return Err(format!("order must be at most {MAX_ORDER}"));
    }
    let branch: Branch = branch.parse().map_err(|e: dtm_core::Error| e.to_string())?;
    let cmp = compare(lambda, order, grid, branch).map_err(|e| e.to_string())?;
    Ok(Profile {
        lambda,
        branch,
        gamma: cmp.solution.gamma,
        theta: cmp.theta,
        residual: cmp.solution.residual,
        max_abs_err: cmp.max_abs_err,
        rows: cmp.rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub theta: f64,
    pub gamma: f64,
    /// Peak value `u(1/2)`.
    pub peak: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fold {
    /// `(θ, λ(θ))` samples.
    pub curve: Vec<[f64; 2]>,
    pub critical: CriticalPoint,
    pub lambda: f64,
    pub roots: Vec<Root>,
}

/// The `λ(θ)` curve on `(0, theta_max]` with the closed-form roots at `lambda`.
pub fn fold_diagram(lambda: f64, theta_max: f64, samples: usize) -> Result<Fold, String> {
    if !(theta_max > 0.0 && theta_max.is_finite()) || samples < 2 {
        return Err("need theta_max > 0 and at least 2 samples".into());
    }
    let curve = (1..=samples)
        .map(|i| {
            let t = theta_max * i as f64 / samples as f64;
            [t, lambda_of_theta(t)]
        })
        .collect();
    let roots = analytic_theta_roots(lambda)
        .into_iter()
        .map(|theta| {
            let a = AnalyticBratu { lambda, theta };
            Root {
                theta,
                gamma: a.gamma(),
                peak: a.u(0.5),
            }
        })
        .collect();
    Ok(Fold {
        curve,
        critical: critical_lambda(),
        lambda,
        roots,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesComparison {
    pub op: String,
    pub m: Option<u32>,
    pub input: Vec<f64>,
    pub recurrence: Vec<f64>,
    pub naive: Vec<f64>,
    pub count_recurrence: u64,
    pub count_naive: u64,
    pub max_abs_diff: f64,
}

/// Parses coefficients separated by commas and/or whitespace.
pub fn parse_coeffs(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("not a number: '{t}'")))
        .collect()
}

/// Runs `op` ("pow" or "exp") both ways and reports the two results and counts.
pub fn series_op(op: &str, coeffs: &str, m: u32) -> Result<SeriesComparison, String> {
    let input = parse_coeffs(coeffs)?;
    if input.len() > MAX_ORDER + 1 {
        return Err(format!("at most {} coefficients", MAX_ORDER + 1));
    }
    let a = Series::new(input.clone()).map_err(|e| e.to_string())?;
    let ((fast, cf), (slow, cs), m) = match op {
        "pow" => (
            pow_int(&a, m).map_err(|e| e.to_string())?,
            pow_naive(&a, m).map_err(|e| e.to_string())?,
            Some(m),
        ),
        "exp" => (
            exp_series(&a).map_err(|e| e.to_string())?,
            exp_naive_counted(&a).map_err(|e| e.to_string())?,
            None,
        ),
        other => return Err(format!("unknown operation '{other}'")),
    };
    let max_abs_diff = fast
        .coeffs()
        .iter()
        .zip(slow.coeffs())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(SeriesComparison {
        op: op.to_string(),
        m,
        input,
        recurrence: fast.into_coeffs(),
        naive: slow.into_coeffs(),
        count_recurrence: cf.multiplies,
        count_naive: cs.multiplies,
        max_abs_diff,
    })
}
