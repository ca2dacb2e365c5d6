//! Integer powers and the exponential of a truncated series.
//!
//! [`pow_int`] uses Miller's recurrence
//!
//! ```text
//! c_0 = a_0^m
//! c_k = 1/(k a_0) * sum_{j=1}^{min(k,L)} ((m+1) j - k) a_j c_{k-j}
//! ```
//!
//! and [`exp_series`] the companion single sum
//!
//! ```text
//! W(0) = e^{Y(0)}
//! W(k) = 1/k * sum_{j=1}^{k} j Y(j) W(k-j)
//! ```
//!
//! Both are checked against [`pow_naive`] and [`exp_naive`], which build the
//! same quantities out of repeated Cauchy products.

use crate::error::{Error, Result};
use crate::series::{OpCount, Series};

/// One step of the exponential recurrence. `y` must hold indices `0..=k`
/// and `w` indices `0..k`.
pub(crate) fn exp_step(y: &[f64], w: &[f64], k: usize) -> (f64, u64) {
    if k == 0 {
        return (y[0].exp(), 0);
    }
    let mut acc = 0.0;
    for j in 1..=k {
        acc += (j as f64) * y[j] * w[k - j];
    }
    (acc / k as f64, 2 * k as u64 + 1)
}

/// One step of Miller's recurrence for `a^m` with `a[0] != 0`. `c` holds
/// indices `0..k`; only `a[1..=min(k, a.len()-1)]` is read.
pub(crate) fn miller_step(a: &[f64], c: &[f64], m: u32, k: usize) -> (f64, u64) {
    debug_assert!(k >= 1);
    let upper = k.min(a.len() - 1);
    let mut acc = 0.0;
    for j in 1..=upper {
        let weight = ((m as i64 + 1) * j as i64 - k as i64) as f64;
        acc += weight * a[j] * c[k - j];
    }
    (acc / (k as f64 * a[0]), 2 * upper as u64 + 1)
}

/// `a0^m` by repeated multiplication, matching the constant term of the naive fold.
fn leading_power(a0: f64, m: u32) -> (f64, u64) {
    let mut p = a0;
    for _ in 1..m {
        p *= a0;
    }
    (p, m.saturating_sub(1) as u64)
}

/// Miller's recurrence on a series with nonzero constant term, producing
/// coefficients `0..=order`.
fn miller(a: &[f64], m: u32, order: usize) -> (Vec<f64>, u64) {
    let (c0, mut count) = leading_power(a[0], m);
    let mut c = Vec::with_capacity(order + 1);
    c.push(c0);
    for k in 1..=order {
        let (ck, n) = miller_step(a, &c, m, k);
        count += n;
        c.push(ck);
    }
    (c, count)
}

/// `a^m` truncated at `order(a)` via Miller's recurrence.
///
/// When `a[0] == 0` the valuation `v` is factored out first
/// (`a = x^v ā`), the recurrence runs on `ā`, and the result is shifted
/// back up by `v m`. Only an exactly zero coefficient counts as zero, so a
/// tiny but nonzero `a[0]` goes straight into the `1/(k a[0])` division.
pub fn pow_int(a: &Series, m: u32) -> Result<(Series, OpCount)> {
    let n = a.order();
    let Some(v) = a.valuation() else {
        return if m == 0 {
            Err(Error::ZeroToZero)
        } else {
            Ok((Series::zeros(n), OpCount::default()))
        };
    };
    if m == 0 {
        return Ok((Series::constant(1.0, n), OpCount::default()));
    }
    if m == 1 {
        return Ok((a.clone(), OpCount::default()));
    }
    let shift = v.saturating_mul(m as usize);
    if shift > n {
        return Ok((Series::zeros(n), OpCount::default()));
    }
    let reduced = a.shift_down(v);
    let (c, count) = miller(reduced.coeffs(), m, n - shift);
    let out = Series::from_vec_checked(c)?.shift_up(shift, n);
    Ok((out, OpCount::new(count)))
}

/// `a^m` by folding the Cauchy product over `m` copies of `a`.
pub fn pow_naive(a: &Series, m: u32) -> Result<(Series, OpCount)> {
    let n = a.order();
    if m == 0 {
        return if a.is_zero() {
            Err(Error::ZeroToZero)
        } else {
            Ok((Series::constant(1.0, n), OpCount::default()))
        };
    }
    let mut acc = a.clone();
    let mut count = OpCount::default();
    for _ in 1..m {
        let (next, c) = acc.mul_counted(a)?;
        acc = next;
        count += c;
    }
    Ok((acc, count))
}

/// `e^{a(x)}` truncated at `order(a)` via the single-sum recurrence.
pub fn exp_series(a: &Series) -> Result<(Series, OpCount)> {
    let y = a.coeffs();
    let mut w = Vec::with_capacity(y.len());
    let mut count = 0;
    for k in 0..y.len() {
        let (wk, c) = exp_step(y, &w, k);
        count += c;
        w.push(wk);
    }
    Ok((Series::from_vec_checked(w)?, OpCount::new(count)))
}

/// Oracle for [`exp_series`]: `e^{a_0} * sum_{m=0}^{N} ã^m / m!` with
/// `ã = a - a_0`. Since `ã` has valuation at least one, the sum is exact
/// through order `N`.
pub fn exp_naive(a: &Series) -> Result<Series> {
    exp_naive_counted(a).map(|(s, _)| s)
}

/// [`exp_naive`] with its multiply count: one Cauchy product per power
/// beyond the first, plus one scaling pass per term and a final scaling.
pub fn exp_naive_counted(a: &Series) -> Result<(Series, OpCount)> {
    let n = a.order();
    let mut tail = a.clone().into_coeffs();
    let a0 = tail[0];
    tail[0] = 0.0;
    let tail = Series::from_vec_unchecked(tail);

    let mut sum = vec![0.0; n + 1];
    sum[0] = 1.0;
    let mut count = OpCount::default();
    let mut power = tail.clone();
    let mut inv_fact = 1.0;
    for m in 1..=n {
        if m > 1 {
            let (next, c) = power.mul_counted(&tail)?;
            power = next;
            count += c;
        }
        inv_fact /= m as f64;
        for (s, p) in sum.iter_mut().zip(power.coeffs()) {
            *s += inv_fact * p;
        }
        count += OpCount::new(n as u64 + 1);
    }
    let scale = a0.exp();
    let out: Vec<f64> = sum.into_iter().map(|s| scale * s).collect();
    count += OpCount::new(n as u64 + 1);
    Ok((Series::from_vec_checked(out)?, count))
}
