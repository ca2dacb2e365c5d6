//! Truncated power series about `x = 0` and the linear operator table.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of scalar multiplications performed by one operation.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct OpCount {
    pub multiplies: u64,
}

impl OpCount {
    pub fn new(multiplies: u64) -> Self {
        Self { multiplies }
    }
}

impl std::ops::Add for OpCount {
    type Output = OpCount;

    fn add(self, rhs: OpCount) -> OpCount {
        OpCount::new(self.multiplies + rhs.multiplies)
    }
}

impl std::ops::AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        self.multiplies += rhs.multiplies;
    }
}

/// Taylor coefficients `W(0), ..., W(N)` of a function about `x = 0`.
///
/// Always holds at least one coefficient and every coefficient is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<f64>,
}

impl Series {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries(
                "a series needs at least one coefficient".into(),
            ));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "coefficient {k} is not finite"
            )));
        }
        Ok(Self { coeffs })
    }

    /// Wraps coefficients already known to be finite and non-empty.
    pub(crate) fn from_vec_unchecked(coeffs: Vec<f64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// Fails with [`Error::NonFinite`] naming the first bad index.
    pub(crate) fn from_vec_checked(coeffs: Vec<f64>) -> Result<Self> {
        match coeffs.iter().position(|c| !c.is_finite()) {
            Some(k) => Err(Error::NonFinite { k }),
            None => Ok(Self::from_vec_unchecked(coeffs)),
        }
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = value;
        s
    }

    /// `x^m` truncated at `order`; zero when `m > order`.
    pub fn monomial(m: usize, order: usize) -> Self {
        let mut s = Self::zeros(order);
        if m <= order {
            s.coeffs[m] = 1.0;
        }
        s
    }

    /// Highest retained index `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.coeffs.get(k).copied()
    }

    /// True when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Index of the first coefficient that is not exactly zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0.0)
    }

    fn check_orders(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Series::from_vec_checked(coeffs)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Series::from_vec_checked(coeffs)
    }

    pub fn scale(&self, lambda: f64) -> Result<Series> {
        Series::from_vec_checked(self.coeffs.iter().map(|c| lambda * c).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.mul_counted(other).map(|(s, _)| s)
    }

    /// Cauchy product together with the number of scalar multiplies,
    /// which is always `(N+1)(N+2)/2`.
    pub fn mul_counted(&self, other: &Series) -> Result<(Series, OpCount)> {
        self.check_orders(other)?;
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        let mut count = 0u64;
        for k in 0..=n {
            let mut acc = 0.0;
            for l in 0..=k {
                acc += self.coeffs[l] * other.coeffs[k - l];
            }
            count += (k + 1) as u64;
            out.push(acc);
        }
        Ok((Series::from_vec_checked(out)?, OpCount::new(count)))
    }

    /// Transform of the `m`-th derivative: `W(k) = (k+1)...(k+m) Y(k+m)`.
    /// The result has order `N - m`.
    pub fn derivative_transform(&self, m: usize) -> Result<Series> {
        let n = self.order();
        if m > n {
            return Err(Error::DerivativeTooHigh { m, order: n });
        }
        let coeffs = (0..=n - m)
            .map(|k| rising(k, m) * self.coeffs[k + m])
            .collect();
        Series::from_vec_checked(coeffs)
    }

    /// Horner evaluation of the truncated sum at `x`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Drops the first `v` coefficients: `a(x) / x^v` truncated at `N - v`.
    pub(crate) fn shift_down(&self, v: usize) -> Series {
        Series::from_vec_unchecked(self.coeffs[v..].to_vec())
    }

    /// Multiplies by `x^v`, zero-filling below and truncating at `order`.
    pub(crate) fn shift_up(&self, v: usize, order: usize) -> Series {
        let mut out = vec![0.0; order + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k + v > order {
                break;
            }
            out[k + v] = c;
        }
        Series::from_vec_unchecked(out)
    }
}

impl Index<usize> for Series {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.coeffs[k]
    }
}

/// Rising product `(k+1)(k+2)...(k+m)`, i.e. `(k+m)!/k!` without factorials.
pub fn rising(k: usize, m: usize) -> f64 {
    (1..=m).fold(1.0, |acc, i| acc * (k + i) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[f64]) -> Series {
        Series::new(c.to_vec()).unwrap()
    }

    #[test]
    fn monomials() {
        assert_eq!(Series::monomial(0, 3).coeffs(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(Series::monomial(2, 4).coeffs(), &[0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(Series::monomial(5, 3).coeffs(), &[0.0; 4]);
    }

    #[test]
    fn linear_ops() {
        assert_eq!(
            s(&[1.0, 2.0]).add(&s(&[3.0, 4.0])).unwrap().coeffs(),
            &[4.0, 6.0]
        );
        assert_eq!(
            s(&[1.0, 0.0, 3.0]).scale(2.0).unwrap().coeffs(),
            &[2.0, 0.0, 6.0]
        );
        assert_eq!(s(&[5.0, 7.0]).scale(0.0).unwrap().coeffs(), &[0.0, 0.0]);
        assert_eq!(
            s(&[1.0]).add(&s(&[1.0, 2.0])),
            Err(Error::OrderMismatch { left: 0, right: 1 })
        );
    }

    #[test]
    fn cauchy_product() {
        let a = s(&[0.3, -1.5, 2.0]);
        assert_eq!(Series::constant(1.0, 2).mul(&a).unwrap(), a);
        assert_eq!(
            s(&[1.0, 1.0, 0.0])
                .mul(&s(&[1.0, -1.0, 0.0]))
                .unwrap()
                .coeffs(),
            &[1.0, 0.0, -1.0]
        );
        let x = Series::monomial(1, 3);
        assert_eq!(x.mul(&x).unwrap(), Series::monomial(2, 3));
        assert!(s(&[1.0, 2.0]).mul(&s(&[1.0])).is_err());
    }

    #[test]
    fn mul_count_is_triangular() {
        for n in [0usize, 1, 5, 64] {
            let (_, c) = Series::zeros(n).mul_counted(&Series::zeros(n)).unwrap();
            assert_eq!(c.multiplies, ((n + 1) * (n + 2) / 2) as u64);
        }
    }

    #[test]
    fn derivative_rule() {
        let a = s(&[1.0, 2.0, 3.0]);
        assert_eq!(a.derivative_transform(0).unwrap(), a);
        assert_eq!(
            s(&[0.0, 0.0, 1.0])
                .derivative_transform(1)
                .unwrap()
                .coeffs(),
            &[0.0, 2.0]
        );
        assert_eq!(
            s(&[1.0, 1.0, 1.0, 1.0])
                .derivative_transform(2)
                .unwrap()
                .coeffs(),
            &[2.0, 6.0]
        );
        assert_eq!(
            a.derivative_transform(3),
            Err(Error::DerivativeTooHigh { m: 3, order: 2 })
        );
    }

    #[test]
    fn rising_product_does_not_overflow() {
        // 200!/199! would overflow through factorials.
        assert_eq!(rising(199, 1), 200.0);
        assert!(rising(170, 3).is_finite());
        assert_eq!(rising(7, 0), 1.0);
    }

    #[test]
    fn evaluation() {
        let a = s(&[1.0, 2.0, 3.0]);
        assert_eq!(a.evaluate(0.0), 1.0);
        assert_eq!(a.evaluate(0.5), 2.75);
        assert_eq!(Series::monomial(2, 4).evaluate(3.0), 9.0);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(Series::new(vec![]).is_err());
        assert!(Series::new(vec![1.0, f64::NAN]).is_err());
        assert!(Series::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn shifts_and_valuation() {
        let a = s(&[0.0, 0.0, 1.0, 2.0]);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.shift_down(2).coeffs(), &[1.0, 2.0]);
        assert_eq!(a.shift_down(2).shift_up(2, 3), a);
        assert_eq!(
            s(&[1.0, 2.0]).shift_up(3, 4).coeffs(),
            &[0.0, 0.0, 0.0, 1.0, 2.0]
        );
        assert_eq!(Series::zeros(3).valuation(), None);
    }
}
