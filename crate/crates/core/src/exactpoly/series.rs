//! Univariate rational functions with integer coefficients, expanded as power series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `numerator(t) / denominator(t)`, coefficients listed from `t^0` upwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSeries {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self> {
        let constant = denominator.first().cloned().unwrap_or_default();
        if constant.is_zero() {
            return Err(Error::NonExpandable(
                "denominator has zero constant term".into(),
            ));
        }
        Ok(RationalSeries {
            numerator: trim(numerator),
            denominator: trim(denominator),
        })
    }

    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(
            numerator.iter().map(|&c| c.into()).collect(),
            denominator.iter().map(|&c| c.into()).collect(),
        )
    }

    /// `1 / (1 - t^step)^power`.
    pub fn geometric_power(step: usize, power: u32) -> Vec<BigInt> {
        let mut base = vec![BigInt::zero(); step + 1];
        base[0] = BigInt::one();
        base[step] = -BigInt::one();
        let mut acc = vec![BigInt::one()];
        for _ in 0..power {
            acc = poly_mul(&acc, &base);
        }
        acc
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    /// The first `order + 1` power-series coefficients. The denominator's
    /// constant term must be a unit so that all coefficients stay integral.
    pub fn expand(&self, order: usize) -> Result<Vec<BigInt>> {
        let c0 = &self.denominator[0];
        if !c0.abs().is_one() {
            return Err(Error::NonExpandable(format!(
                "constant term {c0} of the denominator is not a unit"
            )));
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.numerator.get(n).cloned().unwrap_or_default();
            for k in 1..self.denominator.len().min(n + 1) {
                acc -= &self.denominator[k] * &out[n - k];
            }
            // c0 is +1 or -1
            out.push(acc * c0);
        }
        Ok(out)
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigInt::zero());
    }
    v
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn fmt_univariate(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (k, a.is_one()) {
            (0, _) => out.push_str(&a.to_string()),
            (_, true) => {}
            (_, false) => out.push_str(&format!("{a}*")),
        }
        match k {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})/({})",
            fmt_univariate(&self.numerator),
            fmt_univariate(&self.denominator)
        )
    }
}

/// Expand a series to the given order.
pub fn series_expand(s: &RationalSeries, order: usize) -> Result<Vec<BigInt>> {
    s.expand(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| c.into()).collect()
    }

    #[test]
    fn binomial() {
        let s = RationalSeries::from_i64(&[1], &[1, -2, 1]).unwrap();
        assert_eq!(s.expand(3).unwrap(), ints(&[1, 2, 3, 4]));
    }

    #[test]
    fn cubic_denominator() {
        let den = RationalSeries::geometric_power(2, 3);
        assert_eq!(den, ints(&[1, 0, -3, 0, 3, 0, -1]));
        let s = RationalSeries::new(ints(&[1, 0, 3]), den).unwrap();
        assert_eq!(s.expand(2).unwrap()[2], BigInt::from(6));
        assert_eq!(s.to_string(), "(1 + 3*t^2)/(1 - 3*t^2 + 3*t^4 - t^6)");
    }

    #[test]
    fn zero_numerator() {
        let s = RationalSeries::from_i64(&[0], &[1, -1]).unwrap();
        assert_eq!(s.expand(4).unwrap(), ints(&[0, 0, 0, 0, 0]));
    }

    #[test]
    fn non_expandable() {
        assert!(RationalSeries::from_i64(&[1], &[0, 1]).is_err());
        let s = RationalSeries::from_i64(&[1], &[2, 1]).unwrap();
        assert!(matches!(s.expand(2), Err(Error::NonExpandable(_))));
        // -1 is a unit
        let s = RationalSeries::from_i64(&[1], &[-1, 1]).unwrap();
        assert_eq!(s.expand(2).unwrap(), ints(&[-1, -1, -1]));
    }
}
