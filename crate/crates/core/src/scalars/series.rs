//! Truncated formal power series with exact coefficients.

use std::fmt;

use super::rat::{factorial, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `c_0 + c_1 x + ... + c_order x^order`, coefficients taken as-is (not
/// divided by factorials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Scalar>,
}

impl Series {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least one coefficient");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Scalar::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// `e^{a x}` truncated at `order`.
    pub fn exp(a: &Scalar, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pow = Scalar::one();
        for k in 0..=order {
            coeffs.push(pow.scale(&factorial(k as u32).recip().unwrap()));
            pow = &pow * a;
        }
        Series { coeffs }
    }

    /// `e^x - 1` truncated at `order`.
    pub fn exp_minus_one(order: usize) -> Self {
        let mut s = Series::exp(&Scalar::one(), order);
        s.coeffs[0] = Scalar::zero();
        s
    }

    /// A polynomial given by coefficient list, truncated or padded to `order`.
    pub fn from_poly(coeffs: &[Scalar], order: usize) -> Self {
        let mut s = Series::zero(order);
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series { coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series { coeffs: (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += &(a * b);
            }
        }
        Series { coeffs }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut s = Series::zero(self.order());
        for i in 0..=self.order() {
            if i + k <= self.order() {
                s.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        s
    }
}

/// `num / den` for series.
///
/// The common power `x^v` of `den` is factored out of both operands first, so
/// `den`'s coefficient at `x^v` must be a unit and `num` must vanish to order
/// at least `v`. The quotient has order `min(num.order, den.order) - v`.
pub fn series_quotient(num: &Series, den: &Series) -> Result<Series> {
    let v = den.valuation().ok_or_else(|| Error::Series("denominator is zero".into()))?;
    if let Some(nv) = num.valuation() {
        if nv < v {
            return Err(Error::Series(format!(
                "numerator vanishes to order {} but the denominator to order {}",
                nv, v
            )));
        }
    }
    let order = num.order().min(den.order());
    if order < v {
        return Err(Error::Series("truncation order below the denominator's valuation".into()));
    }
    let order = order - v;
    let lead_inv = den.coeffs[v]
        .inv()
        .map_err(|_| Error::Series(format!("leading coefficient {} is not a unit", den.coeffs[v])))?;
    let mut q: Vec<Scalar> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.coeffs[k + v].clone();
        for (i, qi) in q.iter().enumerate() {
            let d = &den.coeffs[k - i + v];
            if !d.is_zero() && !qi.is_zero() {
                acc -= &(qi * d);
            }
        }
        q.push(&acc * &lead_inv);
    }
    Ok(Series { coeffs: q })
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", k),
            };
            super::scalar::write_term(&mut out, first, c, &basis);
            first = false;
        }
        if first {
            out.push('0');
        }
        write!(f, "{} + O(x^{})", out, self.order() + 1)
    }
}

/// Rational Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`) from the
/// recurrence `sum_{k<m+1} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        let mut acc = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            acc = &acc + &(&super::rat::binomial(m as u32 + 1, k as u32) * bk);
        }
        b.push(-&acc.div(&Rat::from_int(m as i64 + 1)).unwrap());
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::from_rat(Rat::new(n, d))
    }

    #[test]
    fn x_over_exp_minus_one() {
        // Expected coefficients frozen from multiplying back against e^x - 1.
        let x = Series::from_poly(&[Scalar::zero(), Scalar::one()], 5);
        let q = series_quotient(&x, &Series::exp_minus_one(5)).unwrap();
        assert_eq!(q.order(), 4);
        let expected = [r(1, 1), r(-1, 2), r(1, 12), r(0, 1), r(-1, 720)];
        assert_eq!(q.coeffs(), &expected);
        // multiply back: q * (e^x - 1)/x == 1 up to x^4
        let den_over_x: Vec<Scalar> = (0..5).map(|k| Scalar::from_rat(factorial(k + 1).recip().unwrap())).collect();
        let back = Series::new(expected.to_vec()).mul(&Series::new(den_over_x));
        assert_eq!(back, Series::one(4));
    }

    #[test]
    fn self_quotient_and_zero() {
        let d = Series::exp_minus_one(6);
        let q = series_quotient(&d, &d).unwrap();
        assert_eq!(q, Series::one(5));
        let z = series_quotient(&Series::zero(6), &d).unwrap();
        assert_eq!(z, Series::zero(5));
    }

    #[test]
    fn quotient_errors() {
        let d = Series::exp_minus_one(4);
        assert!(series_quotient(&Series::one(4), &Series::zero(4)).is_err());
        // numerator vanishes to order 0 < 1
        assert!(series_quotient(&Series::one(4), &d).is_err());
        let p = crate::scalars::Params::parse("a").unwrap();
        let a = p.var("a").unwrap();
        let non_unit = Series::from_poly(&[a], 3);
        assert!(series_quotient(&Series::one(3), &non_unit).is_err());
    }

    #[test]
    fn bernoulli_recurrence() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], Rat::new(-1, 2));
        assert_eq!(b[2], Rat::new(1, 6));
        assert_eq!(b[3], Rat::zero());
        assert_eq!(b[4], Rat::new(-1, 30));
        assert_eq!(b[8], Rat::new(-1, 30));
    }
}
