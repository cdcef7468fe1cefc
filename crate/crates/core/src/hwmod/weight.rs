//! Highest weights given by a quasipolynomial.

use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalars::{factorial, series_quotient, write_term, Scalar, Series};
use crate::umod::{exps_label, Poly};

/// `sum_i p_i(x) e^(a_i x)` with pairwise different exponents `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    terms: Vec<(Poly, Scalar)>,
}

impl Quasipolynomial {
    pub fn zero() -> Self {
        Quasipolynomial { terms: Vec::new() }
    }

    /// Merges terms with equal exponents and drops zero polynomials.
    pub fn new(terms: Vec<(Poly, Scalar)>) -> Result<Self> {
        let mut merged: Vec<(Poly, Scalar)> = Vec::new();
        for (p, a) in terms {
            if p.nvars() != 1 {
                return Err(Error::Dimension("quasipolynomial coefficients are polynomials in x".into()));
            }
            match merged.iter_mut().find(|(_, b)| *b == a) {
                Some((q, _)) => *q = q.add(&p)?,
                None => merged.push((p, a)),
            }
        }
        merged.retain(|(p, _)| !p.is_zero());
        // plain polynomial part last
        merged.sort_by_key(|(_, a)| (a.is_zero(), a.to_string()));
        Ok(Quasipolynomial { terms: merged })
    }

    /// A plain polynomial (exponent zero).
    pub fn poly(p: Poly) -> Result<Self> {
        Quasipolynomial::new(vec![(p, Scalar::zero())])
    }

    pub fn terms(&self) -> &[(Poly, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn value_at_zero(&self) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (p, _)| &acc + &p.coeff(&[0]))
    }

    pub fn add(&self, other: &Quasipolynomial) -> Result<Quasipolynomial> {
        Quasipolynomial::new(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn scale(&self, s: &Scalar) -> Result<Quasipolynomial> {
        Quasipolynomial::new(self.terms.iter().map(|(p, a)| (p.scale(s), a.clone())).collect())
    }

    /// Taylor series truncated at `order` (coefficients of `x^k`).
    pub fn series(&self, order: usize) -> Series {
        let mut acc = Series::zero(order);
        for (p, a) in &self.terms {
            let coeffs: Vec<Scalar> = (0..=p.degree().unwrap_or(0)).map(|k| p.coeff(&[k])).collect();
            acc = acc.add(&Series::from_poly(&coeffs, order).mul(&Series::exp(a, order)));
        }
        acc
    }
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (p, a)) in self.terms.iter().enumerate() {
            let exp = if a.is_zero() {
                None
            } else if a.is_one() {
                Some("exp(x)".to_string())
            } else if a.len() == 1 {
                let mut s = String::new();
                write_term(&mut s, true, a, "x");
                Some(format!("exp({})", s))
            } else {
                Some(format!("exp(({})*x)", a))
            };
            match exp {
                None => {
                    // the polynomial's own terms continue the sum
                    let body = p.to_string();
                    if i == 0 {
                        out.push_str(&body);
                    } else if let Some(rest) = body.strip_prefix('-') {
                        out.push_str(" - ");
                        out.push_str(rest);
                    } else {
                        out.push_str(" + ");
                        out.push_str(&body);
                    }
                }
                Some(e) => {
                    let basis = if p.num_terms() == 1 {
                        let (ex, c) = p.terms().next().expect("nonzero");
                        let mut s = String::new();
                        let label = exps_label(ex);
                        let basis = if label.is_empty() { e.clone() } else { format!("{}*{}", label, e) };
                        write_term(&mut s, i == 0, c, &basis);
                        out.push_str(&s);
                        continue;
                    } else {
                        format!("({})*{}", p, e)
                    };
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    out.push_str(&basis);
                }
            }
        }
        f.write_str(&out)
    }
}

/// Highest weight data: central charge `c` and the quasipolynomial `phi`
/// with `-sum_n h_n x^n / n! = phi(x) / (e^x - 1)`.
#[derive(Debug)]
pub struct HWSpec {
    c: Scalar,
    phi: Quasipolynomial,
    h_cache: Mutex<Vec<Scalar>>,
}

impl Clone for HWSpec {
    fn clone(&self) -> Self {
        let cache = self.h_cache.lock().map(|v| v.clone()).unwrap_or_default();
        HWSpec { c: self.c.clone(), phi: self.phi.clone(), h_cache: Mutex::new(cache) }
    }
}

impl PartialEq for HWSpec {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.phi == other.phi
    }
}

impl Eq for HWSpec {}

impl HWSpec {
    pub fn new(c: Scalar, phi: Quasipolynomial) -> Result<Self> {
        let v0 = phi.value_at_zero();
        if !v0.is_zero() {
            return Err(Error::PhiAtZero(v0.to_string()));
        }
        Ok(HWSpec { c, phi, h_cache: Mutex::new(Vec::new()) })
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn phi(&self) -> &Quasipolynomial {
        &self.phi
    }

    /// `h_n`, the eigenvalue of `D^n` on the highest weight vector; `h_0` is
    /// the eigenvalue of the identity operator `t^0 D^0`.
    pub fn h(&self, n: usize) -> Result<Scalar> {
        let mut cache = self.h_cache.lock().unwrap_or_else(|e| e.into_inner());
        if n >= cache.len() {
            *cache = h_sequence(&self.phi, (2 * n).max(8))?;
        }
        Ok(cache[n].clone())
    }
}

/// `h_0..=h_order` from `phi`.
pub fn h_sequence(phi: &Quasipolynomial, order: usize) -> Result<Vec<Scalar>> {
    let v0 = phi.value_at_zero();
    if !v0.is_zero() {
        return Err(Error::PhiAtZero(v0.to_string()));
    }
    let delta = series_quotient(&phi.series(order + 1), &Series::exp_minus_one(order + 1))?;
    Ok((0..=order).map(|n| -delta.coeff(n).scale(&factorial(n as u32))).collect())
}

/// `h_n = -n! [x^n] phi(x) / (e^x - 1)`.
pub fn h_from_phi(spec: &HWSpec, n: usize) -> Result<Scalar> {
    spec.h(n)
}
