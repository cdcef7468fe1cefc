//! Polynomials in `x_1..x_nu` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::{binomial, int_pow, write_term, Rat, Scalar};

pub type Exps = SmallVec<[u32; 2]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exps, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::monomial(&vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    /// `c * x^exps`.
    pub fn monomial(exps: &[u32], c: Scalar) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps.into(), &c);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(&e, Scalar::one())
    }

    /// `x^k` in one variable.
    pub fn x_pow(k: u32) -> Self {
        Poly::monomial(&[k], Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in `x_i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// The nonzero constant this polynomial equals, if any.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && e.iter().all(|&k| k == 0) => Some(c),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, e: Exps, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RankMismatch { op: other.nvars, module: self.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// `f(x - m)`, expanded with binomial coefficients.
    pub fn shift(&self, m: &[i64]) -> Poly {
        assert_eq!(m.len(), self.nvars, "shift arity");
        if m.iter().all(|&k| k == 0) {
            return self.clone();
        }
        // (x_i - m_i)^k = sum_j C(k,j) (-m_i)^(k-j) x_i^j
        let expansion = |i: usize, k: u32| -> Vec<(u32, Rat)> {
            (0..=k).map(|j| (j, &binomial(k, j) * &int_pow(-m[i], k - j))).filter(|(_, c)| !c.is_zero()).collect()
        };
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut partial: Vec<(Exps, Rat)> = vec![(Exps::new(), Rat::one())];
            for (i, &k) in e.iter().enumerate() {
                let ex = expansion(i, k);
                partial = partial
                    .iter()
                    .flat_map(|(pe, pc)| {
                        ex.iter().map(move |(j, r)| {
                            let mut ne = pe.clone();
                            ne.push(*j);
                            (ne, pc * r)
                        })
                    })
                    .collect();
            }
            for (ne, r) in partial {
                out.add_term(ne, &c.scale(&r));
            }
        }
        out
    }

    /// `prod_j (x_j - s_j)^(n_j)` for integer shifts `s`.
    pub fn shifted_power(s: &[i64], n: &[u32]) -> Poly {
        Poly::monomial(n, Scalar::one()).shift(s)
    }

    /// Exponent tuples of every monomial of total degree `<= d`.
    pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Exps> {
        let mut out: Vec<Exps> = vec![Exps::new()];
        for _ in 0..nvars {
            out = out
                .into_iter()
                .flat_map(|e| {
                    let used: u32 = e.iter().sum();
                    (0..=d - used).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    pub(crate) fn from_terms(nvars: usize, terms: BTreeMap<Exps, Scalar>) -> Poly {
        let mut terms = terms;
        terms.retain(|_, c| !c.is_zero());
        Poly { nvars, terms }
    }
}

pub(crate) fn exps_label(e: &[u32]) -> String {
    let single = e.len() == 1;
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            let name = if single { "x".to_string() } else { format!("x{}", i + 1) };
            if k == 1 {
                name
            } else {
                format!("{}^{}", name, k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly {
    /// Decreasing exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, i == 0, c, &exps_label(e));
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}
