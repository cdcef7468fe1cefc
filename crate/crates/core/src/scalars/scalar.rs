//! Laurent polynomials with rational coefficients in named parameters.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use smallvec::SmallVec;

use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct VarData {
    name: String,
    invertible: bool,
}

/// A formal parameter. Invertible parameters may carry negative exponents.
#[derive(Clone)]
pub struct Var(Arc<VarData>);

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Var {}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl Var {
    pub fn new(name: impl Into<String>, invertible: bool) -> Self {
        Var(Arc::new(VarData { name: name.into(), invertible }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn is_invertible(&self) -> bool {
        self.0.invertible
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A product of parameter powers, sorted by parameter name, without zero
/// exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: &Var, e: i32) -> Result<Self> {
        if e < 0 && !v.is_invertible() {
            return Err(Error::NotInvertible(v.name().to_string()));
        }
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v.clone(), e));
        }
        Ok(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Var, i32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    /// Exponent-wise combination `self + sign * other`.
    fn combine(&self, other: &Monomial, sign: i32) -> Monomial {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() && sign == 1 {
            return other.clone();
        }
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (v, e) = &other.0[j];
                    out.push((v.clone(), sign * e));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + sign * other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    /// `self / other`, failing when a non-invertible exponent turns negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let q = self.combine(other, -1);
        q.is_admissible().then_some(q)
    }

    fn is_admissible(&self) -> bool {
        self.0.iter().all(|(v, e)| *e >= 0 || v.is_invertible())
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|(v, _)| v.is_invertible())
    }

    pub fn inv(&self) -> Result<Monomial> {
        if let Some((v, _)) = self.0.iter().find(|(v, _)| !v.is_invertible()) {
            return Err(Error::NotInvertible(v.name().to_string()));
        }
        Ok(Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect()))
    }

    pub fn pow(&self, k: i32) -> Result<Monomial> {
        if k == 0 {
            return Ok(Monomial::one());
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.abs();
        Ok(Monomial(base.0.iter().map(|(v, e)| (v.clone(), e * k)).collect()))
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0.iter().find(|(v, _)| v.name() == name).map_or(0, |(_, e)| *e)
    }
}

/// Pure lexicographic order with parameters ranked by name; a group order on
/// exponent vectors, so leading terms multiply.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(v.name())?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Exact coefficient: a Laurent polynomial over the rationals.
///
/// Terms are kept sorted by decreasing [`Monomial`] order with no zero
/// coefficients, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: SmallVec<[(Monomial, Rat); 1]>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: SmallVec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(Rat::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::term(r, Monomial::one())
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((m, c));
        }
        Scalar { terms }
    }

    pub fn var(v: &Var) -> Self {
        Scalar::term(Rat::one(), Monomial(smallvec::smallvec![(v.clone(), 1)]))
    }

    /// Builds a scalar from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut v: Vec<(Monomial, Rat)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: SmallVec<[(Monomial, Rat); 1]> = SmallVec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Scalar { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The rational value when this scalar is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Units are nonzero single terms in invertible parameters.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit()
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    /// Multiplication by a single term keeps the order.
    fn mul_term(&self, m: &Monomial, r: &Rat) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(tm, c)| (tm.mul(m), c * r)).collect() }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(m, c)] => {
                let mi = m.inv()?;
                Ok(Scalar::term(c.recip().expect("nonzero"), mi))
            }
            _ => Err(Error::NotAUnit(self.to_string())),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return Ok(Scalar::term(c.pow(k as u32), m.pow(k as i32)?));
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`; errors unless `d` divides `self` in the
    /// Laurent ring.
    pub fn div_exact(&self, d: &Scalar) -> Result<Scalar> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        if d.is_unit() {
            return Ok(self * &d.inv()?);
        }
        let inexact = || Error::InexactDivision { num: self.to_string(), den: d.to_string() };
        let (lead_m, lead_c) = d.terms.first().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let low_d = &d.terms.last().unwrap().0;
        let low_a = &self.terms.last().unwrap().0;
        let floor = low_a.combine(low_d, -1);
        let lead_inv = lead_c.recip().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let mut guard = 0usize;
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            guard += 1;
            let qm = rm.div(&lead_m).ok_or_else(inexact)?;
            if qm < floor || guard > 1_000_000 {
                return Err(inexact());
            }
            let qc = &rc * &lead_inv;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Ok(Scalar::from_terms(quot))
    }

    /// Substitutes `value` for the parameter named `name`.
    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(name);
            let rest = Monomial(m.0.iter().filter(|(v, _)| v.name() != name).cloned().collect());
            let f = value.pow(e as i64)?;
            out += &(&f * &Scalar::term(c.clone(), rest));
        }
        Ok(out)
    }

    /// Names of parameters occurring in this scalar.
    pub fn params(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.0.iter().map(|(v, _)| v.clone())).collect();
        v.sort();
        v.dedup();
        v
    }
}

fn merge(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let mut out: SmallVec<[(Monomial, Rat); 1]> = SmallVec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &Rat| if negate_b { -c } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        match a.terms[i].0.cmp(&b.terms[j].0) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b.terms[j].0.clone(), nb(&b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), nb(c))));
    Scalar { terms: out }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        merge(self, rhs, true)
    }
}

impl Scalar {
    /// Product by summing `self * term` over the terms of `rhs`.
    fn mul_terms(&self, rhs: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &rhs.terms {
            acc += &self.mul_term(m, c);
        }
        acc
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self.terms.as_slice(), rhs.terms.as_slice()) {
            ([], _) | (_, []) => Scalar::zero(),
            ([(m, c)], _) => rhs.mul_term(m, c),
            (_, [(m, c)]) => self.mul_term(m, c),
            _ => self.mul_terms(rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let [(m, c)] = rhs.terms.as_slice() {
            // terms are sorted by decreasing monomial
            match self.terms.binary_search_by(|(tm, _)| m.cmp(tm)) {
                Ok(i) => {
                    let sum = &self.terms[i].1 + c;
                    if sum.is_zero() {
                        self.terms.remove(i);
                    } else {
                        self.terms[i].1 = sum;
                    }
                }
                Err(i) => self.terms.insert(i, (m.clone(), c.clone())),
            }
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}

/// Writes one `coeff*basis` term of a sum. `basis` is empty for constants.
pub(crate) fn write_term(out: &mut String, first: bool, coeff: &Scalar, basis: &str) {
    let (negative, body) = if let [(m, c)] = coeff.terms.as_slice() {
        let mut factors: Vec<String> = Vec::new();
        let mag = c.abs();
        if !mag.is_one() || (m.is_one() && basis.is_empty()) {
            factors.push(mag.to_string());
        }
        if !m.is_one() {
            factors.push(m.to_string());
        }
        if !basis.is_empty() {
            factors.push(basis.to_string());
        }
        (c.is_negative(), factors.join("*"))
    } else {
        let inner = coeff.to_string();
        if basis.is_empty() {
            (false, inner)
        } else {
            (false, format!("({})*{}", inner, basis))
        }
    };
    match (first, negative) {
        (true, true) => {
            out.push('-');
            out.push_str(&body);
        }
        (true, false) => out.push_str(&body),
        (false, true) => {
            out.push_str(" - ");
            out.push_str(&body);
        }
        (false, false) => {
            out.push_str(" + ");
            out.push_str(&body);
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_term(&mut out, k == 0, &Scalar::term(c.clone(), m.clone()), "");
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A declared set of parameters, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    vars: Vec<Var>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn declare(&mut self, name: &str, invertible: bool) -> Result<Var> {
        if !is_identifier(name) {
            return Err(Error::Usage(format!("invalid parameter name `{}`", name)));
        }
        if self.get(name).is_some() {
            return Err(Error::DuplicateParam(name.to_string()));
        }
        let v = Var::new(name, invertible);
        self.vars.push(v.clone());
        Ok(v)
    }

    pub fn with(mut self, name: &str, invertible: bool) -> Result<Self> {
        self.declare(name, invertible)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Var> {
        self.vars.iter().find(|v| v.name() == name)
    }

    pub fn var(&self, name: &str) -> Result<Scalar> {
        self.get(name).map(Scalar::var).ok_or_else(|| Error::UnknownParam(name.to_string()))
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Parses `name[:inv],...`, e.g. `lambda:inv,a,b`.
    pub fn parse(decl: &str) -> Result<Params> {
        let mut p = Params::new();
        for item in decl.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, flag) = match item.split_once(':') {
                Some((n, f)) => (n.trim(), Some(f.trim())),
                None => (item, None),
            };
            let invertible = match flag {
                None => false,
                Some("inv") | Some("invertible") => true,
                Some(other) => return Err(Error::Usage(format!("unknown parameter flag `{}`", other))),
            };
            p.declare(name, invertible)?;
        }
        Ok(p)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vars
            .iter()
            .map(|v| if v.is_invertible() { format!("{}:inv", v.name()) } else { v.name().to_string() })
            .collect();
        f.write_str(&parts.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
