//! The algebra of differential operators on Laurent polynomials in `rank`
//! variables, optionally centrally extended (rank 1 only).
//!
//! Elements are finite combinations of basis monomials `t^m D^n` with
//! `m in Z^rank`, `n in N^rank`, where `D_i = t_i d/dt_i`, plus a multiple of
//! the central element `C` when the context is extended.

mod jacobi;
mod ops;
mod probe;

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::{write_term, Scalar};

pub use jacobi::{check_jacobi, JacobiReport};
pub(crate) use ops::basis_bracket;
pub use ops::{assoc_product, basis_product, bracket, cocycle_on_basis, cocycle_phi};
pub use probe::{generated_span_probe, SpanBounds, SpanProbe};

/// Which algebra an operator lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraCtx {
    rank: usize,
    central: bool,
}

impl AlgebraCtx {
    pub fn new(rank: usize, central: bool) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidContext("rank must be at least 1".into()));
        }
        if central && rank != 1 {
            return Err(Error::InvalidContext("the central extension exists only in rank 1".into()));
        }
        Ok(AlgebraCtx { rank, central })
    }

    /// Differential operators on the circle, no center.
    pub fn circle() -> Self {
        AlgebraCtx { rank: 1, central: false }
    }

    /// The centrally extended algebra.
    pub fn extended() -> Self {
        AlgebraCtx { rank: 1, central: true }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_central(&self) -> bool {
        self.central
    }
}

/// Basis monomial `t^m D^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub m: SmallVec<[i64; 2]>,
    pub n: SmallVec<[u32; 2]>,
}

impl Basis {
    pub fn new(m: &[i64], n: &[u32]) -> Self {
        assert_eq!(m.len(), n.len(), "multi-index arity mismatch");
        Basis { m: m.into(), n: n.into() }
    }

    /// Rank-one monomial `t^m D^n`.
    pub fn circle(m: i64, n: u32) -> Self {
        Basis::new(&[m], &[n])
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    /// Total operator order `|n|`.
    pub fn order(&self) -> u32 {
        self.n.iter().sum()
    }

    /// Text form, empty for the identity.
    pub(crate) fn label(&self) -> String {
        let single = self.rank() == 1;
        let mut parts = Vec::new();
        for (i, &m) in self.m.iter().enumerate() {
            let name = if single { "t".to_string() } else { format!("t{}", i + 1) };
            match m {
                0 => {}
                1 => parts.push(name),
                _ => parts.push(format!("{}^{}", name, m)),
            }
        }
        for (i, &n) in self.n.iter().enumerate() {
            let name = if single { "D".to_string() } else { format!("D{}", i + 1) };
            match n {
                0 => {}
                1 => parts.push(name),
                _ => parts.push(format!("{}^{}", name, n)),
            }
        }
        parts.join("*")
    }
}

/// An element of the operator algebra selected by its context.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    ctx: AlgebraCtx,
    terms: BTreeMap<Basis, Scalar>,
    central: Scalar,
}

impl DiffOp {
    pub fn zero(ctx: AlgebraCtx) -> Self {
        DiffOp { ctx, terms: BTreeMap::new(), central: Scalar::zero() }
    }

    /// `coeff * t^m D^n`.
    pub fn monomial(ctx: AlgebraCtx, m: &[i64], n: &[u32], coeff: Scalar) -> Result<Self> {
        if m.len() != ctx.rank || n.len() != ctx.rank {
            return Err(Error::ContextMismatch(format!(
                "multi-index of arity {} in a rank-{} algebra",
                m.len().max(n.len()),
                ctx.rank
            )));
        }
        let mut op = DiffOp::zero(ctx);
        op.add_term(Basis::new(m, n), &coeff);
        Ok(op)
    }

    /// Basis element `t^m D^n` with coefficient one.
    pub fn basis(ctx: AlgebraCtx, b: Basis) -> Result<Self> {
        DiffOp::monomial(ctx, &b.m.clone(), &b.n.clone(), Scalar::one())
    }

    /// Rank-one shorthand for `t^m D^n`.
    pub fn t_d(ctx: AlgebraCtx, m: i64, n: u32) -> Self {
        assert_eq!(ctx.rank, 1, "t_d is the rank-one constructor");
        let mut op = DiffOp::zero(ctx);
        op.add_term(Basis::circle(m, n), &Scalar::one());
        op
    }

    /// `L_m = t^m D`.
    pub fn witt(ctx: AlgebraCtx, m: i64) -> Self {
        DiffOp::t_d(ctx, m, 1)
    }

    /// `I_m = t^m`.
    pub fn current(ctx: AlgebraCtx, m: i64) -> Self {
        DiffOp::t_d(ctx, m, 0)
    }

    /// `coeff * C`.
    pub fn central(ctx: AlgebraCtx, coeff: Scalar) -> Result<Self> {
        if !ctx.central {
            return Err(Error::ContextMismatch("the context has no central element".into()));
        }
        let mut op = DiffOp::zero(ctx);
        op.central = coeff;
        Ok(op)
    }

    pub fn ctx(&self) -> AlgebraCtx {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Basis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Basis) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn central_coeff(&self) -> &Scalar {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, b: Basis, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub(crate) fn add_central(&mut self, c: &Scalar) {
        self.central += c;
    }

    fn check_ctx(&self, other: &DiffOp) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c);
        }
        out.central += &other.central;
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(self.ctx);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), &(c * s));
        }
        out.central = &self.central * s;
        out
    }

    /// Re-reads a central-free operator in another rank-compatible context.
    pub fn with_ctx(&self, ctx: AlgebraCtx) -> Result<DiffOp> {
        if ctx.rank != self.ctx.rank {
            return Err(Error::ContextMismatch("rank differs".into()));
        }
        if !ctx.central && !self.central.is_zero() {
            return Err(Error::ContextMismatch("target context has no central element".into()));
        }
        Ok(DiffOp { ctx, terms: self.terms.clone(), central: self.central.clone() })
    }

    /// The part without the central term.
    pub fn without_central(&self) -> DiffOp {
        DiffOp { ctx: self.ctx, terms: self.terms.clone(), central: Scalar::zero() }
    }

    /// Splits into homogeneous components by the degree `m`; the central
    /// term sits in degree zero.
    pub fn grade_components(&self) -> BTreeMap<Vec<i64>, DiffOp> {
        let mut out: BTreeMap<Vec<i64>, DiffOp> = BTreeMap::new();
        for (b, c) in &self.terms {
            out.entry(b.m.to_vec()).or_insert_with(|| DiffOp::zero(self.ctx)).add_term(b.clone(), c);
        }
        if !self.central.is_zero() {
            out.entry(vec![0; self.ctx.rank]).or_insert_with(|| DiffOp::zero(self.ctx)).central = self.central.clone();
        }
        out
    }

    /// Largest `|m_i|` and `n_i` over all terms.
    pub fn extent(&self) -> (i64, u32) {
        self.terms.keys().fold((0, 0), |(am, an), b| {
            (am.max(b.m.iter().map(|x| x.abs()).max().unwrap_or(0)), an.max(b.n.iter().copied().max().unwrap_or(0)))
        })
    }
}

/// Every basis monomial with `|m_i| <= m_max` and `n_i <= n_max`, in
/// canonical order.
pub fn basis_box(rank: usize, m_max: i64, n_max: u32) -> Vec<Basis> {
    let ms = cartesian(rank, &(-m_max..=m_max).collect::<Vec<_>>());
    let ns = cartesian(rank, &(0..=n_max).collect::<Vec<_>>());
    let mut out: Vec<Basis> = ms.iter().flat_map(|m| ns.iter().map(move |n| Basis::new(m, n))).collect();
    out.sort();
    out
}

pub(crate) fn cartesian<T: Copy>(rank: usize, values: &[T]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..rank {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    acc
}

impl fmt::Display for DiffOp {
    /// Terms in decreasing `(m, n)` order, the central term last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (b, c) in self.terms.iter().rev() {
            write_term(&mut out, first, c, &b.label());
            first = false;
        }
        if !self.central.is_zero() {
            write_term(&mut out, first, &self.central, "C");
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{}]({})", self.ctx.rank, self)
    }
}
