//! Which bounded basis monomials lie in the subalgebra generated by a set
//! of operators.

use super::{basis_box, bracket, Basis, DiffOp};
use crate::closure::bounded_closure;
use crate::error::{Error, Result};
use crate::scalars::{Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanBounds {
    /// Window `|m_i| <= m_max`.
    pub m_max: i64,
    /// Window `n_i <= n_max`.
    pub n_max: u32,
    /// Number of bracketing rounds.
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct SpanProbe {
    pub reached: Vec<Basis>,
    pub missing: Vec<Basis>,
    /// Dimension of the certified in-window span (may exceed `reached`).
    pub span_dim: usize,
    pub central_reached: bool,
    pub rounds: usize,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum OpKey {
    Term(Basis),
    Central,
}

fn to_sparse(a: &DiffOp) -> SparseVec<OpKey> {
    let mut v: SparseVec<OpKey> = a.terms().map(|(b, c)| (OpKey::Term(b.clone()), c.clone())).collect();
    if !a.central_coeff().is_zero() {
        v.insert(OpKey::Central, a.central_coeff().clone());
    }
    v
}

fn from_sparse(ctx: super::AlgebraCtx, v: &SparseVec<OpKey>) -> DiffOp {
    let mut a = DiffOp::zero(ctx);
    for (k, c) in v {
        match k {
            OpKey::Term(b) => a.add_term(b.clone(), c),
            OpKey::Central => a.add_central(c),
        }
    }
    a
}

/// Closes the span of `generators` under the bracket, keeping only
/// combinations that lie inside the window, and reports the window's basis
/// monomials that were reached.
pub fn generated_span_probe(generators: &[DiffOp], bounds: SpanBounds) -> Result<SpanProbe> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let ctx = first.ctx();
    if generators.iter().any(|g| g.ctx() != ctx) {
        return Err(Error::ContextMismatch("generators from different algebras".into()));
    }
    let SpanBounds { m_max, n_max, depth } = bounds;
    let seeds: Vec<SparseVec<OpKey>> = generators.iter().map(to_sparse).collect();
    let in_bounds = move |k: &OpKey| match k {
        OpKey::Term(b) => b.m.iter().all(|m| m.abs() <= m_max) && b.n.iter().all(|&n| n <= n_max),
        OpKey::Central => true,
    };
    // every new vector is bracketed with all vectors found before it
    let mut found: Vec<DiffOp> = Vec::new();
    let closure = bounded_closure(
        &seeds,
        in_bounds,
        |v| {
            let a = from_sparse(ctx, v);
            let images = found.iter().map(|g| bracket(&a, g).map(|b| to_sparse(&b))).collect();
            found.push(a);
            images
        },
        Some(depth),
    )?;
    let mut reached = Vec::new();
    let mut missing = Vec::new();
    for b in basis_box(ctx.rank(), m_max, n_max) {
        let unit: SparseVec<OpKey> = [(OpKey::Term(b.clone()), Scalar::one())].into_iter().collect();
        if closure.contains(&unit) {
            reached.push(b);
        } else {
            missing.push(b);
        }
    }
    let central_reached =
        ctx.is_central() && closure.contains(&[(OpKey::Central, Scalar::one())].into_iter().collect());
    Ok(SpanProbe {
        reached,
        missing,
        span_dim: closure.dim(),
        central_reached,
        rounds: closure.rounds,
        saturated: closure.saturated,
    })
}
