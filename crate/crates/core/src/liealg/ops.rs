//! Product, bracket and cocycle.

use smallvec::SmallVec;

use super::{Basis, DiffOp};
use crate::error::{Error, Result};
use crate::scalars::{binomial, int_pow, Rat, Scalar};

/// Product of two basis monomials in the associative algebra, as a list of
/// `(basis, integer coefficient)` terms.
///
/// In one variable `(t^a D^p)(t^b D^q) = sum_i C(p,i) b^i t^(a+b) D^(p+q-i)`;
/// several variables commute with each other, so the product factors.
pub fn basis_product(x: &Basis, y: &Basis) -> Vec<(Basis, Rat)> {
    let rank = x.rank();
    // per variable: list of (D exponent, coefficient)
    let factors: Vec<Vec<(u32, Rat)>> = (0..rank)
        .map(|i| {
            let (p, q, b) = (x.n[i], y.n[i], y.m[i]);
            (0..=p)
                .filter_map(|k| {
                    let c = &binomial(p, k) * &int_pow(b, k);
                    (!c.is_zero()).then_some((p + q - k, c))
                })
                .collect()
        })
        .collect();
    let m: SmallVec<[i64; 2]> = (0..rank).map(|i| x.m[i] + y.m[i]).collect();
    let mut out: Vec<(SmallVec<[u32; 2]>, Rat)> = vec![(SmallVec::new(), Rat::one())];
    for f in &factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for (ns, c) in &out {
            for (n, d) in f {
                let mut ns = ns.clone();
                ns.push(*n);
                next.push((ns, c * d));
            }
        }
        out = next;
    }
    out.into_iter().map(|(n, c)| (Basis { m: m.clone(), n }, c)).collect()
}

/// The associative product; defined only without the central element.
pub fn assoc_product(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch(format!("{:?} vs {:?}", a.ctx, b.ctx)));
    }
    if a.ctx.central {
        return Err(Error::CentralOperand);
    }
    let mut out = DiffOp::zero(a.ctx);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let cxy = cx * cy;
            for (z, k) in basis_product(x, y) {
                out.add_term(z, &cxy.scale(&k));
            }
        }
    }
    Ok(out)
}

/// `[x, y]` for basis monomials, without the central part.
pub(crate) fn basis_bracket(x: &Basis, y: &Basis) -> Vec<(Basis, Rat)> {
    let mut acc: std::collections::BTreeMap<Basis, Rat> = Default::default();
    for (z, c) in basis_product(x, y) {
        let e = acc.entry(z).or_default();
        *e = &*e + &c;
    }
    for (z, c) in basis_product(y, x) {
        let e = acc.entry(z).or_default();
        *e = &*e - &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// The Lie bracket. In the extended algebra the central part of
/// `[x, y]` is `cocycle(x, y) C`; central parts of the inputs drop out.
pub fn bracket(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch(format!("{:?} vs {:?}", a.ctx, b.ctx)));
    }
    let mut out = DiffOp::zero(a.ctx);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let cxy = cx * cy;
            for (z, k) in basis_bracket(x, y) {
                out.add_term(z, &cxy.scale(&k));
            }
            if a.ctx.central {
                let phi = cocycle_on_basis(x, y);
                if !phi.is_zero() {
                    out.add_central(&cxy.scale(&phi));
                }
            }
        }
    }
    Ok(out)
}

/// The 2-cocycle on rank-one basis monomials `t^m1 D^n1`, `t^m2 D^n2`:
/// zero unless `m1 + m2 = 0` and `m1 != 0`; for `m1 > 0` it is
/// `(-1)^(n1+1)/2 * sum_{i=1}^{m1} (m1-i)^n1 i^n2` (with `0^0 = 1`), and
/// for `m1 < 0` it is fixed by antisymmetry.
///
/// The companion closed form for `m1 < 0`,
/// `(-1)^n1/2 * sum_{i=m1}^{-1} (m1-i)^n1 i^n2`, agrees with this except
/// when exactly one of `n1`, `n2` vanishes, where it would break
/// antisymmetry and the cocycle identity.
pub fn cocycle_on_basis(x: &Basis, y: &Basis) -> Rat {
    let (m1, n1, m2, n2) = (x.m[0], x.n[0], y.m[0], y.n[0]);
    if m1 == 0 || m1 + m2 != 0 {
        return Rat::zero();
    }
    if m1 < 0 {
        return -cocycle_on_basis(y, x);
    }
    let mut sum = Rat::zero();
    for i in 1..=m1 {
        sum = &sum + &(&int_pow(m1 - i, n1) * &int_pow(i, n2));
    }
    let sign = if n1 % 2 == 0 { -1 } else { 1 };
    &sum * &Rat::new(sign, 2)
}

/// Bilinear extension of [`cocycle_on_basis`]; rank one only.
pub fn cocycle_phi(a: &DiffOp, b: &DiffOp) -> Result<Scalar> {
    if a.ctx.rank != 1 || b.ctx.rank != 1 {
        return Err(Error::ContextMismatch("the cocycle is defined in rank 1 only".into()));
    }
    let mut out = Scalar::zero();
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let phi = cocycle_on_basis(x, y);
            if !phi.is_zero() {
                out += &(cx * cy).scale(&phi);
            }
        }
    }
    Ok(out)
}
