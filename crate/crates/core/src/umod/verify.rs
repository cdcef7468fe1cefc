//! Bounded verifiers for the module structures and constructive
//! irreducibility witnesses.

use std::collections::{BTreeMap, HashMap};

use super::{Exps, Family, OmegaSpec, Poly, PolyVec};
use crate::closure::bounded_closure;
use crate::error::{Error, Result};
use crate::liealg::{assoc_product, basis_box, bracket, AlgebraCtx, Basis, DiffOp};
use crate::scalars::{Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomBounds {
    /// `|m_i| <= m_max`.
    pub m_max: i64,
    /// `n <= n_max` in rank one, `|n| = n_1 + .. + n_nu <= n_max` otherwise.
    pub n_max: u32,
    /// Total degree of the test monomials.
    pub degree: u32,
}

#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub a: DiffOp,
    pub b: DiffOp,
    pub f: Poly,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    /// Number of `(a, b, f)` instances checked.
    pub checked: usize,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Basis operators of the algebra a module family lives over, within
/// bounds. The extended algebra is used where it exists, so central terms
/// are exercised too.
pub fn module_operators(spec: &OmegaSpec, m_max: i64, n_max: u32) -> Vec<DiffOp> {
    let ext = AlgebraCtx::extended();
    let rank1 = |keep: &dyn Fn(&Basis) -> bool| -> Vec<DiffOp> {
        basis_box(1, m_max, n_max)
            .into_iter()
            .filter(|b| keep(b))
            .map(|b| DiffOp::basis(ext, b).expect("rank-one basis"))
            .collect()
    };
    match spec.family() {
        Family::D => rank1(&|_| true),
        Family::Vir => (-m_max..=m_max).map(|m| DiffOp::witt(ext, m)).collect(),
        Family::Hv => (-m_max..=m_max).flat_map(|m| [DiffOp::witt(ext, m), DiffOp::current(ext, m)]).collect(),
        Family::DNu => {
            let ctx = AlgebraCtx::new(spec.rank(), false).expect("positive rank");
            basis_box(spec.rank(), m_max, n_max)
                .into_iter()
                .filter(|b| b.order() <= n_max)
                .map(|b| DiffOp::basis(ctx, b).expect("matching rank"))
                .collect()
        }
    }
}

/// Extends an action linearly from basis operators and monomials, caching
/// each `(basis operator, monomial)` image.
struct MemoAction<A> {
    action: A,
    ctx: AlgebraCtx,
    nvars: usize,
    cache: HashMap<(Option<Basis>, Exps), Poly>,
}

impl<A> MemoAction<A>
where
    A: Fn(&DiffOp, &Poly) -> Result<Poly>,
{
    fn image(&mut self, b: Option<&Basis>, e: &Exps) -> Result<&Poly> {
        let key = (b.cloned(), e.clone());
        if !self.cache.contains_key(&key) {
            let op = match b {
                Some(b) => DiffOp::basis(self.ctx, b.clone())?,
                None => DiffOp::central(self.ctx, Scalar::one())?,
            };
            let v = (self.action)(&op, &Poly::monomial(e, Scalar::one()))?;
            self.cache.insert(key.clone(), v);
        }
        Ok(&self.cache[&key])
    }

    fn apply(&mut self, op: &DiffOp, f: &Poly) -> Result<Poly> {
        let mut acc: BTreeMap<Exps, Scalar> = BTreeMap::new();
        let central = op.central_coeff();
        let parts =
            op.terms().map(|(b, c)| (Some(b), c.clone())).chain((!central.is_zero()).then(|| (None, central.clone())));
        for (b, c) in parts {
            for (e, k) in f.terms() {
                let s = &c * k;
                for (e2, v) in self.image(b, e)?.terms() {
                    let sv = &s * v;
                    match acc.get_mut(e2) {
                        Some(x) => *x += &sv,
                        None => {
                            acc.insert(e2.clone(), sv);
                        }
                    }
                }
            }
        }
        Ok(Poly::from_terms(self.nvars, acc))
    }
}

/// Checks `[a, b] f = a (b f) - b (a f)` for every unordered pair of
/// `ops` and every monomial `f` of total degree `<= degree`. Both sides
/// are antisymmetric in `(a, b)`, so ordered pairs add nothing.
pub fn check_module_axiom<A>(ops: &[DiffOp], nvars: usize, degree: u32, action: A) -> Result<AxiomReport>
where
    A: Fn(&DiffOp, &Poly) -> Result<Poly>,
{
    let Some(ctx) = ops.first().map(|o| o.ctx()) else {
        return Ok(AxiomReport { checked: 0, failure: None });
    };
    let mut memo = MemoAction { action, ctx, nvars, cache: HashMap::new() };
    let monomials: Vec<Poly> =
        Poly::monomials_up_to(nvars, degree).iter().map(|e| Poly::monomial(e, Scalar::one())).collect();
    let mut first: HashMap<(usize, usize), Poly> = HashMap::new();
    for (i, a) in ops.iter().enumerate() {
        for (k, f) in monomials.iter().enumerate() {
            first.insert((i, k), memo.apply(a, f)?);
        }
    }
    let mut checked = 0;
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate().skip(i + 1) {
            let ab = bracket(a, b)?;
            for (k, f) in monomials.iter().enumerate() {
                checked += 1;
                let lhs = memo.apply(&ab, f)?;
                let rhs = memo.apply(a, &first[&(j, k)])?.sub(&memo.apply(b, &first[&(i, k)])?)?;
                if lhs != rhs {
                    return Ok(AxiomReport {
                        checked,
                        failure: Some(AxiomFailure { a: a.clone(), b: b.clone(), f: f.clone(), lhs, rhs }),
                    });
                }
            }
        }
    }
    Ok(AxiomReport { checked, failure: None })
}

/// The module axiom for one of the four families, over basis operators
/// within `bounds` and monomials up to `bounds.degree`.
pub fn verify_module_axiom(spec: &OmegaSpec, bounds: AxiomBounds) -> Result<AxiomReport> {
    let ops = module_operators(spec, bounds.m_max, bounds.n_max);
    check_module_axiom(&ops, spec.rank(), bounds.degree, |a, f| spec.act_poly(a, f))
}

/// Checks `(a b) f = a (b f)` with the associative product, over ordered
/// pairs of basis operators; `D` family only.
pub fn verify_assoc_action(spec: &OmegaSpec, bounds: AxiomBounds) -> Result<AxiomReport> {
    if spec.family() != Family::D {
        return Err(Error::WrongFamily(format!("{} is not an Omega(lambda, eps) module", spec)));
    }
    let ctx = AlgebraCtx::circle();
    let ops: Vec<DiffOp> = basis_box(1, bounds.m_max, bounds.n_max)
        .into_iter()
        .map(|b| DiffOp::basis(ctx, b).expect("rank-one basis"))
        .collect();
    let monomials: Vec<Poly> = (0..=bounds.degree).map(Poly::x_pow).collect();
    let mut checked = 0;
    for a in &ops {
        for b in &ops {
            let ab = assoc_product(a, b)?;
            for f in &monomials {
                checked += 1;
                let lhs = spec.act_poly(&ab, f)?;
                let rhs = spec.act_poly(a, &spec.act_poly(b, f)?)?;
                if lhs != rhs {
                    return Ok(AxiomReport {
                        checked,
                        failure: Some(AxiomFailure { a: a.clone(), b: b.clone(), f: f.clone(), lhs, rhs }),
                    });
                }
            }
        }
    }
    Ok(AxiomReport { checked, failure: None })
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub op: DiffOp,
    pub result: PolyVec,
}

/// Lowers the degree of `f` one step at a time down to a nonzero constant.
///
/// Each step applies `lambda_i^-1 beta^-1 t_i - beta^-1`, which maps `f`
/// to `f(.., x_i - 1, ..) - f`; `x_i` is chosen among the variables of the
/// top-degree part, so the total degree drops by exactly one.
pub fn degree_reduction_witness(v: &PolyVec) -> Result<Vec<ReductionStep>> {
    let spec = v.spec();
    let beta = spec.beta_sign().ok_or_else(|| Error::WrongFamily(format!("{} has no eps parameter", spec)))?;
    if v.poly().is_zero() {
        return Err(Error::ZeroInput("f"));
    }
    let nu = spec.rank();
    let ctx = AlgebraCtx::new(nu, false)?;
    let beta_inv = Scalar::from_int(beta);
    let mut steps = Vec::new();
    let mut cur = v.clone();
    while let Some(d) = cur.poly().degree().filter(|&d| d > 0) {
        let i = (0..nu)
            .find(|&i| cur.poly().terms().any(|(e, _)| e.iter().sum::<u32>() == d && e[i] > 0))
            .expect("a top-degree term has a variable");
        let mut m = vec![0; nu];
        m[i] = 1;
        let coeff = &spec.lambda()[i].inv()? * &beta_inv;
        let op = DiffOp::monomial(ctx, &m, &vec![0; nu], coeff)?.sub(&DiffOp::monomial(
            ctx,
            &vec![0; nu],
            &vec![0; nu],
            beta_inv.clone(),
        )?)?;
        cur = super::act(&op, &cur)?;
        steps.push(ReductionStep { op, result: cur.clone() });
    }
    Ok(steps)
}

#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub degree: u32,
    /// Dimension of the window of polynomials of degree `<= degree`.
    pub window_dim: usize,
    /// A monomial whose generated subspace stays proper, with a basis of
    /// that subspace.
    pub witness: Option<(Poly, Vec<Poly>)>,
}

impl SimplicityReport {
    pub fn found_invariant_subspace(&self) -> bool {
        self.witness.is_some()
    }
}

/// Generators used by [`simplicity_probe`] for each family.
fn probe_generators(spec: &OmegaSpec) -> Vec<DiffOp> {
    match spec.family() {
        Family::D => module_operators(spec, 1, 2),
        Family::Vir => module_operators(spec, 2, 1),
        Family::Hv => module_operators(spec, 2, 1),
        Family::DNu => module_operators(spec, 1, 2),
    }
}

/// Searches for a proper subspace of the polynomials of degree `<= degree`
/// generated by a single monomial. Finding none is a bounded statement,
/// not a proof of simplicity.
pub fn simplicity_probe(spec: &OmegaSpec, degree: u32) -> Result<SimplicityReport> {
    let gens = probe_generators(spec);
    let nu = spec.rank();
    let window = Poly::monomials_up_to(nu, degree);
    let to_sparse = |p: &Poly| -> SparseVec<Exps> { p.terms().map(|(e, c)| (e.clone(), c.clone())).collect() };
    for e in &window {
        let seed = Poly::monomial(e, Scalar::one());
        let closure = bounded_closure(
            &[to_sparse(&seed)],
            move |k: &Exps| k.iter().sum::<u32>() <= degree,
            |v| {
                let f = Poly::from_terms(nu, v.clone());
                gens.iter().map(|g| spec.act_poly(g, &f).map(|p| to_sparse(&p))).collect()
            },
            None,
        )?;
        if closure.dim() < window.len() {
            let basis = closure.basis().into_iter().map(|v| Poly::from_terms(nu, v)).collect();
            return Ok(SimplicityReport { degree, window_dim: window.len(), witness: Some((seed, basis)) });
        }
    }
    Ok(SimplicityReport { degree, window_dim: window.len(), witness: None })
}
