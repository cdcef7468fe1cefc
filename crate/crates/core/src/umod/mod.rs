//! Modules on polynomial rings that are free of rank one over the Cartan
//! part: `Omega(lambda, eps)` over the differential operators,
//! `Omega(lambda, alpha)` over Virasoro, `Omega(lambda, alpha, beta)` over
//! the twisted Heisenberg-Virasoro algebra, and `Omega(Lambda, eps)` in
//! rank `nu`.

mod poly;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::liealg::{Basis, DiffOp};
use crate::scalars::{binomial, int_pow, Rat, Scalar};

pub(crate) use poly::exps_label;
pub use poly::{Exps, Poly};
pub use verify::{
    check_module_axiom, degree_reduction_witness, module_operators, simplicity_probe, verify_assoc_action,
    verify_module_axiom, AxiomBounds, AxiomFailure, AxiomReport, ReductionStep, SimplicityReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Omega(lambda, eps)` over the differential operators.
    D,
    /// `Omega(lambda, alpha)` over Virasoro.
    Vir,
    /// `Omega(lambda, alpha, beta)` over the twisted Heisenberg-Virasoro algebra.
    Hv,
    /// `Omega(Lambda, eps)` in rank `nu`.
    DNu,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D => "D",
            Family::Vir => "Vir",
            Family::Hv => "HV",
            Family::DNu => "Dnu",
        })
    }
}

/// Parameters of one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpec {
    family: Family,
    lambda: Vec<Scalar>,
    eps: u8,
    alpha: Scalar,
    beta: Scalar,
}

fn check_lambda(l: &Scalar) -> Result<()> {
    if !l.is_unit() {
        return Err(Error::InvalidSpec(format!("lambda = {} is not invertible", l)));
    }
    Ok(())
}

fn check_eps(eps: u8) -> Result<()> {
    if eps > 1 {
        return Err(Error::InvalidSpec(format!("eps must be 0 or 1, got {}", eps)));
    }
    Ok(())
}

impl OmegaSpec {
    /// `Omega(lambda, eps)`.
    pub fn d_module(lambda: Scalar, eps: u8) -> Result<Self> {
        check_lambda(&lambda)?;
        check_eps(eps)?;
        Ok(OmegaSpec { family: Family::D, lambda: vec![lambda], eps, alpha: Scalar::zero(), beta: Scalar::zero() })
    }

    /// `Omega(lambda, alpha)` over Virasoro.
    pub fn vir_module(lambda: Scalar, alpha: Scalar) -> Result<Self> {
        check_lambda(&lambda)?;
        Ok(OmegaSpec { family: Family::Vir, lambda: vec![lambda], eps: 0, alpha, beta: Scalar::zero() })
    }

    /// `Omega(lambda, alpha, beta)`.
    pub fn hv_module(lambda: Scalar, alpha: Scalar, beta: Scalar) -> Result<Self> {
        check_lambda(&lambda)?;
        Ok(OmegaSpec { family: Family::Hv, lambda: vec![lambda], eps: 0, alpha, beta })
    }

    /// `Omega(Lambda, eps)` with `Lambda = (lambda_1, .., lambda_nu)`.
    pub fn dnu_module(lambda: Vec<Scalar>, eps: u8) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidSpec("Lambda needs at least one component".into()));
        }
        lambda.iter().try_for_each(check_lambda)?;
        check_eps(eps)?;
        Ok(OmegaSpec { family: Family::DNu, lambda, eps, alpha: Scalar::zero(), beta: Scalar::zero() })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn eps(&self) -> u8 {
        self.eps
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    /// The same module with every `lambda_i` set to 1.
    ///
    /// `Omega(Lambda, ..)` is the twist of this module by the automorphism
    /// `t^m D^n -> Lambda^m t^m D^n`, so bounded span computations that
    /// may rescale generators and basis vectors by units give identical
    /// answers for both.
    pub fn untwisted(&self) -> OmegaSpec {
        OmegaSpec { lambda: vec![Scalar::one(); self.lambda.len()], ..self.clone() }
    }

    fn has_eps(&self) -> bool {
        matches!(self.family, Family::D | Family::DNu)
    }

    /// `(-1)^(1-eps)` for the `D` and `Dnu` families.
    pub fn beta_sign(&self) -> Option<i64> {
        self.has_eps().then_some(if self.eps == 1 { 1 } else { -1 })
    }

    /// `Lambda^m`.
    pub fn lambda_pow(&self, m: &[i64]) -> Result<Scalar> {
        let mut out = Scalar::one();
        for (l, &k) in self.lambda.iter().zip(m) {
            if k != 0 {
                out = &out * &l.pow(k)?;
            }
        }
        Ok(out)
    }

    /// Wraps a polynomial as an element of this module.
    pub fn vector(&self, poly: Poly) -> Result<PolyVec> {
        if poly.nvars() != self.rank() {
            return Err(Error::RankMismatch { op: poly.nvars(), module: self.rank() });
        }
        Ok(PolyVec { spec: self.clone(), poly })
    }
}

impl fmt::Display for OmegaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lam = if self.rank() == 1 {
            self.lambda[0].to_string()
        } else {
            format!("({})", self.lambda.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", "))
        };
        match self.family {
            Family::D | Family::DNu => write!(f, "Omega({}, {})", lam, self.eps),
            Family::Vir => write!(f, "Omega({}, {})", lam, self.alpha),
            Family::Hv => write!(f, "Omega({}, {}, {})", lam, self.alpha, self.beta),
        }
    }
}

/// An element of a module from [`OmegaSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVec {
    spec: OmegaSpec,
    poly: Poly,
}

impl PolyVec {
    pub fn spec(&self) -> &OmegaSpec {
        &self.spec
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Generators of the Heisenberg-Virasoro algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HvGen {
    L(i64),
    I(i64),
}

/// Integer polynomial as `(exponents, coefficient)` pairs.
type RatPoly = Vec<(Exps, Rat)>;

/// `c * M(x) * f(x - m)` where `M` has rational coefficients.
fn multiplier_shift(c: &Scalar, mult: &RatPoly, f_shifted: &Poly) -> BTreeMap<Exps, Scalar> {
    let mut acc: BTreeMap<Exps, Scalar> = BTreeMap::new();
    for (e1, r) in mult {
        for (e2, s) in f_shifted.terms() {
            let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            let v = s.scale(r);
            match acc.get_mut(&e) {
                Some(x) => *x += &v,
                None => {
                    acc.insert(e, v);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|(e, v)| (e, &v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

/// `prod_j (x_j - s_j)^(n_j)` with rational coefficients.
fn shifted_power(s: &[i64], n: &[u32]) -> RatPoly {
    let mut out: RatPoly = vec![(Exps::new(), Rat::one())];
    for (&sj, &nj) in s.iter().zip(n) {
        let mut next = Vec::new();
        for (e, c) in &out {
            for k in 0..=nj {
                let r = &binomial(nj, k) * &int_pow(-sj, nj - k);
                if r.is_zero() {
                    continue;
                }
                let mut e = e.clone();
                e.push(k);
                next.push((e, c * &r));
            }
        }
        out = next;
    }
    out
}

/// One term of an action: scalar factor, rational multiplier, shift.
struct ActionTerm {
    coeff: Scalar,
    mult: RatPoly,
    shift: SmallVec<[i64; 2]>,
}

impl OmegaSpec {
    fn check_rank(&self, op: &DiffOp) -> Result<()> {
        if op.rank() != self.rank() {
            return Err(Error::RankMismatch { op: op.rank(), module: self.rank() });
        }
        Ok(())
    }

    /// `t^m D^n` on `Omega(Lambda, eps)`: `beta^(1-|n|) Lambda^m prod (x_j - eps m_j)^(n_j) f(x - m)`.
    fn d_term(&self, b: &Basis) -> Result<ActionTerm> {
        let sign_flip = self.eps == 0 && (1 - b.order() as i64).rem_euclid(2) == 1;
        let mut coeff = self.lambda_pow(&b.m)?;
        if sign_flip {
            coeff = -coeff;
        }
        let s: SmallVec<[i64; 2]> = b.m.iter().map(|m| m * self.eps as i64).collect();
        Ok(ActionTerm { coeff, mult: shifted_power(&s, &b.n), shift: b.m.clone() })
    }

    /// `L_m`: `lambda^m (x - m alpha) f(x - m)`.
    fn vir_l_term(&self, m: i64) -> Result<Vec<ActionTerm>> {
        let lm = self.lambda_pow(&[m])?;
        let mut out = vec![ActionTerm {
            coeff: lm.clone(),
            mult: vec![(Exps::from_slice(&[1]), Rat::one())],
            shift: SmallVec::from_slice(&[m]),
        }];
        let c = &lm * &self.alpha.scale(&Rat::from_int(-m));
        if !c.is_zero() {
            out.push(ActionTerm {
                coeff: c,
                mult: vec![(Exps::from_slice(&[0]), Rat::one())],
                shift: SmallVec::from_slice(&[m]),
            });
        }
        Ok(out)
    }

    /// `I_m`: `beta lambda^m f(x - m)`.
    fn hv_i_term(&self, m: i64) -> Result<ActionTerm> {
        let c = &self.beta * &self.lambda_pow(&[m])?;
        Ok(ActionTerm { coeff: c, mult: vec![(Exps::from_slice(&[0]), Rat::one())], shift: SmallVec::from_slice(&[m]) })
    }

    /// Action terms of one basis element of the subalgebra this family is
    /// a module over, with `t^m D` read as `L_m` and `t^m` as `I_m`.
    fn basis_terms(&self, b: &Basis) -> Result<Vec<ActionTerm>> {
        match self.family {
            Family::D | Family::DNu => Ok(vec![self.d_term(b)?]),
            Family::Vir => match b.n[0] {
                1 => self.vir_l_term(b.m[0]),
                _ => Err(Error::WrongFamily(format!("{} is not in the Virasoro algebra", b.label()))),
            },
            Family::Hv => match b.n[0] {
                1 => self.vir_l_term(b.m[0]),
                0 => Ok(vec![self.hv_i_term(b.m[0])?]),
                _ => Err(Error::WrongFamily(format!("{} is not in the Heisenberg-Virasoro algebra", b.label()))),
            },
        }
    }

    fn apply_terms(&self, op: &DiffOp, f: &Poly) -> Result<Poly> {
        self.check_rank(op)?;
        if f.nvars() != self.rank() {
            return Err(Error::RankMismatch { op: f.nvars(), module: self.rank() });
        }
        let mut shifts: BTreeMap<SmallVec<[i64; 2]>, Poly> = BTreeMap::new();
        let mut acc: BTreeMap<Exps, Scalar> = BTreeMap::new();
        for (b, c) in op.terms() {
            for t in self.basis_terms(b)? {
                let fs = shifts.entry(t.shift.clone()).or_insert_with(|| f.shift(&t.shift));
                let coeff = &t.coeff * c;
                for (e, v) in multiplier_shift(&coeff, &t.mult, fs) {
                    match acc.get_mut(&e) {
                        Some(x) => *x += &v,
                        None => {
                            acc.insert(e, v);
                        }
                    }
                }
            }
        }
        // the central element acts by zero
        Ok(Poly::from_terms(self.rank(), acc))
    }

    /// Acts on a bare polynomial with an operator from the algebra this
    /// module lives over (`t^m D` = `L_m`, `t^m` = `I_m` for the Virasoro
    /// and Heisenberg-Virasoro families). Used by the verifiers.
    pub fn act_poly(&self, op: &DiffOp, f: &Poly) -> Result<Poly> {
        self.apply_terms(op, f)
    }
}

/// The action of the differential operators on `Omega(lambda, eps)` or
/// `Omega(Lambda, eps)`. The central element acts by zero.
pub fn act(op: &DiffOp, v: &PolyVec) -> Result<PolyVec> {
    if !v.spec.has_eps() {
        return Err(Error::WrongFamily(format!(
            "{} is not a module over the full operator algebra; use the Virasoro or Heisenberg-Virasoro action",
            v.spec
        )));
    }
    Ok(PolyVec { spec: v.spec.clone(), poly: v.spec.apply_terms(op, &v.poly)? })
}

/// Acts by an operator of the subalgebra matching the family: `t^m D` for
/// Virasoro, `t^m D` and `t^m` for Heisenberg-Virasoro, anything for the
/// `D` families.
pub fn act_restricted(op: &DiffOp, v: &PolyVec) -> Result<PolyVec> {
    Ok(PolyVec { spec: v.spec.clone(), poly: v.spec.apply_terms(op, &v.poly)? })
}

fn one_term(terms: Vec<ActionTerm>, f: &Poly) -> Poly {
    let mut acc: BTreeMap<Exps, Scalar> = BTreeMap::new();
    for t in terms {
        for (e, v) in multiplier_shift(&t.coeff, &t.mult, &f.shift(&t.shift)) {
            let x = acc.entry(e).or_default();
            *x += &v;
        }
    }
    Poly::from_terms(f.nvars(), acc)
}

/// `L_m f = lambda^m (x - m alpha) f(x - m)` on `Omega(lambda, alpha)`.
pub fn act_vir(spec: &OmegaSpec, m: i64, f: &PolyVec) -> Result<PolyVec> {
    if spec.family != Family::Vir || f.spec != *spec {
        return Err(Error::WrongFamily(format!("{} is not the Virasoro module {}", f.spec, spec)));
    }
    Ok(PolyVec { spec: spec.clone(), poly: one_term(spec.vir_l_term(m)?, &f.poly) })
}

/// `L_m` and `I_m` on `Omega(lambda, alpha, beta)`.
pub fn act_hv(spec: &OmegaSpec, gen: HvGen, f: &PolyVec) -> Result<PolyVec> {
    if spec.family != Family::Hv || f.spec != *spec {
        return Err(Error::WrongFamily(format!("{} is not the Heisenberg-Virasoro module {}", f.spec, spec)));
    }
    let terms = match gen {
        HvGen::L(m) => spec.vir_l_term(m)?,
        HvGen::I(m) => vec![spec.hv_i_term(m)?],
    };
    Ok(PolyVec { spec: spec.clone(), poly: one_term(terms, &f.poly) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::AlgebraCtx;
    use crate::scalars::Params;

    fn lam() -> Scalar {
        Params::parse("lambda:inv").unwrap().var("lambda").unwrap()
    }

    fn int(k: i64) -> Scalar {
        Scalar::from_int(k)
    }

    fn op(m: i64, n: u32) -> DiffOp {
        DiffOp::t_d(AlgebraCtx::circle(), m, n)
    }

    #[test]
    fn spec_validation() {
        assert!(OmegaSpec::d_module(int(0), 1).is_err());
        assert!(OmegaSpec::d_module(int(2), 2).is_err());
        let p = Params::parse("a").unwrap();
        assert!(OmegaSpec::d_module(p.var("a").unwrap(), 1).is_err());
        let s = OmegaSpec::d_module(lam(), 0).unwrap();
        assert_eq!(s.beta_sign(), Some(-1));
        assert_eq!(OmegaSpec::d_module(lam(), 1).unwrap().beta_sign(), Some(1));
        assert_eq!(OmegaSpec::vir_module(lam(), int(1)).unwrap().beta_sign(), None);
    }

    #[test]
    fn d_family_examples() {
        let s1 = OmegaSpec::d_module(lam(), 1).unwrap();
        let x = s1.vector(Poly::x_pow(1)).unwrap();
        assert_eq!(act(&op(0, 1), &x).unwrap().poly(), &Poly::x_pow(2));

        let s0 = OmegaSpec::d_module(lam(), 0).unwrap();
        let one = s0.vector(Poly::x_pow(0)).unwrap();
        assert_eq!(act(&op(0, 2), &one).unwrap().poly(), &Poly::x_pow(2).scale(&int(-1)));

        // D^3 f = x^3 f for eps = 0
        let f = s0.vector(Poly::x_pow(2).add(&Poly::x_pow(0)).unwrap()).unwrap();
        let want = Poly::x_pow(5).add(&Poly::x_pow(3)).unwrap();
        assert_eq!(act(&op(0, 3), &f).unwrap().poly(), &want);

        for eps in 0..=1 {
            let s = OmegaSpec::d_module(lam(), eps).unwrap();
            let one = s.vector(Poly::one(1)).unwrap();
            let beta = int(s.beta_sign().unwrap());
            for m in -4..=4 {
                let want = Poly::constant(1, &beta * &lam().pow(m).unwrap());
                assert_eq!(act(&op(m, 0), &one).unwrap().poly(), &want);
            }
        }
    }

    #[test]
    fn central_acts_by_zero() {
        let s = OmegaSpec::d_module(lam(), 1).unwrap();
        let ctx = AlgebraCtx::extended();
        let c = DiffOp::central(ctx, int(3)).unwrap();
        let f = s.vector(Poly::x_pow(3)).unwrap();
        assert!(act(&c, &f).unwrap().poly().is_zero());
    }

    #[test]
    fn virasoro_and_hv_examples() {
        let p = Params::parse("lambda:inv,alpha,beta").unwrap();
        let (l, a, b) = (p.var("lambda").unwrap(), p.var("alpha").unwrap(), p.var("beta").unwrap());
        let vir = OmegaSpec::vir_module(l.clone(), a.clone()).unwrap();
        let f = vir.vector(Poly::x_pow(2)).unwrap();
        assert_eq!(act_vir(&vir, 0, &f).unwrap().poly(), &Poly::x_pow(3));

        let hv = OmegaSpec::hv_module(l.clone(), a.clone(), b.clone()).unwrap();
        let one = hv.vector(Poly::one(1)).unwrap();
        for m in -3..=3 {
            let want = Poly::constant(1, &b * &l.pow(m).unwrap());
            assert_eq!(act_hv(&hv, HvGen::I(m), &one).unwrap().poly(), &want);
        }
        let vir0 = OmegaSpec::vir_module(l.clone(), int(0)).unwrap();
        let one = vir0.vector(Poly::one(1)).unwrap();
        for m in -3..=3 {
            let want = Poly::x_pow(1).scale(&l.pow(m).unwrap());
            assert_eq!(act_vir(&vir0, m, &one).unwrap().poly(), &want);
        }
        // L_m = t^m D through the embedding, rejected for D^2
        let f = vir.vector(Poly::x_pow(1)).unwrap();
        assert_eq!(act_restricted(&op(2, 1), &f).unwrap(), act_vir(&vir, 2, &f).unwrap());
        assert!(matches!(act_restricted(&op(2, 2), &f), Err(Error::WrongFamily(_))));
        assert!(matches!(act(&op(2, 1), &f), Err(Error::WrongFamily(_))));
        assert!(act_vir(&hv, 1, &hv.vector(Poly::one(1)).unwrap()).is_err());
    }

    #[test]
    fn rank_two_action() {
        let p = Params::parse("l1:inv,l2:inv").unwrap();
        let s = OmegaSpec::dnu_module(vec![p.var("l1").unwrap(), p.var("l2").unwrap()], 1).unwrap();
        let ctx = AlgebraCtx::new(2, false).unwrap();
        // D1 D2 f = x1 x2 f for eps = 1
        let d1d2 = DiffOp::monomial(ctx, &[0, 0], &[1, 1], int(1)).unwrap();
        let f = s.vector(Poly::monomial(&[0, 2], int(1))).unwrap();
        assert_eq!(act(&d1d2, &f).unwrap().poly(), &Poly::monomial(&[1, 3], int(1)));
        assert!(matches!(act(&op(0, 1), &f), Err(Error::RankMismatch { .. })));
    }
}
