//! Acceptance run. Each criterion prints one verdict line with its running
//! time; criteria run one after another so their timings are not skewed by
//! each other. Expected values come from oracles written here: an
//! independent implementation of the operator product, bracket, cocycle and
//! module actions over `BigRational`, closed forms, and Bernoulli numbers
//! from the explicit double sum.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use weylmod::hwmod::{
    act_verma, h_from_phi, singular_vectors, verma_basis, HWSpec, Quasipolynomial, TruncVerma, VermaElem,
};
use weylmod::liealg::{
    assoc_product, basis_box, bracket, check_jacobi, cocycle_on_basis, cocycle_phi, generated_span_probe, AlgebraCtx,
    Basis, DiffOp, SpanBounds,
};
use weylmod::scalars::{Params, Scalar};
use weylmod::tensor::{
    act_tensor, intertwiner_dim, irreducibility_probe, vandermonde_reduce, vanishing_bound, TensorBounds, TensorElem,
    TensorSpec, Verdict,
};
use weylmod::umod::{
    degree_reduction_witness, module_operators, simplicity_probe, verify_assoc_action, verify_module_axiom,
    AxiomBounds, Family, OmegaSpec, Poly,
};

#[path = "common/corpus.rs"]
mod corpus;
#[path = "common/golden.rs"]
mod golden;

type Q = BigRational;
type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

trait Lib<T> {
    fn lib(self) -> Result<T, String>;
}

impl<T> Lib<T> for weylmod::Result<T> {
    fn lib(self) -> Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn qr(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// `b^e` with `0^0 = 1`.
fn qpow(b: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * b)
}

fn qpowi(b: &Q, e: i64) -> Q {
    if e >= 0 {
        qpow(b, e as u32)
    } else {
        qpow(&b.recip(), e.unsigned_abs() as u32)
    }
}

fn binom(n: u32, k: u32) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * q((n - i) as i64) / q((i + 1) as i64))
}

fn fact(n: u32) -> Q {
    (1..=n).fold(Q::one(), |acc, i| acc * q(i as i64))
}

fn to_q(s: &Scalar) -> Result<Q, String> {
    s.as_rat().map(|r| r.to_big()).ok_or_else(|| format!("{} is not a number", s))
}

// ---------------------------------------------------------------- oracle operators

type Key = (Vec<i64>, Vec<u32>);

/// `sum c t^m D^n` plus `central * C`.
#[derive(Clone, Debug, Default, PartialEq)]
struct Op {
    terms: BTreeMap<Key, Q>,
    central: Q,
}

impl Op {
    fn mono(m: &[i64], n: &[u32], c: Q) -> Op {
        let mut o = Op::default();
        o.add((m.to_vec(), n.to_vec()), c);
        o
    }

    fn td(m: i64, n: u32, c: Q) -> Op {
        Op::mono(&[m], &[n], c)
    }

    fn add(&mut self, k: Key, c: Q) {
        let e = self.terms.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn plus(&self, o: &Op) -> Op {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add(k.clone(), c.clone());
        }
        r.central += &o.central;
        r
    }

    fn scale(&self, s: &Q) -> Op {
        let mut r = Op::default();
        for (k, c) in &self.terms {
            r.add(k.clone(), c * s);
        }
        r.central = &self.central * s;
        r
    }

    fn minus(&self, o: &Op) -> Op {
        self.plus(&o.scale(&q(-1)))
    }

    fn sum(parts: impl IntoIterator<Item = Op>) -> Op {
        parts.into_iter().fold(Op::default(), |acc, p| acc.plus(&p))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }
}

fn from_lib(a: &DiffOp) -> Result<Op, String> {
    let mut o = Op::default();
    for (b, c) in a.terms() {
        o.add((b.m.to_vec(), b.n.to_vec()), to_q(c)?);
    }
    o.central = to_q(a.central_coeff())?;
    Ok(o)
}

fn from_basis(b: &Basis) -> Op {
    Op::mono(&b.m, &b.n, Q::one())
}

/// `t^a D^p t^b D^q = t^(a+b) prod_i (D_i + b_i)^p_i D_i^q_i`; central
/// parts are ignored.
fn oprod(x: &Op, y: &Op) -> Op {
    let mut out = Op::default();
    for ((a, p), cx) in &x.terms {
        for ((b, qn), cy) in &y.terms {
            let r = a.len();
            let mut expansion: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
            expansion.insert(vec![0; r], cx * cy);
            for i in 0..r {
                let mut next = BTreeMap::new();
                for (e, c) in &expansion {
                    for k in 0..=p[i] {
                        let mut e2 = e.clone();
                        e2[i] += k;
                        let v = c * binom(p[i], k) * qpow(&q(b[i]), p[i] - k);
                        *next.entry(e2).or_insert_with(Q::zero) += v;
                    }
                }
                expansion = next;
            }
            let m: Vec<i64> = a.iter().zip(b).map(|(s, t)| s + t).collect();
            for (e, c) in expansion {
                let n: Vec<u32> = e.iter().zip(qn).map(|(s, t)| s + t).collect();
                out.add((m.clone(), n), c);
            }
        }
    }
    out
}

/// The displayed cocycle formula on basis monomials, with `0^0 = 1`.
fn displayed_cocycle(m1: i64, n1: u32, m2: i64, n2: u32) -> Q {
    if m1 == 0 || m1 + m2 != 0 {
        return Q::zero();
    }
    let half = qr(1, 2);
    let term = |i: i64| qpow(&q(m1 - i), n1) * qpow(&q(i), n2);
    if m1 > 0 {
        let sign = if n1.is_multiple_of(2) { q(-1) } else { q(1) };
        sign * half * (1..=m1).map(term).fold(Q::zero(), |a, b| a + b)
    } else {
        let sign = if n1.is_multiple_of(2) { q(1) } else { q(-1) };
        sign * half * (m1..=-1).map(term).fold(Q::zero(), |a, b| a + b)
    }
}

/// The cocycle: the `m1 > 0` branch, extended to `m1 < 0` by antisymmetry.
/// The displayed `m1 < 0` branch agrees unless exactly one of `n1`, `n2`
/// is zero, where it is not antisymmetric.
fn ocycle(m1: i64, n1: u32, m2: i64, n2: u32) -> Q {
    if m1 < 0 {
        -displayed_cocycle(m2, n2, m1, n1)
    } else {
        displayed_cocycle(m1, n1, m2, n2)
    }
}

fn ophi(x: &Op, y: &Op) -> Q {
    let mut s = Q::zero();
    for ((a, p), cx) in &x.terms {
        for ((b, n), cy) in &y.terms {
            s += cx * cy * ocycle(a[0], p[0], b[0], n[0]);
        }
    }
    s
}

/// `xy - yx`, plus the cocycle when `central`.
fn obracket(x: &Op, y: &Op, central: bool) -> Op {
    let mut r = oprod(x, y).minus(&oprod(y, x));
    r.central = if central { ophi(x, y) } else { Q::zero() };
    r
}

// ---------------------------------------------------------------- oracle modules

type OPoly = BTreeMap<Vec<u32>, Q>;

fn padd(acc: &mut OPoly, e: Vec<u32>, c: Q) {
    let v = acc.entry(e.clone()).or_insert_with(Q::zero);
    *v += c;
    if v.is_zero() {
        acc.remove(&e);
    }
}

fn pmul(f: &OPoly, g: &OPoly) -> OPoly {
    let mut out = OPoly::new();
    for (e1, c1) in f {
        for (e2, c2) in g {
            padd(&mut out, e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
        }
    }
    out
}

fn pscale(f: &OPoly, s: &Q) -> OPoly {
    let mut out = OPoly::new();
    for (e, c) in f {
        padd(&mut out, e.clone(), c * s);
    }
    out
}

fn pplus(f: &OPoly, g: &OPoly) -> OPoly {
    let mut out = f.clone();
    for (e, c) in g {
        padd(&mut out, e.clone(), c.clone());
    }
    out
}

fn pconst(r: usize, c: Q) -> OPoly {
    let mut out = OPoly::new();
    padd(&mut out, vec![0; r], c);
    out
}

/// `x_i - a`.
fn plin(r: usize, i: usize, a: Q) -> OPoly {
    let mut e = vec![0; r];
    e[i] = 1;
    let mut out = pconst(r, -a);
    padd(&mut out, e, Q::one());
    out
}

fn ppow(f: &OPoly, r: usize, k: u32) -> OPoly {
    (0..k).fold(pconst(r, Q::one()), |acc, _| pmul(&acc, f))
}

/// `f(x - m)`.
fn pshift(f: &OPoly, m: &[i64]) -> OPoly {
    let r = m.len();
    let mut out = OPoly::new();
    for (e, c) in f {
        let mut term = pconst(r, c.clone());
        for i in 0..r {
            term = pmul(&term, &ppow(&plin(r, i, q(m[i])), r, e[i]));
        }
        out = pplus(&out, &term);
    }
    out
}

fn from_poly(f: &Poly) -> Result<OPoly, String> {
    let mut out = OPoly::new();
    for (e, c) in f.terms() {
        padd(&mut out, e.to_vec(), to_q(c)?);
    }
    Ok(out)
}

/// Numeric parameters of one module.
#[derive(Clone)]
struct NumSpec {
    family: Family,
    lambda: Vec<Q>,
    eps: i64,
    alpha: Q,
    beta: Q,
}

impl NumSpec {
    fn d(lambda: Q, eps: i64) -> Self {
        NumSpec { family: Family::D, lambda: vec![lambda], eps, alpha: Q::zero(), beta: Q::zero() }
    }
}

/// The defining formulas, term by term; `C` acts by zero.
fn oact(s: &NumSpec, a: &Op, f: &OPoly) -> Result<OPoly, String> {
    let r = s.lambda.len();
    let sign = q(if s.eps == 1 { 1 } else { -1 });
    let mut out = OPoly::new();
    for ((m, n), c) in &a.terms {
        let lam = (0..r).fold(Q::one(), |acc, i| acc * qpowi(&s.lambda[i], m[i]));
        let shifted = pshift(f, m);
        let g = match s.family {
            Family::D | Family::DNu => {
                let order: u32 = n.iter().sum();
                let mut g = pscale(&shifted, &(lam * qpowi(&sign, 1 - order as i64)));
                for i in 0..r {
                    g = pmul(&g, &ppow(&plin(r, i, q(s.eps * m[i])), r, n[i]));
                }
                g
            }
            Family::Vir | Family::Hv => match n[0] {
                1 => pmul(&pscale(&shifted, &lam), &plin(1, 0, q(m[0]) * &s.alpha)),
                0 if s.family == Family::Hv => pscale(&shifted, &(lam * &s.beta)),
                _ => return Err(format!("t^{}*D^{} is outside the family", m[0], n[0])),
            },
        };
        out = pplus(&out, &pscale(&g, c));
    }
    Ok(out)
}

fn monomials(r: usize, deg: u32) -> Vec<OPoly> {
    Poly::monomials_up_to(r, deg).into_iter().map(|e| [(e.to_vec(), Q::one())].into_iter().collect()).collect()
}

fn lib_poly(e: &[u32]) -> Poly {
    Poly::monomial(e, Scalar::one())
}

/// Library action with the symbolic parameters replaced by numbers.
fn lib_act_numeric(spec: &OmegaSpec, op: &DiffOp, e: &[u32], values: &[(&str, Q)]) -> Result<OPoly, String> {
    let p = spec.act_poly(op, &lib_poly(e)).lib()?;
    let mut out = OPoly::new();
    for (ex, c) in p.terms() {
        let mut s = c.clone();
        for (name, v) in values {
            let vs = Scalar::from_rat(weylmod::scalars::Rat::from_big(v.clone()));
            s = s.substitute(name, &vs).lib()?;
        }
        padd(&mut out, ex.to_vec(), to_q(&s)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let ctx = AlgebraCtx::circle();
    let mut checks = 0;
    let mut check = |name: String, a: (i64, u32), b: (i64, u32), want: Op| -> Result<(), String> {
        let got = from_lib(&bracket(&DiffOp::t_d(ctx, a.0, a.1), &DiffOp::t_d(ctx, b.0, b.1)).lib()?)?;
        let oracle = obracket(&Op::td(a.0, a.1, q(1)), &Op::td(b.0, b.1, q(1)), false);
        ensure!(oracle == want, "oracle disagrees with {}", name);
        ensure!(got == want, "{}: got {:?}", name, got);
        checks += 1;
        Ok(())
    };
    for m in -5..=5i64 {
        check(format!("[D^2, t^{}]", m), (0, 2), (m, 0), Op::sum([Op::td(m, 1, q(2 * m)), Op::td(m, 0, q(m * m))]))?;
        check(format!("[D^2, t^{}*D]", m), (0, 2), (m, 1), Op::sum([Op::td(m, 1, q(m * m)), Op::td(m, 2, q(2 * m))]))?;
    }
    check("[t^-1*D^2, t*D^2]".into(), (-1, 2), (1, 2), Op::td(0, 3, q(4)))?;
    check("[D^3, t*D]".into(), (0, 3), (1, 1), Op::sum([Op::td(1, 3, q(3)), Op::td(1, 2, q(3)), Op::td(1, 1, q(1))]))?;
    check("[t*D^2, t^-1*D]".into(), (1, 2), (-1, 1), Op::sum([Op::td(0, 2, q(-3)), Op::td(0, 1, q(1))]))?;
    for k in 0..=6u32 {
        let ki = k as i64;
        let mut want = Op::sum([Op::td(0, k + 1, q(ki + 2)), Op::td(0, k, qr((ki + 1) * (ki - 2), 2))]);
        for i in 3..=k {
            want = want.plus(&Op::td(0, k + 2 - i, binom(k, i)));
        }
        check(format!("[t^-1*D^{}, t*D^2]", k), (-1, k), (1, 2), want)?;
    }
    Ok(format!("{} identities", checks))
}

fn criterion_2() -> Outcome {
    let r1 = check_jacobi(&basis_box(1, 3, 3), true);
    ensure!(r1.passed(), "extended algebra: {:?} / {:?}", r1.antisymmetry_failure, r1.jacobi_failure);
    let r2 = check_jacobi(&basis_box(2, 2, 2), false);
    ensure!(r2.passed(), "rank 2: {:?} / {:?}", r2.antisymmetry_failure, r2.jacobi_failure);

    // the library bracket agrees with the oracle on every pair
    let ext = AlgebraCtx::extended();
    let ctx2 = AlgebraCtx::new(2, false).lib()?;
    let mut pairs = 0;
    for (ctx, central, basis) in [(ext, true, basis_box(1, 3, 3)), (ctx2, false, basis_box(2, 2, 2))] {
        let ops: Vec<DiffOp> =
            basis.iter().map(|b| DiffOp::basis(ctx, b.clone())).collect::<weylmod::Result<_>>().lib()?;
        let oracle: Vec<Op> = basis.iter().map(from_basis).collect();
        for i in 0..ops.len() {
            for j in 0..ops.len() {
                let got = from_lib(&bracket(&ops[i], &ops[j]).lib()?)?;
                ensure!(got == obracket(&oracle[i], &oracle[j], central), "[{}, {}]", ops[i], ops[j]);
                pairs += 1;
            }
        }
    }
    // oracle Jacobi, with central terms, on the rank-one box and a rank-two sub-box
    let mut triples = 0;
    for (central, basis) in [(true, basis_box(1, 3, 3)), (false, basis_box(2, 1, 1))] {
        let ops: Vec<Op> = basis.iter().map(from_basis).collect();
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                for k in j + 1..ops.len() {
                    let (x, y, z) = (&ops[i], &ops[j], &ops[k]);
                    let jac = Op::sum([
                        obracket(x, &obracket(y, z, central), central),
                        obracket(y, &obracket(z, x, central), central),
                        obracket(z, &obracket(x, y, central), central),
                    ]);
                    ensure!(jac.is_zero(), "oracle Jacobi on {:?}, {:?}, {:?}", basis[i], basis[j], basis[k]);
                    triples += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} + {} library triples, {} pairs against the oracle, {} oracle triples",
        r1.triples, r2.triples, pairs, triples
    ))
}

fn criterion_3() -> Outcome {
    let ctx = AlgebraCtx::circle();
    // basis values against the displayed formula, on a wider box
    for x in basis_box(1, 6, 3) {
        for y in basis_box(1, 6, 3) {
            let (m1, n1, m2, n2) = (x.m[0], x.n[0], y.m[0], y.n[0]);
            let got = cocycle_on_basis(&x, &y).to_big();
            ensure!(got == ocycle(m1, n1, m2, n2), "phi({:?}, {:?})", x, y);
            if (n1 == 0) == (n2 == 0) {
                ensure!(got == displayed_cocycle(m1, n1, m2, n2), "displayed branch at ({:?}, {:?})", x, y);
            }
        }
    }
    let basis = basis_box(1, 3, 3);
    let ops: Vec<DiffOp> = basis.iter().map(|b| DiffOp::basis(ctx, b.clone())).collect::<weylmod::Result<_>>().lib()?;
    let mut triples = 0;
    for i in 0..ops.len() {
        for j in 0..ops.len() {
            let ij = bracket(&ops[i], &ops[j]).lib()?;
            for k in 0..ops.len() {
                let jk = bracket(&ops[j], &ops[k]).lib()?;
                let ki = bracket(&ops[k], &ops[i]).lib()?;
                let s = &(&cocycle_phi(&ij, &ops[k]).lib()? + &cocycle_phi(&jk, &ops[i]).lib()?)
                    + &cocycle_phi(&ki, &ops[j]).lib()?;
                ensure!(s.is_zero(), "cocycle identity on {}, {}, {}", ops[i], ops[j], ops[k]);
                triples += 1;
            }
        }
    }
    for m in -6..=6i64 {
        let got = to_q(&cocycle_phi(&DiffOp::witt(ctx, m), &DiffOp::witt(ctx, -m)).lib()?)?;
        ensure!(got == qr(m * m * m - m, 12), "phi(t^{}*D, t^{}*D) = {}", m, -m, got);
    }
    let mut zero = 0;
    for a in ops.iter().filter(|a| a.terms().all(|(b, _)| b.m[0] == 0)) {
        for b in &ops {
            ensure!(cocycle_phi(a, b).lib()?.is_zero(), "phi({}, {}) with m1 = 0", a, b);
            zero += 1;
        }
    }
    Ok(format!("{} ordered triples, 13 Virasoro values, {} vanishing pairs", triples, zero))
}

fn sym() -> Params {
    Params::parse("lambda:inv,alpha,beta,l1:inv,l2:inv").unwrap()
}

/// Symbolic specs with numeric stand-ins for the oracle.
/// A symbolic module, its numeric stand-in and the substitution between them.
type AxiomCase = (OmegaSpec, NumSpec, Vec<(&'static str, Q)>);

fn axiom_specs() -> Result<Vec<AxiomCase>, String> {
    let p = sym();
    let v = |s: &str| p.var(s).unwrap();
    let (lam, alpha, beta) = (qr(2, 3), qr(5, 2), qr(-7, 3));
    let (l1, l2) = (qr(3, 2), q(-2));
    let vals = vec![
        ("lambda", lam.clone()),
        ("alpha", alpha.clone()),
        ("beta", beta.clone()),
        ("l1", l1.clone()),
        ("l2", l2.clone()),
    ];
    let num = |family, lambda: Vec<Q>, eps| NumSpec { family, lambda, eps, alpha: alpha.clone(), beta: beta.clone() };
    Ok(vec![
        (OmegaSpec::d_module(v("lambda"), 1).lib()?, num(Family::D, vec![lam.clone()], 1), vals.clone()),
        (OmegaSpec::d_module(v("lambda"), 0).lib()?, num(Family::D, vec![lam.clone()], 0), vals.clone()),
        (OmegaSpec::vir_module(v("lambda"), v("alpha")).lib()?, num(Family::Vir, vec![lam.clone()], 1), vals.clone()),
        (
            OmegaSpec::hv_module(v("lambda"), v("alpha"), v("beta")).lib()?,
            num(Family::Hv, vec![lam.clone()], 1),
            vals.clone(),
        ),
        (
            OmegaSpec::dnu_module(vec![v("l1"), v("l2")], 1).lib()?,
            num(Family::DNu, vec![l1.clone(), l2.clone()], 1),
            vals.clone(),
        ),
        (OmegaSpec::dnu_module(vec![v("l1"), v("l2")], 0).lib()?, num(Family::DNu, vec![l1, l2], 0), vals),
    ])
}

fn criterion_4() -> Outcome {
    let bounds = AxiomBounds { m_max: 3, n_max: 3, degree: 4 };
    let mut instances = 0;
    let mut compared = 0;
    let mut oracle_axiom = 0;
    for (spec, num, vals) in axiom_specs()? {
        let r = verify_module_axiom(&spec, bounds).lib()?;
        ensure!(r.passed(), "{}: {:?}", spec, r.failure.map(|f| format!("a = {}, b = {}, f = {}", f.a, f.b, f.f)));
        instances += r.checked;

        // the symbolic action specialises to the defining formulas
        let rank = spec.rank();
        let ops = module_operators(&spec, 3, 3);
        for op in &ops {
            let oop = from_lib(op)?;
            for e in Poly::monomials_up_to(rank, 4) {
                let f: OPoly = [(e.to_vec(), Q::one())].into_iter().collect();
                ensure!(
                    lib_act_numeric(&spec, op, &e, &vals)? == oact(&num, &oop, &f)?,
                    "{} on {:?} in {}",
                    op,
                    e,
                    spec
                );
                compared += 1;
            }
        }
        // the module axiom for the oracle action with the oracle bracket
        let small: Vec<Op> = if rank == 1 {
            ops.iter().map(from_lib).collect::<Result<_, _>>()?
        } else {
            basis_box(2, 1, 2).iter().filter(|b| b.order() <= 2).map(from_basis).collect()
        };
        let central = rank == 1;
        for (i, a) in small.iter().enumerate() {
            for b in &small[i + 1..] {
                let ab = obracket(a, b, central);
                for f in monomials(rank, if rank == 1 { 4 } else { 2 }) {
                    let lhs = oact(&num, &ab, &f)?;
                    let rhs = pplus(
                        &oact(&num, a, &oact(&num, b, &f)?)?,
                        &pscale(&oact(&num, b, &oact(&num, a, &f)?)?, &q(-1)),
                    );
                    ensure!(lhs == rhs, "oracle module axiom on {:?}, {:?} for {}", a, b, spec);
                    oracle_axiom += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} symbolic instances over 6 modules, {} specialised actions, {} oracle instances",
        instances, compared, oracle_axiom
    ))
}

fn criterion_5() -> Outcome {
    let p = sym();
    let lam = p.var("lambda").unwrap();
    let bounds = AxiomBounds { m_max: 3, n_max: 3, degree: 4 };
    let one = verify_assoc_action(&OmegaSpec::d_module(lam.clone(), 1).lib()?, bounds).lib()?;
    ensure!(one.passed(), "associative law fails on Omega(lambda,1)");
    let zero = verify_assoc_action(&OmegaSpec::d_module(lam, 0).lib()?, bounds).lib()?;
    let f = zero.failure.ok_or("no counterexample on Omega(lambda,0)")?;

    // the counterexample survives specialisation, and the law holds numerically for eps = 1
    let (n0, n1) = (NumSpec::d(q(2), 0), NumSpec::d(q(2), 1));
    let (a, b) = (from_lib(&f.a)?, from_lib(&f.b)?);
    let fp = from_poly(&f.f)?;
    ensure!(
        oact(&n0, &oprod(&a, &b), &fp)? != oact(&n0, &a, &oact(&n0, &b, &fp)?)?,
        "oracle does not confirm the counterexample"
    );
    let ops: Vec<Op> = basis_box(1, 3, 3).iter().map(from_basis).collect();
    let mut pairs = 0;
    for x in &ops {
        for y in &ops {
            let xy = oprod(x, y);
            for g in monomials(1, 4) {
                ensure!(oact(&n1, &xy, &g)? == oact(&n1, x, &oact(&n1, y, &g)?)?, "oracle associative law on eps = 1");
                pairs += 1;
            }
        }
    }
    // the library product agrees with the oracle product on this counterexample
    ensure!(from_lib(&assoc_product(&f.a, &f.b).lib()?)? == oprod(&a, &b), "product mismatch");
    Ok(format!(
        "{} checks on Omega(lambda,1); counterexample a = {}, b = {}, f = {} on Omega(lambda,0)",
        one.checked + pairs,
        f.a,
        f.b,
        f.f
    ))
}

fn criterion_6() -> Outcome {
    let p = sym();
    let lam = p.var("lambda").unwrap();
    let mut rng = StdRng::seed_from_u64(6);
    let mut inputs: Vec<Poly> = Vec::new();
    // every sum of distinct monomials of degree <= 8, then random coefficients
    for mask in 1u32..(1 << 9) {
        let f = (0..9).filter(|k| mask & (1 << k) != 0).fold(Poly::zero(1), |acc, k| acc.add(&Poly::x_pow(k)).unwrap());
        inputs.push(f);
    }
    for _ in 0..64 {
        let d = rng.random_range(0..=8u32);
        let mut f = Poly::zero(1);
        for k in 0..=d {
            let c: i64 = rng.random_range(-9..=9);
            f = f.add(&Poly::monomial(&[k], Scalar::from_int(if k == d && c == 0 { 1 } else { c }))).unwrap();
        }
        inputs.push(f);
    }
    let mut chains = 0;
    for eps in [1u8, 0] {
        let spec = OmegaSpec::d_module(lam.clone(), eps).lib()?;
        for f in &inputs {
            let d = f.degree().unwrap();
            let steps = degree_reduction_witness(&spec.vector(f.clone()).lib()?).lib()?;
            ensure!(steps.len() == d as usize, "chain for {} has {} steps", f, steps.len());
            for (i, s) in steps.iter().enumerate() {
                ensure!(
                    s.result.poly().degree() == Some(d - 1 - i as u32),
                    "step {} for {} does not lower the degree",
                    i,
                    f
                );
            }
            let last = steps.last().map_or(f.clone(), |s| s.result.poly().clone());
            let c = last.as_constant().ok_or_else(|| format!("chain for {} ends at {}", f, last))?;
            // d steps of f(x - 1) - f(x) leave (-1)^d d! times the leading coefficient
            let lead = to_q(&f.coeff(&[d]))?;
            let want = if d % 2 == 0 { fact(d) * lead } else { -(fact(d) * lead) };
            ensure!(!c.is_zero() && to_q(c)? == want, "chain for {} ends at {}", f, c);
            chains += 1;
        }
    }
    for spec in [
        OmegaSpec::hv_module(lam.clone(), Scalar::zero(), Scalar::zero()).lib()?,
        OmegaSpec::vir_module(lam.clone(), Scalar::zero()).lib()?,
    ] {
        let r = simplicity_probe(&spec, 6).lib()?;
        let (_, basis) = r.witness.ok_or_else(|| format!("no invariant subspace for {}", spec))?;
        ensure!(basis.iter().all(|g| g.coeff(&[0]).is_zero()), "witness for {} leaves x*Omega", spec);
        ensure!(basis.len() == r.window_dim - 1, "witness for {} is not x*Omega", spec);
    }
    for eps in [1u8, 0] {
        let spec = OmegaSpec::d_module(lam.clone(), eps).lib()?;
        ensure!(!simplicity_probe(&spec, 6).lib()?.found_invariant_subspace(), "invariant subspace in {}", spec);
    }
    Ok(format!("{} reduction chains; x*Omega found for Omega(lambda,0,0) and Omega(lambda,0); none up to degree 6 for Omega(lambda,eps)", chains))
}

/// `B_n = sum_k 1/(k+1) sum_j (-1)^j C(k,j) j^n`.
fn bernoulli(n: u32) -> Q {
    let mut s = Q::zero();
    for k in 0..=n {
        let mut inner = Q::zero();
        for j in 0..=k {
            let t = binom(k, j) * qpow(&q(j as i64), n);
            inner += if j % 2 == 0 { t } else { -t };
        }
        s += inner / q(k as i64 + 1);
    }
    s
}

fn criterion_7() -> Outcome {
    let x = Quasipolynomial::poly(Poly::x_pow(1)).lib()?;
    let bern = HWSpec::new(Scalar::zero(), x).lib()?;
    for n in 0..=8u32 {
        let got = to_q(&h_from_phi(&bern, n as usize).lib()?)?;
        ensure!(got == -bernoulli(n), "h_{} = {}", n, got);
    }
    // phi = a1 (e^x - 1) + a2 x gives Delta = a1 + a2 x/(e^x - 1), so h_n = -a1 [n = 0] - a2 B_n
    let p = Params::parse("c,a1,a2").unwrap();
    let (c, a1, a2) = (p.var("c").unwrap(), p.var("a1").unwrap(), p.var("a2").unwrap());
    let phi = Quasipolynomial::new(vec![
        (Poly::constant(1, a1.clone()), Scalar::one()),
        (Poly::x_pow(1).scale(&a2).sub(&Poly::constant(1, a1.clone())).lib()?, Scalar::zero()),
    ])
    .lib()?;
    let generic = Arc::new(HWSpec::new(c.clone(), phi).lib()?);
    for n in 0..=8usize {
        let b = Scalar::from_rat(weylmod::scalars::Rat::from_big(bernoulli(n as u32)));
        let mut want = -(&a2 * &b);
        if n == 0 {
            want = &want - &a1;
        }
        ensure!(generic.h(n).lib()? == want, "h_{} for the generic weight", n);
    }
    let ext = AlgebraCtx::extended();
    let host = TruncVerma::new(generic.clone(), 6, 2);
    let window = verma_basis(&generic, 2, 2);
    let mut ops: Vec<DiffOp> =
        basis_box(1, 2, 2).into_iter().map(|b| DiffOp::basis(ext, b)).collect::<weylmod::Result<_>>().lib()?;
    ops.push(DiffOp::central(ext, Scalar::one()).lib()?);
    let mut checks = 0;
    for b in window.basis() {
        let v = VermaElem::monomial(b.clone());
        let images: Vec<VermaElem> =
            ops.iter().map(|a| act_verma(&host, a, &v)).collect::<weylmod::Result<_>>().lib()?;
        ensure!(images.last().unwrap() == &v.scale(&c), "C on {}", v);
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                let lhs = act_verma(&host, &bracket(&ops[i], &ops[j]).lib()?, &v).lib()?;
                let rhs =
                    act_verma(&host, &ops[i], &images[j]).lib()?.sub(&act_verma(&host, &ops[j], &images[i]).lib()?);
                ensure!(lhs == rhs, "[{}, {}] on {}", ops[i], ops[j], v);
                checks += 1;
            }
        }
    }
    let generic_sing = singular_vectors(&TruncVerma::new(generic.clone(), 1, 1), 1, 3).lib()?;
    ensure!(generic_sing.is_empty(), "generic weight has {} singular vectors at level 1", generic_sing.len());
    let trivial = Arc::new(HWSpec::new(Scalar::zero(), Quasipolynomial::zero()).lib()?);
    let tv = TruncVerma::new(trivial, 1, 1);
    let full = tv.slice(1).len();
    let sing = singular_vectors(&tv, 1, 3).lib()?;
    ensure!(full == 2 && sing.len() == full, "phi = 0, c = 0: {} singular vectors in a slice of {}", sing.len(), full);
    Ok(format!(
        "h_n = -B_n for n <= 8; {} bracket checks on {} vectors; singular dimensions 0 and {}",
        checks,
        window.len(),
        full
    ))
}

fn criterion_8() -> Outcome {
    let p = Params::parse("lambda:inv,c").unwrap();
    let (lam, c) = (p.var("lambda").unwrap(), p.var("c").unwrap());
    let bern = HWSpec::new(c, Quasipolynomial::poly(Poly::x_pow(1)).lib()?).lib()?;
    let ext = AlgebraCtx::extended();
    let mut rng = StdRng::seed_from_u64(8);
    let mut identities = 0;
    let mut reductions = 0;
    for eps in [1u8, 0] {
        let spec = TensorSpec::new(OmegaSpec::d_module(lam.clone(), eps).lib()?, verma_basis(&bern, 2, 1)).lib()?;
        let basis = spec.hw().basis().to_vec();
        for b in &basis {
            let v = VermaElem::monomial(b.clone());
            let k = vanishing_bound(&v).lib()? as i64;
            for n in 0..=3 {
                ensure!(
                    act_verma(spec.hw(), &DiffOp::t_d(ext, k, n), &v).lib()?.is_zero(),
                    "t^{}*D^{} does not kill {}",
                    k,
                    n,
                    v
                );
            }
            let w = TensorElem::pure(0, &v);
            for m in k..=k + 4 {
                for m2 in k..=k + 4 {
                    let diff = spec.normalized_witt(m).lib()?.sub(&spec.normalized_witt(m2).lib()?).lib()?;
                    let got = act_tensor(&spec, &diff, &w).lib()?;
                    ensure!(
                        got == w.scale(&Scalar::from_int(eps as i64 * (m2 - m))),
                        "m = {}, m' = {} on 1 (x) {}",
                        m,
                        m2,
                        v
                    );
                    identities += 1;
                }
            }
        }
        let mut seeds: Vec<TensorElem> = Vec::new();
        for s in 1..=3u32 {
            seeds.extend(basis.iter().map(|b| TensorElem::pure(s, &VermaElem::monomial(b.clone()))));
            for _ in 0..6 {
                let mut w = TensorElem::pure(s, &VermaElem::monomial(basis[rng.random_range(0..basis.len())].clone()));
                for j in 0..=s {
                    for b in &basis {
                        let k: i64 = rng.random_range(-2..=2);
                        w = w.add(&TensorElem::pure(j, &VermaElem::monomial(b.clone())).scale(&Scalar::from_int(k)));
                    }
                }
                if w.x_degree() == Some(s) {
                    seeds.push(w);
                }
            }
        }
        for w in &seeds {
            let s = w.x_degree().unwrap();
            let r = vandermonde_reduce(&spec, w).lib()?;
            ensure!(!r.is_zero() && r.x_degree().is_some_and(|d| d < s), "reducing {} gave {}", w, r);
            reductions += 1;
        }
        let bounds = TensorBounds { degree: 3, m_max: 4, n_max: 2 };
        let probe = irreducibility_probe(&spec, bounds).lib()?;
        ensure!(probe.verdict == Verdict::CyclicWithinBounds, "eps = {}: {}", eps, probe.verdict);
    }
    let bounds = TensorBounds { degree: 3, m_max: 4, n_max: 2 };
    let mk =
        |l: i64, eps: u8| TensorSpec::new(OmegaSpec::d_module(Scalar::from_int(l), eps)?, verma_basis(&bern, 2, 1));
    let same = intertwiner_dim(&mk(2, 1).lib()?, &mk(2, 1).lib()?, bounds).lib()?;
    ensure!(same >= 1, "identical specs have no intertwiner");
    let lambdas = intertwiner_dim(&mk(2, 1).lib()?, &mk(3, 1).lib()?, bounds).lib()?;
    ensure!(lambdas == 0, "lambda = 2 vs 3: {}", lambdas);
    let epsilons = intertwiner_dim(&mk(2, 0).lib()?, &mk(2, 1).lib()?, bounds).lib()?;
    ensure!(epsilons == 0, "eps = 0 vs 1: {}", epsilons);
    Ok(format!(
        "{} difference identities, {} reductions, cyclic for both eps, intertwiners {} / 0 / 0",
        identities, reductions, same
    ))
}

fn criterion_9() -> Outcome {
    let ctx = AlgebraCtx::circle();
    let gens = [DiffOp::t_d(ctx, 1, 0), DiffOp::t_d(ctx, -1, 0), DiffOp::t_d(ctx, 0, 2)];
    let r = generated_span_probe(&gens, SpanBounds { m_max: 2, n_max: 3, depth: 8 }).lib()?;
    ensure!(r.missing.is_empty() && r.reached == basis_box(1, 2, 3), "rank 1 misses {:?}", r.missing);
    let alone = generated_span_probe(&gens[..1], SpanBounds { m_max: 2, n_max: 3, depth: 8 }).lib()?;
    ensure!(alone.reached == vec![Basis::circle(1, 0)], "{{t}} alone reaches {:?}", alone.reached);
    let ctx2 = AlgebraCtx::new(2, false).lib()?;
    let g = |m: [i64; 2], n: [u32; 2]| DiffOp::monomial(ctx2, &m, &n, Scalar::one());
    let gens2 = [
        g([1, 0], [0, 0]),
        g([-1, 0], [0, 0]),
        g([0, 1], [0, 0]),
        g([0, -1], [0, 0]),
        g([0, 0], [2, 0]),
        g([0, 0], [1, 1]),
        g([0, 0], [0, 2]),
    ]
    .into_iter()
    .collect::<weylmod::Result<Vec<_>>>()
    .lib()?;
    let r2 = generated_span_probe(&gens2, SpanBounds { m_max: 1, n_max: 2, depth: 8 }).lib()?;
    ensure!(r2.missing.is_empty() && r2.reached == basis_box(2, 1, 2), "rank 2 misses {:?}", r2.missing);
    Ok(format!(
        "rank 1: {} monomials in {} rounds; rank 2: {} monomials in {} rounds",
        r.reached.len(),
        r.rounds,
        r2.reached.len(),
        r2.rounds
    ))
}

fn weylmod() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_weylmod"));
    c.env_remove("WEYLMOD_RANK").env_remove("WEYLMOD_JSON");
    c
}

fn criterion_10() -> Outcome {
    for (name, args) in golden::CASES {
        let out = weylmod().args(*args).output().map_err(|e| e.to_string())?;
        let got = golden::transcript(
            args,
            out.status.code().unwrap_or(-1),
            &String::from_utf8_lossy(&out.stdout),
            &String::from_utf8_lossy(&out.stderr),
        );
        let want = std::fs::read_to_string(golden::golden_path(name)).map_err(|e| format!("{}: {}", name, e))?;
        ensure!(got == want, "golden case {} differs", name);
    }
    let corpus = corpus::round_trip_all();
    let start = Instant::now();
    let out = weylmod().args(["verify", "--suite", "all"]).output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure!(out.status.code() == Some(0), "verify exited with {:?}:\n{}", out.status.code(), stdout);
    ensure!(stdout.ends_with("all suites passed\n"), "verify output:\n{}", stdout);
    ensure!(elapsed < Duration::from_secs(20 * 60), "verify took {:.1?}", elapsed);
    Ok(format!("{} golden cases, {} round trips, verify --suite all in {:.1?}", golden::CASES.len(), corpus, elapsed))
}

fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", line).unwrap();
    out.flush().unwrap();
}

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, "bracket identities", Some(1), criterion_1),
        (2, "Jacobi and antisymmetry", Some(120), criterion_2),
        (3, "cocycle", Some(60), criterion_3),
        (4, "module axiom", Some(300), criterion_4),
        (5, "associative split", None, criterion_5),
        (6, "irreducibility witnesses", None, criterion_6),
        (7, "highest weight", None, criterion_7),
        (8, "tensor products", Some(600), criterion_8),
        (9, "generator closure", None, criterion_9),
        (10, "command line", None, criterion_10),
    ];
    // end the harness's "test acceptance ..." line
    report("");
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed >= Duration::from_secs(s) => {
                Err(format!("took {:.1?}, limit {} s", elapsed, s))
            }
            (o, _) => o,
        };
        let line = match &outcome {
            Ok(detail) => format!("criterion {:>2} {}: PASS ({:.2?}) {}", id, name, elapsed, detail),
            Err(why) => format!("criterion {:>2} {}: FAIL ({:.2?}) {}", id, name, elapsed, why),
        };
        report(&line);
        if outcome.is_err() {
            failed.push(line);
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
