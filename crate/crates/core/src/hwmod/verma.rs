//! Truncated Verma modules with an exact straightening action.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;

use super::HWSpec;
use crate::closure::bounded_closure;
use crate::error::{Error, Result};
use crate::liealg::{basis_bracket, cocycle_on_basis, AlgebraCtx, Basis, DiffOp};
use crate::scalars::{solve_linear, sparse_add, sparse_axpy, write_term, Matrix, Scalar, SparseVec};

/// A PBW monomial `g_1 g_2 .. g_k 1` with `g_i = t^(-j_i) D^(n_i)`, stored as
/// the sorted list of pairs `(j_i, n_i)`.
pub type Pbw = SmallVec<[(u32, u32); 4]>;

pub fn pbw_level(p: &Pbw) -> u32 {
    p.iter().map(|(j, _)| j).sum()
}

/// Text form of a PBW monomial applied to the vacuum, e.g. `[t^-1*D][t^-2]v`.
pub fn pbw_label(p: &Pbw) -> String {
    let mut s = String::new();
    for &(j, n) in p {
        s.push('[');
        s.push_str(&Basis::circle(-(j as i64), n).label());
        s.push(']');
    }
    s.push('v');
    s
}

/// Cached images of PBW monomials under basis operators.
type ApplyCache = HashMap<(Basis, Pbw), Arc<SparseVec<Pbw>>>;

/// The Verma module of a highest weight, spanned (for enumeration purposes)
/// by PBW monomials of level `<= level` whose factors have order `<= order`.
#[derive(Debug)]
pub struct TruncVerma {
    spec: Arc<HWSpec>,
    level: u32,
    order: u32,
    basis: Vec<Pbw>,
    cache: Mutex<ApplyCache>,
}

/// An element of a Verma module as a combination of PBW monomials. The
/// monomials may carry factors above the enumeration order bound: the
/// action never truncates.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VermaElem {
    terms: SparseVec<Pbw>,
}

impl VermaElem {
    pub fn zero() -> Self {
        VermaElem::default()
    }

    /// The highest weight vector.
    pub fn vacuum() -> Self {
        VermaElem::monomial(Pbw::new())
    }

    pub fn monomial(p: Pbw) -> Self {
        let mut terms = SparseVec::new();
        terms.insert(p, Scalar::one());
        VermaElem { terms }
    }

    pub fn from_terms(terms: SparseVec<Pbw>) -> Self {
        VermaElem { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &SparseVec<Pbw> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Pbw) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &VermaElem) -> VermaElem {
        let mut t = self.terms.clone();
        sparse_axpy(&mut t, &Scalar::one(), &other.terms);
        VermaElem { terms: t }
    }

    pub fn sub(&self, other: &VermaElem) -> VermaElem {
        let mut t = self.terms.clone();
        sparse_axpy(&mut t, &Scalar::from_int(-1), &other.terms);
        VermaElem { terms: t }
    }

    pub fn scale(&self, s: &Scalar) -> VermaElem {
        let mut t = SparseVec::new();
        sparse_axpy(&mut t, s, &self.terms);
        VermaElem { terms: t }
    }

    /// Levels present, in increasing order.
    pub fn levels(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self.terms.keys().map(pbw_level).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().map(pbw_level).max()
    }
}

impl fmt::Display for VermaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            write_term(&mut out, i == 0, c, &pbw_label(p));
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for VermaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VermaElem({})", self)
    }
}

fn enumerate_pbw(level: u32, order: u32) -> Vec<Pbw> {
    fn extend(prefix: &mut Pbw, remaining: u32, order: u32, out: &mut Vec<Pbw>) {
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or((1, 0));
        for j in last.0..=remaining {
            let n0 = if j == last.0 { last.1 } else { 0 };
            for n in n0..=order {
                prefix.push((j, n));
                extend(prefix, remaining - j, order, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Pbw::new(), level, order, &mut out);
    out.sort();
    out
}

/// Enumerates the PBW basis of level `<= level` with factor orders
/// `<= order`.
pub fn verma_basis(spec: &HWSpec, level: u32, order: u32) -> TruncVerma {
    TruncVerma::new(Arc::new(spec.clone()), level, order)
}

impl TruncVerma {
    pub fn new(spec: Arc<HWSpec>, level: u32, order: u32) -> Self {
        TruncVerma { spec, level, order, basis: enumerate_pbw(level, order), cache: Mutex::new(HashMap::new()) }
    }

    /// Same weight, different bounds.
    pub fn with_bounds(&self, level: u32, order: u32) -> TruncVerma {
        TruncVerma::new(self.spec.clone(), level, order)
    }

    pub fn spec(&self) -> &HWSpec {
        &self.spec
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis(&self) -> &[Pbw] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis monomials of level exactly `k`.
    pub fn slice(&self, k: u32) -> Vec<Pbw> {
        self.basis.iter().filter(|p| pbw_level(p) == k).cloned().collect()
    }

    pub fn in_window(&self, p: &Pbw) -> bool {
        pbw_level(p) <= self.level && p.iter().all(|&(_, n)| n <= self.order)
    }

    /// `t^m D^n` applied to a PBW monomial, by moving it to the right past
    /// each factor: `x g rest = g (x rest) + [x, g] rest`.
    pub(crate) fn apply(&self, x: &Basis, mono: &Pbw) -> Result<Arc<SparseVec<Pbw>>> {
        let key = (x.clone(), mono.clone());
        if let Some(hit) = self.cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(hit.clone());
        }
        let (m, n) = (x.m[0], x.n[0]);
        let mut out = SparseVec::new();
        let neg = (m < 0).then(|| ((-m) as u32, n));
        if mono.is_empty() {
            if m == 0 {
                sparse_add(&mut out, mono, &self.spec.h(n as usize)?);
            } else if let Some(g) = neg {
                out.insert(Pbw::from_slice(&[g]), Scalar::one());
            }
        } else if neg.is_some_and(|g| g <= mono[0]) {
            let mut p = Pbw::new();
            p.push(neg.expect("negative"));
            p.extend_from_slice(mono);
            out.insert(p, Scalar::one());
        } else {
            let (j1, n1) = mono[0];
            let g1 = Basis::circle(-(j1 as i64), n1);
            let rest: Pbw = Pbw::from_slice(&mono[1..]);
            for (w, c) in self.apply(x, &rest)?.iter() {
                sparse_axpy(&mut out, c, &*self.apply(&g1, w)?);
            }
            for (z, k) in basis_bracket(x, &g1) {
                sparse_axpy(&mut out, &Scalar::from_rat(k), &*self.apply(&z, &rest)?);
            }
            let phi = cocycle_on_basis(x, &g1);
            if !phi.is_zero() {
                sparse_add(&mut out, &rest, &self.spec.c().scale(&phi));
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap_or_else(|e| e.into_inner()).insert(key, out.clone());
        Ok(out)
    }

    /// `t^(-j) D^n` etc. on one monomial, with the level check.
    fn apply_checked(&self, x: &Basis, mono: &Pbw) -> Result<Arc<SparseVec<Pbw>>> {
        let result_level = pbw_level(mono) as i64 - x.m[0];
        if result_level > self.level as i64 {
            return Err(Error::LevelOverflow { level: result_level as u32, bound: self.level });
        }
        self.apply(x, mono)
    }
}

/// The action of the extended algebra on the Verma module; `C` acts by `c`.
pub fn act_verma(tv: &TruncVerma, op: &DiffOp, v: &VermaElem) -> Result<VermaElem> {
    if op.ctx() != AlgebraCtx::extended() && op.ctx() != AlgebraCtx::circle() {
        return Err(Error::ContextMismatch("Verma modules are over the rank-one algebra".into()));
    }
    let mut out = SparseVec::new();
    for (x, cx) in op.terms() {
        for (p, cp) in &v.terms {
            let r = tv.apply_checked(x, p)?;
            sparse_axpy(&mut out, &(cx * cp), &*r);
        }
    }
    let cc = op.central_coeff();
    if !cc.is_zero() {
        sparse_axpy(&mut out, &(cc * tv.spec.c()), &v.terms);
    }
    Ok(VermaElem { terms: out })
}

/// Level-`k` vectors killed by `t^j D^m` for `1 <= j <= k`, `m <= check_order`.
///
/// The unknowns range over the level-`k` basis of `tv`, so the answer is a
/// certificate bounded by both the enumeration order and `check_order`.
pub fn singular_vectors(tv: &TruncVerma, k: u32, check_order: u32) -> Result<Vec<VermaElem>> {
    if k > tv.level {
        return Err(Error::LevelOverflow { level: k, bound: tv.level });
    }
    if k == 0 {
        return Ok(vec![VermaElem::vacuum()]);
    }
    let slice = tv.slice(k);
    let mut rows: BTreeMap<(u32, u32, Pbw), Vec<Scalar>> = BTreeMap::new();
    for (col, p) in slice.iter().enumerate() {
        for j in 1..=k {
            for m in 0..=check_order {
                let image = tv.apply(&Basis::circle(j as i64, m), p)?;
                for (q, c) in image.iter() {
                    rows.entry((j, m, q.clone())).or_insert_with(|| vec![Scalar::zero(); slice.len()])[col] = c.clone();
                }
            }
        }
    }
    let nullspace: Vec<Vec<Scalar>> = if rows.is_empty() {
        (0..slice.len())
            .map(|i| (0..slice.len()).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect()
    } else {
        let m = Matrix::from_rows(rows.into_values().collect())?;
        solve_linear(&m, &Matrix::zeros(m.rows(), 0))?.nullspace
    };
    Ok(nullspace.into_iter().map(|x| VermaElem::from_terms(slice.iter().cloned().zip(x).collect())).collect())
}

/// Dimension of each level slice `0..=L` of `tv` modulo the submodule
/// generated (inside the window) by `quotient_by`.
pub fn weight_space_dims(tv: &TruncVerma, quotient_by: &[VermaElem]) -> Result<Vec<usize>> {
    let mut dims: Vec<usize> = (0..=tv.level).map(|k| tv.basis.iter().filter(|p| pbw_level(p) == k).count()).collect();
    if quotient_by.is_empty() {
        return Ok(dims);
    }
    let (level, order) = (tv.level, tv.order);
    let l = level as i64;
    let gens: Vec<Basis> = (-l..=l).flat_map(|m| (0..=order).map(move |n| Basis::circle(m, n))).collect();
    let seeds: Vec<SparseVec<Pbw>> = quotient_by.iter().map(|v| v.terms.clone()).collect();
    let closure = bounded_closure(
        &seeds,
        move |p: &Pbw| pbw_level(p) <= level && p.iter().all(|&(_, n)| n <= order),
        |v| {
            let top = v.keys().map(pbw_level).max().unwrap_or(0) as i64;
            let mut images = Vec::new();
            for g in &gens {
                if top - g.m[0] > l {
                    continue;
                }
                let mut img = SparseVec::new();
                for (p, c) in v {
                    sparse_axpy(&mut img, c, &*tv.apply(g, p)?);
                }
                images.push(img);
            }
            Ok(images)
        },
        None,
    )?;
    for b in closure.basis() {
        if let Some(k) = b.keys().map(pbw_level).max() {
            dims[k as usize] -= 1;
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hwmod::Quasipolynomial;
    use crate::scalars::{Params, Rat};
    use crate::umod::Poly;

    fn generic() -> (Params, HWSpec) {
        let p = Params::parse("a1,a2,c").unwrap();
        let (a1, a2) = (p.var("a1").unwrap(), p.var("a2").unwrap());
        // a1 (e^x - 1) + a2 x e^x
        let phi = Quasipolynomial::new(vec![
            (Poly::constant(1, a1.clone()).add(&Poly::x_pow(1).scale(&a2)).unwrap(), Scalar::one()),
            (Poly::constant(1, -a1), Scalar::zero()),
        ])
        .unwrap();
        let spec = HWSpec::new(p.var("c").unwrap(), phi).unwrap();
        (p, spec)
    }

    fn trivial() -> HWSpec {
        HWSpec::new(Scalar::zero(), Quasipolynomial::zero()).unwrap()
    }

    fn ext(m: i64, n: u32) -> DiffOp {
        DiffOp::t_d(AlgebraCtx::extended(), m, n)
    }

    fn mono(gens: &[(u32, u32)]) -> VermaElem {
        VermaElem::monomial(Pbw::from_slice(gens))
    }

    #[test]
    fn basis_enumeration() {
        let s = trivial();
        assert_eq!(verma_basis(&s, 0, 3).basis(), &[Pbw::new()]);
        let b = verma_basis(&s, 1, 1);
        assert_eq!(b.basis(), &[Pbw::new(), Pbw::from_slice(&[(1, 0)]), Pbw::from_slice(&[(1, 1)])]);
        let b = verma_basis(&s, 2, 0);
        assert_eq!(
            b.basis(),
            &[Pbw::new(), Pbw::from_slice(&[(1, 0)]), Pbw::from_slice(&[(1, 0), (1, 0)]), Pbw::from_slice(&[(2, 0)])]
        );
        // level 2, order 2: 1 + 3 + (3 + 6)
        assert_eq!(verma_basis(&s, 2, 2).len(), 13);
    }

    #[test]
    fn straightening_examples() {
        let (_, s) = generic();
        let tv = verma_basis(&s, 3, 2);
        let h0 = s.h(0).unwrap();
        let h1 = s.h(1).unwrap();
        let v = mono(&[(1, 0)]);
        // D t^-1 v = (h1 - 1) t^-1 v
        assert_eq!(act_verma(&tv, &ext(0, 1), &v).unwrap(), v.scale(&(&h1 - &Scalar::one())));
        // tD t^-1 v = -h0 v
        assert_eq!(act_verma(&tv, &ext(1, 1), &v).unwrap(), VermaElem::vacuum().scale(&-h0.clone()));
        // t t^-1 v = -c/2 v
        let want = VermaElem::vacuum().scale(&s.c().scale(&Rat::new(-1, 2)));
        assert_eq!(act_verma(&tv, &ext(1, 0), &v).unwrap(), want);
        // C acts by c
        let cop = DiffOp::central(AlgebraCtx::extended(), Scalar::one()).unwrap();
        for p in tv.basis() {
            let b = VermaElem::monomial(p.clone());
            assert_eq!(act_verma(&tv, &cop, &b).unwrap(), b.scale(s.c()));
        }
        // D^k v = h_k v
        for k in 0..=6 {
            assert_eq!(
                act_verma(&tv, &ext(0, k), &VermaElem::vacuum()).unwrap(),
                VermaElem::vacuum().scale(&s.h(k as usize).unwrap())
            );
        }
    }

    #[test]
    fn level_overflow() {
        let tv = verma_basis(&trivial(), 1, 1);
        let r = act_verma(&tv, &ext(-2, 0), &VermaElem::vacuum());
        assert_eq!(r, Err(Error::LevelOverflow { level: 2, bound: 1 }));
    }

    #[test]
    fn bracket_compatibility_small() {
        let (_, s) = generic();
        let host = verma_basis(&s, 4, 1);
        let ops: Vec<DiffOp> = crate::liealg::basis_box(1, 1, 1)
            .into_iter()
            .map(|b| DiffOp::basis(AlgebraCtx::extended(), b).unwrap())
            .chain([DiffOp::central(AlgebraCtx::extended(), Scalar::one()).unwrap()])
            .collect();
        for p in host.basis().iter().filter(|p| pbw_level(p) <= 2) {
            let v = VermaElem::monomial(p.clone());
            for a in &ops {
                for b in &ops {
                    let lhs = act_verma(&host, &crate::liealg::bracket(a, b).unwrap(), &v).unwrap();
                    let ab = act_verma(&host, a, &act_verma(&host, b, &v).unwrap()).unwrap();
                    let ba = act_verma(&host, b, &act_verma(&host, a, &v).unwrap()).unwrap();
                    assert_eq!(lhs, ab.sub(&ba), "[{}, {}] on {}", a, b, v);
                }
            }
        }
    }

    #[test]
    fn singular_vector_examples() {
        let tv = verma_basis(&trivial(), 1, 1);
        assert_eq!(singular_vectors(&tv, 1, 3).unwrap().len(), 2);
        assert_eq!(singular_vectors(&tv, 0, 3).unwrap(), vec![VermaElem::vacuum()]);
        let (_, s) = generic();
        let tv = verma_basis(&s, 1, 0);
        assert!(singular_vectors(&tv, 1, 2).unwrap().is_empty());
    }

    #[test]
    fn quotient_dimensions() {
        let s = trivial();
        let tv = verma_basis(&s, 2, 1);
        assert_eq!(weight_space_dims(&tv, &[]).unwrap(), vec![1, 2, 5]);
        let sing = singular_vectors(&tv, 1, 3).unwrap();
        let dims = weight_space_dims(&tv, &sing).unwrap();
        assert_eq!(dims[1], 0);
        let (_, g) = generic();
        assert_eq!(weight_space_dims(&verma_basis(&g, 1, 2), &[]).unwrap()[1], 3);
    }
}
