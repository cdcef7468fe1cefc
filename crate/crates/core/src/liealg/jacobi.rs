//! Antisymmetry and the Jacobi identity over a finite set of basis
//! monomials, with basis brackets cached.

use std::collections::HashMap;
use std::sync::Arc;

use super::ops::{basis_bracket, cocycle_on_basis};
use super::Basis;
use crate::scalars::Rat;

/// `[x, y]` split into its non-central terms and central coefficient.
#[derive(Debug)]
struct Bracket {
    terms: Vec<(Basis, Rat)>,
    central: Rat,
}

struct BracketCache {
    central: bool,
    map: HashMap<(Basis, Basis), Arc<Bracket>>,
}

impl BracketCache {
    fn get(&mut self, x: &Basis, y: &Basis) -> Arc<Bracket> {
        if let Some(b) = self.map.get(&(x.clone(), y.clone())) {
            return b.clone();
        }
        let central = if self.central { cocycle_on_basis(x, y) } else { Rat::zero() };
        let b = Arc::new(Bracket { terms: basis_bracket(x, y), central });
        self.map.insert((x.clone(), y.clone()), b.clone());
        b
    }

    /// Adds `[x, [y, z]]` to `acc`.
    fn nested(&mut self, x: &Basis, y: &Basis, z: &Basis, acc: &mut HashMap<Option<Basis>, Rat>) {
        let inner = self.get(y, z);
        for (w, r) in &inner.terms {
            let outer = self.get(x, w);
            for (v, s) in &outer.terms {
                let e = acc.entry(Some(v.clone())).or_default();
                *e = &*e + &(r * s);
            }
            if !outer.central.is_zero() {
                let e = acc.entry(None).or_default();
                *e = &*e + &(r * &outer.central);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub pairs: usize,
    pub triples: usize,
    pub antisymmetry_failure: Option<(Basis, Basis)>,
    pub jacobi_failure: Option<(Basis, Basis, Basis)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_failure.is_none() && self.jacobi_failure.is_none()
    }
}

/// Checks `[a, b] + [b, a] = 0` on all pairs and the Jacobi identity on all
/// triples `a < b < c` of `basis` (the cyclic sum is alternating, so other
/// orderings and repeated entries add nothing). With `central`, the cocycle
/// term of each bracket is included; the central element itself brackets
/// to zero and is omitted.
pub fn check_jacobi(basis: &[Basis], central: bool) -> JacobiReport {
    let mut basis = basis.to_vec();
    basis.sort();
    basis.dedup();
    let mut cache = BracketCache { central, map: HashMap::new() };
    let mut report = JacobiReport { pairs: 0, triples: 0, antisymmetry_failure: None, jacobi_failure: None };
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            report.pairs += 1;
            let ab = cache.get(a, b);
            let ba = cache.get(b, a);
            let mut sum: HashMap<&Basis, Rat> = HashMap::new();
            for (v, r) in ab.terms.iter().chain(&ba.terms) {
                let e = sum.entry(v).or_default();
                *e = &*e + r;
            }
            if sum.values().any(|r| !r.is_zero()) || !(&ab.central + &ba.central).is_zero() {
                report.antisymmetry_failure = Some((a.clone(), b.clone()));
                return report;
            }
        }
    }
    let mut acc: HashMap<Option<Basis>, Rat> = HashMap::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i + 1) {
            for c in &basis[j + 1..] {
                report.triples += 1;
                acc.clear();
                cache.nested(a, b, c, &mut acc);
                cache.nested(b, c, a, &mut acc);
                cache.nested(c, a, b, &mut acc);
                if acc.values().any(|r| !r.is_zero()) {
                    report.jacobi_failure = Some((a.clone(), b.clone(), c.clone()));
                    return report;
                }
            }
        }
    }
    report
}
