//! Bounded span closure shared by the subalgebra, module and tensor probes.
//!
//! Given seed vectors and a linear "image" map (bracket with generators,
//! action of generators, ...), computes the largest part of the generated
//! subspace that can be certified inside a finite coordinate window. Images
//! may leave the window; a combination of images counts only when every
//! coordinate outside the window cancels exactly.

use crate::error::Result;
use crate::scalars::{Echelon, SparseVec};

/// Coordinates outside the window sort first, so that echelon rows with an
/// inside pivot carry no outside entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Tiered<K> {
    Outside(K),
    Inside(K),
}

impl<K> Tiered<K> {
    fn into_inner(self) -> K {
        match self {
            Tiered::Outside(k) | Tiered::Inside(k) => k,
        }
    }

    fn is_inside(&self) -> bool {
        matches!(self, Tiered::Inside(_))
    }
}

pub(crate) struct Closure<K: Ord + Clone> {
    echelon: Echelon<Tiered<K>>,
    in_bounds: Box<dyn Fn(&K) -> bool>,
    pub rounds: usize,
    pub saturated: bool,
}

impl<K: Ord + Clone> Closure<K> {
    fn tier(&self, v: &SparseVec<K>) -> SparseVec<Tiered<K>> {
        v.iter()
            .map(|(k, x)| {
                let t = if (self.in_bounds)(k) { Tiered::Inside(k.clone()) } else { Tiered::Outside(k.clone()) };
                (t, x.clone())
            })
            .collect()
    }

    /// Dimension of the certified in-window subspace.
    pub fn dim(&self) -> usize {
        self.echelon.pivot_keys().filter(|k| k.is_inside()).count()
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        v.keys().all(|k| (self.in_bounds)(k)) && self.echelon.contains(&self.tier(v))
    }

    /// A basis of the in-window subspace.
    pub fn basis(&self) -> Vec<SparseVec<K>> {
        self.echelon
            .rows()
            .filter(|(p, _)| p.is_inside())
            .map(|(_, r)| r.iter().map(|(k, x)| (k.clone().into_inner(), x.clone())).collect())
            .collect()
    }
}

/// Closes `span(seeds)` under `images`, for at most `max_rounds` rounds
/// (`None` = until saturation).
pub(crate) fn bounded_closure<K, F>(
    seeds: &[SparseVec<K>],
    in_bounds: impl Fn(&K) -> bool + 'static,
    images: F,
    max_rounds: Option<usize>,
) -> Result<Closure<K>>
where
    K: Ord + Clone,
    F: FnMut(&SparseVec<K>) -> Result<Vec<SparseVec<K>>>,
{
    bounded_closure_until(seeds, in_bounds, images, max_rounds, |_| false)
}

/// [`bounded_closure`] that also stops as soon as `done` holds after an
/// insertion.
pub(crate) fn bounded_closure_until<K, F, S>(
    seeds: &[SparseVec<K>],
    in_bounds: impl Fn(&K) -> bool + 'static,
    mut images: F,
    max_rounds: Option<usize>,
    mut done: S,
) -> Result<Closure<K>>
where
    K: Ord + Clone,
    F: FnMut(&SparseVec<K>) -> Result<Vec<SparseVec<K>>>,
    S: FnMut(&Closure<K>) -> bool,
{
    let mut cl = Closure { echelon: Echelon::new(), in_bounds: Box::new(in_bounds), rounds: 0, saturated: false };
    let mut frontier: Vec<SparseVec<K>> = Vec::new();
    for s in seeds {
        let t = cl.tier(s);
        cl.echelon.insert(&t)?;
        frontier.push(s.clone());
    }
    if done(&cl) {
        return Ok(cl);
    }
    loop {
        if frontier.is_empty() {
            cl.saturated = true;
            break;
        }
        if max_rounds.is_some_and(|r| cl.rounds >= r) {
            break;
        }
        cl.rounds += 1;
        let mut next = Vec::new();
        for v in &frontier {
            for img in images(v)? {
                if img.is_empty() {
                    continue;
                }
                let t = cl.tier(&img);
                if let Some(p) = cl.echelon.insert(&t)? {
                    if p.is_inside() {
                        let (_, row) = cl.echelon.rows().last().expect("row just inserted");
                        next.push(row.iter().map(|(k, x)| (k.clone().into_inner(), x.clone())).collect());
                        if done(&cl) {
                            return Ok(cl);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(cl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn unit(k: i32) -> SparseVec<i32> {
        [(k, Scalar::one())].into_iter().collect()
    }

    #[test]
    fn shift_map_within_window() {
        // e_k -> e_{k+1}; window [0, 5]
        let cl = bounded_closure(
            &[unit(0)],
            |k| (0..=5).contains(k),
            |v| Ok(vec![v.iter().map(|(k, x)| (k + 1, x.clone())).collect()]),
            None,
        )
        .unwrap();
        assert!(cl.saturated);
        assert_eq!(cl.dim(), 6);
        assert!(cl.contains(&unit(5)));
        assert!(!cl.contains(&unit(6)));
    }

    #[test]
    fn cancellation_of_outside_coordinates() {
        // e_0 -> {e_0 + e_9, e_1 + e_9}: only e_0 - e_1 is certified inside.
        let cl = bounded_closure(
            &[unit(0)],
            |k| *k < 5,
            |v| {
                if v.contains_key(&0) && v.len() == 1 {
                    let a: SparseVec<i32> = [(0, Scalar::one()), (9, Scalar::one())].into_iter().collect();
                    let b: SparseVec<i32> = [(1, Scalar::one()), (9, Scalar::one())].into_iter().collect();
                    Ok(vec![a, b])
                } else {
                    Ok(vec![])
                }
            },
            None,
        )
        .unwrap();
        assert_eq!(cl.dim(), 2);
        assert!(cl.contains(&unit(1)));
    }

    #[test]
    fn round_limit() {
        let cl = bounded_closure(
            &[unit(0)],
            |_| true,
            |v| Ok(vec![v.iter().map(|(k, x)| (k + 1, x.clone())).collect()]),
            Some(3),
        )
        .unwrap();
        assert!(!cl.saturated);
        assert_eq!(cl.dim(), 4);
    }
}
