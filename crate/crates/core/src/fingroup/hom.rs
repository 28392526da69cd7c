use std::fmt;
use std::sync::Arc;

use super::{Elem, FinGroup, Subgroup};
use crate::error::{Error, Result};

/// A group homomorphism, stored as the image of every element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    dom: Arc<FinGroup>,
    cod: Arc<FinGroup>,
    map: Vec<Elem>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}: {:?})", self.dom.name(), self.cod.name(), self.map)
    }
}

impl GroupHom {
    pub fn new(dom: Arc<FinGroup>, cod: Arc<FinGroup>, map: Vec<Elem>) -> Result<Self> {
        let hom = Self::new_unchecked(dom, cod, map)?;
        hom.check()?;
        Ok(hom)
    }

    /// Checks only the shape (length and range), not the homomorphism law.
    pub fn new_unchecked(dom: Arc<FinGroup>, cod: Arc<FinGroup>, map: Vec<Elem>) -> Result<Self> {
        if map.len() != dom.order() {
            return Err(Error::NotAHomomorphism(format!(
                "map has length {}, domain {} has order {}",
                map.len(),
                dom.name(),
                dom.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= cod.order()) {
            return Err(Error::NotAHomomorphism(format!(
                "image {bad} out of range for {}",
                cod.name()
            )));
        }
        Ok(Self { dom, cod, map })
    }

    pub(crate) fn from_fn(dom: &Arc<FinGroup>, cod: &Arc<FinGroup>, f: impl Fn(Elem) -> Elem) -> Self {
        let map = dom.elements().map(f).collect();
        let hom = Self {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        };
        debug_assert!(hom.check().is_ok(), "from_fn produced a non-homomorphism: {hom:?}");
        hom
    }

    /// Verifies `map[a b] = map[a] map[b]` for all pairs.
    pub fn check(&self) -> Result<()> {
        if self.map[0] != 0 {
            return Err(Error::NotAHomomorphism("identity not preserved".into()));
        }
        for a in self.dom.elements() {
            for b in self.dom.elements() {
                if self.map[self.dom.mul(a, b)] != self.cod.mul(self.map[a], self.map[b]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "{} -> {}: fails on ({a}, {b})",
                        self.dom.name(),
                        self.cod.name()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(g: &Arc<FinGroup>) -> Self {
        Self {
            dom: g.clone(),
            cod: g.clone(),
            map: g.elements().collect(),
        }
    }

    pub fn zero(dom: &Arc<FinGroup>, cod: &Arc<FinGroup>) -> Self {
        Self {
            dom: dom.clone(),
            cod: cod.clone(),
            map: vec![0; dom.order()],
        }
    }

    pub fn dom(&self) -> &Arc<FinGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinGroup> {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if *self.cod != *next.dom {
            return Err(Error::CodomainMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.dom.name(),
                self.cod.name(),
                next.dom.name(),
                next.cod.name()
            )));
        }
        Ok(Self {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&a| next.map[a]).collect(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.map.iter().all(|&y| y == 0)
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&y| y == 0).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.cod.order()];
        for (a, &y) in self.map.iter().enumerate() {
            inv[y] = a;
        }
        Some(Self {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }

    /// Some preimage of `y`, the smallest one if several exist.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        self.map.iter().position(|&x| x == y)
    }

    /// For an injective map, the table `cod element -> dom element` (or `None`).
    pub fn partial_inverse(&self) -> Vec<Option<Elem>> {
        let mut inv = vec![None; self.cod.order()];
        for (a, &y) in self.map.iter().enumerate() {
            inv[y].get_or_insert(a);
        }
        inv
    }

    pub fn kernel(&self) -> Subgroup {
        let elems = self
            .dom
            .elements()
            .filter(|&a| self.map[a] == 0)
            .collect();
        Subgroup::from_sorted_trusted(self.dom.clone(), elems)
    }

    pub fn image(&self) -> Subgroup {
        let mut elems = self.map.clone();
        elems.sort_unstable();
        elems.dedup();
        Subgroup::from_sorted_trusted(self.cod.clone(), elems)
    }

    /// Restriction to a subgroup (re-indexed by the subgroup's own group).
    pub fn restrict(&self, sub_inclusion: &GroupHom) -> Result<GroupHom> {
        sub_inclusion.then(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    #[test]
    fn parity_kernel() {
        let z4 = catalog::cyclic(4).into_arc();
        let z2 = catalog::cyclic(2).into_arc();
        let f = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(f.kernel().elements(), &[0, 2]);
        assert!(f.is_surjective());
        assert!(!f.is_injective());
    }

    #[test]
    fn identity_and_zero_kernels() {
        let z2 = catalog::cyclic(2).into_arc();
        assert_eq!(GroupHom::identity(&z2).kernel().elements(), &[0]);
        assert_eq!(GroupHom::zero(&z2, &z2).kernel().elements(), &[0, 1]);
    }

    #[test]
    fn rejects_non_hom() {
        let z4 = catalog::cyclic(4).into_arc();
        let z2 = catalog::cyclic(2).into_arc();
        assert!(GroupHom::new(z4, z2, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn composition_checks_codomain() {
        let z4 = catalog::cyclic(4).into_arc();
        let z2 = catalog::cyclic(2).into_arc();
        let f = GroupHom::zero(&z4, &z2);
        assert!(f.then(&GroupHom::identity(&z4)).is_err());
        assert!(f.then(&GroupHom::identity(&z2)).is_ok());
    }
}
