use std::fmt;
use std::sync::Arc;

use super::CrossedModule;
use crate::error::{Error, Result};
use crate::fingroup::{pullback, Elem, GroupAction, GroupHom};
use crate::report::Report;

/// A morphism of crossed modules `dom -> cod`: `p` on top, `p0` on the base.
#[derive(Clone, PartialEq, Eq)]
pub struct XModMorphism {
    dom: Arc<CrossedModule>,
    cod: Arc<CrossedModule>,
    p: GroupHom,
    p0: GroupHom,
}

impl fmt::Debug for XModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "XModMorphism({} -> {}: p={:?}, p0={:?})",
            self.dom,
            self.cod,
            self.p.map(),
            self.p0.map()
        )
    }
}

/// Maps induced by a morphism on kernels and cokernels of the boundaries.
#[derive(Clone, Debug)]
pub struct WeakEquivalenceInfo {
    pub on_kernels: GroupHom,
    pub on_cokernels: GroupHom,
}

impl WeakEquivalenceInfo {
    pub fn is_weak_equivalence(&self) -> bool {
        self.on_kernels.is_isomorphism() && self.on_cokernels.is_isomorphism()
    }
}

impl XModMorphism {
    pub fn new(dom: Arc<CrossedModule>, cod: Arc<CrossedModule>, p: GroupHom, p0: GroupHom) -> Result<Self> {
        let f = Self::new_unchecked(dom, cod, p, p0)?;
        let report = f.validate();
        if !report.is_ok() {
            return Err(Error::InvalidMorphism(report.to_string()));
        }
        Ok(f)
    }

    pub fn new_unchecked(dom: Arc<CrossedModule>, cod: Arc<CrossedModule>, p: GroupHom, p0: GroupHom) -> Result<Self> {
        if p.dom() != dom.g() || p.cod() != cod.g() || p0.dom() != dom.g0() || p0.cod() != cod.g0() {
            return Err(Error::InvalidMorphism(format!("maps do not match {dom} -> {cod}")));
        }
        Ok(Self { dom, cod, p, p0 })
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let (h, g) = (&self.dom, &self.cod);
        for a in h.g().elements() {
            if g.d(self.p.apply(a)) != self.p0.apply(h.d(a)) {
                r.push("boundary square", format!("h={a}"));
            }
        }
        for x in h.g0().elements() {
            for a in h.g().elements() {
                if self.p.apply(h.act(x, a)) != g.act(self.p0.apply(x), self.p.apply(a)) {
                    r.push("equivariance", format!("x={x}, h={a}"));
                }
            }
        }
        r
    }

    pub fn identity(x: &Arc<CrossedModule>) -> Self {
        Self {
            dom: x.clone(),
            cod: x.clone(),
            p: GroupHom::identity(x.g()),
            p0: GroupHom::identity(x.g0()),
        }
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &XModMorphism) -> Result<Self> {
        if *self.cod != *next.dom {
            return Err(Error::CodomainMismatch(format!(
                "cannot compose into {} with a morphism out of {}",
                self.cod, next.dom
            )));
        }
        Ok(Self {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            p: self.p.then(&next.p)?,
            p0: self.p0.then(&next.p0)?,
        })
    }

    pub fn dom(&self) -> &Arc<CrossedModule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<CrossedModule> {
        &self.cod
    }

    pub fn p(&self) -> &GroupHom {
        &self.p
    }

    pub fn p0(&self) -> &GroupHom {
        &self.p0
    }

    /// The induced functor on action groupoids: `(a, x) ↦ (p a, p0 x)`.
    pub fn denormalized(&self) -> GroupHom {
        let (hs, gs) = (self.dom.semidirect(), self.cod.semidirect());
        GroupHom::new_unchecked(
            hs.group.clone(),
            gs.group.clone(),
            hs.group
                .elements()
                .map(|k| {
                    let (a, x) = hs.unpair(k);
                    gs.pair(self.p.apply(a), self.p0.apply(x))
                })
                .collect(),
        )
        .unwrap()
    }

    pub fn weak_equivalence_info(&self) -> WeakEquivalenceInfo {
        let (hk, gk) = (self.dom.kernel(), self.cod.kernel());
        let (hkg, hincl) = hk.to_group("ker");
        let (gkg, _) = gk.to_group("ker");
        let on_kernels = GroupHom::new_unchecked(
            hkg.clone(),
            gkg,
            hkg.elements()
                .map(|a| gk.index_of(self.p.apply(hincl.apply(a))).expect("p maps kernel into kernel"))
                .collect(),
        )
        .unwrap();
        let (hq, gq) = (self.dom.cokernel(), self.cod.cokernel());
        let on_cokernels = GroupHom::new_unchecked(
            hq.group.clone(),
            gq.group.clone(),
            hq.representatives
                .iter()
                .map(|&x| gq.projection.apply(self.p0.apply(x)))
                .collect(),
        )
        .unwrap();
        WeakEquivalenceInfo {
            on_kernels,
            on_cokernels,
        }
    }

    pub fn is_weak_equivalence(&self) -> bool {
        self.weak_equivalence_info().is_weak_equivalence()
    }

    /// The top map is an isomorphism.
    pub fn is_discrete_fibration(&self) -> bool {
        self.p.is_isomorphism()
    }

    /// Whether the square `p, ∂, ∂, p0` is a pullback: `h ↦ (∂h, p h)` is a
    /// bijection onto `{(x, g) : p0 x = ∂ g}`.
    pub fn is_pullback_square(&self) -> bool {
        let pb = pullback(&self.p0, self.cod.boundary()).unwrap();
        if pb.group.order() != self.dom.g().order() {
            return false;
        }
        let mut hit = vec![false; pb.group.order()];
        self.dom.g().elements().all(|a| match pb.index(self.dom.d(a), self.p.apply(a)) {
            Some(k) => !std::mem::replace(&mut hit[k], true),
            None => false,
        })
    }
}

/// Pulls a crossed module over `H₀` back along `σ: E → H₀`. The result has top
/// group `E ×_{σ,∂} H`, boundary the first projection and action
/// `ē ▷ (e, h) = (ē e ē⁻¹, σ(ē) ▷ h)`; the second component of the pair is the
/// comparison morphism into `x`.
pub fn pullback_crossed_module(x: &Arc<CrossedModule>, sigma: &GroupHom) -> Result<(Arc<CrossedModule>, XModMorphism)> {
    let pb = pullback(sigma, x.boundary())?;
    let e = sigma.dom();
    let act: Vec<Vec<Elem>> = e
        .elements()
        .map(|eb| {
            pb.pairs()
                .iter()
                .map(|&(ee, h)| {
                    pb.index(e.conj(eb, ee), x.act(sigma.apply(eb), h))
                        .expect("pullback is stable under the action")
                })
                .collect()
        })
        .collect();
    let action = GroupAction::new_unchecked(e.clone(), pb.group.clone(), act)?;
    let top = CrossedModule::new(pb.left.clone(), action)?
        .with_name(format!("{}*{}", sigma.dom().name(), x.name()))
        .into_arc();
    let morphism = XModMorphism::new(top.clone(), x.clone(), pb.right.clone(), sigma.clone())?;
    Ok((top, morphism))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    #[test]
    fn identity_is_weak_equivalence_and_fibration() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::aut(&s3).unwrap().into_arc();
        let id = XModMorphism::identity(&x);
        assert!(id.validate().is_ok());
        assert!(id.is_weak_equivalence());
        assert!(id.is_discrete_fibration());
    }

    #[test]
    fn discrete_inclusion() {
        let z2 = catalog::cyclic(2).into_arc();
        let z4 = catalog::cyclic(4).into_arc();
        let dz2 = CrossedModule::discrete(&z2).into_arc();
        let dz4 = CrossedModule::discrete(&z4).into_arc();
        let one = dz2.g().clone();
        let incl = GroupHom::new(z2, z4, vec![0, 2]).unwrap();
        let f = XModMorphism::new(dz2, dz4, GroupHom::identity(&one), incl).unwrap();
        assert!(!f.is_weak_equivalence());
        assert!(f.is_discrete_fibration());
    }

    #[test]
    fn pullback_of_discrete_is_kernel_inclusion() {
        let z4 = catalog::cyclic(4).into_arc();
        let z2 = catalog::cyclic(2).into_arc();
        let sigma = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let (top, f) = pullback_crossed_module(&CrossedModule::discrete(&z2).into_arc(), &sigma).unwrap();
        assert!(top.validate().is_ok());
        assert_eq!(top.g().order(), 2);
        assert_eq!(top.boundary().image().elements(), &[0, 2]);
        assert!(f.is_weak_equivalence());
    }

    #[test]
    fn pullback_along_surjection_is_weak_equivalence() {
        let z4 = catalog::cyclic(4).into_arc();
        let z2 = catalog::cyclic(2).into_arc();
        let sigma = GroupHom::new(z4, z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let x = CrossedModule::conjugation(&z2).into_arc();
        let (top, f) = pullback_crossed_module(&x, &sigma).unwrap();
        assert_eq!(top.g().order(), 4);
        assert!(f.is_weak_equivalence());
        assert!(f.is_pullback_square());
    }

    #[test]
    fn pullback_along_identity_is_copy() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::conjugation(&s3).into_arc();
        let (top, f) = pullback_crossed_module(&x, &GroupHom::identity(&s3)).unwrap();
        assert_eq!(top.g().order(), 6);
        assert!(f.p().is_isomorphism());
        assert!(f.p0().is_isomorphism());
    }
}
