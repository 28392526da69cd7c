use std::ops::ControlFlow;

use super::{compose_detailed, Butterfly};
use crate::error::{Error, Result};
use crate::fingroup::search::{complete_generators, for_each_hom};
use crate::fingroup::{Elem, GroupHom};
use crate::report::Report;

/// Largest middle group the butterfly searches accept by default.
pub const BUTTERFLY_SEARCH_BOUND: usize = 1024;

/// A morphism of parallel butterflies: `f: E → E'` commuting with all four wings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButterflyMorphism {
    src: Butterfly,
    dst: Butterfly,
    f: GroupHom,
}

impl ButterflyMorphism {
    pub fn new(src: Butterfly, dst: Butterfly, f: GroupHom) -> Result<Self> {
        let m = Self::new_unchecked(src, dst, f)?;
        let report = m.validate();
        if !report.is_ok() {
            return Err(Error::InvalidMorphism(report.to_string()));
        }
        Ok(m)
    }

    pub fn new_unchecked(src: Butterfly, dst: Butterfly, f: GroupHom) -> Result<Self> {
        if !src.is_parallel(&dst) || f.dom() != src.e() || f.cod() != dst.e() {
            return Err(Error::ShapeMismatch("butterfly morphism between non-parallel butterflies".into()));
        }
        Ok(Self { src, dst, f })
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if let Err(e) = self.f.check() {
            r.push("homomorphism", e.to_string());
            return r;
        }
        let (s, t, f) = (&self.src, &self.dst, &self.f);
        for a in s.dom().g().elements() {
            if f.apply(s.kappa().apply(a)) != t.kappa().apply(a) {
                r.push("kappa triangle", format!("h={a}"));
            }
        }
        for a in s.cod().g().elements() {
            if f.apply(s.iota().apply(a)) != t.iota().apply(a) {
                r.push("iota triangle", format!("g={a}"));
            }
        }
        for x in s.e().elements() {
            if t.sigma().apply(f.apply(x)) != s.sigma().apply(x) {
                r.push("sigma triangle", format!("e={x}"));
            }
            if t.rho().apply(f.apply(x)) != s.rho().apply(x) {
                r.push("rho triangle", format!("e={x}"));
            }
        }
        r
    }

    pub fn identity(b: &Butterfly) -> Self {
        Self {
            src: b.clone(),
            dst: b.clone(),
            f: GroupHom::identity(b.e()),
        }
    }

    pub fn src(&self) -> &Butterfly {
        &self.src
    }

    pub fn dst(&self) -> &Butterfly {
        &self.dst
    }

    pub fn f(&self) -> &GroupHom {
        &self.f
    }

    pub fn then(&self, next: &ButterflyMorphism) -> Result<Self> {
        if self.dst != next.src {
            return Err(Error::NotComposable("butterfly morphisms do not meet".into()));
        }
        Ok(Self {
            src: self.src.clone(),
            dst: next.dst.clone(),
            f: self.f.then(&next.f)?,
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        Some(Self {
            src: self.dst.clone(),
            dst: self.src.clone(),
            f: self.f.inverse()?,
        })
    }

    /// Horizontal composite of `α: B₁ ⇒ B₂` (`H → G`) and `β: B₁' ⇒ B₂'`
    /// (`G → K`): the map `[e, e'] ↦ [α e, β e']` between composites.
    pub fn horizontal(&self, next: &ButterflyMorphism) -> Result<Self> {
        let src = compose_detailed(&self.src, &next.src)?;
        let dst = compose_detailed(&self.dst, &next.dst)?;
        let map = src
            .quotient
            .representatives
            .iter()
            .map(|&r| {
                let (x, y) = src.pullback.pair(r);
                let k = dst
                    .pullback
                    .index(self.f.apply(x), next.f.apply(y))
                    .expect("pullbacks are compatible");
                dst.quotient.projection.apply(k)
            })
            .collect();
        let f = GroupHom::new_unchecked(src.butterfly.e().clone(), dst.butterfly.e().clone(), map)?;
        Self::new(src.butterfly, dst.butterfly, f)
    }
}

fn search(b: &Butterfly, b2: &Butterfly, bound: usize, first_only: bool) -> Result<Vec<GroupHom>> {
    if !b.is_parallel(b2) {
        return Err(Error::ShapeMismatch("butterflies are not parallel".into()));
    }
    for x in [b.e(), b2.e()] {
        if x.order() > bound {
            return Err(Error::BoundExceeded {
                what: "butterfly middle group".into(),
                size: x.order(),
                bound,
            });
        }
    }
    let (e, e2) = (b.e(), b2.e());
    if e.order() != e2.order() {
        return Ok(Vec::new());
    }
    // Seed with wing images so most generators have a single candidate.
    let mut forced: Vec<(Elem, Elem)> = Vec::new();
    for h in b.dom().g().generators() {
        forced.push((b.kappa().apply(h), b2.kappa().apply(h)));
    }
    for g in b.cod().g().generators() {
        forced.push((b.iota().apply(g), b2.iota().apply(g)));
    }
    let seed: Vec<Elem> = forced.iter().map(|&(x, _)| x).collect();
    let gens = complete_generators(e, &seed);
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| match forced.iter().find(|&&(y, _)| y == x) {
            Some(&(_, img)) => vec![img],
            None => e2
                .elements()
                .filter(|&y| b2.sigma().apply(y) == b.sigma().apply(x) && b2.rho().apply(y) == b.rho().apply(x))
                .collect(),
        })
        .collect();
    let mut found = Vec::new();
    for_each_hom(e, e2, &gens, &cands, |map| {
        let f = GroupHom::new_unchecked(e.clone(), e2.clone(), map.to_vec()).unwrap();
        let m = ButterflyMorphism::new_unchecked(b.clone(), b2.clone(), f).unwrap();
        if m.validate().is_ok() {
            found.push(m.f);
            if first_only {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// A butterfly isomorphism `b → b2`, if one exists.
pub fn isomorphic_butterflies(b: &Butterfly, b2: &Butterfly) -> Result<Option<ButterflyMorphism>> {
    isomorphic_butterflies_bounded(b, b2, BUTTERFLY_SEARCH_BOUND)
}

pub fn isomorphic_butterflies_bounded(b: &Butterfly, b2: &Butterfly, bound: usize) -> Result<Option<ButterflyMorphism>> {
    Ok(search(b, b2, bound, true)?
        .into_iter()
        .next()
        .map(|f| ButterflyMorphism {
            src: b.clone(),
            dst: b2.clone(),
            f,
        }))
}

/// Every butterfly morphism `b → b2`, sorted by underlying map.
pub fn all_butterfly_morphisms(b: &Butterfly, b2: &Butterfly) -> Result<Vec<ButterflyMorphism>> {
    let mut maps = search(b, b2, BUTTERFLY_SEARCH_BOUND, false)?;
    maps.sort_by(|x, y| x.map().cmp(y.map()));
    Ok(maps
        .into_iter()
        .map(|f| ButterflyMorphism {
            src: b.clone(),
            dst: b2.clone(),
            f,
        })
        .collect())
}
