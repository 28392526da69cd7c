use std::ops::ControlFlow;

use super::XModMorphism;
use crate::error::{Error, Result};
use crate::fingroup::search::for_each_hom;
use crate::fingroup::{Elem, GroupHom};
use crate::report::Report;

/// A 2-cell `α: P ⇒ Q` between parallel crossed-module morphisms, given by
/// its components `α(x)`, arrows of the action groupoid of the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModTwoCell {
    p: XModMorphism,
    q: XModMorphism,
    alpha: Vec<Elem>,
}

fn check_parallel(p: &XModMorphism, q: &XModMorphism) -> Result<()> {
    if p.dom() != q.dom() || p.cod() != q.cod() {
        return Err(Error::InvalidTwoCell("morphisms are not parallel".into()));
    }
    Ok(())
}

impl XModTwoCell {
    pub fn new(p: XModMorphism, q: XModMorphism, alpha: Vec<Elem>) -> Result<Self> {
        let cell = Self::new_unchecked(p, q, alpha)?;
        let report = cell.validate();
        if !report.is_ok() {
            return Err(Error::InvalidTwoCell(report.to_string()));
        }
        Ok(cell)
    }

    pub fn new_unchecked(p: XModMorphism, q: XModMorphism, alpha: Vec<Elem>) -> Result<Self> {
        check_parallel(&p, &q)?;
        let n1 = p.cod().semidirect().group.order();
        if alpha.len() != p.dom().g0().order() || alpha.iter().any(|&a| a >= n1) {
            return Err(Error::InvalidTwoCell("components have the wrong shape".into()));
        }
        Ok(Self { p, q, alpha })
    }

    /// `α(x) = e(p0 x)`.
    pub fn identity(p: &XModMorphism) -> Self {
        let sd = p.cod().semidirect();
        let alpha = p.dom().g0().elements().map(|x| sd.section.apply(p.p0().apply(x))).collect();
        Self {
            p: p.clone(),
            q: p.clone(),
            alpha,
        }
    }

    pub fn p(&self) -> &XModMorphism {
        &self.p
    }

    pub fn q(&self) -> &XModMorphism {
        &self.q
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    #[inline]
    pub fn component(&self, x: Elem) -> Elem {
        self.alpha[x]
    }

    /// Checks endpoints, that `α` is a homomorphism, and the Peiffer-graph
    /// square `α(∂h) = m0(p h, q h)` with `m0(a, b) = (a b⁻¹, ∂b)`. Also reports
    /// a `correspondence` issue if the verdict disagrees with naturality of the
    /// denormalized transformation.
    pub fn validate(&self) -> Report {
        let mut r = endpoint_report(&self.p, &self.q, &self.alpha);
        let (h, g) = (self.p.dom(), self.p.cod());
        let sd = g.semidirect();
        for a in h.g().elements() {
            let (pa, qa) = (self.p.p().apply(a), self.q.p().apply(a));
            let m0 = sd.pair(g.g().div(pa, qa), g.d(qa));
            if self.alpha[h.d(a)] != m0 {
                r.push("peiffer graph", format!("h={a}"));
            }
        }
        if r.is_ok() != naturality_report(&self.p, &self.q, &self.alpha).is_ok() {
            r.push("correspondence", "two-cell and naturality verdicts differ");
        }
        r
    }

    /// Vertical composite `α ; β: P ⇒ R`, componentwise `m(α x, β x)`.
    pub fn then(&self, next: &XModTwoCell) -> Result<Self> {
        if self.q != next.p {
            return Err(Error::InvalidTwoCell("2-cells are not composable".into()));
        }
        let t = self.p.cod().denormalize();
        let alpha = self
            .alpha
            .iter()
            .zip(&next.alpha)
            .map(|(&a, &b)| t.compose(a, b).expect("components are composable"))
            .collect();
        Ok(Self {
            p: self.p.clone(),
            q: next.q.clone(),
            alpha,
        })
    }
}

fn endpoint_report(p: &XModMorphism, q: &XModMorphism, alpha: &[Elem]) -> Report {
    let mut r = Report::new();
    let (h0, g) = (p.dom().g0(), p.cod());
    let g1 = &g.semidirect().group;
    let t = g.denormalize();
    for x in h0.elements() {
        if t.d().apply(alpha[x]) != p.p0().apply(x) {
            r.push("source", format!("x={x}"));
        }
        if t.c().apply(alpha[x]) != q.p0().apply(x) {
            r.push("target", format!("x={x}"));
        }
    }
    'hom: for x in h0.elements() {
        for y in h0.elements() {
            if alpha[h0.mul(x, y)] != g1.mul(alpha[x], alpha[y]) {
                r.push("homomorphism", format!("({x}, {y})"));
                break 'hom;
            }
        }
    }
    r
}

/// Internal naturality of `α: H₀ → G₁` between the induced functors: for every
/// arrow `f` of the domain groupoid, `m(P₁ f, α(c f)) = m(α(d f), Q₁ f)`.
pub fn naturality_report(p: &XModMorphism, q: &XModMorphism, alpha: &[Elem]) -> Report {
    let mut r = endpoint_report(p, q, alpha);
    if !r.is_ok() {
        return r;
    }
    let (th, tg) = (p.dom().denormalize(), p.cod().denormalize());
    let (p1, q1) = (p.denormalized(), q.denormalized());
    for f in th.g1().elements() {
        let lhs = tg.compose(p1.apply(f), alpha[th.c().apply(f)]);
        let rhs = tg.compose(alpha[th.d().apply(f)], q1.apply(f));
        if lhs.is_none() || lhs != rhs {
            r.push("naturality", format!("arrow {f}"));
        }
    }
    r
}

/// Homomorphisms `α: H₀ → G₁` with `α;d = p0` and `α;c = q0`, the common
/// candidate space for 2-cells and natural transformations.
pub fn candidate_components(p: &XModMorphism, q: &XModMorphism) -> Result<Vec<Vec<Elem>>> {
    check_parallel(p, q)?;
    let h0 = p.dom().g0();
    let t = p.cod().denormalize();
    let gens = h0.generators();
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| t.hom_set(p.p0().apply(x), q.p0().apply(x)))
        .collect();
    let mut out = Vec::new();
    for_each_hom(h0, t.g1(), &gens, &cands, |map| {
        if h0.elements().all(|x| {
            t.d().apply(map[x]) == p.p0().apply(x) && t.c().apply(map[x]) == q.p0().apply(x)
        }) {
            out.push(map.to_vec());
        }
        ControlFlow::Continue(())
    });
    out.sort();
    Ok(out)
}

/// All 2-cells `P ⇒ Q`, sorted by components.
pub fn enumerate_two_cells(p: &XModMorphism, q: &XModMorphism) -> Result<Vec<XModTwoCell>> {
    Ok(candidate_components(p, q)?
        .into_iter()
        .filter_map(|alpha| XModTwoCell::new(p.clone(), q.clone(), alpha).ok())
        .collect())
}

/// All internal natural transformations between the induced functors.
pub fn enumerate_natural_transformations(p: &XModMorphism, q: &XModMorphism) -> Result<Vec<Vec<Elem>>> {
    Ok(candidate_components(p, q)?
        .into_iter()
        .filter(|alpha| naturality_report(p, q, alpha).is_ok())
        .collect())
}

/// The components as a homomorphism `H₀ → G₁`.
pub fn components_hom(cell: &XModTwoCell) -> GroupHom {
    GroupHom::new_unchecked(
        cell.p.dom().g0().clone(),
        cell.p.cod().semidirect().group.clone(),
        cell.alpha.clone(),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;
    use crate::xmod::CrossedModule;

    #[test]
    fn identity_cell_is_valid() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::aut(&s3).unwrap().into_arc();
        let id = XModMorphism::identity(&x);
        assert!(XModTwoCell::identity(&id).validate().is_ok());
    }

    #[test]
    fn unique_cell_into_a_z2() {
        let z2 = catalog::cyclic(2).into_arc();
        let dz2 = CrossedModule::discrete(&z2).into_arc();
        let az2 = CrossedModule::aut(&z2).unwrap().into_arc();
        let zero = XModMorphism::new(
            dz2.clone(),
            az2.clone(),
            GroupHom::zero(dz2.g(), az2.g()),
            GroupHom::zero(dz2.g0(), az2.g0()),
        )
        .unwrap();
        let cells = enumerate_two_cells(&zero, &zero).unwrap();
        // G₁ = Z/2 ⋊ 1 and every component lies over the unique object: two
        // homomorphisms Z/2 → Z/2 both pass.
        assert_eq!(cells.len(), 2);
        assert_eq!(enumerate_natural_transformations(&zero, &zero).unwrap().len(), 2);
    }

    #[test]
    fn wrong_source_is_named() {
        let z2 = catalog::cyclic(2).into_arc();
        let x = CrossedModule::conjugation(&z2).into_arc();
        let id = XModMorphism::identity(&x);
        let mut cell = XModTwoCell::identity(&id);
        // (a, x) at index 2a + x; (1, 0) has source 1 instead of 0
        cell.alpha[0] = 2;
        let r = cell.validate();
        assert!(r.has("source"));
    }

    #[test]
    fn vertical_composition_with_identity() {
        let z2 = catalog::cyclic(2).into_arc();
        let x = CrossedModule::conjugation(&z2).into_arc();
        let id = XModMorphism::identity(&x);
        let cells = enumerate_two_cells(&id, &id).unwrap();
        let unit = XModTwoCell::identity(&id);
        for c in &cells {
            assert_eq!(&unit.then(c).unwrap(), c);
            assert_eq!(&c.then(&unit).unwrap(), c);
        }
    }
}
