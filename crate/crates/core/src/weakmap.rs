//! Weak morphisms of strict 2-groups (normalized monoidal functors) and their
//! correspondence with butterflies.
//!
//! Arrows go from `d` to `c`. `F2(x, y)` is the arrow from `F0(x)·F0(y)` to
//! `F0(xy)`.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::butterfly::Butterfly;
use crate::error::{Error, Result};
use crate::fingroup::{Csp, Elem, FinGroup, GroupHom};
use crate::report::Report;
use crate::xmod::{Strict2Group, XModMorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalFunctor {
    pub dom: Arc<Strict2Group>,
    pub cod: Arc<Strict2Group>,
    pub f0: Vec<Elem>,
    pub f1: Vec<Elem>,
    /// `F2(x, y)` at `x·|H0| + y`.
    pub f2: Vec<Elem>,
}

impl MonoidalFunctor {
    #[inline]
    pub fn f2(&self, x: Elem, y: Elem) -> Elem {
        self.f2[x * self.dom.g0().order() + y]
    }

    /// The identity functor with identity comparison arrows.
    pub fn identity(t: &Arc<Strict2Group>) -> Self {
        let g0 = t.g0();
        Self {
            dom: t.clone(),
            cod: t.clone(),
            f0: g0.elements().collect(),
            f1: t.g1().elements().collect(),
            f2: g0
                .elements()
                .flat_map(|x| g0.elements().map(move |y| t.e().apply(g0.mul(x, y))))
                .collect(),
        }
    }

    /// The strict functor of a morphism of crossed modules, on denormalizations.
    pub fn strict(p: &XModMorphism) -> Self {
        let dom = Arc::new(p.dom().denormalize());
        let cod = Arc::new(p.cod().denormalize());
        let h0 = dom.g0().clone();
        let f0 = p.p0().map().to_vec();
        let f2 = h0
            .elements()
            .flat_map(|x| h0.elements().map(|y| cod.e().apply(f0[h0.mul(x, y)])).collect::<Vec<_>>())
            .collect();
        Self {
            f1: p.denormalized().map().to_vec(),
            dom,
            cod,
            f0,
            f2,
        }
    }

    /// Whether every comparison arrow is an identity.
    pub fn is_strict(&self) -> bool {
        let h0 = self.dom.g0();
        h0.elements()
            .all(|x| h0.elements().all(|y| self.f2(x, y) == self.cod.e().apply(self.f0[h0.mul(x, y)])))
    }
}

/// A normalized section of `σ` as a plain function `H0 → E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSection {
    pub s: Vec<Elem>,
}

impl SetSection {
    pub fn new(b: &Butterfly, s: Vec<Elem>) -> Result<Self> {
        let h0 = b.dom().g0();
        if s.len() != h0.order() {
            return Err(Error::SectionInvalid(format!("{} values for {} points", s.len(), h0.order())));
        }
        if s[0] != 0 {
            return Err(Error::SectionInvalid("s(1) is not 1".into()));
        }
        if let Some(x) = h0.elements().find(|&x| s[x] >= b.e().order() || b.sigma().apply(s[x]) != x) {
            return Err(Error::SectionInvalid(format!("s({x}) is not in the fiber over {x}")));
        }
        Ok(Self { s })
    }

    /// The least element of each fiber.
    pub fn canonical(b: &Butterfly) -> Self {
        let mut s = vec![usize::MAX; b.dom().g0().order()];
        for u in b.e().elements().rev() {
            s[b.sigma().apply(u)] = u;
        }
        Self { s }
    }

    pub fn is_homomorphism(&self, b: &Butterfly) -> bool {
        let h0 = b.dom().g0();
        h0.elements()
            .all(|x| h0.elements().all(|y| self.s[h0.mul(x, y)] == b.e().mul(self.s[x], self.s[y])))
    }
}

/// Number of normalized sections of `σ`.
pub fn section_count(b: &Butterfly) -> usize {
    let fiber = b.e().order() / b.dom().g0().order();
    (1..b.dom().g0().order()).fold(1usize, |acc, _| acc.saturating_mul(fiber))
}

/// Every normalized section of `σ`, in lexicographic order.
pub fn all_sections(b: &Butterfly) -> Vec<SetSection> {
    let h0 = b.dom().g0();
    let mut fibers = vec![Vec::new(); h0.order()];
    for u in b.e().elements() {
        fibers[b.sigma().apply(u)].push(u);
    }
    fibers[0] = vec![0];
    let mut out = vec![Vec::new()];
    for fiber in &fibers {
        out = out
            .into_iter()
            .flat_map(|s: Vec<Elem>| {
                fiber.iter().map(move |&u| {
                    let mut s = s.clone();
                    s.push(u);
                    s
                })
            })
            .collect();
    }
    out.into_iter().map(|s| SetSection { s }).collect()
}

/// Arrows of a strict 2-group written as `(a, y)` with `a` in `ker c`,
/// meaning `a · e(y)`.
struct Arrows<'a> {
    t: &'a Strict2Group,
    ker: Vec<Elem>,
    index: Vec<Option<Elem>>,
}

impl<'a> Arrows<'a> {
    fn new(t: &'a Strict2Group) -> Self {
        let ker = t.c().kernel().elements().to_vec();
        let mut index = vec![None; t.g1().order()];
        for (i, &k) in ker.iter().enumerate() {
            index[k] = Some(i);
        }
        Self { t, ker, index }
    }

    fn arrow(&self, a: Elem, y: Elem) -> Elem {
        self.t.g1().mul(self.ker[a], self.t.e().apply(y))
    }

    /// The `ker c` part of an arrow.
    fn top(&self, f: Elem) -> Elem {
        let g1 = self.t.g1();
        self.index[g1.div(f, self.t.e().apply(self.t.c().apply(f)))].unwrap()
    }
}

/// The weak morphism of a butterfly along a set section `s`:
/// `F0 = s ; ρ`, `F1(f) = (ι⁻¹(κ(k)⁻¹ · s(d f) · s(c f)⁻¹), F0(c f))` where
/// `k` is the top part of `f`, and `F2(x, y) = (ι⁻¹(s x · s y · s(xy)⁻¹), F0(xy))`.
pub fn extract_monoidal(b: &Butterfly, s: &SetSection) -> Result<MonoidalFunctor> {
    let s = SetSection::new(b, s.s.clone())?.s;
    let dom = Arc::new(b.dom().denormalize());
    let cod = Arc::new(b.cod().denormalize());
    let e = b.e();
    let iota_inv = b.iota().partial_inverse();
    let hi = Arrows::new(&dom);
    let gi = Arrows::new(&cod);
    let h0 = dom.g0();
    let f0: Vec<Elem> = h0.elements().map(|x| b.rho().apply(s[x])).collect();
    let f1 = dom
        .g1()
        .elements()
        .map(|f| {
            let (x1, x) = (dom.d().apply(f), dom.c().apply(f));
            let k = hi.top(f);
            let v = e.product([e.inv(b.kappa().apply(k)), s[x1], e.inv(s[x])]);
            gi.arrow(iota_inv[v].expect("lands in the image of iota"), f0[x])
        })
        .collect();
    let f2 = h0
        .elements()
        .flat_map(|x| {
            let (s, f0, iota_inv, gi) = (&s, &f0, &iota_inv, &gi);
            h0.elements().map(move |y| {
                let xy = h0.mul(x, y);
                let v = e.div(e.mul(s[x], s[y]), s[xy]);
                gi.arrow(iota_inv[v].expect("lands in the image of iota"), f0[xy])
            })
        })
        .collect();
    Ok(MonoidalFunctor { dom, cod, f0, f1, f2 })
}

/// Exhaustive check of normalization, functoriality, the end points of `F2`,
/// naturality of `F2` and the associativity (cocycle) condition.
pub fn check_monoidal(m: &MonoidalFunctor) -> Report {
    let mut r = Report::new();
    let (h, g) = (&*m.dom, &*m.cod);
    let (h0, h1, g0, g1) = (h.g0(), h.g1(), g.g0(), g.g1());
    let n0 = h0.order();
    if m.f0.len() != n0 || m.f1.len() != h1.order() || m.f2.len() != n0 * n0 {
        r.push("shape", "component lengths do not match the 2-groups");
        return r;
    }
    if m.f0.iter().any(|&v| v >= g0.order()) || m.f1.iter().chain(&m.f2).any(|&v| v >= g1.order()) {
        r.push("shape", "component value out of range");
        return r;
    }
    let f0 = |x: Elem| m.f0[x];
    if f0(0) != 0 {
        r.push("normalization", "F0(1) != 1");
    }
    for x in h0.elements() {
        if m.f2(0, x) != g.e().apply(f0(x)) || m.f2(x, 0) != g.e().apply(f0(x)) {
            r.push("normalization", format!("F2 at (1, {x}) or ({x}, 1) is not an identity"));
        }
        if m.f1[h.e().apply(x)] != g.e().apply(f0(x)) {
            r.push("functor identities", format!("x={x}"));
        }
    }
    for f in h1.elements() {
        if g.d().apply(m.f1[f]) != f0(h.d().apply(f)) || g.c().apply(m.f1[f]) != f0(h.c().apply(f)) {
            r.push("functor end points", format!("f={f}"));
        }
    }
    for &(f, k) in h.composable().pairs() {
        let fk = h.compose(f, k).unwrap();
        if g.compose(m.f1[f], m.f1[k]) != Some(m.f1[fk]) {
            r.push("functor composition", format!("({f}, {k})"));
        }
    }
    for x in h0.elements() {
        for y in h0.elements() {
            let a = m.f2(x, y);
            if g.d().apply(a) != g0.mul(f0(x), f0(y)) || g.c().apply(a) != f0(h0.mul(x, y)) {
                r.push("F2 end points", format!("({x}, {y})"));
            }
        }
    }
    if !r.is_ok() {
        return r;
    }
    for f in h1.elements() {
        let (x, x2) = (h.d().apply(f), h.c().apply(f));
        for k in h1.elements() {
            let (y, y2) = (h.d().apply(k), h.c().apply(k));
            let lhs = g.compose(g1.mul(m.f1[f], m.f1[k]), m.f2(x2, y2));
            let rhs = g.compose(m.f2(x, y), m.f1[h1.mul(f, k)]);
            if lhs.is_none() || lhs != rhs {
                r.push("naturality", format!("arrows ({f}, {k})"));
            }
        }
    }
    for x in h0.elements() {
        for y in h0.elements() {
            let xy = h0.mul(x, y);
            for z in h0.elements() {
                let lhs = g.compose(g1.mul(m.f2(x, y), g.e().apply(f0(z))), m.f2(xy, z));
                let rhs = g.compose(g1.mul(g.e().apply(f0(x)), m.f2(y, z)), m.f2(x, h0.mul(y, z)));
                if lhs.is_none() || lhs != rhs {
                    r.push("associativity (cocycle)", format!("({x}, {y}, {z})"));
                }
            }
        }
    }
    r
}

/// The butterfly of a weak morphism, on
/// `P0 = {(y, γ) : c(γ) = F0(y)}` with
/// `(y, γ)(y', γ') = (yy', m(γ·γ', F2(y, y')))`, `σ(y, γ) = y`,
/// `ρ(y, γ) = d(γ)`, `κ(h) = (∂h, F1(i(h)))` and `ι(a) = (1, a)`.
pub fn butterfly_from_monoidal(m: &MonoidalFunctor) -> Result<Butterfly> {
    let r = check_monoidal(m);
    if !r.is_ok() {
        return Err(Error::InvalidMonoidalFunctor(r.to_string()));
    }
    let (h, g) = (&*m.dom, &*m.cod);
    let (h0, g1) = (h.g0(), g.g1());
    let pairs: Vec<(Elem, Elem)> = h0
        .elements()
        .flat_map(|y| {
            g1.elements()
                .filter(move |&a| g.c().apply(a) == m.f0[y])
                .map(move |a| (y, a))
        })
        .collect();
    let index: HashMap<(Elem, Elem), Elem> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let table: Vec<Vec<Elem>> = pairs
        .iter()
        .map(|&(y, a)| {
            pairs
                .iter()
                .map(|&(y2, a2)| {
                    let gamma = g
                        .compose(g1.mul(a, a2), m.f2(y, y2))
                        .expect("F2 starts where the product ends");
                    index[&(h0.mul(y, y2), gamma)]
                })
                .collect()
        })
        .collect();
    let p0 = FinGroup::new(table, "P0")
        .map_err(|err| Error::GroupLawSearchFailed(err.to_string()))?
        .into_arc();
    let hx = Arc::new(h.normalize());
    let gx = Arc::new(g.normalize());
    let hi = Arrows::new(h);
    let gi = Arrows::new(g);
    let kappa = hx
        .g()
        .elements()
        .map(|k| {
            let arrow = h.arrow_inverse(hi.ker[k]);
            index[&(h.c().apply(arrow), m.f1[arrow])]
        })
        .collect();
    let iota = gx.g().elements().map(|a| index[&(0, gi.ker[a])]).collect();
    let sigma = pairs.iter().map(|&(y, _)| y).collect();
    let rho = pairs.iter().map(|&(_, a)| g.d().apply(a)).collect();
    Butterfly::new(
        hx.clone(),
        gx.clone(),
        GroupHom::new(hx.g().clone(), p0.clone(), kappa)?,
        GroupHom::new(gx.g().clone(), p0.clone(), iota)?,
        GroupHom::new(p0.clone(), hx.g0().clone(), sigma)?,
        GroupHom::new(p0, gx.g0().clone(), rho)?,
    )
}

/// The section `y ↦ (y, e(F0 y))` of the butterfly of `m`.
pub fn canonical_monoidal_section(m: &MonoidalFunctor, b: &Butterfly) -> SetSection {
    let h0 = m.dom.g0();
    let s: Vec<Elem> = h0
        .elements()
        .map(|y| {
            let target = m.cod.e().apply(m.f0[y]);
            // P0 lists pairs y-major with arrows ascending inside each block.
            let block_start: usize = (0..y)
                .map(|y2| m.cod.g1().elements().filter(|&a| m.cod.c().apply(a) == m.f0[y2]).count())
                .sum();
            let offset = m
                .cod
                .g1()
                .elements()
                .filter(|&a| m.cod.c().apply(a) == m.f0[y])
                .position(|a| a == target)
                .unwrap();
            block_start + offset
        })
        .collect();
    debug_assert!(SetSection::new(b, s.clone()).is_ok());
    SetSection { s }
}

/// A monoidal natural isomorphism `θ: M ⇒ M'`, with `θ(x)` an arrow from
/// `F0(x)` to `F0'(x)` such that `m(F1 f, θ x') = m(θ x, F1' f)` for every
/// `f: x → x'` and `m(F2(x, y), θ(xy)) = m(θx · θy, F2'(x, y))`.
pub fn monoidal_isomorphism(m: &MonoidalFunctor, m2: &MonoidalFunctor) -> Result<Option<Vec<Elem>>> {
    if m.dom != m2.dom || m.cod != m2.cod {
        return Err(Error::ShapeMismatch("monoidal functors are not parallel".into()));
    }
    let (h, g) = (&*m.dom, &*m.cod);
    let h0 = h.g0();
    let domains: Vec<Vec<Elem>> = h0.elements().map(|x| g.hom_set(m.f0[x], m2.f0[x])).collect();
    let mut csp = Csp::new(domains);
    let mut by_pair: HashMap<(Elem, Elem), Vec<Elem>> = HashMap::new();
    for f in h.g1().elements() {
        by_pair.entry((h.d().apply(f), h.c().apply(f))).or_default().push(f);
    }
    let mut keys: Vec<_> = by_pair.keys().copied().collect();
    keys.sort();
    for (x, x2) in keys {
        let arrows = by_pair[&(x, x2)].clone();
        csp.constrain(&[x, x2], move |t| {
            arrows
                .iter()
                .all(|&f| g.compose(m.f1[f], t[x2]) == g.compose(t[x], m2.f1[f]))
        });
    }
    for x in h0.elements() {
        for y in h0.elements() {
            let xy = h0.mul(x, y);
            csp.constrain(&[x, y, xy], move |t| {
                g.compose(m.f2(x, y), t[xy]) == g.compose(g.g1().mul(t[x], t[y]), m2.f2(x, y))
            });
        }
    }
    Ok(csp.first_solution())
}

/// Runs `visit` on the extracted functor of every section, stopping early on
/// `Break`.
pub fn for_each_extraction(
    b: &Butterfly,
    mut visit: impl FnMut(&SetSection, &MonoidalFunctor) -> ControlFlow<()>,
) -> Result<()> {
    for s in all_sections(b) {
        let m = extract_monoidal(b, &s)?;
        if visit(&s, &m).is_break() {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::{isomorphic_butterflies, split_from_morphism};
    use crate::extension::{butterfly_from_extension, ExtensionDatum};
    use crate::fingroup::catalog;
    use crate::xmod::CrossedModule;

    fn z4_butterfly() -> Butterfly {
        let z2 = catalog::cyclic(2).into_arc();
        let z4 = catalog::cyclic(4).into_arc();
        let iota = GroupHom::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let sigma = GroupHom::new(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        butterfly_from_extension(&ExtensionDatum::new(iota, sigma).unwrap()).unwrap()
    }

    #[test]
    fn identity_functor_is_valid() {
        let s3 = catalog::symmetric(3).into_arc();
        let t = Arc::new(CrossedModule::conjugation(&s3).denormalize());
        let m = MonoidalFunctor::identity(&t);
        assert!(check_monoidal(&m).is_ok());
        assert!(m.is_strict());
    }

    #[test]
    fn z4_extension_gives_generator_cocycle() {
        let b = z4_butterfly();
        let s = SetSection::new(&b, vec![0, 1]).unwrap();
        let m = extract_monoidal(&b, &s).unwrap();
        assert!(check_monoidal(&m).is_ok());
        assert!(!m.is_strict());
        // (1, 1) ↦ 1 + 1 - 0 = 2 = ι(generator); A(Z2) has trivial bottom
        assert_eq!(m.f2(1, 1), 1);
        let rebuilt = butterfly_from_monoidal(&m).unwrap();
        assert_eq!(rebuilt.e().order(), 4);
        assert!(isomorphic_butterflies(&rebuilt, &b).unwrap().is_some());
    }

    #[test]
    fn perturbed_f2_is_caught() {
        // the split butterfly of the zero morphism D(Z3) → A(Z3)
        let z3 = catalog::cyclic(3).into_arc();
        let dh = CrossedModule::discrete(&z3).into_arc();
        let ag = CrossedModule::aut(&z3).unwrap().into_arc();
        let p = XModMorphism::new(
            dh.clone(),
            ag.clone(),
            GroupHom::zero(dh.g(), ag.g()),
            GroupHom::zero(dh.g0(), ag.g0()),
        )
        .unwrap();
        let mut m = MonoidalFunctor::strict(&p);
        assert!(check_monoidal(&m).is_ok());
        // F2(1, 1) := (1, F0(2)), same end points, no longer a cocycle
        m.f2[4] = m.cod.g0().order();
        let r = check_monoidal(&m);
        assert!(r.has("associativity (cocycle)"), "{r}");
    }

    #[test]
    fn homomorphic_section_gives_strict_functor() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::conjugation(&s3).into_arc();
        let y = CrossedModule::aut(&s3).unwrap().into_arc();
        let p = XModMorphism::new(x, y.clone(), GroupHom::identity(&s3), y.boundary().clone()).unwrap();
        let sp = split_from_morphism(&p);
        let s = SetSection::new(&sp.butterfly, sp.section.map().to_vec()).unwrap();
        let m = extract_monoidal(&sp.butterfly, &s).unwrap();
        assert!(m.is_strict());
        assert_eq!(m, MonoidalFunctor::strict(&p));
    }

    #[test]
    fn sections_give_isomorphic_functors() {
        let b = z4_butterfly();
        let sections = all_sections(&b);
        assert_eq!(sections.len(), section_count(&b));
        let m0 = extract_monoidal(&b, &sections[0]).unwrap();
        for s in &sections {
            let m = extract_monoidal(&b, s).unwrap();
            assert!(monoidal_isomorphism(&m0, &m).unwrap().is_some());
        }
    }

    #[test]
    fn round_trip_through_the_limit() {
        let b = z4_butterfly();
        let m = extract_monoidal(&b, &SetSection::canonical(&b)).unwrap();
        let p = butterfly_from_monoidal(&m).unwrap();
        let back = extract_monoidal(&p, &canonical_monoidal_section(&m, &p)).unwrap();
        assert!(monoidal_isomorphism(&m, &back).unwrap().is_some());
    }

    #[test]
    fn bad_section_rejected() {
        let b = z4_butterfly();
        assert!(matches!(SetSection::new(&b, vec![0, 2]), Err(Error::SectionInvalid(_))));
        assert!(matches!(SetSection::new(&b, vec![2, 1]), Err(Error::SectionInvalid(_))));
    }
}
