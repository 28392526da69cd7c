use super::{Butterfly, ButterflyMorphism};
use crate::error::{Error, Result};
use crate::fingroup::{pullback, GroupHom};
use crate::xmod::{XModMorphism, XModTwoCell};

/// A butterfly together with a homomorphic section of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitButterfly {
    pub butterfly: Butterfly,
    pub section: GroupHom,
}

/// The split butterfly `E_P` of a morphism `P: H → G`, on
/// `E_P = H₀ ×_{p0,c} G₁ = {(x, (a, y)) : p0 x = y}` with
/// `κ(h) = (∂h, (p(h)⁻¹, ∂p h))`, `ι(a) = (1, (a, 1))`, `σ(x, f) = x`,
/// `ρ(x, (a, y)) = ∂a · y` and section `x ↦ (x, e(p0 x))`.
pub fn split_from_morphism(p: &XModMorphism) -> SplitButterfly {
    let (h, g) = (p.dom(), p.cod());
    let t = g.denormalize();
    let sd = g.semidirect();
    let pb = pullback(p.p0(), t.c()).unwrap();
    let e = pb.group.clone();
    let kappa = GroupHom::new_unchecked(
        h.g().clone(),
        e.clone(),
        h.g()
            .elements()
            .map(|a| {
                let pa = p.p().apply(a);
                pb.index(h.d(a), sd.pair(g.g().inv(pa), g.d(pa))).unwrap()
            })
            .collect(),
    )
    .unwrap();
    let iota = GroupHom::new_unchecked(
        g.g().clone(),
        e.clone(),
        g.g().elements().map(|a| pb.index(0, sd.pair(a, 0)).unwrap()).collect(),
    )
    .unwrap();
    let rho = pb.right.then(t.d()).unwrap();
    let section = GroupHom::new_unchecked(
        h.g0().clone(),
        e.clone(),
        h.g0()
            .elements()
            .map(|x| pb.index(x, sd.section.apply(p.p0().apply(x))).unwrap())
            .collect(),
    )
    .unwrap();
    let butterfly = Butterfly::new(h.clone(), g.clone(), kappa, iota, pb.left.clone(), rho)
        .expect("split butterfly of a valid morphism is valid");
    SplitButterfly { butterfly, section }
}

/// Recovers a morphism from a butterfly and a homomorphic section `s` of `σ`:
/// `p0 = s ; ρ` and `p(h) = ι⁻¹(κ(h)⁻¹ · s(∂h))`.
pub fn morphism_from_split(b: &Butterfly, s: &GroupHom) -> Result<XModMorphism> {
    if s.dom() != b.dom().g0() || s.cod() != b.e() {
        return Err(Error::NotASection("section has the wrong shape".into()));
    }
    s.check().map_err(|e| Error::NotASection(e.to_string()))?;
    if let Some(x) = b.dom().g0().elements().find(|&x| b.sigma().apply(s.apply(x)) != x) {
        return Err(Error::NotASection(format!("sigma(s({x})) != {x}")));
    }
    let (h, e) = (b.dom(), b.e());
    let iota_inv = b.iota_inv();
    let p = GroupHom::new_unchecked(
        h.g().clone(),
        b.cod().g().clone(),
        h.g()
            .elements()
            .map(|a| iota_inv(e.mul(e.inv(b.kappa().apply(a)), s.apply(h.d(a)))))
            .collect(),
    )?;
    let p0 = s.then(b.rho())?;
    XModMorphism::new(h.clone(), b.cod().clone(), p, p0)
}

/// Every homomorphic section of `σ`, sorted by map.
pub fn homomorphic_sections(b: &Butterfly) -> Vec<GroupHom> {
    let h0 = b.dom().g0();
    let gens = h0.generators();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| b.e().elements().filter(|&y| b.sigma().apply(y) == x).collect())
        .collect();
    let mut out = Vec::new();
    crate::fingroup::search::for_each_hom(h0, b.e(), &gens, &cands, |map| {
        out.push(GroupHom::new_unchecked(h0.clone(), b.e().clone(), map.to_vec()).unwrap());
        std::ops::ControlFlow::Continue(())
    });
    out.sort_by(|x, y| x.map().cmp(y.map()));
    out
}

/// Reduced composite `Q ·rc B` for `Q: K → H` and `B: H → G`, on
/// `E' = K₀ ×_{q0,σ} E` with `κ(k) = (∂k, κ(q k))`, `ι(g) = (1, ι g)`,
/// `σ(k0, e) = k0` and `ρ(k0, e) = ρ(e)`.
pub fn reduced_compose(q: &XModMorphism, b: &Butterfly) -> Result<Butterfly> {
    if q.cod() != b.dom() {
        return Err(Error::NotComposable(format!(
            "morphism into {} acting on a butterfly out of {}",
            q.cod(),
            b.dom()
        )));
    }
    let k = q.dom();
    let pb = pullback(q.p0(), b.sigma())?;
    let e = pb.group.clone();
    let kappa = GroupHom::new_unchecked(
        k.g().clone(),
        e.clone(),
        k.g()
            .elements()
            .map(|a| pb.index(k.d(a), b.kappa().apply(q.p().apply(a))).unwrap())
            .collect(),
    )?;
    let iota = GroupHom::new_unchecked(
        b.cod().g().clone(),
        e.clone(),
        b.cod()
            .g()
            .elements()
            .map(|a| pb.index(0, b.iota().apply(a)).unwrap())
            .collect(),
    )?;
    let rho = pb.right.then(b.rho())?;
    Butterfly::new(k.clone(), b.cod().clone(), kappa, iota, pb.left.clone(), rho)
}

/// The butterfly morphism `E_P → E_Q` induced by a 2-cell `α: P ⇒ Q`:
/// `(x, f) ↦ (x, m(f, α x))`.
pub fn two_cell_image(alpha: &XModTwoCell) -> Result<ButterflyMorphism> {
    let (sp, sq) = (split_from_morphism(alpha.p()), split_from_morphism(alpha.q()));
    let t = alpha.p().cod().denormalize();
    let pbp = pullback(alpha.p().p0(), t.c())?;
    let pbq = pullback(alpha.q().p0(), t.c())?;
    let map = pbp
        .pairs()
        .iter()
        .map(|&(x, f)| {
            let g = t
                .compose(f, alpha.component(x))
                .ok_or_else(|| Error::InvalidTwoCell(format!("component at {x} does not start at p0({x})")))?;
            pbq.index(x, g)
                .ok_or_else(|| Error::InvalidTwoCell(format!("component at {x} does not end at q0({x})")))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = GroupHom::new_unchecked(sp.butterfly.e().clone(), sq.butterfly.e().clone(), map)?;
    ButterflyMorphism::new(sp.butterfly, sq.butterfly, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;
    use crate::xmod::CrossedModule;

    #[test]
    fn identity_morphism_on_discrete() {
        let z3 = catalog::cyclic(3).into_arc();
        let x = CrossedModule::discrete(&z3).into_arc();
        let id = XModMorphism::identity(&x);
        let sp = split_from_morphism(&id);
        assert_eq!(sp.butterfly.e().order(), 3);
        assert_eq!(morphism_from_split(&sp.butterfly, &sp.section).unwrap(), id);
    }

    #[test]
    fn split_round_trip_on_conjugation() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::conjugation(&s3).into_arc();
        let y = CrossedModule::aut(&s3).unwrap().into_arc();
        // the canonical morphism Conj(S3) → A(S3): identity on top, inner map below
        let p = XModMorphism::new(x, y.clone(), GroupHom::identity(&s3), y.boundary().clone()).unwrap();
        let sp = split_from_morphism(&p);
        assert!(sp.butterfly.validate().is_ok());
        assert_eq!(morphism_from_split(&sp.butterfly, &sp.section).unwrap(), p);
    }

    #[test]
    fn section_is_checked() {
        let z2 = catalog::cyclic(2).into_arc();
        let x = CrossedModule::conjugation(&z2).into_arc();
        let b = Butterfly::identity(&x);
        let zero = GroupHom::zero(x.g0(), b.e());
        assert!(matches!(morphism_from_split(&b, &zero), Err(Error::NotASection(_))));
    }

    #[test]
    fn reduced_identity_is_split() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::conjugation(&s3).into_arc();
        let y = CrossedModule::aut(&s3).unwrap().into_arc();
        let p = XModMorphism::new(x, y.clone(), GroupHom::identity(&s3), y.boundary().clone()).unwrap();
        let rc = reduced_compose(&p, &Butterfly::identity(&y)).unwrap();
        assert_eq!(rc, split_from_morphism(&p).butterfly);
    }

    #[test]
    fn identity_cell_maps_to_identity() {
        let z2 = catalog::cyclic(2).into_arc();
        let x = CrossedModule::conjugation(&z2).into_arc();
        let id = XModMorphism::identity(&x);
        let m = two_cell_image(&XModTwoCell::identity(&id)).unwrap();
        assert_eq!(m.f(), &GroupHom::identity(m.src().e()));
    }
}
