use std::sync::Arc;

use super::{reduced_compose, Butterfly};
use crate::error::{Error, Result};
use crate::fingroup::{direct_product, GroupAction, GroupHom};
use crate::report::Report;
use crate::xmod::{CrossedModule, XModMorphism};

/// The span `H ← [E] → G` of a butterfly.
#[derive(Clone, Debug)]
pub struct Span {
    /// `φ: H × G → E`, `φ(h, g) = κ(h) ι(g)`.
    pub apex: Arc<CrossedModule>,
    /// `(π_H, σ)`, a weak equivalence.
    pub left: XModMorphism,
    /// `(π_G, ρ)`.
    pub right: XModMorphism,
}

/// The crossed module `[E] = (φ: H × G → E)` with
/// `e ▷ (h, g) = (σ(e) ▷ h, ι⁻¹(κ(σ(e) ▷ h)⁻¹ · e φ(h, g) e⁻¹))`, and its legs.
pub fn span_of_butterfly(b: &Butterfly) -> Result<Span> {
    if let Some((h, g)) = b.noncommuting_wings() {
        return Err(Error::CooperatorFails(format!("kappa({h}) and iota({g})")));
    }
    let (hx, gx, e) = (b.dom(), b.cod(), b.e());
    let prod = direct_product(hx.g(), gx.g());
    let top = prod.group.clone();
    let phi = GroupHom::new_unchecked(
        top.clone(),
        e.clone(),
        prod.pairs()
            .iter()
            .map(|&(h, g)| e.mul(b.kappa().apply(h), b.iota().apply(g)))
            .collect(),
    )?;
    let iota_inv = b.iota_inv();
    let act = e
        .elements()
        .map(|x| {
            let sx = b.sigma().apply(x);
            prod.pairs()
                .iter()
                .map(|&(h, g)| {
                    let h2 = hx.act(sx, h);
                    let inner = e.conj(x, e.mul(b.kappa().apply(h), b.iota().apply(g)));
                    let g2 = iota_inv(e.mul(e.inv(b.kappa().apply(h2)), inner));
                    prod.index(h2, g2).unwrap()
                })
                .collect()
        })
        .collect();
    let action = GroupAction::new(e.clone(), top.clone(), act)?;
    let apex = CrossedModule::new(phi, action)?.with_name(format!("[{}]", e.name())).into_arc();
    let left = XModMorphism::new(apex.clone(), hx.clone(), prod.left.clone(), b.sigma().clone())?;
    let right = XModMorphism::new(apex.clone(), gx.clone(), prod.right.clone(), b.rho().clone())?;
    Ok(Span { apex, left, right })
}

/// Compares `(π_H, σ) ·rc B` with `(π_G, ρ) ·rc I_G` through the canonical
/// relabeling `(e₀, e) ↦ (e₀, (ι⁻¹(e e₀⁻¹), ρ(e₀)))`. The report is empty iff
/// the relabeling is an isomorphism of groups carrying every wing of the first
/// butterfly exactly onto the corresponding wing of the second.
pub fn ef3_check(b: &Butterfly) -> Result<Report> {
    let span = span_of_butterfly(b)?;
    let lhs = reduced_compose(&span.left, b)?;
    let rhs = reduced_compose(&span.right, &Butterfly::identity(b.cod()))?;
    let mut r = Report::new();
    let (el, er) = (lhs.e(), rhs.e());
    if el.order() != er.order() {
        r.push("order", format!("{} vs {}", el.order(), er.order()));
        return Ok(r);
    }
    let e = b.e();
    let sd = b.cod().semidirect();
    let iota_inv = b.iota_inv();
    // Both middle groups are pullbacks whose left component is an element of E.
    let lpb = crate::fingroup::pullback(span.left.p0(), b.sigma())?;
    let rpb = crate::fingroup::pullback(span.right.p0(), &b.cod().denormalize().c().clone())?;
    let mut phi = Vec::with_capacity(el.order());
    for &(e0, x) in lpb.pairs() {
        let arrow = sd.pair(iota_inv(e.div(x, e0)), b.rho().apply(e0));
        match rpb.index(e0, arrow) {
            Some(k) => phi.push(k),
            None => {
                r.push("relabeling", format!("({e0}, {x}) has no image"));
                return Ok(r);
            }
        }
    }
    let phi = GroupHom::new_unchecked(el.clone(), er.clone(), phi)?;
    if let Err(err) = phi.check() {
        r.push("relabeling is not a homomorphism", err.to_string());
    }
    if !phi.is_isomorphism() {
        r.push("relabeling is not bijective", "");
    }
    if lhs.kappa().then(&phi)? != *rhs.kappa() {
        r.push("kappa", "differs after relabeling");
    }
    if lhs.iota().then(&phi)? != *rhs.iota() {
        r.push("iota", "differs after relabeling");
    }
    if *lhs.sigma() != phi.then(rhs.sigma())? {
        r.push("sigma", "differs after relabeling");
    }
    if *lhs.rho() != phi.then(rhs.rho())? {
        r.push("rho", "differs after relabeling");
    }
    Ok(r)
}
