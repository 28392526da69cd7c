//! Fractors: a butterfly seen as two discrete fibrations out of groupoids over
//! its middle group.

use std::sync::Arc;

use super::Butterfly;
use crate::error::{Error, Result};
use crate::fingroup::{pullback, FinGroup, GroupAction, GroupHom};
use crate::xmod::{CrossedModule, Strict2Group};

/// The groupoids `R ⇉ E` and `R[σ] ⇉ E` with functors `(σ̄, σ)` into the
/// domain 2-group and `(ρ̄, ρ)` into the codomain 2-group.
#[derive(Clone, Debug)]
pub struct Fractor {
    pub dom: Arc<CrossedModule>,
    pub cod: Arc<CrossedModule>,
    pub e: Arc<FinGroup>,
    pub sigma: GroupHom,
    pub rho: GroupHom,
    /// `R`: arrows `(h, e)` from `κ(h)e` to `e`.
    pub r: Strict2Group,
    /// `R[σ]`: arrows `(e₀, e)` from `e` to `e₀` with `σe₀ = σe`.
    pub kernel_pair: Strict2Group,
    /// `σ̄(h, e) = (h, σe)`.
    pub sigma_bar: GroupHom,
    /// `ρ̄(e₀, e) = (ι⁻¹(e e₀⁻¹), ρe₀)`.
    pub rho_bar: GroupHom,
}

/// `F: A → B` over `f0` is a discrete fibration when each arrow of `B` ending
/// at `f0(x)` lifts uniquely to an arrow of `A` ending at `x`.
fn discrete_fibration_witness(a: &Strict2Group, b: &Strict2Group, f1: &GroupHom, f0: &GroupHom) -> Option<String> {
    let pb = pullback(f0, b.c()).unwrap();
    if pb.group.order() != a.g1().order() {
        return Some(format!("{} arrows upstairs, {} liftable arrows", a.g1().order(), pb.group.order()));
    }
    let mut hit = vec![false; pb.group.order()];
    for f in a.g1().elements() {
        let k = pb.index(a.c().apply(f), f1.apply(f)).expect("functor respects targets");
        if std::mem::replace(&mut hit[k], true) {
            return Some(format!("two lifts of arrow {} at {}", f1.apply(f), a.c().apply(f)));
        }
    }
    None
}

pub fn to_fractor(b: &Butterfly) -> Result<Fractor> {
    let (h, g, e) = (b.dom(), b.cod(), b.e());
    let act = GroupAction::from_fn(e, h.g(), |x, a| h.act(b.sigma().apply(x), a));
    let rx = CrossedModule::new(b.kappa().clone(), act)?;
    let r = rx.denormalize();
    let n_e = e.order();
    let th = h.denormalize();
    let hsd = h.semidirect();
    let sigma_bar = GroupHom::new_unchecked(
        r.g1().clone(),
        th.g1().clone(),
        r.g1()
            .elements()
            .map(|k| hsd.pair(k / n_e, b.sigma().apply(k % n_e)))
            .collect(),
    )?;

    let kp = pullback(b.sigma(), b.sigma())?;
    let kernel_pair = Strict2Group::from_reflexive_graph(
        kp.right.clone(),
        kp.left.clone(),
        GroupHom::new_unchecked(
            e.clone(),
            kp.group.clone(),
            e.elements().map(|x| kp.index(x, x).unwrap()).collect(),
        )?,
    )?;
    let gsd = g.semidirect();
    let tg = g.denormalize();
    let iota_inv = b.iota().partial_inverse();
    let rho_bar = kp
        .pairs()
        .iter()
        .map(|&(e0, e1)| {
            iota_inv[e.div(e1, e0)]
                .map(|a| gsd.pair(a, b.rho().apply(e0)))
                .ok_or_else(|| Error::FractorConditionFailed {
                    condition: 2,
                    witness: format!("({e0}, {e1}) in the kernel pair but e1 e0^-1 outside iota(G)"),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let rho_bar = GroupHom::new_unchecked(kp.group.clone(), tg.g1().clone(), rho_bar)?;

    let f = Fractor {
        dom: h.clone(),
        cod: g.clone(),
        e: e.clone(),
        sigma: b.sigma().clone(),
        rho: b.rho().clone(),
        r,
        kernel_pair,
        sigma_bar,
        rho_bar,
    };
    f.check()?;
    Ok(f)
}

impl Fractor {
    /// Conditions: (1) both legs are discrete fibrations, (2) `σ` is surjective
    /// (so `R[σ]` is its kernel pair), (3) `ρ` coequalizes `d, c: R ⇉ E`.
    pub fn check(&self) -> Result<()> {
        let th = self.dom.denormalize();
        let tg = self.cod.denormalize();
        for (a, b, f1, f0) in [
            (&self.r, &th, &self.sigma_bar, &self.sigma),
            (&self.kernel_pair, &tg, &self.rho_bar, &self.rho),
        ] {
            if !a.check_morphism(b, f1, f0).is_ok() {
                return Err(Error::FractorConditionFailed {
                    condition: 1,
                    witness: a.check_morphism(b, f1, f0).to_string(),
                });
            }
            if let Some(w) = discrete_fibration_witness(a, b, f1, f0) {
                return Err(Error::FractorConditionFailed { condition: 1, witness: w });
            }
        }
        if !self.sigma.is_surjective() {
            return Err(Error::FractorConditionFailed {
                condition: 2,
                witness: format!("sigma has image of order {}", self.sigma.image().len()),
            });
        }
        for f in self.r.g1().elements() {
            if self.rho.apply(self.r.d().apply(f)) != self.rho.apply(self.r.c().apply(f)) {
                return Err(Error::FractorConditionFailed {
                    condition: 3,
                    witness: format!("arrow {f} of R"),
                });
            }
        }
        Ok(())
    }

    /// `κ(h)` is the source of the lift of `(h, 1)` ending at `1`, and `ι(g)`
    /// the source of the lift of `(g, 1)` ending at `1`.
    pub fn to_butterfly(&self) -> Result<Butterfly> {
        self.check()?;
        let (h, g) = (&self.dom, &self.cod);
        let hsd = h.semidirect();
        let gsd = g.semidirect();
        let lift = |a: &Strict2Group, f1: &GroupHom, target: usize| -> Result<usize> {
            a.g1()
                .elements()
                .find(|&f| a.c().apply(f) == 0 && f1.apply(f) == target)
                .map(|f| a.d().apply(f))
                .ok_or(Error::FractorConditionFailed {
                    condition: 1,
                    witness: format!("no lift of arrow {target}"),
                })
        };
        let kappa = h
            .g()
            .elements()
            .map(|a| lift(&self.r, &self.sigma_bar, hsd.pair(a, 0)))
            .collect::<Result<Vec<_>>>()?;
        let iota = g
            .g()
            .elements()
            .map(|a| lift(&self.kernel_pair, &self.rho_bar, gsd.pair(a, 0)))
            .collect::<Result<Vec<_>>>()?;
        Butterfly::new(
            h.clone(),
            g.clone(),
            GroupHom::new_unchecked(h.g().clone(), self.e.clone(), kappa)?,
            GroupHom::new_unchecked(g.g().clone(), self.e.clone(), iota)?,
            self.sigma.clone(),
            self.rho.clone(),
        )
    }
}

pub fn from_fractor(f: &Fractor) -> Result<Butterfly> {
    f.to_butterfly()
}
