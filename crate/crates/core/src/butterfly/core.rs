use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fingroup::{FinGroup, GroupHom};
use crate::report::Report;
use crate::xmod::CrossedModule;

/// A butterfly `H → G` between crossed modules `∂_H: H → H₀` and `∂_G: G → G₀`:
///
/// ```text
///   H         G
///    κ\     /ι
///       E
///    σ/     \ρ
///   H₀        G₀
/// ```
#[derive(Clone, PartialEq, Eq)]
pub struct Butterfly {
    dom: Arc<CrossedModule>,
    cod: Arc<CrossedModule>,
    e: Arc<FinGroup>,
    kappa: GroupHom,
    iota: GroupHom,
    sigma: GroupHom,
    rho: GroupHom,
}

impl fmt::Debug for Butterfly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Butterfly({} -> {} via {} of order {})",
            self.dom,
            self.cod,
            self.e.name(),
            self.e.order()
        )
    }
}

impl Butterfly {
    pub fn new(
        dom: Arc<CrossedModule>,
        cod: Arc<CrossedModule>,
        kappa: GroupHom,
        iota: GroupHom,
        sigma: GroupHom,
        rho: GroupHom,
    ) -> Result<Self> {
        let b = Self::new_unchecked(dom, cod, kappa, iota, sigma, rho)?;
        let report = b.validate();
        if !report.is_ok() {
            return Err(Error::InvalidButterfly(report.to_string()));
        }
        Ok(b)
    }

    /// Checks only that the four maps connect the right groups.
    pub fn new_unchecked(
        dom: Arc<CrossedModule>,
        cod: Arc<CrossedModule>,
        kappa: GroupHom,
        iota: GroupHom,
        sigma: GroupHom,
        rho: GroupHom,
    ) -> Result<Self> {
        let e = kappa.cod().clone();
        let shape_ok = kappa.dom() == dom.g()
            && iota.dom() == cod.g()
            && *iota.cod() == e
            && *sigma.dom() == e
            && *rho.dom() == e
            && sigma.cod() == dom.g0()
            && rho.cod() == cod.g0();
        if !shape_ok {
            return Err(Error::InvalidButterfly(format!("wings do not connect {dom} and {cod}")));
        }
        Ok(Self {
            dom,
            cod,
            e,
            kappa,
            iota,
            sigma,
            rho,
        })
    }

    /// Every violated butterfly condition with a witness.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let (h, g, e) = (&self.dom, &self.cod, &self.e);
        for a in h.g().elements() {
            if self.sigma.apply(self.kappa.apply(a)) != h.d(a) {
                r.push("left wing", format!("h={a}"));
            }
            if self.rho.apply(self.kappa.apply(a)) != 0 {
                r.push("(i) complex", format!("h={a}"));
            }
        }
        for a in g.g().elements() {
            if self.rho.apply(self.iota.apply(a)) != g.d(a) {
                r.push("right wing", format!("g={a}"));
            }
        }
        if !self.iota.is_injective() {
            r.push("(ii) iota injective", format!("kernel of order {}", self.iota.kernel().len()));
        }
        if self.iota.image() != self.sigma.kernel() {
            r.push(
                "(ii) image iota = kernel sigma",
                format!("|im iota| = {}, |ker sigma| = {}", self.iota.image().len(), self.sigma.kernel().len()),
            );
        }
        if !self.sigma.is_surjective() {
            r.push("(ii) sigma surjective", format!("image of order {}", self.sigma.image().len()));
        }
        for x in e.elements() {
            for a in h.g().elements() {
                let lhs = self.kappa.apply(h.act(self.sigma.apply(x), a));
                if lhs != e.conj(x, self.kappa.apply(a)) {
                    r.push("(iii)", format!("e={x}, h={a}"));
                }
            }
            for a in g.g().elements() {
                let lhs = self.iota.apply(g.act(self.rho.apply(x), a));
                if lhs != e.conj(x, self.iota.apply(a)) {
                    r.push("(iv)", format!("e={x}, g={a}"));
                }
            }
        }
        if let Some((a, b)) = self.noncommuting_wings() {
            r.push("cooperator", format!("kappa({a}) and iota({b}) do not commute"));
        }
        r
    }

    pub(crate) fn noncommuting_wings(&self) -> Option<(usize, usize)> {
        let e = &self.e;
        for a in self.dom.g().elements() {
            for b in self.cod.g().elements() {
                let (k, i) = (self.kappa.apply(a), self.iota.apply(b));
                if e.mul(k, i) != e.mul(i, k) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn dom(&self) -> &Arc<CrossedModule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<CrossedModule> {
        &self.cod
    }

    pub fn e(&self) -> &Arc<FinGroup> {
        &self.e
    }

    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }

    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }

    pub fn sigma(&self) -> &GroupHom {
        &self.sigma
    }

    pub fn rho(&self) -> &GroupHom {
        &self.rho
    }

    /// `ι⁻¹` on `ker σ`; panics outside the image.
    pub(crate) fn iota_inv(&self) -> impl Fn(usize) -> usize + '_ {
        let inv = self.iota.partial_inverse();
        move |x| inv[x].expect("element outside the image of iota")
    }

    /// The contravariant identity butterfly: `E = G ⋊ G₀`,
    /// `κ(h) = (h⁻¹, ∂h)`, `ι(a) = (a, 1)`, `σ = c`, `ρ = d`.
    pub fn identity(x: &Arc<CrossedModule>) -> Self {
        let t = x.denormalize();
        let sd = x.semidirect();
        let kappa = GroupHom::new_unchecked(
            x.g().clone(),
            sd.group.clone(),
            x.g().elements().map(|a| sd.pair(x.g().inv(a), x.d(a))).collect(),
        )
        .unwrap();
        Self {
            dom: x.clone(),
            cod: x.clone(),
            e: sd.group.clone(),
            kappa,
            iota: sd.inclusion.clone(),
            sigma: t.c().clone(),
            rho: t.d().clone(),
        }
    }

    /// Both diagonals are extensions: `(κ, ρ)` is one as well as `(ι, σ)`.
    pub fn is_flippable(&self) -> bool {
        self.kappa.is_injective() && self.kappa.image() == self.rho.kernel() && self.rho.is_surjective()
    }

    /// The butterfly `G → H` obtained by swapping the wings.
    pub fn flip(&self) -> Result<Self> {
        if !self.is_flippable() {
            return Err(Error::NotFlippable(format!("{self:?}")));
        }
        Ok(Self {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            e: self.e.clone(),
            kappa: self.iota.clone(),
            iota: self.kappa.clone(),
            sigma: self.rho.clone(),
            rho: self.sigma.clone(),
        })
    }

    /// Same data over a relabeled middle group: `f: E → E'` must be an
    /// isomorphism, and the wings are transported along it.
    pub fn transport(&self, f: &GroupHom) -> Result<Self> {
        let inv = f
            .inverse()
            .ok_or_else(|| Error::NotAHomomorphism("transport along a non-isomorphism".into()))?;
        Self::new_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            self.kappa.then(f)?,
            self.iota.then(f)?,
            inv.then(&self.sigma)?,
            inv.then(&self.rho)?,
        )
    }

    pub fn is_parallel(&self, other: &Butterfly) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }
}
