use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fingroup::{
    automorphism_group, catalog, conjugation_action, semidirect_product, Elem, FinGroup, GroupAction, GroupHom,
    SemidirectProduct, Subgroup,
};
use crate::report::Report;

/// A crossed module `∂: G → G₀` with an action `ξ` of `G₀` on `G`.
#[derive(Clone)]
pub struct CrossedModule {
    g: Arc<FinGroup>,
    g0: Arc<FinGroup>,
    boundary: GroupHom,
    action: GroupAction,
    name: String,
    semidirect: OnceLock<SemidirectProduct>,
}

impl PartialEq for CrossedModule {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.g0 == other.g0 && self.boundary == other.boundary && self.action == other.action
    }
}

impl Eq for CrossedModule {}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedModule({})", self.name)
    }
}

impl fmt::Display for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl CrossedModule {
    pub fn new(boundary: GroupHom, action: GroupAction) -> Result<Self> {
        let x = Self::new_unchecked(boundary, action)?;
        let report = x.validate();
        if !report.is_ok() {
            return Err(Error::InvalidCrossedModule(report.to_string()));
        }
        Ok(x)
    }

    /// Checks only that the boundary and action live on the same groups.
    pub fn new_unchecked(boundary: GroupHom, action: GroupAction) -> Result<Self> {
        if boundary.dom() != action.target() || boundary.cod() != action.actor() {
            return Err(Error::InvalidCrossedModule(format!(
                "boundary {} -> {} does not match action of {} on {}",
                boundary.dom().name(),
                boundary.cod().name(),
                action.actor().name(),
                action.target().name()
            )));
        }
        let name = format!("({} -> {})", boundary.dom().name(), boundary.cod().name());
        Ok(Self {
            name,
            g: boundary.dom().clone(),
            g0: boundary.cod().clone(),
            boundary,
            action,
            semidirect: OnceLock::new(),
        })
    }

    /// Lists every violated precrossed `(x, g)` and Peiffer `(g, g')` instance.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let (g, g0, d) = (&self.g, &self.g0, &self.boundary);
        for x in g0.elements() {
            for a in g.elements() {
                if d.apply(self.act(x, a)) != g0.conj(x, d.apply(a)) {
                    report.push("precrossed", format!("x={x}, g={a}"));
                }
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                if self.act(d.apply(a), b) != g.conj(a, b) {
                    report.push("peiffer", format!("g={a}, g'={b}"));
                }
            }
        }
        report
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn g(&self) -> &Arc<FinGroup> {
        &self.g
    }

    pub fn g0(&self) -> &Arc<FinGroup> {
        &self.g0
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    #[inline]
    pub fn d(&self, a: Elem) -> Elem {
        self.boundary.apply(a)
    }

    /// `x ▷ a`
    #[inline]
    pub fn act(&self, x: Elem, a: Elem) -> Elem {
        self.action.apply(x, a)
    }

    /// Size used to bound fixture sets: `|G|·|G₀|`.
    pub fn size(&self) -> usize {
        self.g.order() * self.g0.order()
    }

    /// `G ⋊ G₀`, computed once.
    pub fn semidirect(&self) -> &SemidirectProduct {
        self.semidirect.get_or_init(|| semidirect_product(&self.action))
    }

    pub fn kernel(&self) -> Subgroup {
        self.boundary.kernel()
    }

    /// `G₀ / ∂G`. The image is normal because of the precrossed condition.
    pub fn cokernel(&self) -> crate::fingroup::Quotient {
        crate::fingroup::quotient(&self.g0, &self.boundary.image()).expect("image of a boundary is normal")
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// `D(H) = (1 → H)`.
    pub fn discrete(h: &Arc<FinGroup>) -> Self {
        let one = catalog::trivial().into_arc();
        Self::new_unchecked(GroupHom::zero(&one, h), GroupAction::trivial(h, &one))
            .unwrap()
            .with_name(format!("D({})", h.name()))
    }

    /// `(A → 1)` for an abelian group `A`.
    pub fn abelian(a: &Arc<FinGroup>) -> Result<Self> {
        let one = catalog::trivial().into_arc();
        Ok(Self::new(GroupHom::zero(a, &one), GroupAction::trivial(&one, a))?.with_name(format!("Ab({})", a.name())))
    }

    /// `A(G) = (G → Aut G)`, boundary sending `g` to conjugation by `g`.
    pub fn aut(g: &Arc<FinGroup>) -> Result<Self> {
        let aut = automorphism_group(g)?;
        let map = g
            .elements()
            .map(|a| {
                let inner: Vec<Elem> = g.elements().map(|b| g.conj(a, b)).collect();
                aut.index_of(&inner).expect("inner automorphism missing from Aut")
            })
            .collect();
        let boundary = GroupHom::new_unchecked(g.clone(), aut.group.clone(), map)?;
        Ok(Self::new(boundary, aut.ev)?.with_name(format!("A({})", g.name())))
    }

    /// `(id: G → G)` with conjugation.
    pub fn conjugation(g: &Arc<FinGroup>) -> Self {
        Self::new_unchecked(GroupHom::identity(g), conjugation_action(g))
            .unwrap()
            .with_name(format!("Conj({})", g.name()))
    }

    /// A normal subgroup `N ↪ G` with conjugation.
    pub fn normal_inclusion(n: &Subgroup) -> Result<Self> {
        if !n.is_normal() {
            return Err(Error::NotNormal(format!("subgroup of order {}", n.len())));
        }
        let (ng, incl) = n.to_group(format!("N{}", n.len()));
        let g = n.ambient();
        let act = g
            .elements()
            .map(|x| {
                ng.elements()
                    .map(|a| n.index_of(g.conj(x, incl.apply(a))).unwrap())
                    .collect()
            })
            .collect();
        let action = GroupAction::new_unchecked(g.clone(), ng, act)?;
        Self::new(incl, action)
    }
}
