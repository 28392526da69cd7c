//! Limits and colimits of finite groups: quotients, pullbacks, products and
//! semidirect products. Every constructed group has a canonical element order
//! (cosets by minimal representative, pairs lexicographically) so repeated
//! constructions produce identical tables.

use std::sync::Arc;

use super::{Elem, FinGroup, GroupAction, GroupHom, Subgroup};
use crate::error::{Error, Result};

/// `G / N` on canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FinGroup>,
    pub projection: GroupHom,
    /// Minimal ambient element of each coset, indexed by quotient element.
    pub representatives: Vec<Elem>,
}

/// Quotient of `g` by a normal subgroup `n`.
pub fn quotient(g: &Arc<FinGroup>, n: &Subgroup) -> Result<Quotient> {
    if **n.ambient() != **g {
        return Err(Error::CodomainMismatch("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal(format!("subgroup of order {} in {}", n.len(), g.name())));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(a);
        for &k in n.elements() {
            coset_of[g.mul(a, k)] = idx;
        }
    }
    let name = format!("{}/{}", g.name(), n.len());
    let group = FinGroup::from_fn(reps.len(), name, |i, j| coset_of[g.mul(reps[i], reps[j])]).into_arc();
    let projection = GroupHom::from_fn(g, &group, |a| coset_of[a]);
    Ok(Quotient {
        group,
        projection,
        representatives: reps,
    })
}

/// Image of `f` and the normal closure of that image in the codomain.
pub fn image_and_normal_closure(f: &GroupHom) -> (Subgroup, Subgroup) {
    let image = f.image();
    let closure = image.normal_closure();
    (image, closure)
}

/// The pullback `{(a, c) : f(a) = g(c)}` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: Arc<FinGroup>,
    pub left: GroupHom,
    pub right: GroupHom,
    pairs: Vec<(Elem, Elem)>,
    right_order: usize,
    index: Vec<usize>,
}

impl Pullback {
    pub fn pair(&self, i: Elem) -> (Elem, Elem) {
        self.pairs[i]
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    /// Index of `(a, c)`, if it lies in the pullback.
    pub fn index(&self, a: Elem, c: Elem) -> Option<Elem> {
        match self.index[a * self.right_order + c] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    /// The unique map into the pullback induced by a cone `(u, v)`.
    pub fn factor(&self, u: &GroupHom, v: &GroupHom) -> Option<GroupHom> {
        if u.dom() != v.dom() || u.cod() != self.left.cod() || v.cod() != self.right.cod() {
            return None;
        }
        let map = u
            .dom()
            .elements()
            .map(|x| self.index(u.apply(x), v.apply(x)))
            .collect::<Option<Vec<_>>>()?;
        GroupHom::new_unchecked(u.dom().clone(), self.group.clone(), map).ok()
    }
}

pub fn pullback(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    pullback_named(f, g, format!("{}x{}", f.dom().name(), g.dom().name()))
}

pub(crate) fn pullback_named(f: &GroupHom, g: &GroupHom, name: String) -> Result<Pullback> {
    if **f.cod() != **g.cod() {
        return Err(Error::CodomainMismatch(format!(
            "pullback of maps into {} and {}",
            f.cod().name(),
            g.cod().name()
        )));
    }
    let (a_grp, c_grp) = (f.dom(), g.dom());
    let right_order = c_grp.order();
    let mut pairs = Vec::new();
    let mut index = vec![usize::MAX; a_grp.order() * right_order];
    for a in a_grp.elements() {
        for c in c_grp.elements() {
            if f.apply(a) == g.apply(c) {
                index[a * right_order + c] = pairs.len();
                pairs.push((a, c));
            }
        }
    }
    let group = FinGroup::from_fn(pairs.len(), name, |i, j| {
        let (a, c) = pairs[i];
        let (a2, c2) = pairs[j];
        index[a_grp.mul(a, a2) * right_order + c_grp.mul(c, c2)]
    })
    .into_arc();
    let left = GroupHom::from_fn(&group, a_grp, |i| pairs[i].0);
    let right = GroupHom::from_fn(&group, c_grp, |i| pairs[i].1);
    Ok(Pullback {
        group,
        left,
        right,
        pairs,
        right_order,
        index,
    })
}

/// Direct product `a × b`, the pullback over the trivial group.
pub fn direct_product(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> Pullback {
    let one = super::catalog::trivial().into_arc();
    pullback_named(
        &GroupHom::zero(a, &one),
        &GroupHom::zero(b, &one),
        format!("{}x{}", a.name(), b.name()),
    )
    .expect("maps into the same trivial group")
}

/// `G ⋊ G₀` with `(a, x)(b, y) = (a·(x ▷ b), x·y)`, stored at index `a·|G₀| + x`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: Arc<FinGroup>,
    /// `c(a, x) = x`
    pub projection: GroupHom,
    /// `e(x) = (1, x)`
    pub section: GroupHom,
    /// `g(a) = (a, 1)`
    pub inclusion: GroupHom,
    actor_order: usize,
}

impl SemidirectProduct {
    #[inline]
    pub fn pair(&self, a: Elem, x: Elem) -> Elem {
        a * self.actor_order + x
    }

    #[inline]
    pub fn unpair(&self, i: Elem) -> (Elem, Elem) {
        (i / self.actor_order, i % self.actor_order)
    }
}

pub fn semidirect_product(xi: &GroupAction) -> SemidirectProduct {
    let (g, g0) = (xi.target(), xi.actor());
    let m = g0.order();
    let name = if xi.is_trivial() {
        format!("{}x{}", g.name(), g0.name())
    } else {
        format!("{}:{}", g.name(), g0.name())
    };
    let group = FinGroup::from_fn(g.order() * m, name, |i, j| {
        let (a, x) = (i / m, i % m);
        let (b, y) = (j / m, j % m);
        g.mul(a, xi.apply(x, b)) * m + g0.mul(x, y)
    })
    .into_arc();
    let projection = GroupHom::from_fn(&group, g0, |i| i % m);
    let section = GroupHom::from_fn(g0, &group, |x| x);
    let inclusion = GroupHom::from_fn(g, &group, |a| a * m);
    SemidirectProduct {
        group,
        projection,
        section,
        inclusion,
        actor_order: m,
    }
}
