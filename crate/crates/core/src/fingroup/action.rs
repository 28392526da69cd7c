use std::fmt;
use std::sync::Arc;

use super::{Elem, FinGroup, GroupHom};
use crate::error::{Error, Result};

/// An action of `actor` on `target` by automorphisms: `act[x][a] = x ▷ a`.
///
/// In finite groups an internal action is the same thing as a homomorphism
/// `actor -> Aut(target)`; this type stores that homomorphism pointwise.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: Arc<FinGroup>,
    target: Arc<FinGroup>,
    act: Vec<Vec<Elem>>,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction({} on {})", self.actor.name(), self.target.name())
    }
}

impl GroupAction {
    pub fn new(actor: Arc<FinGroup>, target: Arc<FinGroup>, act: Vec<Vec<Elem>>) -> Result<Self> {
        let action = Self::new_unchecked(actor, target, act)?;
        action.check()?;
        Ok(action)
    }

    /// Shape checks only: one permutation of the target per actor element.
    pub fn new_unchecked(actor: Arc<FinGroup>, target: Arc<FinGroup>, act: Vec<Vec<Elem>>) -> Result<Self> {
        if act.len() != actor.order() {
            return Err(Error::InvalidAction(format!(
                "{} entries for actor of order {}",
                act.len(),
                actor.order()
            )));
        }
        for (x, perm) in act.iter().enumerate() {
            if perm.len() != target.order() || perm.iter().any(|&a| a >= target.order()) {
                return Err(Error::InvalidAction(format!("entry {x} has the wrong shape")));
            }
        }
        Ok(Self { actor, target, act })
    }

    pub fn check(&self) -> Result<()> {
        let t = &self.target;
        for (x, perm) in self.act.iter().enumerate() {
            let mut seen = vec![false; t.order()];
            for &a in perm {
                if std::mem::replace(&mut seen[a], true) {
                    return Err(Error::InvalidAction(format!("act[{x}] is not a permutation")));
                }
            }
            for a in t.elements() {
                for b in t.elements() {
                    if perm[t.mul(a, b)] != t.mul(perm[a], perm[b]) {
                        return Err(Error::InvalidAction(format!(
                            "act[{x}] is not an automorphism: fails on ({a}, {b})"
                        )));
                    }
                }
            }
        }
        if self.act[0].iter().enumerate().any(|(a, &b)| a != b) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for x in self.actor.elements() {
            for y in self.actor.elements() {
                let xy = self.actor.mul(x, y);
                for a in t.elements() {
                    if self.act[xy][a] != self.act[x][self.act[y][a]] {
                        return Err(Error::InvalidAction(format!(
                            "act[{x}·{y}] differs from act[{x}]∘act[{y}] at {a}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(actor: &Arc<FinGroup>, target: &Arc<FinGroup>) -> Self {
        Self {
            actor: actor.clone(),
            target: target.clone(),
            act: vec![target.elements().collect(); actor.order()],
        }
    }

    /// `x ▷ a = x a x^-1`.
    pub fn conjugation(g: &Arc<FinGroup>) -> Self {
        let act = g
            .elements()
            .map(|x| g.elements().map(|a| g.conj(x, a)).collect())
            .collect();
        Self {
            actor: g.clone(),
            target: g.clone(),
            act,
        }
    }

    pub(crate) fn from_fn(
        actor: &Arc<FinGroup>,
        target: &Arc<FinGroup>,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let act = actor
            .elements()
            .map(|x| target.elements().map(|a| f(x, a)).collect())
            .collect();
        let action = Self {
            actor: actor.clone(),
            target: target.clone(),
            act,
        };
        debug_assert!(action.check().is_ok(), "from_fn produced an invalid action");
        action
    }

    pub fn actor(&self) -> &Arc<FinGroup> {
        &self.actor
    }

    pub fn target(&self) -> &Arc<FinGroup> {
        &self.target
    }

    pub fn table(&self) -> &[Vec<Elem>] {
        &self.act
    }

    #[inline]
    pub fn apply(&self, x: Elem, a: Elem) -> Elem {
        self.act[x][a]
    }

    pub fn is_trivial(&self) -> bool {
        self.act.iter().all(|p| p.iter().enumerate().all(|(a, &b)| a == b))
    }

    /// The action of `f.dom()` obtained by acting through `f`.
    pub fn along(&self, f: &GroupHom) -> Result<Self> {
        if **f.cod() != *self.actor {
            return Err(Error::CodomainMismatch(format!(
                "cannot pull back an action of {} along a map into {}",
                self.actor.name(),
                f.cod().name()
            )));
        }
        Ok(Self {
            actor: f.dom().clone(),
            target: self.target.clone(),
            act: f.dom().elements().map(|x| self.act[f.apply(x)].clone()).collect(),
        })
    }
}

/// The conjugation action `χ_G` of a group on itself.
pub fn conjugation_action(g: &Arc<FinGroup>) -> GroupAction {
    GroupAction::conjugation(g)
}
