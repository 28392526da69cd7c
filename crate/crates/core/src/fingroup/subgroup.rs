use std::sync::Arc;

use super::{Elem, FinGroup, GroupHom};
use crate::error::{Error, Result};

/// A subgroup of an ambient group, as a sorted list of ambient indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: Arc<FinGroup>,
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn new(ambient: Arc<FinGroup>, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if let Some(&bad) = elements.iter().find(|&&a| a >= ambient.order()) {
            return Err(Error::NotASubgroup(format!("element {bad} out of range")));
        }
        let sub = Self { ambient, elements };
        for &a in &sub.elements {
            if !sub.contains(sub.ambient.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &sub.elements {
                if !sub.contains(sub.ambient.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed at ({a}, {b})")));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted_trusted(ambient: Arc<FinGroup>, elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { ambient, elements }
    }

    pub fn generated_by(ambient: &Arc<FinGroup>, gens: &[Elem]) -> Self {
        Self::from_sorted_trusted(ambient.clone(), ambient.closure(gens))
    }

    pub fn trivial(ambient: &Arc<FinGroup>) -> Self {
        Self::from_sorted_trusted(ambient.clone(), vec![0])
    }

    pub fn whole(ambient: &Arc<FinGroup>) -> Self {
        Self::from_sorted_trusted(ambient.clone(), ambient.elements().collect())
    }

    pub fn ambient(&self) -> &Arc<FinGroup> {
        &self.ambient
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Position of `a` in the subgroup's own indexing.
    pub fn index_of(&self, a: Elem) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    pub fn is_normal(&self) -> bool {
        self.ambient
            .elements()
            .all(|x| self.elements.iter().all(|&a| self.contains(self.ambient.conj(x, a))))
    }

    pub fn normal_closure(&self) -> Subgroup {
        let mut gens: Vec<Elem> = Vec::new();
        for x in self.ambient.elements() {
            for &a in &self.elements {
                gens.push(self.ambient.conj(x, a));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        Self::generated_by(&self.ambient, &gens)
    }

    /// The subgroup as a group in its own right (elements ordered by ambient
    /// index) together with its inclusion.
    pub fn to_group(&self, name: impl Into<String>) -> (Arc<FinGroup>, GroupHom) {
        let n = self.elements.len();
        let group = FinGroup::from_fn(n, name, |i, j| {
            let prod = self.ambient.mul(self.elements[i], self.elements[j]);
            self.index_of(prod).expect("subgroup not closed")
        })
        .into_arc();
        let incl = GroupHom::from_fn(&group, &self.ambient, |i| self.elements[i]);
        (group, incl)
    }
}
