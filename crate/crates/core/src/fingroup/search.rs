//! Backtracking searches for homomorphisms, automorphisms and isomorphisms.
//!
//! A homomorphism is determined by the images of a generating set. We assign
//! images one generator at a time and, after each assignment, extend the
//! partial map along right multiplication by the assigned generators. A
//! conflict on any edge of that Cayley graph rejects the prefix; a complete
//! assignment with no conflict is a homomorphism.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{Elem, FinGroup, GroupAction, GroupHom};
use crate::error::{Error, Result};

/// Default size bound for automorphism and isomorphism searches.
pub const DEFAULT_BOUND: usize = 24;

/// Extends `gens -> images` to the subgroup they generate. `None` on conflict.
fn extend(dom: &FinGroup, cod: &FinGroup, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; dom.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let y = dom.mul(x, g);
            let v = cod.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

/// Generating set that starts with `seed` and is completed greedily.
pub fn complete_generators(g: &FinGroup, seed: &[Elem]) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = g.closure(&gens);
    for &s in seed {
        if span.binary_search(&s).is_err() {
            gens.push(s);
            span = g.closure(&gens);
        }
    }
    for s in g.generators() {
        if span.len() == g.order() {
            break;
        }
        if span.binary_search(&s).is_err() {
            gens.push(s);
            span = g.closure(&gens);
        }
    }
    let mut extra = 1;
    while span.len() < g.order() {
        if span.binary_search(&extra).is_err() {
            gens.push(extra);
            span = g.closure(&gens);
        }
        extra += 1;
    }
    gens
}

/// Visits every homomorphism `dom -> cod` sending `gens[i]` into
/// `candidates[i]`. `gens` must generate `dom`. Candidates whose order does not
/// divide the generator's order are skipped. Visiting order is lexicographic in
/// the candidate lists.
pub fn for_each_hom(
    dom: &FinGroup,
    cod: &FinGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>,
) {
    assert_eq!(gens.len(), candidates.len());
    debug_assert_eq!(dom.closure(gens).len(), dom.order(), "generators do not generate");
    let filtered: Vec<Vec<Elem>> = gens
        .iter()
        .zip(candidates)
        .map(|(&g, cs)| {
            let n = dom.element_order(g);
            cs.iter().copied().filter(|&c| n.is_multiple_of(cod.element_order(c))).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    let _ = backtrack(dom, cod, gens, &filtered, &mut images, &mut visit);
}

fn backtrack(
    dom: &FinGroup,
    cod: &FinGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
    visit: &mut impl FnMut(&[Elem]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let k = images.len();
    if k == gens.len() {
        let map = extend(dom, cod, gens, images).expect("checked on the last step");
        return visit(&map);
    }
    for &c in &candidates[k] {
        images.push(c);
        let ok = extend(dom, cod, &gens[..=k], images).is_some();
        if ok {
            backtrack(dom, cod, gens, candidates, images, visit)?;
        }
        images.pop();
    }
    ControlFlow::Continue(())
}

pub fn all_homomorphisms(dom: &Arc<FinGroup>, cod: &Arc<FinGroup>) -> Vec<GroupHom> {
    let gens = dom.generators();
    let cands = vec![cod.elements().collect::<Vec<_>>(); gens.len()];
    let mut out = Vec::new();
    for_each_hom(dom, cod, &gens, &cands, |map| {
        out.push(GroupHom::new_unchecked(dom.clone(), cod.clone(), map.to_vec()).unwrap());
        ControlFlow::Continue(())
    });
    out.sort_by(|a, b| a.map().cmp(b.map()));
    out
}

fn check_bound(g: &FinGroup, bound: usize) -> Result<()> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            what: format!("group {}", g.name()),
            size: g.order(),
            bound,
        });
    }
    Ok(())
}

fn bijections(dom: &FinGroup, cod: &FinGroup, first_only: bool) -> Vec<Vec<Elem>> {
    if dom.order() != cod.order() || dom.order_profile() != cod.order_profile() {
        return Vec::new();
    }
    let gens = dom.generators();
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let n = dom.element_order(g);
            cod.elements().filter(|&c| cod.element_order(c) == n).collect()
        })
        .collect();
    let mut out = Vec::new();
    for_each_hom(dom, cod, &gens, &cands, |map| {
        let mut hit = vec![false; cod.order()];
        let injective = map.iter().all(|&y| !std::mem::replace(&mut hit[y], true));
        if injective {
            out.push(map.to_vec());
            if first_only {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    out
}

/// `Aut(G)` together with its evaluation action on `G`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: Arc<FinGroup>,
    pub ev: GroupAction,
    lookup: HashMap<Vec<Elem>, Elem>,
}

impl AutGroup {
    /// The index of an automorphism given as a map, if it is one.
    pub fn index_of(&self, map: &[Elem]) -> Option<Elem> {
        self.lookup.get(map).copied()
    }

    pub fn automorphism(&self, i: Elem) -> &[Elem] {
        &self.ev.table()[i]
    }
}

pub fn automorphism_group(g: &Arc<FinGroup>) -> Result<AutGroup> {
    automorphism_group_bounded(g, DEFAULT_BOUND)
}

/// Automorphisms are listed in lexicographic order of their maps (so the
/// identity comes first) and multiplied as functions: `(φ·ψ)(a) = φ(ψ(a))`.
pub fn automorphism_group_bounded(g: &Arc<FinGroup>, bound: usize) -> Result<AutGroup> {
    check_bound(g, bound)?;
    let mut autos = bijections(g, g, false);
    autos.sort();
    let lookup: HashMap<Vec<Elem>, Elem> = autos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let n = autos.len();
    let group = FinGroup::from_fn(n, format!("Aut({})", g.name()), |i, j| {
        let comp: Vec<Elem> = g.elements().map(|a| autos[i][autos[j][a]]).collect();
        lookup[&comp]
    })
    .into_arc();
    let ev = GroupAction::new_unchecked(group.clone(), g.clone(), autos)?;
    debug_assert!(ev.check().is_ok());
    Ok(AutGroup { group, ev, lookup })
}

pub fn isomorphism_search(g: &Arc<FinGroup>, h: &Arc<FinGroup>) -> Result<Option<GroupHom>> {
    isomorphism_search_bounded(g, h, DEFAULT_BOUND)
}

pub fn isomorphism_search_bounded(g: &Arc<FinGroup>, h: &Arc<FinGroup>, bound: usize) -> Result<Option<GroupHom>> {
    check_bound(g, bound)?;
    check_bound(h, bound)?;
    Ok(bijections(g, h, true)
        .into_iter()
        .next()
        .map(|map| GroupHom::new_unchecked(g.clone(), h.clone(), map).unwrap()))
}

type Constraint<'a> = Box<dyn Fn(&[Elem]) -> bool + Sync + 'a>;

/// A finite constraint problem over variables `0..n`. Each constraint names
/// the variables it reads and is checked as soon as the last of them is
/// assigned, so partial assignments are pruned early.
pub struct Csp<'a> {
    domains: Vec<Vec<Elem>>,
    constraints: Vec<Vec<Constraint<'a>>>,
}

impl<'a> Csp<'a> {
    pub fn new(domains: Vec<Vec<Elem>>) -> Self {
        let n = domains.len();
        Self {
            domains,
            constraints: (0..n).map(|_| Vec::new()).collect(),
        }
    }

    /// Adds a constraint reading `vars`; `check` sees the full assignment
    /// vector, valid at every index in `vars`.
    pub fn constrain(&mut self, vars: &[usize], check: impl Fn(&[Elem]) -> bool + Sync + 'a) {
        let last = vars.iter().copied().max().expect("constraint without variables");
        self.constraints[last].push(Box::new(check));
    }

    /// Visits every solution in lexicographic order of the domains.
    pub fn for_each_solution(&self, mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>) {
        let mut values = vec![0; self.domains.len()];
        let _ = self.go(0, &mut values, &mut visit);
    }

    pub fn solutions(&self) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        self.for_each_solution(|v| {
            out.push(v.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first_solution(&self) -> Option<Vec<Elem>> {
        let mut out = None;
        self.for_each_solution(|v| {
            out = Some(v.to_vec());
            ControlFlow::Break(())
        });
        out
    }

    fn go(&self, k: usize, values: &mut Vec<Elem>, visit: &mut impl FnMut(&[Elem]) -> ControlFlow<()>) -> ControlFlow<()> {
        if k == self.domains.len() {
            return visit(values);
        }
        for &v in &self.domains[k] {
            values[k] = v;
            if self.constraints[k].iter().all(|c| c(values)) {
                self.go(k + 1, values, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    #[test]
    fn aut_orders() {
        let order = |g: FinGroup| automorphism_group(&g.into_arc()).unwrap().group.order();
        assert_eq!(order(catalog::cyclic(2)), 1);
        assert_eq!(order(catalog::cyclic(4)), 2);
        assert_eq!(order(catalog::klein4()), 6);
        assert_eq!(order(catalog::symmetric(3)), 6);
        assert_eq!(order(catalog::quaternion()), 24);
    }

    #[test]
    fn aut_v4_is_s3() {
        let aut = automorphism_group(&catalog::klein4().into_arc()).unwrap();
        let s3 = catalog::symmetric(3).into_arc();
        assert!(isomorphism_search(&aut.group, &s3).unwrap().is_some());
        assert_eq!(aut.automorphism(0), &[0, 1, 2, 3]);
    }

    #[test]
    fn aut_bound() {
        let s4 = catalog::symmetric(4).into_arc();
        assert!(automorphism_group_bounded(&s4, 10).is_err());
        let s5 = catalog::symmetric(5).into_arc();
        assert!(matches!(automorphism_group(&s5), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn z4_not_v4() {
        let z4 = catalog::cyclic(4).into_arc();
        let v4 = catalog::klein4().into_arc();
        assert!(isomorphism_search(&z4, &v4).unwrap().is_none());
        let id = isomorphism_search(&z4, &z4).unwrap().unwrap();
        assert!(id.is_isomorphism());
    }

    #[test]
    fn hom_counts() {
        let z4 = catalog::cyclic(4).into_arc();
        let z2 = catalog::cyclic(2).into_arc();
        let v4 = catalog::klein4().into_arc();
        assert_eq!(all_homomorphisms(&z4, &z2).len(), 2);
        assert_eq!(all_homomorphisms(&z2, &z4).len(), 2);
        assert_eq!(all_homomorphisms(&v4, &v4).len(), 16);
        let s3 = catalog::symmetric(3).into_arc();
        // one trivial hom plus three transpositions
        assert_eq!(all_homomorphisms(&z2, &s3).len(), 4);
    }

    #[test]
    fn csp_counts_latin_rows() {
        // permutations of 0..3 as a constraint problem
        let mut csp = Csp::new(vec![vec![0, 1, 2]; 3]);
        for i in 0..3 {
            for j in 0..i {
                csp.constrain(&[i, j], move |v| v[i] != v[j]);
            }
        }
        assert_eq!(csp.solutions().len(), 6);
        assert_eq!(csp.first_solution(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn generators_with_seed() {
        let s3 = catalog::symmetric(3).into_arc();
        let gens = complete_generators(&s3, &[0, 1]);
        assert_eq!(s3.closure(&gens).len(), 6);
        assert_eq!(gens[0], 1);
    }
}
