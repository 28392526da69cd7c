use std::fmt;
use std::sync::Arc;

use super::CrossedModule;
use crate::error::{Error, Result};
use crate::fingroup::{pullback, Elem, FinGroup, GroupAction, GroupHom, Pullback};
use crate::report::Report;

/// An internal groupoid in finite groups. An arrow `f` goes from `d(f)` to
/// `c(f)`; `m(f, g)` is defined when `c(f) = d(g)`.
#[derive(Clone)]
pub struct Strict2Group {
    g1: Arc<FinGroup>,
    g0: Arc<FinGroup>,
    d: GroupHom,
    c: GroupHom,
    e: GroupHom,
    composable: Pullback,
    m: Vec<Elem>,
    i: Vec<Elem>,
}

impl fmt::Debug for Strict2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strict2Group({} => {})", self.g1.name(), self.g0.name())
    }
}

impl PartialEq for Strict2Group {
    fn eq(&self, other: &Self) -> bool {
        self.g1 == other.g1
            && self.g0 == other.g0
            && self.d == other.d
            && self.c == other.c
            && self.e == other.e
            && self.m == other.m
            && self.i == other.i
    }
}

impl Eq for Strict2Group {}

fn check_graph(d: &GroupHom, c: &GroupHom, e: &GroupHom) -> Result<()> {
    if d.dom() != c.dom() || d.cod() != c.cod() || e.dom() != d.cod() || e.cod() != d.dom() {
        return Err(Error::InvalidStrict2Group("d, c, e do not form a reflexive graph".into()));
    }
    Ok(())
}

impl Strict2Group {
    /// Builds the groupoid from a reflexive graph. In groups the composition is
    /// forced: `m(f, g) = f · e(d g)⁻¹ · g`, and the inverse of an arrow is
    /// `e(d f) · f⁻¹ · e(c f)`. Fails if the result is not an internal groupoid.
    pub fn from_reflexive_graph(d: GroupHom, c: GroupHom, e: GroupHom) -> Result<Self> {
        check_graph(&d, &c, &e)?;
        let g1 = d.dom().clone();
        let composable = pullback(&c, &d)?;
        let m = composable
            .pairs()
            .iter()
            .map(|&(f, g)| g1.product([f, g1.inv(e.apply(d.apply(g))), g]))
            .collect();
        let i = g1
            .elements()
            .map(|f| g1.product([e.apply(d.apply(f)), g1.inv(f), e.apply(c.apply(f))]))
            .collect();
        let t = Self::assemble(d, c, e, composable, m, i);
        t.into_validated()
    }

    /// Builds the groupoid from explicit composition and inverse tables. `m` is
    /// indexed by the composable pairs in lexicographic order.
    pub fn new(d: GroupHom, c: GroupHom, e: GroupHom, m: Vec<Elem>, i: Vec<Elem>) -> Result<Self> {
        check_graph(&d, &c, &e)?;
        let composable = pullback(&c, &d)?;
        let n1 = d.dom().order();
        if m.len() != composable.group.order() || m.iter().any(|&a| a >= n1) || i.len() != n1 || i.iter().any(|&a| a >= n1)
        {
            return Err(Error::InvalidStrict2Group("composition or inverse table has the wrong shape".into()));
        }
        Self::assemble(d, c, e, composable, m, i).into_validated()
    }

    fn assemble(d: GroupHom, c: GroupHom, e: GroupHom, composable: Pullback, m: Vec<Elem>, i: Vec<Elem>) -> Self {
        Self {
            g1: d.dom().clone(),
            g0: d.cod().clone(),
            d,
            c,
            e,
            composable,
            m,
            i,
        }
    }

    fn into_validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::InvalidStrict2Group(report.to_string()))
        }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let (g1, g0) = (&self.g1, &self.g0);
        for x in g0.elements() {
            if self.d.apply(self.e.apply(x)) != x || self.c.apply(self.e.apply(x)) != x {
                r.push("unit arrow", format!("e({x}) is not a loop at {x}"));
            }
        }
        for (k, &(f, g)) in self.composable.pairs().iter().enumerate() {
            let h = self.m[k];
            if self.d.apply(h) != self.d.apply(f) || self.c.apply(h) != self.c.apply(g) {
                r.push("composite endpoints", format!("m({f}, {g}) = {h}"));
            }
        }
        for f in g1.elements() {
            if self.compose(self.e.apply(self.d.apply(f)), f) != Some(f)
                || self.compose(f, self.e.apply(self.c.apply(f))) != Some(f)
            {
                r.push("unit law", format!("f={f}"));
            }
            let fi = self.i[f];
            if self.compose(f, fi) != Some(self.e.apply(self.d.apply(f)))
                || self.compose(fi, f) != Some(self.e.apply(self.c.apply(f)))
            {
                r.push("inverse law", format!("f={f}"));
            }
        }
        if !r.is_ok() {
            return r;
        }
        let pb = &self.composable.group;
        for u in pb.elements() {
            for v in pb.elements() {
                if self.m[pb.mul(u, v)] != g1.mul(self.m[u], self.m[v]) {
                    let (a, b) = (self.composable.pair(u), self.composable.pair(v));
                    r.push("composition is not a homomorphism", format!("pairs {a:?}, {b:?}"));
                    return r;
                }
            }
        }
        for a in g1.elements() {
            for b in g1.elements() {
                if self.i[g1.mul(a, b)] != g1.mul(self.i[a], self.i[b]) {
                    r.push("inverse is not a homomorphism", format!("({a}, {b})"));
                    return r;
                }
            }
        }
        for &(f, g) in self.composable.pairs() {
            for h in g1.elements() {
                if self.d.apply(h) != self.c.apply(g) {
                    continue;
                }
                let left = self.compose(self.compose(f, g).unwrap(), h);
                let right = self.compose(f, self.compose(g, h).unwrap());
                if left != right {
                    r.push("associativity", format!("({f}, {g}, {h})"));
                }
            }
        }
        r
    }

    pub fn g1(&self) -> &Arc<FinGroup> {
        &self.g1
    }

    pub fn g0(&self) -> &Arc<FinGroup> {
        &self.g0
    }

    pub fn d(&self) -> &GroupHom {
        &self.d
    }

    pub fn c(&self) -> &GroupHom {
        &self.c
    }

    pub fn e(&self) -> &GroupHom {
        &self.e
    }

    pub fn composable(&self) -> &Pullback {
        &self.composable
    }

    /// Composition table over the composable pairs.
    pub fn m_table(&self) -> &[Elem] {
        &self.m
    }

    pub fn i_table(&self) -> &[Elem] {
        &self.i
    }

    /// `m(f, g)` when `c(f) = d(g)`.
    #[inline]
    pub fn compose(&self, f: Elem, g: Elem) -> Option<Elem> {
        self.composable.index(f, g).map(|k| self.m[k])
    }

    #[inline]
    pub fn arrow_inverse(&self, f: Elem) -> Elem {
        self.i[f]
    }

    /// Arrows with the given source and target.
    pub fn hom_set(&self, x: Elem, y: Elem) -> Vec<Elem> {
        self.g1
            .elements()
            .filter(|&f| self.d.apply(f) == x && self.c.apply(f) == y)
            .collect()
    }

    /// Checks that `(f1, f0)` is a morphism of internal groupoids `self -> other`.
    pub fn check_morphism(&self, other: &Strict2Group, f1: &GroupHom, f0: &GroupHom) -> Report {
        let mut r = Report::new();
        if f1.dom() != &self.g1 || f1.cod() != &other.g1 || f0.dom() != &self.g0 || f0.cod() != &other.g0 {
            r.push("shape", "maps do not match the groupoids");
            return r;
        }
        for f in self.g1.elements() {
            if other.d.apply(f1.apply(f)) != f0.apply(self.d.apply(f)) {
                r.push("source", format!("f={f}"));
            }
            if other.c.apply(f1.apply(f)) != f0.apply(self.c.apply(f)) {
                r.push("target", format!("f={f}"));
            }
        }
        for x in self.g0.elements() {
            if f1.apply(self.e.apply(x)) != other.e.apply(f0.apply(x)) {
                r.push("identities", format!("x={x}"));
            }
        }
        for &(f, g) in self.composable.pairs() {
            let lhs = f1.apply(self.compose(f, g).unwrap());
            if other.compose(f1.apply(f), f1.apply(g)) != Some(lhs) {
                r.push("composition", format!("({f}, {g})"));
            }
        }
        r
    }

    /// The crossed module `(ker c → G₀)` with `x ▷ a = e(x) a e(x)⁻¹`.
    pub fn normalize(&self) -> CrossedModule {
        let ker = self.c.kernel();
        let (g, incl) = ker.to_group(format!("ker c({})", self.g1.name()));
        let boundary = incl.then(&self.d).unwrap();
        let act = self
            .g0
            .elements()
            .map(|x| {
                let ex = self.e.apply(x);
                g.elements()
                    .map(|a| ker.index_of(self.g1.conj(ex, incl.apply(a))).unwrap())
                    .collect()
            })
            .collect();
        let action = GroupAction::new_unchecked(self.g0.clone(), g, act).unwrap();
        CrossedModule::new_unchecked(boundary, action).unwrap()
    }

    /// The canonical isomorphism `denormalize(normalize(T)) -> T`,
    /// `(a, x) ↦ a · e(x)`.
    pub fn comparison_from_normalized(&self, renorm: &Strict2Group) -> GroupHom {
        let n0 = self.g0.order();
        let ker = self.c.kernel();
        GroupHom::new_unchecked(
            renorm.g1.clone(),
            self.g1.clone(),
            renorm
                .g1
                .elements()
                .map(|k| {
                    let (a, x) = (k / n0, k % n0);
                    self.g1.mul(ker.elements()[a], self.e.apply(x))
                })
                .collect(),
        )
        .unwrap()
    }
}

impl CrossedModule {
    /// The action groupoid `G ⋊ G₀ ⇉ G₀` with `d(a, x) = ∂a · x`, `c(a, x) = x`.
    pub fn denormalize(&self) -> Strict2Group {
        let sd = self.semidirect();
        let g1 = &sd.group;
        let n0 = self.g0().order();
        let d = GroupHom::new_unchecked(
            g1.clone(),
            self.g0().clone(),
            g1.elements()
                .map(|k| self.g0().mul(self.d(k / n0), k % n0))
                .collect(),
        )
        .unwrap();
        debug_assert!(d.check().is_ok());
        let composable = pullback(&sd.projection, &d).unwrap();
        let m = composable
            .pairs()
            .iter()
            .map(|&(f, g)| {
                let (a, b, y) = (f / n0, g / n0, g % n0);
                self.g().mul(a, b) * n0 + y
            })
            .collect();
        let i = g1
            .elements()
            .map(|k| {
                let (a, x) = (k / n0, k % n0);
                self.g().inv(a) * n0 + self.g0().mul(self.d(a), x)
            })
            .collect();
        Strict2Group::assemble(d, sd.projection.clone(), sd.section.clone(), composable, m, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::catalog;

    #[test]
    fn discrete_denormalizes_to_discrete() {
        let s3 = catalog::symmetric(3).into_arc();
        let t = CrossedModule::discrete(&s3).denormalize();
        assert!(t.validate().is_ok());
        assert_eq!(t.g1().order(), 6);
        assert_eq!(t.d(), t.c());
    }

    #[test]
    fn one_object_groupoid() {
        let z2 = catalog::cyclic(2).into_arc();
        let t = CrossedModule::abelian(&z2).unwrap().denormalize();
        assert!(t.validate().is_ok());
        assert_eq!(t.g1().order(), 2);
        assert_eq!(t.g0().order(), 1);
        assert_eq!(t.normalize(), CrossedModule::abelian(&z2).unwrap());
    }

    #[test]
    fn codiscrete_on_two_objects() {
        let z2 = catalog::cyclic(2).into_arc();
        let t = CrossedModule::conjugation(&z2).denormalize();
        assert!(t.validate().is_ok());
        assert_eq!(t.g1().order(), 4);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(t.hom_set(x, y).len(), 1);
            }
        }
    }

    #[test]
    fn denormalized_composition_matches_forced_formula() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::aut(&s3).unwrap();
        let t = x.denormalize();
        let forced = Strict2Group::from_reflexive_graph(t.d().clone(), t.c().clone(), t.e().clone()).unwrap();
        assert_eq!(t, forced);
    }

    #[test]
    fn reflexive_graph_with_noncommuting_kernels_is_rejected() {
        // S3 with d = c = trivial: kernels are all of S3 and do not commute.
        let s3 = catalog::symmetric(3).into_arc();
        let one = catalog::trivial().into_arc();
        let d = GroupHom::zero(&s3, &one);
        let e = GroupHom::zero(&one, &s3);
        let err = Strict2Group::from_reflexive_graph(d.clone(), d, e).unwrap_err();
        assert!(matches!(err, Error::InvalidStrict2Group(_)));
    }

    #[test]
    fn normalize_aut_z4() {
        let z4 = catalog::cyclic(4).into_arc();
        let a = CrossedModule::aut(&z4).unwrap();
        let n = a.denormalize().normalize();
        assert_eq!(n, a);
        assert!(n.boundary().is_trivial());
    }
}
