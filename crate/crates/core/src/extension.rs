//! Extensions `H ← E ← G`, their butterflies `D(H) → A(G)`, and Schreier
//! factor sets as an independent count of equivalence classes.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;

use crate::butterfly::{homomorphic_sections, isomorphic_butterflies, Butterfly};
use crate::error::{Error, Result};
use crate::fingroup::{automorphism_group, catalog, search, isomorphism_search, AutGroup, Csp, Elem, FinGroup, GroupHom};
use crate::report::Report;
use crate::weakmap::MonoidalFunctor;
use crate::xmod::CrossedModule;

/// Default bound on `|H|·|G|` for classification.
pub const CLASSIFY_BOUND: usize = 16;

/// A short exact sequence `G ↪ E ↠ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub h: Arc<FinGroup>,
    pub g: Arc<FinGroup>,
    pub e: Arc<FinGroup>,
    pub iota: GroupHom,
    pub sigma: GroupHom,
}

impl ExtensionDatum {
    pub fn new(iota: GroupHom, sigma: GroupHom) -> Result<Self> {
        let x = Self {
            h: sigma.cod().clone(),
            g: iota.dom().clone(),
            e: iota.cod().clone(),
            iota,
            sigma,
        };
        let r = x.validate();
        if !r.is_ok() {
            return Err(Error::InvalidExtension(r.to_string()));
        }
        Ok(x)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if self.sigma.dom() != &self.e {
            r.push("shape", "sigma does not start at E");
            return r;
        }
        for (name, f) in [("iota", &self.iota), ("sigma", &self.sigma)] {
            if let Err(err) = f.check() {
                r.push(format!("{name} homomorphism"), err.to_string());
            }
        }
        if !self.iota.is_injective() {
            r.push("iota injective", "");
        }
        if !self.sigma.is_surjective() {
            r.push("sigma surjective", "");
        }
        if self.iota.image().elements() != self.sigma.kernel().elements() {
            r.push("exactness", "image of iota differs from kernel of sigma");
        }
        r
    }

    /// Whether `σ` has a homomorphic section.
    pub fn is_split(&self) -> bool {
        let gens = self.h.generators();
        let fibers: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&x| self.e.elements().filter(|&u| self.sigma.apply(u) == x).collect())
            .collect();
        let mut found = false;
        search::for_each_hom(&self.h, &self.e, &gens, &fibers, |_| {
            found = true;
            ControlFlow::Break(())
        });
        found
    }

    /// The factor set read off along a normalized set section `s` of `σ`:
    /// `φ(x)(g) = ι⁻¹(s(x) ι(g) s(x)⁻¹)`, `f(x, y) = ι⁻¹(s(x) s(y) s(xy)⁻¹)`.
    pub fn factor_set(&self, s: &[Elem], aut: &Arc<AutGroup>) -> Result<FactorSet> {
        if s.len() != self.h.order() || s[0] != 0 || self.h.elements().any(|x| self.sigma.apply(s[x]) != x) {
            return Err(Error::SectionInvalid("not a normalized section of sigma".into()));
        }
        let inv = self.iota.partial_inverse();
        let (e, g) = (&self.e, &self.g);
        let phi = self
            .h
            .elements()
            .map(|x| {
                let map: Vec<Elem> = g
                    .elements()
                    .map(|a| inv[e.conj(s[x], self.iota.apply(a))].unwrap())
                    .collect();
                aut.index_of(&map).unwrap()
            })
            .collect();
        let n = self.h.order();
        let mut f = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = e.div(e.mul(s[x], s[y]), s[self.h.mul(x, y)]);
                f[x * n + y] = inv[v].unwrap();
            }
        }
        let fs = FactorSet {
            h: self.h.clone(),
            g: self.g.clone(),
            aut: aut.clone(),
            phi,
            f,
        };
        debug_assert!(fs.validate().is_ok());
        Ok(fs)
    }

    /// The least element of each `σ`-fiber, as a normalized section.
    pub fn canonical_section(&self) -> Vec<Elem> {
        let mut s = vec![usize::MAX; self.h.order()];
        for x in self.e.elements().rev() {
            s[self.sigma.apply(x)] = x;
        }
        s
    }
}

/// Normalized Schreier data `(φ, f)` for an extension of `H` by `G`.
#[derive(Clone, Debug)]
pub struct FactorSet {
    pub h: Arc<FinGroup>,
    pub g: Arc<FinGroup>,
    pub aut: Arc<AutGroup>,
    /// `φ(x)` as an index into `Aut(G)`.
    pub phi: Vec<Elem>,
    /// `f(x, y)` at `x·|H| + y`.
    pub f: Vec<Elem>,
}

impl PartialEq for FactorSet {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.g == other.g && self.phi == other.phi && self.f == other.f
    }
}

impl Eq for FactorSet {}

impl FactorSet {
    #[inline]
    pub fn f(&self, x: Elem, y: Elem) -> Elem {
        self.f[x * self.h.order() + y]
    }

    #[inline]
    pub fn act(&self, x: Elem, a: Elem) -> Elem {
        self.aut.automorphism(self.phi[x])[a]
    }

    pub fn is_trivial_cocycle(&self) -> bool {
        self.f.iter().all(|&v| v == 0)
    }

    pub fn has_trivial_action(&self) -> bool {
        self.phi.iter().all(|&p| p == 0)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let (h, g) = (&self.h, &self.g);
        let n = h.order();
        if self.phi.len() != n || self.f.len() != n * n {
            r.push("shape", format!("phi has {} entries, f has {}", self.phi.len(), self.f.len()));
            return r;
        }
        if self.phi[0] != 0 || (0..n).any(|y| self.f(0, y) != 0 || self.f(y, 0) != 0) {
            r.push("normalized", "phi(1) or f(1, -), f(-, 1) not trivial");
        }
        for x in h.elements() {
            for y in h.elements() {
                let fxy = self.f(x, y);
                if let Some(a) = g
                    .elements()
                    .find(|&a| self.act(x, self.act(y, a)) != g.conj(fxy, self.act(h.mul(x, y), a)))
                {
                    r.push("phi", format!("x={x}, y={y}, g={a}"));
                }
                for z in h.elements() {
                    let lhs = g.mul(self.act(x, self.f(y, z)), self.f(x, h.mul(y, z)));
                    let rhs = g.mul(fxy, self.f(h.mul(x, y), z));
                    if lhs != rhs {
                        r.push("cocycle", format!("x={x}, y={y}, z={z}"));
                    }
                }
            }
        }
        r
    }

    /// Twists by a normalized `k: H → G`: `φ'(x) = conj_{k(x)} ∘ φ(x)` and
    /// `f'(x, y) = k(x) · φ(x)(k(y)) · f(x, y) · k(xy)⁻¹`.
    pub fn twist(&self, k: &[Elem]) -> FactorSet {
        let (h, g) = (&self.h, &self.g);
        let n = h.order();
        let phi = h
            .elements()
            .map(|x| {
                let map: Vec<Elem> = g.elements().map(|a| g.conj(k[x], self.act(x, a))).collect();
                self.aut.index_of(&map).unwrap()
            })
            .collect();
        let mut f = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = g.product([k[x], self.act(x, k[y]), self.f(x, y), g.inv(k[h.mul(x, y)])]);
                f[x * n + y] = v;
            }
        }
        FactorSet {
            h: h.clone(),
            g: g.clone(),
            aut: self.aut.clone(),
            phi,
            f,
        }
    }

    /// `G × H` with `(a, x)(b, y) = (a · φ(x)(b) · f(x, y), xy)`, element
    /// `(a, x)` at index `a·|H| + x`.
    pub fn total_group(&self) -> Result<ExtensionDatum> {
        let (h, g) = (&self.h, &self.g);
        let n = h.order();
        let size = n * g.order();
        let table = (0..size)
            .map(|u| {
                let (a, x) = (u / n, u % n);
                (0..size)
                    .map(|v| {
                        let (b, y) = (v / n, v % n);
                        g.product([a, self.act(x, b), self.f(x, y)]) * n + h.mul(x, y)
                    })
                    .collect()
            })
            .collect();
        let e = FinGroup::new(table, format!("{}.{}", g.name(), h.name()))
            .map_err(|err| Error::InvalidFactorSet(err.to_string()))?
            .into_arc();
        let iota = GroupHom::new(g.clone(), e.clone(), g.elements().map(|a| a * n).collect())?;
        let sigma = GroupHom::new(e.clone(), h.clone(), e.elements().map(|u| u % n).collect())?;
        ExtensionDatum::new(iota, sigma)
    }

    fn key(&self) -> Vec<Elem> {
        self.phi.iter().chain(&self.f).copied().collect()
    }
}

pub fn discrete_xmod(h: &Arc<FinGroup>) -> CrossedModule {
    CrossedModule::discrete(h)
}

pub fn aut_xmod(g: &Arc<FinGroup>) -> Result<CrossedModule> {
    CrossedModule::aut(g)
}

/// The butterfly `D(H) → A(G)` of an extension: `κ = 0` and `ρ(e)` is the
/// automorphism `g ↦ ι⁻¹(e ι(g) e⁻¹)`.
pub fn butterfly_from_extension(x: &ExtensionDatum) -> Result<Butterfly> {
    butterfly_from_extension_into(x, &Arc::new(discrete_xmod(&x.h)), &Arc::new(aut_xmod(&x.g)?))
}

/// As [`butterfly_from_extension`] with the end points supplied, so that
/// many butterflies can share them.
pub fn butterfly_from_extension_into(
    x: &ExtensionDatum,
    dh: &Arc<CrossedModule>,
    ag: &Arc<CrossedModule>,
) -> Result<Butterfly> {
    if dh.g0() != &x.h || ag.g() != &x.g {
        return Err(Error::ShapeMismatch("end points do not match the extension".into()));
    }
    let lookup: HashMap<&[Elem], Elem> = ag
        .action()
        .table()
        .iter()
        .enumerate()
        .map(|(i, row)| (row.as_slice(), i))
        .collect();
    let inv = x.iota.partial_inverse();
    let rho = x
        .e
        .elements()
        .map(|u| {
            let map: Vec<Elem> = x
                .g
                .elements()
                .map(|a| inv[x.e.conj(u, x.iota.apply(a))].unwrap())
                .collect();
            lookup[map.as_slice()]
        })
        .collect();
    let rho = GroupHom::new(x.e.clone(), ag.g0().clone(), rho)?;
    Butterfly::new(
        dh.clone(),
        ag.clone(),
        GroupHom::zero(dh.g(), &x.e),
        x.iota.clone(),
        x.sigma.clone(),
        rho,
    )
}

/// Forgets `ρ`. The butterfly must go from a discrete crossed module to
/// `A(G)`.
pub fn extension_from_butterfly(b: &Butterfly) -> Result<ExtensionDatum> {
    if !b.dom().g().is_trivial() {
        return Err(Error::ShapeMismatch(format!("domain {} is not discrete", b.dom())));
    }
    if **b.cod() != aut_xmod(b.cod().g())? {
        return Err(Error::ShapeMismatch(format!("codomain {} is not A(G)", b.cod())));
    }
    ExtensionDatum::new(b.iota().clone(), b.sigma().clone())
}

/// The factor set of a monoidal functor `D(H) → A(G)`: `φ = F0` and
/// `f(x, y)` the top component of `F2(x, y)`.
pub fn factor_set_from_monoidal(m: &MonoidalFunctor, aut: &Arc<AutGroup>) -> Result<FactorSet> {
    let dom = m.dom.normalize();
    let cod = m.cod.normalize();
    if !dom.g().is_trivial() || cod != aut_xmod(cod.g())? {
        return Err(Error::ShapeMismatch("monoidal functor is not D(H) -> A(G)".into()));
    }
    let h = dom.g0().clone();
    let g = cod.g().clone();
    let ker = m.cod.c().kernel();
    let n = h.order();
    let mut f = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let arrow = m.f2(x, y);
            let top = m.cod.g1().div(arrow, m.cod.e().apply(m.cod.c().apply(arrow)));
            f[x * n + y] = ker.index_of(top).unwrap();
        }
    }
    Ok(FactorSet {
        h,
        g,
        aut: aut.clone(),
        phi: m.f0.clone(),
        f,
    })
}

fn check_bound(h: &FinGroup, g: &FinGroup, bound: usize) -> Result<()> {
    let size = h.order() * g.order();
    if size > bound {
        return Err(Error::BoundExceeded {
            what: format!("|{}|·|{}|", h.name(), g.name()),
            size,
            bound,
        });
    }
    Ok(())
}

/// Every normalized factor set for `(H, G)`, in lexicographic order of
/// `(φ, f)`.
pub fn enumerate_factor_sets(h: &Arc<FinGroup>, g: &Arc<FinGroup>, aut: &Arc<AutGroup>) -> Vec<FactorSet> {
    let n = h.order();
    let na = aut.group.order();
    let ag = &aut.group;
    // φ alone: φ(x)φ(y)φ(xy)⁻¹ must be inner.
    let inner: Vec<bool> = {
        let mut v = vec![false; na];
        for a in g.elements() {
            let map: Vec<Elem> = g.elements().map(|b| g.conj(a, b)).collect();
            v[aut.index_of(&map).unwrap()] = true;
        }
        v
    };
    let phi_var = |x: Elem| x - 1;
    let mut phis = Csp::new(vec![(0..na).collect(); n.saturating_sub(1)]);
    for x in 1..n {
        for y in 1..n {
            let xy = h.mul(x, y);
            let mut vars = vec![phi_var(x), phi_var(y)];
            if xy != 0 {
                vars.push(phi_var(xy));
            }
            let inner = &inner;
            phis.constrain(&vars, move |v| {
                let pxy = if xy == 0 { 0 } else { v[xy - 1] };
                inner[ag.div(ag.mul(v[x - 1], v[y - 1]), pxy)]
            });
        }
    }
    let phi_solutions: Vec<Vec<Elem>> = phis
        .solutions()
        .into_iter()
        .map(|v| std::iter::once(0).chain(v).collect())
        .collect();

    phi_solutions
        .par_iter()
        .flat_map_iter(|phi| {
            let fvar = |x: Elem, y: Elem| (x - 1) * (n - 1) + (y - 1);
            let get = |v: &[Elem], x: Elem, y: Elem| if x == 0 || y == 0 { 0 } else { v[fvar(x, y)] };
            let act = |x: Elem, a: Elem| aut.automorphism(phi[x])[a];
            let domains: Vec<Vec<Elem>> = (1..n)
                .flat_map(|x| (1..n).map(move |y| (x, y)))
                .map(|(x, y)| {
                    let pxy = phi[h.mul(x, y)];
                    g.elements()
                        .filter(|&c| g.elements().all(|a| act(x, act(y, a)) == g.conj(c, aut.automorphism(pxy)[a])))
                        .collect()
                })
                .collect();
            let mut csp = Csp::new(domains);
            for x in 1..n {
                for y in 1..n {
                    for z in 1..n {
                        let (yz, xy) = (h.mul(y, z), h.mul(x, y));
                        let vars: Vec<usize> = [(y, z), (x, yz), (x, y), (xy, z)]
                            .into_iter()
                            .filter(|&(a, b)| a != 0 && b != 0)
                            .map(|(a, b)| fvar(a, b))
                            .collect();
                        csp.constrain(&vars, move |v| {
                            g.mul(act(x, get(v, y, z)), get(v, x, yz)) == g.mul(get(v, x, y), get(v, xy, z))
                        });
                    }
                }
            }
            let mut out = Vec::new();
            csp.for_each_solution(|v| {
                let mut f = vec![0; n * n];
                for x in 1..n {
                    for y in 1..n {
                        f[x * n + y] = v[fvar(x, y)];
                    }
                }
                out.push(FactorSet {
                    h: h.clone(),
                    g: g.clone(),
                    aut: aut.clone(),
                    phi: phi.clone(),
                    f,
                });
                ControlFlow::Continue(())
            });
            out
        })
        .collect()
}

/// An equivalence class of factor sets.
#[derive(Clone, Debug)]
pub struct FactorSetClass {
    /// Least member in `(φ, f)` order.
    pub representative: FactorSet,
    pub size: usize,
    pub split: bool,
}

fn normalized_maps(h: &FinGroup, g: &FinGroup) -> Vec<Vec<Elem>> {
    let n = h.order();
    let mut out = vec![vec![0; n]];
    for x in 1..n {
        out = out
            .into_iter()
            .flat_map(|k| {
                g.elements().map(move |a| {
                    let mut k = k.clone();
                    k[x] = a;
                    k
                })
            })
            .collect();
    }
    out
}

/// Factor sets modulo twisting by normalized maps `H → G`.
pub fn factor_set_oracle(h: &Arc<FinGroup>, g: &Arc<FinGroup>) -> Result<Vec<FactorSetClass>> {
    factor_set_oracle_bounded(h, g, CLASSIFY_BOUND)
}

pub fn factor_set_oracle_bounded(h: &Arc<FinGroup>, g: &Arc<FinGroup>, bound: usize) -> Result<Vec<FactorSetClass>> {
    check_bound(h, g, bound)?;
    let aut = Arc::new(automorphism_group(g)?);
    let all = enumerate_factor_sets(h, g, &aut);
    Ok(orbits(h, g, &all))
}

fn orbits(h: &FinGroup, g: &FinGroup, all: &[FactorSet]) -> Vec<FactorSetClass> {
    let index: HashMap<Vec<Elem>, usize> = all.iter().enumerate().map(|(i, f)| (f.key(), i)).collect();
    let twists = normalized_maps(h, g);
    let mut seen = vec![false; all.len()];
    let mut classes = Vec::new();
    for i in 0..all.len() {
        if seen[i] {
            continue;
        }
        let mut members = Vec::new();
        for k in &twists {
            let j = index[&all[i].twist(k).key()];
            if !std::mem::replace(&mut seen[j], true) {
                members.push(j);
            }
        }
        let rep = *members.iter().min().unwrap();
        classes.push(FactorSetClass {
            representative: all[rep].clone(),
            size: members.len(),
            split: members.iter().any(|&j| all[j].is_trivial_cocycle()),
        });
    }
    classes
}

/// One class of extensions, found on the butterfly side.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub datum: ExtensionDatum,
    pub factor_set: FactorSet,
    pub butterfly: Butterfly,
    /// Number of factor sets whose butterflies fall in this class.
    pub members: usize,
    pub split: bool,
    /// Isomorphism type of the total group.
    pub e_type: String,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub h: Arc<FinGroup>,
    pub g: Arc<FinGroup>,
    pub classes: Vec<ExtensionClass>,
}

impl Classification {
    pub fn split_count(&self) -> usize {
        self.classes.iter().filter(|c| c.split).count()
    }
}

/// Classes of butterflies `D(H) → A(G)` up to butterfly isomorphism. Every
/// extension is equivalent to one whose total group is built from a
/// normalized factor set, so those butterflies exhaust the groupoid.
pub fn classify_extensions(h: &Arc<FinGroup>, g: &Arc<FinGroup>) -> Result<Classification> {
    classify_extensions_bounded(h, g, CLASSIFY_BOUND)
}

pub fn classify_extensions_bounded(h: &Arc<FinGroup>, g: &Arc<FinGroup>, bound: usize) -> Result<Classification> {
    check_bound(h, g, bound)?;
    let aut = Arc::new(automorphism_group(g)?);
    let dh = Arc::new(discrete_xmod(h));
    let ag = Arc::new(aut_xmod(g)?);
    let all = enumerate_factor_sets(h, g, &aut);
    let built = all
        .par_iter()
        .map(|fs| {
            let x = fs.total_group()?;
            let b = butterfly_from_extension_into(&x, &dh, &ag)?;
            Ok((x, b))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut reps: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for (i, (_, b)) in built.iter().enumerate() {
        let mut hit = None;
        for (c, &r) in reps.iter().enumerate() {
            if isomorphic_butterflies(&built[r].1, b)?.is_some() {
                hit = Some(c);
                break;
            }
        }
        match hit {
            Some(c) => counts[c] += 1,
            None => {
                reps.push(i);
                counts.push(1);
            }
        }
    }
    let classes = reps
        .into_par_iter()
        .zip(counts)
        .map(|(r, members)| {
            let (datum, butterfly) = built[r].clone();
            Ok(ExtensionClass {
                split: !homomorphic_sections(&butterfly).is_empty(),
                e_type: identify(&datum.e)?,
                factor_set: all[r].clone(),
                datum,
                butterfly,
                members,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Classification {
        h: h.clone(),
        g: g.clone(),
        classes,
    })
}

/// A name for a small group, found by isomorphism search against the
/// catalog. Groups outside it are described by their order profile.
pub fn identify(e: &Arc<FinGroup>) -> Result<String> {
    let n = e.order();
    let mut candidates: Vec<FinGroup> = vec![catalog::cyclic(n)];
    for name in [
        "V4", "Z2xZ4", "Z2xV4", "Z3xZ3", "Z2xZ6", "S3", "D4", "Q8", "D6", "Dic3", "Z4xZ4", "Z2xZ8", "Z2xZ2xZ4",
        "V4xV4", "D8", "Z2xD4", "Z2xQ8", "Dic4",
    ] {
        candidates.push(catalog::by_name(name)?.with_name(name));
    }
    if n == 1 {
        return Ok("1".into());
    }
    for c in candidates.into_iter().filter(|c| c.order() == n) {
        let c = c.into_arc();
        if isomorphism_search(e, &c)?.is_some() {
            return Ok(c.name().to_string());
        }
    }
    Ok(format!("order {n}, element orders {:?}", e.order_profile()))
}
