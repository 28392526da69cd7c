use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::butterfly::{compose, split_from_morphism, Butterfly};
use crate::extension::{butterfly_from_extension_into, enumerate_factor_sets};
use crate::fingroup::{all_homomorphisms, automorphism_group, catalog, Elem, FinGroup, GroupHom, Subgroup};
use crate::xmod::{enumerate_two_cells, CrossedModule, Strict2Group, XModMorphism, XModTwoCell};

/// Largest accepted size bound.
pub const MAX_FIXTURE_BOUND: usize = 16;

/// Validated test objects, generated deterministically from a seed.
///
/// With bound `b`: crossed modules have `|G|·|G0| ≤ 2b`, butterflies have
/// `|E| ≤ 2b`, and the independent strict 2-groups have `|G1| ≤ b`.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub seed: u64,
    pub size_bound: usize,
    pub crossed_modules: Vec<Arc<CrossedModule>>,
    pub strict_2groups: Vec<Arc<Strict2Group>>,
    pub morphisms: Vec<XModMorphism>,
    pub butterflies: Vec<Butterfly>,
    pub two_cells: Vec<XModTwoCell>,
}

impl FixtureSet {
    pub fn empty(seed: u64, size_bound: usize) -> Self {
        Self {
            seed,
            size_bound,
            crossed_modules: Vec::new(),
            strict_2groups: Vec::new(),
            morphisms: Vec::new(),
            butterflies: Vec::new(),
            two_cells: Vec::new(),
        }
    }

    /// Pairs of distinct-or-equal parallel morphisms, each unordered pair once
    /// in both orders.
    pub fn parallel_pairs(&self) -> Vec<(XModMorphism, XModMorphism)> {
        let mut out = Vec::new();
        for p in &self.morphisms {
            for q in &self.morphisms {
                if p.dom() == q.dom() && p.cod() == q.cod() {
                    out.push((p.clone(), q.clone()));
                }
            }
        }
        out
    }
}

pub fn base_groups(bound: usize) -> Vec<Arc<FinGroup>> {
    [
        catalog::cyclic(2),
        catalog::cyclic(3),
        catalog::cyclic(4),
        catalog::klein4(),
        catalog::symmetric(3),
        catalog::dihedral(4),
        catalog::quaternion(),
    ]
    .into_iter()
    .filter(|g| g.order() <= bound)
    .map(FinGroup::into_arc)
    .collect()
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

fn normal_inclusions(bound: usize) -> Vec<CrossedModule> {
    let mut out = Vec::new();
    let specs: [(FinGroup, &[Elem]); 4] = [
        (catalog::klein4(), &[0, 1]),
        (catalog::symmetric(3), &[0, 3, 4]),
        (catalog::dihedral(4), &[0, 1, 2, 3]),
        (catalog::quaternion(), &[0, 2]),
    ];
    for (g, elems) in specs {
        if g.order() > bound {
            continue;
        }
        let g = g.into_arc();
        let sub = Subgroup::new(g.clone(), elems.to_vec()).expect("listed subgroup");
        if let Ok(x) = CrossedModule::normal_inclusion(&sub) {
            out.push(x.with_name(format!("N{}<{}", elems.len(), g.name())));
        }
    }
    out
}

fn crossed_modules(bound: usize) -> Vec<Arc<CrossedModule>> {
    let mut out: Vec<CrossedModule> = vec![CrossedModule::discrete(&catalog::trivial().into_arc())];
    for g in base_groups(bound) {
        push_unique(&mut out, CrossedModule::discrete(&g));
        push_unique(&mut out, CrossedModule::conjugation(&g));
        if g.is_abelian() {
            push_unique(&mut out, CrossedModule::abelian(&g).unwrap());
        }
        if let Ok(a) = CrossedModule::aut(&g) {
            push_unique(&mut out, a);
        }
    }
    for x in normal_inclusions(bound) {
        push_unique(&mut out, x);
    }
    out.into_iter()
        .filter(|x| x.g().order() * x.g0().order() <= 2 * bound)
        .map(Arc::new)
        .collect()
}

/// Strict 2-groups on `K` from pairs of idempotent endomorphisms `s, t` with
/// `s t = t` and `t s = s` (maps composed as functions), kept when the
/// reflexive graph is an internal groupoid.
pub fn idempotent_pair_2groups(k: &Arc<FinGroup>, limit: usize, rng: &mut ChaCha8Rng) -> Vec<Arc<Strict2Group>> {
    let idem: Vec<GroupHom> = all_homomorphisms(k, k)
        .into_iter()
        .filter(|s| k.elements().all(|x| s.apply(s.apply(x)) == s.apply(x)))
        .collect();
    let mut found = Vec::new();
    for s in &idem {
        for t in &idem {
            let st = k.elements().all(|x| s.apply(t.apply(x)) == t.apply(x));
            let ts = k.elements().all(|x| t.apply(s.apply(x)) == s.apply(x));
            if !(st && ts) {
                continue;
            }
            let image = s.image();
            let (g0, incl) = image.to_group(format!("im({})", k.name()));
            let corestrict = |f: &GroupHom| {
                GroupHom::new_unchecked(
                    k.clone(),
                    g0.clone(),
                    k.elements().map(|x| image.index_of(f.apply(x)).unwrap()).collect(),
                )
                .unwrap()
            };
            if let Ok(t2) = Strict2Group::from_reflexive_graph(corestrict(s), corestrict(t), incl) {
                found.push(Arc::new(t2));
            }
        }
    }
    found.shuffle(rng);
    found.truncate(limit);
    found
}

fn strict_2groups(bound: usize, rng: &mut ChaCha8Rng) -> Vec<Arc<Strict2Group>> {
    let names = [
        "Z2", "Z3", "Z4", "V4", "Z6", "S3", "D4", "Q8", "Z2xZ4", "Z2xV4", "Z3xZ3", "D6", "Dic3", "Z2xZ6", "Z4xZ4",
        "Z2xD4", "Z2xQ8",
    ];
    let mut out = Vec::new();
    for name in names {
        let k = catalog::by_name(name).unwrap().with_name(name);
        if k.order() > bound {
            continue;
        }
        out.extend(idempotent_pair_2groups(&k.into_arc(), 6, rng));
    }
    out
}

fn all_morphisms(x: &Arc<CrossedModule>, y: &Arc<CrossedModule>) -> Vec<XModMorphism> {
    let mut out = Vec::new();
    for p0 in all_homomorphisms(x.g0(), y.g0()) {
        for p in all_homomorphisms(x.g(), y.g()) {
            if let Ok(m) = XModMorphism::new(x.clone(), y.clone(), p, p0.clone()) {
                out.push(m);
            }
        }
    }
    out
}

fn morphisms(xs: &[Arc<CrossedModule>], rng: &mut ChaCha8Rng) -> Vec<XModMorphism> {
    let mut out: Vec<XModMorphism> = xs.iter().map(XModMorphism::identity).collect();
    for x in xs {
        let mut targets: Vec<&Arc<CrossedModule>> = xs.iter().filter(|y| y.size() <= 16 && x.size() <= 16).collect();
        targets.shuffle(rng);
        for y in targets.into_iter().take(2) {
            let mut ms = all_morphisms(x, y);
            ms.shuffle(rng);
            for m in ms.into_iter().take(3) {
                push_unique(&mut out, m);
            }
        }
    }
    out
}

fn extension_butterflies(bound: usize) -> Vec<Butterfly> {
    let small: Vec<Arc<FinGroup>> = base_groups(4);
    let mut out = Vec::new();
    for h in &small {
        for g in &small {
            if h.order() * g.order() > bound {
                continue;
            }
            let aut = Arc::new(automorphism_group(g).unwrap());
            let dh = Arc::new(CrossedModule::discrete(h));
            let ag = Arc::new(CrossedModule::aut(g).unwrap());
            let all = enumerate_factor_sets(h, g, &aut);
            let picks = [all.first(), all.last()];
            for fs in picks.into_iter().flatten() {
                let x = fs.total_group().unwrap();
                push_unique(&mut out, butterfly_from_extension_into(&x, &dh, &ag).unwrap());
            }
        }
    }
    out
}

/// Deterministic fixtures for the law suites. `size_bound` is clamped to
/// [`MAX_FIXTURE_BOUND`].
pub fn generate_fixtures(seed: u64, size_bound: usize) -> FixtureSet {
    let bound = size_bound.min(MAX_FIXTURE_BOUND);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = crossed_modules(bound);
    let strict = strict_2groups(bound, &mut rng);
    let ms = morphisms(&xs, &mut rng);

    let e_bound = 2 * bound;
    let mut bs: Vec<Butterfly> = xs.iter().map(Butterfly::identity).collect();
    for m in &ms {
        push_unique(&mut bs, split_from_morphism(m).butterfly);
    }
    for b in extension_butterflies(bound) {
        push_unique(&mut bs, b);
    }
    bs.retain(|b| b.e().order() <= e_bound);

    let mut composites = Vec::new();
    let mut pairs: Vec<(usize, usize)> = (0..bs.len())
        .flat_map(|i| (0..bs.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| bs[i].cod() == bs[j].dom())
        .collect();
    pairs.shuffle(&mut rng);
    for (i, j) in pairs {
        if composites.len() >= 12 {
            break;
        }
        if bs[i].e().order() * bs[j].e().order() > e_bound * 8 {
            continue;
        }
        if let Ok(c) = compose(&bs[i], &bs[j]) {
            if c.e().order() <= e_bound && !bs.contains(&c) && !composites.contains(&c) {
                composites.push(c);
            }
        }
    }
    bs.extend(composites);
    let flips: Vec<Butterfly> = bs.iter().filter(|b| b.is_flippable()).filter_map(|b| b.flip().ok()).collect();
    for f in flips {
        push_unique(&mut bs, f);
    }

    let mut cells = Vec::new();
    let fx = FixtureSet {
        seed,
        size_bound: bound,
        crossed_modules: xs,
        strict_2groups: strict,
        morphisms: ms,
        butterflies: bs,
        two_cells: Vec::new(),
    };
    for (p, q) in fx.parallel_pairs() {
        if p.dom().g0().order() <= 8 && p.cod().size() <= 8 {
            if let Ok(cs) = enumerate_two_cells(&p, &q) {
                cells.extend(cs.into_iter().take(4));
            }
        }
    }
    FixtureSet { two_cells: cells, ..fx }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_pairs_on_z2() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let z2 = catalog::cyclic(2).into_arc();
        // (id, id) gives the discrete 2-group; (0, 0) the one on Z2 ⇉ 1
        let ts = idempotent_pair_2groups(&z2, 10, &mut rng);
        assert_eq!(ts.len(), 2);
    }
}
