use std::sync::Arc;

use butterfly_core::fingroup::{catalog, Elem};
use butterfly_core::laws::generate_fixtures;
use butterfly_core::xmod::*;
use proptest::prelude::*;

/// Every function `α: H₀ → G ⋊ G₀` natural from `P` to `Q`, found by listing
/// raw functions and checking the laws on crossed-module data directly.
/// Arrow `(a, x)` runs from `∂a·x` to `x`, and `(a, x)` then `(b, y)` is
/// `(ab, y)`.
fn raw_natural(p: &XModMorphism, q: &XModMorphism, homomorphic: bool) -> Vec<Vec<Elem>> {
    let (h, g) = (p.dom(), p.cod());
    let sd = g.semidirect();
    let src = |f: Elem| {
        let (a, x) = sd.unpair(f);
        g.g0().mul(g.d(a), x)
    };
    let then = |f: Elem, k: Elem| -> Option<Elem> {
        let (a, x) = sd.unpair(f);
        let (b, y) = sd.unpair(k);
        (x == g.g0().mul(g.d(b), y)).then(|| sd.pair(g.g().mul(a, b), y))
    };
    let hs = h.semidirect();
    let per: Vec<Vec<Elem>> = h
        .g0()
        .elements()
        .map(|x| {
            let y = q.p0().apply(x);
            g.g()
                .elements()
                .map(|a| sd.pair(a, y))
                .filter(|&f| src(f) == p.p0().apply(x))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per.len()];
    if per.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let alpha: Vec<Elem> = idx.iter().zip(&per).map(|(&i, c)| c[i]).collect();
        let natural = hs.group.elements().all(|f| {
            let (a, x) = hs.unpair(f);
            let df = h.g0().mul(h.d(a), x);
            let pf = sd.pair(p.p().apply(a), p.p0().apply(x));
            let qf = sd.pair(q.p().apply(a), q.p0().apply(x));
            let l = then(pf, alpha[x]);
            l.is_some() && l == then(alpha[df], qf)
        });
        let hom = !homomorphic
            || h.g0().elements().all(|x| {
                h.g0().elements().all(|y| alpha[h.g0().mul(x, y)] == sd.group.mul(alpha[x], alpha[y]))
            });
        if natural && hom {
            out.push(alpha);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn two_cells_match_raw_enumeration() {
    let fx = generate_fixtures(0, 8);
    let mut checked = 0;
    for (p, q) in fx.parallel_pairs() {
        if p.dom().g0().order() > 6 || p.cod().size() > 8 {
            continue;
        }
        let cells: Vec<Vec<Elem>> = enumerate_two_cells(&p, &q).unwrap().iter().map(|c| c.alpha().to_vec()).collect();
        let mut oracle = raw_natural(&p, &q, true);
        oracle.sort();
        assert_eq!(cells, oracle, "{} -> {}", p.dom().name(), p.cod().name());
        assert_eq!(enumerate_natural_transformations(&p, &q).unwrap(), oracle);
        checked += 1;
    }
    assert!(checked > 20, "only {checked} pairs");
}

#[test]
fn raw_natural_functions_need_not_be_homomorphisms() {
    let z2 = catalog::cyclic(2).into_arc();
    let d = CrossedModule::discrete(&z2).into_arc();
    let ab = CrossedModule::abelian(&z2).unwrap().into_arc();
    let zero = |x: &Arc<CrossedModule>, y: &Arc<CrossedModule>| {
        use butterfly_core::fingroup::GroupHom;
        XModMorphism::new(
            x.clone(),
            y.clone(),
            GroupHom::zero(x.g(), y.g()),
            GroupHom::zero(x.g0(), y.g0()),
        )
        .unwrap()
    };
    let p = zero(&d, &ab);
    let raw = raw_natural(&p, &p, false).len();
    let cells = enumerate_two_cells(&p, &p).unwrap().len();
    assert!(raw > cells, "raw {raw}, cells {cells}");
}

#[test]
fn two_cells_compose_vertically() {
    let fx = generate_fixtures(1, 8);
    for c in &fx.two_cells {
        let id = XModTwoCell::identity(c.q());
        let c2 = c.then(&id).unwrap();
        assert_eq!(c2.alpha(), c.alpha());
        let id = XModTwoCell::identity(c.p());
        assert_eq!(id.then(c).unwrap().alpha(), c.alpha());
    }
}

#[test]
fn weak_equivalences() {
    let s3 = catalog::symmetric(3).into_arc();
    let one = CrossedModule::discrete(&catalog::trivial().into_arc()).into_arc();
    let conj = CrossedModule::conjugation(&s3).into_arc();
    let to_one = |x: &Arc<CrossedModule>| {
        use butterfly_core::fingroup::GroupHom;
        XModMorphism::new(x.clone(), one.clone(), GroupHom::zero(x.g(), one.g()), GroupHom::zero(x.g0(), one.g0()))
            .unwrap()
    };
    assert!(to_one(&conj).is_weak_equivalence());
    let z2 = catalog::cyclic(2).into_arc();
    assert!(!to_one(&CrossedModule::discrete(&z2).into_arc()).is_weak_equivalence());
    assert!(!to_one(&CrossedModule::abelian(&z2).unwrap().into_arc()).is_weak_equivalence());
}

#[test]
fn kernel_and_cokernel_orders() {
    let fx = generate_fixtures(0, 16);
    for x in &fx.crossed_modules {
        let brute_ker = x.g().elements().filter(|&a| x.d(a) == 0).count();
        assert_eq!(x.kernel().len(), brute_ker);
        let image = x.g().elements().map(|a| x.d(a)).collect::<std::collections::BTreeSet<_>>().len();
        assert_eq!(x.cokernel().group.order() * image, x.g0().order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalize_inverts_denormalize(seed in 0u64..1000, pick in any::<prop::sample::Index>()) {
        let fx = generate_fixtures(seed, 8);
        let x = pick.get(&fx.crossed_modules);
        let t = x.denormalize();
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(&t.normalize(), &**x);
    }

    #[test]
    fn strict_2groups_renormalize(seed in 0u64..1000, pick in any::<prop::sample::Index>()) {
        let fx = generate_fixtures(seed, 8);
        let t = pick.get(&fx.strict_2groups);
        let back = t.normalize().denormalize();
        let f1 = t.comparison_from_normalized(&back);
        prop_assert!(f1.is_isomorphism());
        let id0 = butterfly_core::fingroup::GroupHom::identity(t.g0());
        prop_assert!(back.check_morphism(t, &f1, &id0).is_ok());
    }

    #[test]
    fn morphism_composition_is_associative(seed in 0u64..200) {
        let fx = generate_fixtures(seed, 8);
        for a in &fx.morphisms {
            for b in fx.morphisms.iter().filter(|b| b.dom() == a.cod()) {
                let ab = a.then(b).unwrap();
                for c in fx.morphisms.iter().filter(|c| c.dom() == b.cod()) {
                    prop_assert_eq!(ab.then(c).unwrap(), a.then(&b.then(c).unwrap()).unwrap());
                }
            }
        }
    }
}
