use std::sync::Arc;

use butterfly_core::fingroup::*;
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

/// Every map `dom -> cod` that respects products, by exhaustion.
fn brute_force_homs(dom: &FinGroup, cod: &FinGroup) -> Vec<Vec<Elem>> {
    let n = dom.order();
    let mut out = Vec::new();
    let total = cod.order().pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let map: Vec<Elem> = (0..n)
            .map(|_| {
                let v = c % cod.order();
                c /= cod.order();
                v
            })
            .collect();
        let ok = dom
            .elements()
            .all(|a| dom.elements().all(|b| map[dom.mul(a, b)] == cod.mul(map[a], map[b])));
        if ok {
            out.push(map);
        }
    }
    out.sort();
    out
}

fn small() -> Vec<Arc<FinGroup>> {
    vec![
        catalog::trivial().into_arc(),
        catalog::cyclic(2).into_arc(),
        catalog::cyclic(3).into_arc(),
        catalog::cyclic(4).into_arc(),
        catalog::klein4().into_arc(),
    ]
}

#[test]
fn homomorphisms_match_exhaustion() {
    for a in small() {
        for b in small() {
            let fast: Vec<Vec<Elem>> = all_homomorphisms(&a, &b).iter().map(|h| h.map().to_vec()).collect();
            assert_eq!(fast, brute_force_homs(&a, &b), "{} -> {}", a.name(), b.name());
        }
    }
    let s3 = catalog::symmetric(3).into_arc();
    let z2 = catalog::cyclic(2).into_arc();
    assert_eq!(all_homomorphisms(&s3, &z2).len(), brute_force_homs(&s3, &z2).len());
    assert_eq!(all_homomorphisms(&z2, &s3).len(), 4);
}

#[test]
fn automorphism_group_orders() {
    for n in 1..=12 {
        let g = catalog::cyclic(n).into_arc();
        assert_eq!(automorphism_group(&g).unwrap().group.order(), totient(n), "Aut(Z{n})");
    }
    for (g, k) in [
        (catalog::klein4(), 6),
        (catalog::symmetric(3), 6),
        (catalog::dihedral(4), 8),
        (catalog::quaternion(), 24),
    ] {
        assert_eq!(automorphism_group(&g.into_arc()).unwrap().group.order(), k);
    }
}

#[test]
fn isomorphism_search_separates_small_groups() {
    let q8 = catalog::quaternion().into_arc();
    let dic2 = catalog::dicyclic(2).into_arc();
    let d4 = catalog::dihedral(4).into_arc();
    assert!(isomorphism_search(&q8, &dic2).unwrap().unwrap().is_isomorphism());
    assert!(isomorphism_search(&q8, &d4).unwrap().is_none());
    let z6 = catalog::cyclic(6).into_arc();
    let z2z3 = catalog::by_name("Z2xZ3").unwrap().into_arc();
    assert!(isomorphism_search(&z6, &z2z3).unwrap().is_some());
    let s3 = catalog::symmetric(3).into_arc();
    let d3 = catalog::dihedral(3).into_arc();
    assert!(isomorphism_search(&s3, &d3).unwrap().is_some());
    let big = catalog::symmetric(5).into_arc();
    assert!(matches!(
        isomorphism_search(&big, &big),
        Err(butterfly_core::Error::BoundExceeded { .. })
    ));
}

#[test]
fn dicyclic_three_is_not_dihedral() {
    let dic3 = catalog::dicyclic(3).into_arc();
    let d6 = catalog::dihedral(6).into_arc();
    assert_eq!(dic3.order(), 12);
    assert!(isomorphism_search(&dic3, &d6).unwrap().is_none());
    // exactly one involution
    assert_eq!(dic3.elements().filter(|&a| dic3.element_order(a) == 2).count(), 1);
}

proptest! {
    #[test]
    fn products_of_cyclic_groups(n in 1usize..7, m in 1usize..7) {
        let g = catalog::product(&catalog::cyclic(n), &catalog::cyclic(m));
        prop_assert!(g.check().is_ok());
        prop_assert_eq!(g.order(), n * m);
        let cyclic = g.elements().any(|a| g.element_order(a) == n * m);
        prop_assert_eq!(cyclic, gcd(n, m) == 1);
        prop_assert_eq!(all_homomorphisms(&catalog::cyclic(n).into_arc(), &catalog::cyclic(m).into_arc()).len(), gcd(n, m));
    }

    #[test]
    fn pullback_counts_pairs(i in 0usize..5, j in 0usize..5, k in 0usize..5, pick in any::<u64>()) {
        let gs = small();
        let (a, b, c) = (&gs[i], &gs[j], &gs[k]);
        let fs = all_homomorphisms(a, c);
        let hs = all_homomorphisms(b, c);
        let f = &fs[pick as usize % fs.len()];
        let h = &hs[(pick / 7) as usize % hs.len()];
        let pb = pullback(f, h).unwrap();
        let brute = a.elements().flat_map(|x| b.elements().map(move |y| (x, y))).filter(|&(x, y)| f.apply(x) == h.apply(y)).count();
        prop_assert_eq!(pb.group.order(), brute);
        prop_assert!(pb.group.check().is_ok());
        prop_assert_eq!(pb.left.then(f).unwrap(), pb.right.then(h).unwrap());
    }

    #[test]
    fn quotients_by_normal_closures(g in 0usize..4, seed in proptest::collection::vec(0usize..24, 1..3)) {
        let gs = [catalog::symmetric(3), catalog::dihedral(4), catalog::quaternion(), catalog::symmetric(4)];
        let g = gs[g].clone().into_arc();
        let gens: Vec<Elem> = seed.iter().map(|&s| s % g.order()).collect();
        let n = Subgroup::generated_by(&g, &gens).normal_closure();
        prop_assert!(n.is_normal());
        let q = quotient(&g, &n).unwrap();
        prop_assert_eq!(q.group.order() * n.len(), g.order());
        prop_assert!(q.projection.check().is_ok());
        let ker = q.projection.kernel();
        prop_assert_eq!(ker.elements(), n.elements());
    }

    #[test]
    fn semidirect_products_by_automorphisms(n in 2usize..8, pick in any::<u64>()) {
        let g = catalog::cyclic(n).into_arc();
        let aut = automorphism_group(&g).unwrap();
        let k = aut.group.order();
        let gens = [(pick as usize) % k];
        let sub = Subgroup::generated_by(&aut.group, &gens);
        let (h, incl) = sub.to_group("H");
        let act = aut.ev.along(&incl).unwrap();
        let sd = semidirect_product(&act);
        prop_assert!(sd.group.check().is_ok());
        prop_assert_eq!(sd.group.order(), n * h.order());
        prop_assert!(sd.projection.check().is_ok());
        prop_assert!(sd.section.then(&sd.projection).unwrap() == GroupHom::identity(&h));
    }
}
