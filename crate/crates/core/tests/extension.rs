use std::collections::BTreeSet;
use std::sync::Arc;

use butterfly_core::butterfly::{all_butterfly_morphisms, isomorphic_butterflies};
use butterfly_core::extension::*;
use butterfly_core::fingroup::{all_homomorphisms, catalog, Elem, FinGroup};

fn named(name: &str) -> Arc<FinGroup> {
    catalog::by_name(name).unwrap().with_name(name).into_arc()
}

/// `|Ext|` for cyclic `H = Z_m` and abelian `G`, summed over the actions:
/// each automorphism `t` with `t^m = 1` contributes `|G^t / N G|`, where
/// `N = 1 + t + ... + t^(m-1)`.
fn cyclic_ext_count(m: usize, g: &Arc<FinGroup>) -> usize {
    let auts: Vec<Vec<Elem>> = all_homomorphisms(g, g)
        .into_iter()
        .map(|f| f.map().to_vec())
        .filter(|t| t.iter().collect::<BTreeSet<_>>().len() == g.order())
        .collect();
    let mut total = 0;
    for t in auts {
        let pow = |x: Elem, k: usize| (0..k).fold(x, |y, _| t[y]);
        if g.elements().any(|x| pow(x, m) != x) {
            continue;
        }
        let fixed = g.elements().filter(|&x| t[x] == x).count();
        let norms: BTreeSet<Elem> =
            g.elements().map(|x| (0..m).fold(0, |acc, k| g.mul(acc, pow(x, k)))).collect();
        total += fixed / norms.len();
    }
    total
}

#[test]
fn class_counts_match_cyclic_cohomology() {
    for m in [2, 3, 4] {
        let h = named(&format!("Z{m}"));
        for gname in ["Z2", "Z3", "Z4", "V4"] {
            let g = named(gname);
            if m * g.order() > 16 {
                continue;
            }
            let expected = cyclic_ext_count(m, &g);
            let c = classify_extensions(&h, &g).unwrap();
            assert_eq!(c.classes.len(), expected, "Z{m} by {gname}");
            assert_eq!(factor_set_oracle(&h, &g).unwrap().len(), expected, "Z{m} by {gname}");
        }
    }
}

#[test]
fn z2_by_z4_has_four_classes() {
    let c = classify_extensions(&named("Z2"), &named("Z4")).unwrap();
    assert_eq!(c.classes.len(), 4);
    let types: BTreeSet<String> = c.classes.iter().map(|k| k.e_type.clone()).collect();
    let expected: BTreeSet<String> = ["Z8", "Z2xZ4", "D4", "Q8"].iter().map(|s| s.to_string()).collect();
    assert_eq!(types, expected);
    assert_eq!(c.split_count(), 2);
}

/// For cyclic `H`, an extension splits iff some lift of the generator has
/// the same order as the generator.
#[test]
fn split_flags_match_lifts_of_the_generator() {
    for (hn, gn) in [("Z2", "Z2"), ("Z2", "Z3"), ("Z3", "Z2"), ("Z2", "Z4"), ("Z4", "Z2"), ("Z2", "V4"), ("Z3", "Z3")] {
        let (h, g) = (named(hn), named(gn));
        let gen = h.generators()[0];
        let m = h.element_order(gen);
        for class in classify_extensions(&h, &g).unwrap().classes {
            let x = &class.datum;
            let brute = x.e.elements().any(|e| x.sigma.apply(e) == gen && x.e.element_order(e) == m);
            assert_eq!(class.split, brute, "{hn} by {gn}: {}", class.e_type);
            assert_eq!(x.is_split(), brute);
        }
    }
}

/// Maps `E → E'` that are homomorphisms and commute with `ι` and `σ`, found
/// by trying every fiber-preserving function.
fn extension_morphisms(x: &ExtensionDatum, y: &ExtensionDatum) -> usize {
    let fibers: Vec<Vec<Elem>> = x
        .e
        .elements()
        .map(|e| y.e.elements().filter(|&f| y.sigma.apply(f) == x.sigma.apply(e)).collect())
        .collect();
    let mut idx = vec![0usize; fibers.len()];
    let mut count = 0;
    loop {
        let map: Vec<Elem> = idx.iter().zip(&fibers).map(|(&i, f)| f[i]).collect();
        let ok = x.g.elements().all(|a| map[x.iota.apply(a)] == y.iota.apply(a))
            && x.e.elements().all(|a| x.e.elements().all(|b| map[x.e.mul(a, b)] == y.e.mul(map[a], map[b])));
        count += ok as usize;
        let mut k = 0;
        loop {
            if k == idx.len() {
                return count;
            }
            idx[k] += 1;
            if idx[k] < fibers[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn extension_morphisms_are_butterfly_morphisms() {
    for (hn, gn) in [("Z2", "Z2"), ("Z2", "Z3"), ("Z3", "Z2"), ("Z2", "Z4"), ("Z4", "Z2")] {
        let (h, g) = (named(hn), named(gn));
        let aut = Arc::new(butterfly_core::fingroup::automorphism_group(&g).unwrap());
        let all = enumerate_factor_sets(&h, &g, &aut);
        let data: Vec<ExtensionDatum> = all.iter().take(6).map(|f| f.total_group().unwrap()).collect();
        for x in &data {
            for y in &data {
                let bx = butterfly_from_extension(x).unwrap();
                let by = butterfly_from_extension(y).unwrap();
                if bx.cod() != by.cod() {
                    continue;
                }
                let n = all_butterfly_morphisms(&bx, &by).unwrap().len();
                assert_eq!(n, extension_morphisms(x, y), "{hn} by {gn}");
            }
        }
    }
}

#[test]
fn butterflies_give_back_their_extensions() {
    for (hn, gn) in [("Z2", "Z2"), ("Z3", "Z3"), ("Z2", "S3"), ("V4", "Z2")] {
        let (h, g) = (named(hn), named(gn));
        for class in classify_extensions(&h, &g).unwrap().classes {
            let back = extension_from_butterfly(&class.butterfly).unwrap();
            assert_eq!(back, class.datum);
            let again = butterfly_from_extension(&back).unwrap();
            assert!(isomorphic_butterflies(&again, &class.butterfly).unwrap().is_some());
        }
    }
}

#[test]
fn factor_sets_satisfy_the_cocycle_identity() {
    let (h, g) = (named("Z2"), named("S3"));
    let aut = Arc::new(butterfly_core::fingroup::automorphism_group(&g).unwrap());
    for fs in enumerate_factor_sets(&h, &g, &aut) {
        for x in h.elements() {
            for y in h.elements() {
                for z in h.elements() {
                    // φ(x)(f(y,z)) · f(x,yz) = f(x,y) · f(xy,z)
                    let l = g.mul(fs.act(x, fs.f(y, z)), fs.f(x, h.mul(y, z)));
                    let r = g.mul(fs.f(x, y), fs.f(h.mul(x, y), z));
                    assert_eq!(l, r);
                }
            }
        }
        let x = fs.total_group().unwrap();
        assert_eq!(x.e.order(), 12);
    }
}

#[test]
fn classes_partition_the_factor_sets() {
    for (hn, gn) in [("Z2", "Z2"), ("Z2", "Z4"), ("Z3", "Z3"), ("Z2", "V4")] {
        let (h, g) = (named(hn), named(gn));
        let aut = Arc::new(butterfly_core::fingroup::automorphism_group(&g).unwrap());
        let total = enumerate_factor_sets(&h, &g, &aut).len();
        let c = classify_extensions(&h, &g).unwrap();
        assert_eq!(c.classes.iter().map(|k| k.members).sum::<usize>(), total);
        let oracle = factor_set_oracle(&h, &g).unwrap();
        assert_eq!(oracle.iter().map(|k| k.size).sum::<usize>(), total);
        assert_eq!(oracle.iter().filter(|k| k.split).count(), c.split_count());
    }
}

#[test]
fn oversized_pairs_are_refused() {
    let (h, g) = (named("Z4"), named("Z2xZ4"));
    assert!(matches!(classify_extensions(&h, &g), Err(butterfly_core::Error::BoundExceeded { .. })));
}
