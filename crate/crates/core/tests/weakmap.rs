use std::sync::Arc;

use butterfly_core::butterfly::{isomorphic_butterflies, Butterfly};
use butterfly_core::extension::{classify_extensions, factor_set_from_monoidal};
use butterfly_core::fingroup::{automorphism_group, catalog, Elem};
use butterfly_core::laws::generate_fixtures;
use butterfly_core::weakmap::*;
use proptest::prelude::*;

/// The functor and monoidal laws, checked arrow by arrow without the
/// library's own checker.
fn brute_laws(m: &MonoidalFunctor) -> Result<(), String> {
    let (h, g) = (&*m.dom, &*m.cod);
    let (h0, g1) = (h.g0(), g.g1());
    let id = |y: Elem| g.e().apply(y);
    for f in h.g1().elements() {
        if g.d().apply(m.f1[f]) != m.f0[h.d().apply(f)] || g.c().apply(m.f1[f]) != m.f0[h.c().apply(f)] {
            return Err(format!("end points of F1({f})"));
        }
        for k in h.g1().elements() {
            if let Some(fk) = h.compose(f, k) {
                if g.compose(m.f1[f], m.f1[k]) != Some(m.f1[fk]) {
                    return Err(format!("F1 does not preserve {f};{k}"));
                }
            }
        }
    }
    for x in h0.elements() {
        if m.f1[h.e().apply(x)] != id(m.f0[x]) {
            return Err(format!("F1 of the identity at {x}"));
        }
    }
    for f in h.g1().elements() {
        for k in h.g1().elements() {
            let (x, y) = (h.d().apply(f), h.d().apply(k));
            let (x2, y2) = (h.c().apply(f), h.c().apply(k));
            let l = g.compose(g1.mul(m.f1[f], m.f1[k]), m.f2(x2, y2));
            let r = g.compose(m.f2(x, y), m.f1[h.g1().mul(f, k)]);
            if l.is_none() || l != r {
                return Err(format!("F2 not natural at ({f}, {k})"));
            }
        }
    }
    for x in h0.elements() {
        for y in h0.elements() {
            for z in h0.elements() {
                let (xy, yz) = (h0.mul(x, y), h0.mul(y, z));
                let l = g.compose(g1.mul(m.f2(x, y), id(m.f0[z])), m.f2(xy, z));
                let r = g.compose(g1.mul(id(m.f0[x]), m.f2(y, z)), m.f2(x, yz));
                if l.is_none() || l != r {
                    return Err(format!("associativity at ({x}, {y}, {z})"));
                }
            }
        }
    }
    Ok(())
}

#[test]
fn section_counts_are_fiber_products() {
    let fx = generate_fixtures(0, 8);
    for b in &fx.butterflies {
        let n = section_count(b);
        if n <= 1024 {
            let brute = b.dom().g0().elements().skip(1).fold(1, |acc, x| {
                acc * b.e().elements().filter(|&u| b.sigma().apply(u) == x).count()
            });
            assert_eq!(n, brute);
            assert_eq!(all_sections(b).len(), n);
        }
    }
}

#[test]
fn extracted_functors_obey_the_laws() {
    let fx = generate_fixtures(0, 8);
    let mut checked = 0;
    for b in fx.butterflies.iter().filter(|b| section_count(b) <= 64) {
        for_each_extraction(b, |_, m| {
            assert!(check_monoidal(m).is_ok());
            brute_laws(m).unwrap();
            checked += 1;
            std::ops::ControlFlow::Continue(())
        })
        .unwrap();
    }
    assert!(checked > 100, "only {checked}");
}

#[test]
fn monoidal_checker_rejects_what_the_laws_reject() {
    let fx = generate_fixtures(2, 8);
    let mut rejected = 0;
    for b in fx.butterflies.iter().filter(|b| b.dom().g0().order() > 1) {
        let m = extract_monoidal(b, &SetSection::canonical(b)).unwrap();
        let h0 = m.dom.g0().order();
        for slot in 0..m.f2.len() {
            for v in m.cod.g1().elements() {
                let mut bad = m.clone();
                bad.f2[slot] = v;
                let id = |x: Elem| bad.cod.e().apply(bad.f0[x]);
                let normalized = (0..h0).all(|x| bad.f2(0, x) == id(x) && bad.f2(x, 0) == id(x));
                let lawful = normalized && brute_laws(&bad).is_ok();
                assert_eq!(check_monoidal(&bad).is_ok(), lawful);
                rejected += (!lawful) as usize;
            }
        }
    }
    assert!(rejected > 0);
}

#[test]
fn extension_functors_give_factor_sets() {
    let z2 = catalog::cyclic(2).into_arc();
    let s3 = catalog::symmetric(3).into_arc();
    let aut = Arc::new(automorphism_group(&s3).unwrap());
    for class in classify_extensions(&z2, &s3).unwrap().classes {
        for s in all_sections(&class.butterfly) {
            let m = extract_monoidal(&class.butterfly, &s).unwrap();
            let fs = factor_set_from_monoidal(&m, &aut).unwrap();
            assert!(fs.validate().is_ok());
        }
    }
}

fn pick_section(b: &Butterfly, k: usize) -> SetSection {
    let all = all_sections(b);
    all[k % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn butterfly_and_functor_round_trip(seed in 0u64..300, pick in any::<prop::sample::Index>(), k in any::<usize>()) {
        let fx = generate_fixtures(seed, 8);
        let small: Vec<&Butterfly> = fx.butterflies.iter().filter(|b| section_count(b) <= 256).collect();
        let b = *pick.get(&small);
        let m = extract_monoidal(b, &pick_section(b, k)).unwrap();
        prop_assert!(brute_laws(&m).is_ok());
        let b2 = butterfly_from_monoidal(&m).unwrap();
        prop_assert!(isomorphic_butterflies(b, &b2).unwrap().is_some());
        let m2 = extract_monoidal(&b2, &canonical_monoidal_section(&m, &b2)).unwrap();
        prop_assert_eq!(&m2, &m);
    }

    #[test]
    fn any_two_sections_give_isomorphic_functors(seed in 0u64..300, pick in any::<prop::sample::Index>(), k in any::<usize>(), l in any::<usize>()) {
        let fx = generate_fixtures(seed, 8);
        let small: Vec<&Butterfly> = fx.butterflies.iter().filter(|b| section_count(b) <= 256).collect();
        let b = *pick.get(&small);
        let m = extract_monoidal(b, &pick_section(b, k)).unwrap();
        let m2 = extract_monoidal(b, &pick_section(b, l)).unwrap();
        let theta = monoidal_isomorphism(&m, &m2).unwrap();
        prop_assert!(theta.is_some());
        let strict = pick_section(b, k).is_homomorphism(b);
        prop_assert!(!strict || m.is_strict());
    }
}
