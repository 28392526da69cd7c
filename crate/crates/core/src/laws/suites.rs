use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::FixtureSet;
use crate::butterfly::{
    all_butterfly_morphisms, compose, ef3_check, isomorphic_butterflies, morphism_from_split, reduced_compose,
    span_of_butterfly, split_from_morphism, two_cell_image, Butterfly,
};
use crate::error::{Error, Result};
use crate::extension::{classify_extensions, enumerate_factor_sets, factor_set_oracle};
use crate::fingroup::{automorphism_group, catalog, GroupAction, GroupHom};
use crate::serial::{butterfly_to_json, morphism_to_json, strict_to_json, xmod_to_json};
use crate::weakmap::{
    all_sections, butterfly_from_monoidal, canonical_monoidal_section, check_monoidal, extract_monoidal,
    monoidal_isomorphism, section_count,
};
use crate::xmod::{
    candidate_components, enumerate_natural_transformations, enumerate_two_cells, CrossedModule, XModMorphism,
};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 8] = [
    "janelidze",
    "two-cells",
    "bicategory",
    "flip",
    "actions",
    "fractions",
    "weakmap",
    "classification",
];

/// Most sections enumerated per butterfly in the weak-morphism suite.
pub const SECTION_CAP: usize = 1024;

/// A deliberate defect, one per suite, used to show the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Fault {
    /// Normalization forgets the action.
    Janelidze,
    /// Natural transformations are not checked for naturality.
    TwoCells,
    /// Composites lose their right wing.
    Bicategory,
    /// `B · B*` loses its right wing.
    Flip,
    /// Reduced composites lose their right wing.
    Actions,
    /// Split butterflies lose their right wing.
    Fractions,
    /// One comparison arrow `F2(x, y)` is moved.
    WeakMap,
    /// Factor sets are counted without passing to classes.
    Classification,
}

impl Fault {
    pub fn for_suite(name: &str) -> Option<Fault> {
        Some(match name {
            "janelidze" => Fault::Janelidze,
            "two-cells" => Fault::TwoCells,
            "bicategory" => Fault::Bicategory,
            "flip" => Fault::Flip,
            "actions" => Fault::Actions,
            "fractions" => Fault::Fractions,
            "weakmap" => Fault::WeakMap,
            "classification" => Fault::Classification,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    pub detail: String,
    /// The serialized inputs of the case.
    pub input: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub size_bound: usize,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub wall_time_secs: f64,
}

impl SuiteReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, check_prefix: &str) -> usize {
        self.failures.iter().filter(|f| f.check.starts_with(check_prefix)).count()
    }
}

type Finding = (String, String);

fn fail(out: &mut Vec<Finding>, check: &str, detail: impl Into<String>) {
    out.push((check.to_string(), detail.into()));
}

struct Case {
    input: Value,
    run: Box<dyn Fn() -> Vec<Finding> + Send + Sync>,
}

fn case(input: Value, run: impl Fn() -> Vec<Finding> + Send + Sync + 'static) -> Case {
    Case {
        input,
        run: Box::new(run),
    }
}

fn run_cases(name: &str, fx: &FixtureSet, cases: Vec<Case>) -> SuiteReport {
    let start = Instant::now();
    let results: Vec<Vec<Finding>> = cases.par_iter().map(|c| (c.run)()).collect();
    let failures = results
        .into_iter()
        .enumerate()
        .flat_map(|(i, fs)| {
            let input = cases[i].input.clone();
            fs.into_iter().map(move |(check, detail)| Failure {
                case: i,
                check,
                detail,
                input: input.clone(),
            })
        })
        .collect();
    SuiteReport {
        name: name.to_string(),
        seed: fx.seed,
        size_bound: fx.size_bound,
        cases: cases.len(),
        failures,
        wall_time_secs: start.elapsed().as_secs_f64(),
    }
}

/// Runs a suite by name, with its designated fault when `faulty` is set.
pub fn run_suite(name: &str, fx: &FixtureSet, faulty: bool) -> Result<SuiteReport> {
    let fault = if faulty { Fault::for_suite(name) } else { None };
    Ok(match name {
        "janelidze" => run_janelidze_suite(fx, fault),
        "two-cells" => run_two_cell_suite(fx, fault),
        "bicategory" => run_bicategory_suite(fx, fault),
        "flip" => run_flip_suite(fx, fault),
        "actions" => run_action_suite(fx, fault),
        "fractions" => run_fractions_suite(fx, fault),
        "weakmap" => run_weakmap_suite(fx, fault),
        "classification" => run_classification_suite(fx, fault),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// A copy of `b` whose right wing is trivial, or left wing when the right is
/// already trivial.
fn drop_wing(b: &Butterfly) -> Butterfly {
    let zero_rho = GroupHom::zero(b.e(), b.cod().g0());
    if *b.rho() != zero_rho {
        return Butterfly::new_unchecked(
            b.dom().clone(),
            b.cod().clone(),
            b.kappa().clone(),
            b.iota().clone(),
            b.sigma().clone(),
            zero_rho,
        )
        .unwrap();
    }
    Butterfly::new_unchecked(
        b.dom().clone(),
        b.cod().clone(),
        b.kappa().clone(),
        b.iota().clone(),
        GroupHom::zero(b.e(), b.dom().g0()),
        b.rho().clone(),
    )
    .unwrap()
}

/// Checks `a ≅ b` through a found witness whose inverse is also a butterfly
/// morphism.
fn iso_witness(out: &mut Vec<Finding>, check: &str, a: &Butterfly, b: &Butterfly) {
    match isomorphic_butterflies(a, b) {
        Ok(Some(m)) => {
            if !m.validate().is_ok() {
                fail(out, check, format!("witness does not validate: {}", m.validate()));
            }
            match m.inverse() {
                Some(inv) if inv.validate().is_ok() => {}
                _ => fail(out, check, "witness has no inverse morphism"),
            }
        }
        Ok(None) => fail(out, check, "no isomorphism found"),
        Err(e) => fail(out, check, e.to_string()),
    }
}

fn with_fault(b: Butterfly, on: bool) -> Butterfly {
    if on {
        drop_wing(&b)
    } else {
        b
    }
}

/// `normalize(denormalize X) = X` for crossed modules with `|G|·|G0| ≤ 32`,
/// and `denormalize(normalize T) ≅ T` by the canonical comparison for
/// strict 2-groups with `|G1| ≤ 16`.
pub fn run_janelidze_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::Janelidze);
    let forget = move |n: CrossedModule| {
        if broken {
            CrossedModule::new_unchecked(n.boundary().clone(), GroupAction::trivial(n.g0(), n.g())).unwrap()
        } else {
            n
        }
    };
    let mut cases = Vec::new();
    for x in fx.crossed_modules.iter().filter(|x| x.size() <= 32) {
        let x = x.clone();
        cases.push(case(xmod_to_json(&x), move || {
            let mut out = Vec::new();
            let t = x.denormalize();
            let r = t.validate();
            if !r.is_ok() {
                fail(&mut out, "denormalize", r.to_string());
            }
            let n = forget(t.normalize());
            if n != *x {
                fail(&mut out, "normalize(denormalize X) = X", format!("{n} vs {x}"));
            }
            out
        }));
    }
    for t in fx.strict_2groups.iter().filter(|t| t.g1().order() <= 16) {
        let t = t.clone();
        cases.push(case(strict_to_json(&t), move || {
            let mut out = Vec::new();
            let n = forget(t.normalize());
            let r = n.validate();
            if !r.is_ok() {
                fail(&mut out, "normalize", r.to_string());
                return out;
            }
            let back = n.denormalize();
            let phi = t.comparison_from_normalized(&back);
            if phi.check().is_err() || !phi.is_isomorphism() {
                fail(&mut out, "comparison", "not a group isomorphism");
                return out;
            }
            let r = back.check_morphism(&t, &phi, &GroupHom::identity(t.g0()));
            if !r.is_ok() {
                fail(&mut out, "comparison", r.to_string());
            }
            out
        }));
    }
    run_cases("janelidze", fx, cases)
}

fn small_pair(p: &XModMorphism) -> bool {
    p.dom().g0().order() <= 8 && p.cod().size() <= 8
}

/// Two-cells equal internal natural transformations, as sets of maps.
pub fn run_two_cell_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::TwoCells);
    let cases = fx
        .parallel_pairs()
        .into_iter()
        .filter(|(p, _)| small_pair(p))
        .map(|(p, q)| {
            let input = json!({"p": morphism_to_json(&p), "q": morphism_to_json(&q)});
            case(input, move || {
                let mut out = Vec::new();
                let cells = match enumerate_two_cells(&p, &q) {
                    Ok(c) => c,
                    Err(e) => {
                        fail(&mut out, "enumerate", e.to_string());
                        return out;
                    }
                };
                let mut a: Vec<Vec<usize>> = cells.iter().map(|c| c.alpha().to_vec()).collect();
                let nats = if broken {
                    candidate_components(&p, &q)
                } else {
                    enumerate_natural_transformations(&p, &q)
                };
                let mut b = nats.unwrap_or_default();
                a.sort();
                b.sort();
                if a != b {
                    fail(&mut out, "two-cells = natural transformations", format!("{} vs {}", a.len(), b.len()));
                }
                out
            })
        })
        .collect();
    run_cases("two-cells", fx, cases)
}

/// Unit and associativity laws of butterfly composition, with found
/// isomorphisms.
pub fn run_bicategory_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::Bicategory);
    let bs = &fx.butterflies;
    let mut cases = Vec::new();
    for b in bs {
        let b = b.clone();
        cases.push(case(butterfly_to_json(&b), move || {
            let mut out = Vec::new();
            let left = compose(&Butterfly::identity(b.dom()), &b).map(|c| with_fault(c, broken));
            let right = compose(&b, &Butterfly::identity(b.cod()));
            match (left, right) {
                (Ok(l), Ok(r)) => {
                    iso_witness(&mut out, "left unit", &l, &b);
                    iso_witness(&mut out, "right unit", &r, &b);
                }
                (l, r) => fail(&mut out, "unit", format!("{:?} {:?}", l.err(), r.err())),
            }
            out
        }));
    }
    for (i, b1) in bs.iter().enumerate() {
        for (j, b2) in bs.iter().enumerate() {
            if b1.cod() != b2.dom() {
                continue;
            }
            for (k, b3) in bs.iter().enumerate() {
                if b2.cod() != b3.dom() {
                    continue;
                }
                let (b1, b2, b3) = (b1.clone(), b2.clone(), b3.clone());
                let input = json!({"triple": [i, j, k], "butterflies": [butterfly_to_json(&b1), butterfly_to_json(&b2), butterfly_to_json(&b3)]});
                cases.push(case(input, move || {
                    let mut out = Vec::new();
                    let lhs = compose(&b1, &b2).and_then(|c| compose(&c, &b3)).map(|c| with_fault(c, broken));
                    let rhs = compose(&b2, &b3).and_then(|c| compose(&b1, &c));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => iso_witness(&mut out, "associativity", &l, &r),
                        (l, r) => fail(&mut out, "associativity", format!("{:?} {:?}", l.err(), r.err())),
                    }
                    out
                }));
            }
        }
    }
    run_cases("bicategory", fx, cases)
}

/// Flippable butterflies are equivalences: `B·B* ≅ I` and `B*·B ≅ I`.
/// Non-flippable ones must refuse to flip.
pub fn run_flip_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::Flip);
    let cases = fx
        .butterflies
        .iter()
        .cloned()
        .map(|b| {
            case(butterfly_to_json(&b), move || {
                let mut out = Vec::new();
                if !b.is_flippable() {
                    if b.flip().is_ok() {
                        fail(&mut out, "flip refused", "non-flippable butterfly flipped");
                    }
                    return out;
                }
                let f = b.flip().unwrap();
                match (compose(&b, &f), compose(&f, &b)) {
                    (Ok(bf), Ok(fb)) => {
                        iso_witness(&mut out, "flip B.B*", &with_fault(bf, broken), &Butterfly::identity(b.dom()));
                        iso_witness(&mut out, "flip B*.B", &fb, &Butterfly::identity(b.cod()));
                    }
                    (x, y) => fail(&mut out, "flip", format!("{:?} {:?}", x.err(), y.err())),
                }
                out
            })
        })
        .collect();
    run_cases("flip", fx, cases)
}

/// The action of morphisms on butterflies by reduced composition.
pub fn run_action_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::Actions);
    let (ms, bs) = (&fx.morphisms, &fx.butterflies);
    let mut cases = Vec::new();
    for q in ms {
        let q = q.clone();
        cases.push(case(morphism_to_json(&q), move || {
            let mut out = Vec::new();
            match reduced_compose(&q, &Butterfly::identity(q.cod())) {
                Ok(b) => {
                    if with_fault(b, broken) != split_from_morphism(&q).butterfly {
                        fail(&mut out, "Q.rc I = E_Q", "not literally equal");
                    }
                }
                Err(e) => fail(&mut out, "Q.rc I = E_Q", e.to_string()),
            }
            out
        }));
    }
    for e in bs {
        let e = e.clone();
        cases.push(case(butterfly_to_json(&e), move || {
            let mut out = Vec::new();
            match reduced_compose(&XModMorphism::identity(e.dom()), &e) {
                Ok(b) => iso_witness(&mut out, "A3", &with_fault(b, broken), &e),
                Err(err) => fail(&mut out, "A3", err.to_string()),
            }
            out
        }));
    }
    for q in ms {
        for e in bs.iter().filter(|e| e.dom() == q.cod()) {
            for f in bs.iter().filter(|f| f.dom() == e.cod()) {
                if e.e().order() * f.e().order() > 256 {
                    continue;
                }
                let (q, e, f) = (q.clone(), e.clone(), f.clone());
                let input = json!({"Q": morphism_to_json(&q), "E": butterfly_to_json(&e), "F": butterfly_to_json(&f)});
                cases.push(case(input, move || {
                    let mut out = Vec::new();
                    let lhs = compose(&e, &f).and_then(|ef| reduced_compose(&q, &ef));
                    let rhs = reduced_compose(&q, &e).and_then(|qe| compose(&qe, &f));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => iso_witness(&mut out, "A1", &with_fault(l, broken), &r),
                        (l, r) => fail(&mut out, "A1", format!("{:?} {:?}", l.err(), r.err())),
                    }
                    out
                }));
            }
        }
    }
    for p in ms {
        for q in ms.iter().filter(|q| q.dom() == p.cod()) {
            for e in bs.iter().filter(|e| e.dom() == q.cod()) {
                let (p, q, e) = (p.clone(), q.clone(), e.clone());
                let input = json!({"P": morphism_to_json(&p), "Q": morphism_to_json(&q), "E": butterfly_to_json(&e)});
                cases.push(case(input, move || {
                    let mut out = Vec::new();
                    let lhs = p.then(&q).and_then(|pq| reduced_compose(&pq, &e));
                    let rhs = reduced_compose(&q, &e).and_then(|qe| reduced_compose(&p, &qe));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => iso_witness(&mut out, "A2", &with_fault(l, broken), &r),
                        (l, r) => fail(&mut out, "A2", format!("{:?} {:?}", l.err(), r.err())),
                    }
                    out
                }));
            }
        }
    }
    run_cases("actions", fx, cases)
}

/// The steps identifying butterflies with fractions: weak equivalences
/// become flippable (EF0), 2-cells biject with butterfly morphisms (EF2), and
/// the span of a butterfly reproduces it (EF3); plus split round trips.
pub fn run_fractions_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::Fractions);
    let mut cases = Vec::new();
    for p in &fx.morphisms {
        let p = p.clone();
        cases.push(case(morphism_to_json(&p), move || {
            let mut out = Vec::new();
            let sp = split_from_morphism(&p);
            let b = with_fault(sp.butterfly.clone(), broken);
            let weq = p.is_weak_equivalence();
            if weq && !b.is_flippable() {
                fail(&mut out, "EF0", "weak equivalence with non-flippable split butterfly");
            }
            if !weq && b.is_flippable() {
                fail(&mut out, "EF0 negative control", "flippable split butterfly of a non-equivalence");
            }
            match morphism_from_split(&sp.butterfly, &sp.section) {
                Ok(back) if back == p => {}
                Ok(_) => fail(&mut out, "split round trip", "recovered morphism differs"),
                Err(e) => fail(&mut out, "split round trip", e.to_string()),
            }
            out
        }));
    }
    for (p, q) in fx.parallel_pairs().into_iter().filter(|(p, _)| small_pair(p)) {
        let input = json!({"p": morphism_to_json(&p), "q": morphism_to_json(&q)});
        cases.push(case(input, move || {
            let mut out = Vec::new();
            let cells = match enumerate_two_cells(&p, &q) {
                Ok(c) => c,
                Err(e) => {
                    fail(&mut out, "EF2", e.to_string());
                    return out;
                }
            };
            let (ep, eq) = (split_from_morphism(&p).butterfly, split_from_morphism(&q).butterfly);
            let ms = match all_butterfly_morphisms(&ep, &with_fault(eq, broken)) {
                Ok(ms) => ms,
                Err(e) => {
                    fail(&mut out, "EF2", e.to_string());
                    return out;
                }
            };
            if cells.len() != ms.len() {
                fail(&mut out, "EF2", format!("{} two-cells, {} butterfly morphisms", cells.len(), ms.len()));
            }
            let mut images = Vec::new();
            for c in &cells {
                match two_cell_image(c) {
                    Ok(m) => images.push(m.f().map().to_vec()),
                    Err(e) => fail(&mut out, "EF2 image", e.to_string()),
                }
            }
            images.sort();
            images.dedup();
            if images.len() != cells.len() {
                fail(&mut out, "EF2 injective", "two 2-cells with the same image");
            }
            out
        }));
    }
    for b in &fx.butterflies {
        let b = b.clone();
        cases.push(case(butterfly_to_json(&b), move || {
            let mut out = Vec::new();
            match ef3_check(&b) {
                Ok(r) if r.is_ok() => {}
                Ok(r) => fail(&mut out, "EF3", r.to_string()),
                Err(e) => fail(&mut out, "EF3", e.to_string()),
            }
            match span_of_butterfly(&b) {
                Ok(s) if s.left.is_weak_equivalence() => {}
                Ok(_) => fail(&mut out, "span", "left leg is not a weak equivalence"),
                Err(e) => fail(&mut out, "span", e.to_string()),
            }
            out
        }));
    }
    run_cases("fractions", fx, cases)
}

/// The weak-morphism dictionary, for every normalized section of every small
/// fixture butterfly.
pub fn run_weakmap_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::WeakMap);
    let cases = fx
        .butterflies
        .iter()
        .filter(|b| b.dom().g0().order() <= 8 && b.cod().size() <= 8 && section_count(b) <= SECTION_CAP)
        .cloned()
        .map(|b| {
            case(butterfly_to_json(&b), move || {
                let mut out = Vec::new();
                for s in all_sections(&b) {
                    let mut m = match extract_monoidal(&b, &s) {
                        Ok(m) => m,
                        Err(e) => {
                            fail(&mut out, "extract", e.to_string());
                            continue;
                        }
                    };
                    if broken && m.f2.len() > 1 {
                        let n1 = m.cod.g1().order();
                        let last = m.f2.len() - 1;
                        m.f2[last] = (m.f2[last] + 1) % n1.max(1);
                    }
                    let r = check_monoidal(&m);
                    if !r.is_ok() {
                        fail(&mut out, "check_monoidal", format!("section {:?}: {r}", s.s));
                        continue;
                    }
                    if s.is_homomorphism(&b) && !m.is_strict() {
                        fail(&mut out, "strict", format!("section {:?}", s.s));
                    }
                    let rebuilt = match butterfly_from_monoidal(&m) {
                        Ok(p) => p,
                        Err(e) => {
                            fail(&mut out, "butterfly_from_monoidal", e.to_string());
                            continue;
                        }
                    };
                    iso_witness(&mut out, "butterfly round trip", &rebuilt, &b);
                    let back = extract_monoidal(&rebuilt, &canonical_monoidal_section(&m, &rebuilt));
                    match back.map(|back| monoidal_isomorphism(&m, &back)) {
                        Ok(Ok(Some(_))) => {}
                        Ok(Ok(None)) => fail(&mut out, "monoidal round trip", format!("section {:?}", s.s)),
                        Ok(Err(e)) | Err(e) => fail(&mut out, "monoidal round trip", e.to_string()),
                    }
                }
                out
            })
        })
        .collect();
    run_cases("weakmap", fx, cases)
}

/// Butterfly-side classes against factor-set classes for `H, G` among
/// `Z2, Z3, Z4, V4` with `|H|·|G|` at most the fixture bound.
pub fn run_classification_suite(fx: &FixtureSet, fault: Option<Fault>) -> SuiteReport {
    let broken = fault == Some(Fault::Classification);
    let groups: Vec<_> = ["Z2", "Z3", "Z4", "V4"]
        .into_iter()
        .map(|n| catalog::by_name(n).unwrap().with_name(n).into_arc())
        .collect();
    let mut cases = Vec::new();
    for h in &groups {
        for g in &groups {
            if h.order() * g.order() > fx.size_bound {
                continue;
            }
            let (h, g) = (h.clone(), g.clone());
            let input = json!({"H": h.name(), "G": g.name()});
            cases.push(case(input, move || {
                let mut out = Vec::new();
                let c = match classify_extensions(&h, &g) {
                    Ok(c) => c,
                    Err(e) => {
                        fail(&mut out, "classify", e.to_string());
                        return out;
                    }
                };
                let (oracle_count, oracle_split, oracle_trivial) = if broken {
                    let aut = std::sync::Arc::new(automorphism_group(&g).unwrap());
                    let all = enumerate_factor_sets(&h, &g, &aut);
                    let split = all.iter().filter(|f| f.is_trivial_cocycle()).count();
                    let triv = all.iter().filter(|f| f.has_trivial_action()).count();
                    (all.len(), split, triv)
                } else {
                    match factor_set_oracle(&h, &g) {
                        Ok(o) => (
                            o.len(),
                            o.iter().filter(|k| k.split).count(),
                            o.iter().filter(|k| k.representative.has_trivial_action()).count(),
                        ),
                        Err(e) => {
                            fail(&mut out, "oracle", e.to_string());
                            return out;
                        }
                    }
                };
                if c.classes.len() != oracle_count {
                    fail(&mut out, "class count", format!("butterflies {} vs oracle {oracle_count}", c.classes.len()));
                }
                if c.split_count() != oracle_split {
                    fail(&mut out, "split count", format!("butterflies {} vs oracle {oracle_split}", c.split_count()));
                }
                let central = c.classes.iter().filter(|k| k.butterfly.rho().is_trivial()).count();
                if g.is_abelian() && central != oracle_trivial {
                    fail(&mut out, "trivial action count", format!("butterflies {central} vs oracle {oracle_trivial}"));
                }
                match (h.name(), g.name()) {
                    ("Z2", "Z2") => {
                        let mut types: Vec<_> = c.classes.iter().map(|k| k.e_type.as_str()).collect();
                        types.sort();
                        if types != ["V4", "Z4"] {
                            fail(&mut out, "Ext(Z2,Z2)", format!("{types:?}"));
                        }
                    }
                    ("Z3", "Z3") if central != 3 => {
                        fail(&mut out, "Ext(Z3,Z3) trivial action", format!("{central} classes"));
                    }
                    _ => {}
                }
                out
            }));
        }
    }
    run_cases("classification", fx, cases)
}
