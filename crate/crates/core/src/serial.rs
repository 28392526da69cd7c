//! JSON encoding of groups, crossed modules, morphisms, butterflies, strict
//! 2-groups and monoidal functors.
//!
//! Every object carries a `"kind"` tag. Keys are emitted in sorted order, so
//! [`canonical`] is a stable byte string for hashing.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::butterfly::Butterfly;
use crate::error::{Error, Result};
use crate::fingroup::{catalog, Elem, FinGroup, GroupAction, GroupHom};
use crate::weakmap::MonoidalFunctor;
use crate::xmod::{CrossedModule, Strict2Group, XModMorphism};

/// The decoded form of any supported object.
#[derive(Clone, Debug)]
pub enum Object {
    Group(Arc<FinGroup>),
    CrossedModule(Arc<CrossedModule>),
    Morphism(XModMorphism),
    Butterfly(Butterfly),
    Strict2Group(Arc<Strict2Group>),
    MonoidalFunctor(MonoidalFunctor),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Group(_) => "group",
            Object::CrossedModule(_) => "crossed_module",
            Object::Morphism(_) => "xmod_morphism",
            Object::Butterfly(_) => "butterfly",
            Object::Strict2Group(_) => "strict_2group",
            Object::MonoidalFunctor(_) => "monoidal_functor",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Object::Group(g) => group_to_json(g),
            Object::CrossedModule(x) => xmod_to_json(x),
            Object::Morphism(p) => morphism_to_json(p),
            Object::Butterfly(b) => butterfly_to_json(b),
            Object::Strict2Group(t) => strict_to_json(t),
            Object::MonoidalFunctor(m) => monoidal_to_json(m),
        }
    }
}

/// Compact serialization with sorted keys.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

pub fn group_to_json(g: &FinGroup) -> Value {
    json!({
        "kind": "group",
        "name": g.name(),
        "order": g.order(),
        "table": g.table_rows(),
    })
}

pub fn xmod_to_json(x: &CrossedModule) -> Value {
    json!({
        "kind": "crossed_module",
        "name": x.name(),
        "top": group_to_json(x.g()),
        "bottom": group_to_json(x.g0()),
        "boundary": x.boundary().map(),
        "action": x.action().table(),
    })
}

pub fn morphism_to_json(p: &XModMorphism) -> Value {
    json!({
        "kind": "xmod_morphism",
        "dom": xmod_to_json(p.dom()),
        "cod": xmod_to_json(p.cod()),
        "p": p.p().map(),
        "p0": p.p0().map(),
    })
}

pub fn butterfly_to_json(b: &Butterfly) -> Value {
    json!({
        "kind": "butterfly",
        "dom": xmod_to_json(b.dom()),
        "cod": xmod_to_json(b.cod()),
        "E": group_to_json(b.e()),
        "kappa": b.kappa().map(),
        "iota": b.iota().map(),
        "sigma": b.sigma().map(),
        "rho": b.rho().map(),
    })
}

pub fn strict_to_json(t: &Strict2Group) -> Value {
    json!({
        "kind": "strict_2group",
        "G1": group_to_json(t.g1()),
        "G0": group_to_json(t.g0()),
        "d": t.d().map(),
        "c": t.c().map(),
        "e": t.e().map(),
    })
}

pub fn monoidal_to_json(m: &MonoidalFunctor) -> Value {
    let n = m.dom.g0().order();
    let f2: Vec<&[Elem]> = m.f2.chunks(n.max(1)).collect();
    json!({
        "kind": "monoidal_functor",
        "dom": strict_to_json(&m.dom),
        "cod": strict_to_json(&m.cod),
        "F0": m.f0,
        "F1": m.f1,
        "F2": f2,
    })
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field '{key}'")))
}

fn uvec(v: &Value, key: &str) -> Result<Vec<Elem>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| perr(format!("'{key}' is not an array")))?
        .iter()
        .map(|x| x.as_u64().map(|n| n as Elem).ok_or_else(|| perr(format!("'{key}' has a non-integer entry"))))
        .collect()
}

fn umat(v: &Value, key: &str) -> Result<Vec<Vec<Elem>>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| perr(format!("'{key}' is not an array")))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| perr(format!("'{key}' has a non-array row")))?
                .iter()
                .map(|x| x.as_u64().map(|n| n as Elem).ok_or_else(|| perr(format!("'{key}' has a non-integer entry"))))
                .collect()
        })
        .collect()
}

fn expect_kind(v: &Value, kind: &str) -> Result<()> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(perr(format!("expected kind '{kind}', found '{k}'"))),
        None => Err(perr("missing field 'kind'")),
    }
}

/// A group from `{"table": ...}` (identity at index 0) or `{"catalog": name}`.
pub fn group_from_json(v: &Value) -> Result<Arc<FinGroup>> {
    expect_kind(v, "group")?;
    if let Some(name) = v.get("catalog").and_then(Value::as_str) {
        return Ok(catalog::by_name(name)?.into_arc());
    }
    let name = v.get("name").and_then(Value::as_str).unwrap_or("G");
    let (g, relabel) = FinGroup::from_table_relabeled(umat(v, "table")?, name)?;
    if relabel.first() != Some(&0) {
        return Err(perr("group table must have its identity at index 0"));
    }
    Ok(g.into_arc())
}

fn hom(dom: &Arc<FinGroup>, cod: &Arc<FinGroup>, v: &Value, key: &str) -> Result<GroupHom> {
    let map = uvec(v, key)?;
    if map.len() != dom.order() || map.iter().any(|&y| y >= cod.order()) {
        return Err(perr(format!("'{key}' does not fit its groups")));
    }
    GroupHom::new_unchecked(dom.clone(), cod.clone(), map)
}

/// A crossed module, either explicit or as `{"construct": c, "group": g}`
/// with `c` one of `discrete`, `aut`, `conjugation`, `abelian`.
///
/// Structural consistency is checked; the crossed-module axioms are not, so
/// that invalid inputs can be diagnosed by the caller.
pub fn xmod_from_json(v: &Value) -> Result<Arc<CrossedModule>> {
    expect_kind(v, "crossed_module")?;
    if let Some(c) = v.get("construct").and_then(Value::as_str) {
        let g = group_from_json(field(v, "group")?)?;
        let x = match c {
            "discrete" => CrossedModule::discrete(&g),
            "aut" => CrossedModule::aut(&g)?,
            "conjugation" => CrossedModule::conjugation(&g),
            "abelian" => CrossedModule::abelian(&g)?,
            other => return Err(perr(format!("unknown construction '{other}'"))),
        };
        return Ok(x.into_arc());
    }
    let top = group_from_json(field(v, "top")?)?;
    let bottom = group_from_json(field(v, "bottom")?)?;
    let boundary = hom(&top, &bottom, v, "boundary")?;
    let table = umat(v, "action")?;
    if table.len() != bottom.order() || table.iter().any(|r| r.len() != top.order() || r.iter().any(|&a| a >= top.order())) {
        return Err(perr("'action' does not fit its groups"));
    }
    let action = GroupAction::new_unchecked(bottom, top, table)?;
    let mut x = CrossedModule::new_unchecked(boundary, action)?;
    if let Some(name) = v.get("name").and_then(Value::as_str) {
        x = x.with_name(name);
    }
    Ok(x.into_arc())
}

pub fn morphism_from_json(v: &Value) -> Result<XModMorphism> {
    expect_kind(v, "xmod_morphism")?;
    let dom = xmod_from_json(field(v, "dom")?)?;
    let cod = xmod_from_json(field(v, "cod")?)?;
    let p = hom(dom.g(), cod.g(), v, "p")?;
    let p0 = hom(dom.g0(), cod.g0(), v, "p0")?;
    XModMorphism::new_unchecked(dom, cod, p, p0)
}

/// Decodes a butterfly without validating it.
pub fn butterfly_from_json(v: &Value) -> Result<Butterfly> {
    expect_kind(v, "butterfly")?;
    let dom = xmod_from_json(field(v, "dom")?)?;
    let cod = xmod_from_json(field(v, "cod")?)?;
    let e = group_from_json(field(v, "E")?)?;
    let kappa = hom(dom.g(), &e, v, "kappa")?;
    let iota = hom(cod.g(), &e, v, "iota")?;
    let sigma = hom(&e, dom.g0(), v, "sigma")?;
    let rho = hom(&e, cod.g0(), v, "rho")?;
    Butterfly::new_unchecked(dom, cod, kappa, iota, sigma, rho)
}

pub fn strict_from_json(v: &Value) -> Result<Arc<Strict2Group>> {
    expect_kind(v, "strict_2group")?;
    let g1 = group_from_json(field(v, "G1")?)?;
    let g0 = group_from_json(field(v, "G0")?)?;
    let d = hom(&g1, &g0, v, "d")?;
    let c = hom(&g1, &g0, v, "c")?;
    let e = hom(&g0, &g1, v, "e")?;
    for f in [&d, &c, &e] {
        f.check()?;
    }
    Ok(Arc::new(Strict2Group::from_reflexive_graph(d, c, e)?))
}

pub fn monoidal_from_json(v: &Value) -> Result<MonoidalFunctor> {
    expect_kind(v, "monoidal_functor")?;
    let dom = strict_from_json(field(v, "dom")?)?;
    let cod = strict_from_json(field(v, "cod")?)?;
    let f2 = umat(v, "F2")?.concat();
    Ok(MonoidalFunctor {
        dom,
        cod,
        f0: uvec(v, "F0")?,
        f1: uvec(v, "F1")?,
        f2,
    })
}

/// Decodes any supported object by its `"kind"` tag.
pub fn from_json(v: &Value) -> Result<Object> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| perr("missing field 'kind'"))?;
    Ok(match kind {
        "group" => Object::Group(group_from_json(v)?),
        "crossed_module" => Object::CrossedModule(xmod_from_json(v)?),
        "xmod_morphism" => Object::Morphism(morphism_from_json(v)?),
        "butterfly" => Object::Butterfly(butterfly_from_json(v)?),
        "strict_2group" => Object::Strict2Group(strict_from_json(v)?),
        "monoidal_functor" => Object::MonoidalFunctor(monoidal_from_json(v)?),
        other => return Err(Error::UnknownKind(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weakmap::{extract_monoidal, SetSection};

    #[test]
    fn butterfly_round_trip() {
        let s3 = catalog::symmetric(3).into_arc();
        let x = CrossedModule::aut(&s3).unwrap().into_arc();
        let b = Butterfly::identity(&x);
        let v = butterfly_to_json(&b);
        let back = butterfly_from_json(&v).unwrap();
        assert_eq!(back, b);
        assert_eq!(canonical(&butterfly_to_json(&back)), canonical(&v));
    }

    #[test]
    fn monoidal_round_trip() {
        let z2 = catalog::cyclic(2).into_arc();
        let x = CrossedModule::conjugation(&z2).into_arc();
        let b = Butterfly::identity(&x);
        let m = extract_monoidal(&b, &SetSection::canonical(&b)).unwrap();
        let v = monoidal_to_json(&m);
        assert_eq!(monoidal_from_json(&v).unwrap(), m);
    }

    #[test]
    fn shorthand_and_errors() {
        let v = json!({"kind": "crossed_module", "construct": "aut", "group": {"kind": "group", "catalog": "S3"}});
        assert_eq!(xmod_from_json(&v).unwrap().g0().order(), 6);
        assert!(matches!(from_json(&json!({"kind": "spoon"})), Err(Error::UnknownKind(_))));
        assert!(matches!(from_json(&json!({"no": 1})), Err(Error::Parse(_))));
        let bad = json!({"kind": "group", "table": [[1, 0], [0, 1]]});
        assert!(matches!(group_from_json(&bad), Err(Error::Parse(_))));
    }
}
