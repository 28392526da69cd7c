use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use butterfly_core::butterfly::{compose, isomorphic_butterflies, span_of_butterfly, split_from_morphism, Butterfly};
use butterfly_core::extension::{classify_extensions_bounded, factor_set_oracle_bounded, Classification, FactorSet};
use butterfly_core::fingroup::{catalog, FinGroup};
use butterfly_core::laws::{generate_fixtures, run_suite, MAX_FIXTURE_BOUND, SUITES};
use butterfly_core::serial::*;
use butterfly_core::weakmap::{
    butterfly_from_monoidal, check_monoidal, extract_monoidal, monoidal_isomorphism, MonoidalFunctor, SetSection,
};
use butterfly_core::{Error, Report};
use serde_json::{json, Value};

use crate::workspace::{hash_of, Workspace};
use crate::{Cli, ClassifyArgs, Command, StoreCommand, SuiteArgs, Usage, WeakmapCommand};

struct Ctx<'a> {
    cli: &'a Cli,
    ws: Workspace,
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = Ctx {
        cli,
        ws: Workspace::open(&cli.workspace)?,
    };
    match &cli.command {
        Command::Validate { input } => validate(&ctx, input),
        Command::Compose {
            first,
            second,
            witness,
            expect,
        } => cmd_compose(&ctx, first, second, *witness, expect.as_deref()),
        Command::Identity { input } => {
            let x = xmod_from_json(&ctx.load(input)?)?;
            ctx.emit_butterfly(&Butterfly::identity(&x), json!({}))
        }
        Command::Flip { input } => {
            let b = ctx.load_butterfly(input)?;
            ctx.emit_butterfly(&b.flip()?, json!({}))
        }
        Command::Split { input } => {
            let p = morphism_from_json(&ctx.load(input)?)?;
            let r = p.validate();
            if !r.is_ok() {
                bail!(Error::InvalidMorphism(r.to_string()));
            }
            let s = split_from_morphism(&p);
            ctx.emit_butterfly(&s.butterfly, json!({"section": s.section.map()}))
        }
        Command::Span { input } => cmd_span(&ctx, input),
        Command::Weakmap { command } => weakmap(&ctx, command),
        Command::Classify(args) => classify(&ctx, args),
        Command::Suite(args) => suite(&ctx, args),
        Command::Store { command } => store(&ctx, command),
    }
}

impl Ctx<'_> {
    /// JSON from a file, `-` for stdin, or a stored ref, with nested refs
    /// expanded.
    fn load(&self, input: &str) -> Result<Value> {
        let text = if input == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        } else if Path::new(input).is_file() {
            std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
        } else {
            self.ws.get_text(input)?
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| Usage(format!("{input}: malformed JSON: {e}")))?;
        self.ws.expand_refs(v)
    }

    /// Like [`Ctx::load`], falling back to catalog names such as `Z2` or `S3`.
    fn load_group(&self, input: &str) -> Result<std::sync::Arc<FinGroup>> {
        match self.load(input) {
            Ok(v) => Ok(group_from_json(&v)?),
            Err(e) => match catalog::by_name(input) {
                Ok(g) => Ok(g.with_name(input).into_arc()),
                Err(_) => Err(e),
            },
        }
    }

    fn load_butterfly(&self, input: &str) -> Result<Butterfly> {
        let b = butterfly_from_json(&self.load(input)?)?;
        let r = b.validate();
        if !r.is_ok() {
            bail!(Error::InvalidButterfly(r.to_string()));
        }
        Ok(b)
    }

    fn load_monoidal(&self, input: &str) -> Result<MonoidalFunctor> {
        let m = monoidal_from_json(&self.load(input)?)?;
        let r = check_monoidal(&m);
        if !r.is_ok() {
            bail!(Error::InvalidMonoidalFunctor(r.to_string()));
        }
        Ok(m)
    }

    /// Stores `v`, then prints its ref (or the object with `--json`).
    fn emit(&self, v: &Value, summary: &str, extra: Value) -> Result<String> {
        let hash = self.ws.put(v)?;
        if self.cli.json {
            let mut out = json!({"ref": hash, "object": v});
            if let Value::Object(extra) = extra {
                out.as_object_mut().unwrap().extend(extra);
            }
            out!("{}", serde_json::to_string_pretty(&out)?);
        } else {
            out!("{hash}  {summary}");
        }
        Ok(hash)
    }

    fn emit_butterfly(&self, b: &Butterfly, extra: Value) -> Result<ExitCode> {
        if self.cli.check {
            recheck(b.validate(), "butterfly")?;
        }
        self.emit(&butterfly_to_json(b), &describe_butterfly(b), extra)?;
        Ok(ExitCode::SUCCESS)
    }
}

fn recheck(r: Report, what: &str) -> Result<()> {
    if !r.is_ok() {
        bail!("computed {what} failed re-validation: {r}");
    }
    Ok(())
}

fn describe_butterfly(b: &Butterfly) -> String {
    format!("butterfly {} -> {}, |E| = {}", b.dom().name(), b.cod().name(), b.e().order())
}

fn validation_report(obj: &Object) -> Report {
    match obj {
        Object::Group(_) => Report::new(),
        Object::CrossedModule(x) => x.validate(),
        Object::Morphism(p) => {
            let mut r = p.dom().validate().scoped("domain");
            r.extend(p.cod().validate().scoped("codomain"));
            r.extend(p.validate());
            r
        }
        Object::Butterfly(b) => {
            let mut r = b.dom().validate().scoped("domain");
            r.extend(b.cod().validate().scoped("codomain"));
            r.extend(b.validate());
            r
        }
        Object::Strict2Group(t) => t.validate(),
        Object::MonoidalFunctor(m) => check_monoidal(m),
    }
}

fn validate(ctx: &Ctx, input: &str) -> Result<ExitCode> {
    let v = ctx.load(input)?;
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("?").to_string();
    let report = match from_json(&v) {
        Ok(obj) => validation_report(&obj),
        Err(e @ (Error::Parse(_) | Error::UnknownKind(_))) => return Err(e.into()),
        Err(e) => {
            let mut r = Report::new();
            r.push("construction", e.to_string());
            r
        }
    };
    if ctx.cli.json {
        out!(
            "{}",
            serde_json::to_string_pretty(&json!({"kind": kind, "valid": report.is_ok(), "issues": report.issues}))?
        );
    } else if report.is_ok() {
        out!("valid {kind}");
    } else {
        out!("invalid {kind}");
        for issue in &report.issues {
            out!("  {}: {}", issue.check, issue.witness);
        }
    }
    Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_compose(ctx: &Ctx, first: &str, second: &str, witness: bool, expect: Option<&str>) -> Result<ExitCode> {
    let (b, b2) = (ctx.load_butterfly(first)?, ctx.load_butterfly(second)?);
    let c = compose(&b, &b2)?;
    if ctx.cli.check {
        recheck(c.validate(), "butterfly")?;
    }
    if !witness {
        return ctx.emit_butterfly(&c, json!({}));
    }
    let target = match expect {
        Some(r) => ctx.load_butterfly(r)?,
        None if c.dom() == c.cod() => Butterfly::identity(c.dom()),
        None => bail!(Usage("the composite is not an endomorphism; pass --expect".into())),
    };
    let found = isomorphic_butterflies(&c, &target)?;
    let w = match &found {
        Some(m) => json!({"witness": {"target": hash_of(&butterfly_to_json(&target)), "map": m.f().map()}}),
        None => json!({"witness": null}),
    };
    ctx.emit(&butterfly_to_json(&c), &describe_butterfly(&c), w)?;
    if !ctx.cli.json {
        match &found {
            Some(m) => out!("isomorphism E -> E': {:?}", m.f().map()),
            None => out!("no isomorphism to the expected butterfly"),
        }
    }
    Ok(if found.is_some() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_span(ctx: &Ctx, input: &str) -> Result<ExitCode> {
    let b = ctx.load_butterfly(input)?;
    let s = span_of_butterfly(&b)?;
    if ctx.cli.check {
        recheck(s.apex.validate(), "apex")?;
        recheck(s.left.validate(), "left leg")?;
        recheck(s.right.validate(), "right leg")?;
        if !s.left.is_weak_equivalence() {
            bail!("computed left leg is not a weak equivalence");
        }
    }
    let v = json!({
        "kind": "span",
        "apex": xmod_to_json(&s.apex),
        "left": morphism_to_json(&s.left),
        "right": morphism_to_json(&s.right),
    });
    let summary = format!("span {} <- [E] -> {}, apex of size {}", b.dom().name(), b.cod().name(), s.apex.size());
    ctx.emit(&v, &summary, json!({"left_is_weak_equivalence": s.left.is_weak_equivalence()}))?;
    Ok(ExitCode::SUCCESS)
}

fn weakmap(ctx: &Ctx, command: &WeakmapCommand) -> Result<ExitCode> {
    match command {
        WeakmapCommand::Extract { input, section } => {
            let b = ctx.load_butterfly(input)?;
            let s = match section {
                Some(s) => SetSection::new(&b, s.clone())?,
                None => SetSection::canonical(&b),
            };
            let m = extract_monoidal(&b, &s)?;
            if ctx.cli.check {
                recheck(check_monoidal(&m), "monoidal functor")?;
            }
            let summary = format!(
                "monoidal functor, {} comparison arrows",
                if m.is_strict() { "identity" } else { "nontrivial" }
            );
            ctx.emit(&monoidal_to_json(&m), &summary, json!({"section": s.s, "strict": m.is_strict()}))?;
            Ok(ExitCode::SUCCESS)
        }
        WeakmapCommand::Build { input } => {
            let m = ctx.load_monoidal(input)?;
            ctx.emit_butterfly(&butterfly_from_monoidal(&m)?, json!({}))
        }
        WeakmapCommand::Iso { first, second } => {
            let (m, m2) = (ctx.load_monoidal(first)?, ctx.load_monoidal(second)?);
            let theta = monoidal_isomorphism(&m, &m2)?;
            if ctx.cli.json {
                out!("{}", serde_json::to_string_pretty(&json!({"isomorphic": theta.is_some(), "theta": theta}))?);
            } else {
                match &theta {
                    Some(t) => out!("isomorphic, theta = {t:?}"),
                    None => out!("not isomorphic"),
                }
            }
            Ok(if theta.is_some() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn factor_set_json(fs: &FactorSet) -> Value {
    let h = &fs.h;
    json!({
        "phi": h.elements().map(|x| fs.aut.automorphism(fs.phi[x]).to_vec()).collect::<Vec<_>>(),
        "f": h.elements().map(|x| h.elements().map(|y| fs.f(x, y)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn classification_json(ctx: &Ctx, c: &Classification) -> Result<Value> {
    let mut classes = Vec::new();
    for k in &c.classes {
        let b = ctx.ws.put(&butterfly_to_json(&k.butterfly))?;
        classes.push(json!({
            "E": group_to_json(&k.datum.e),
            "E_type": k.e_type,
            "split": k.split,
            "members": k.members,
            "factor_set": factor_set_json(&k.factor_set),
            "butterfly": b,
        }));
    }
    Ok(json!({
        "kind": "classification",
        "H": group_to_json(&c.h),
        "G": group_to_json(&c.g),
        "classes": classes,
    }))
}

fn classify(ctx: &Ctx, args: &ClassifyArgs) -> Result<ExitCode> {
    let (h, g) = (ctx.load_group(&args.h)?, ctx.load_group(&args.g)?);
    let key = format!(
        "classify:{}:{}:{}",
        hash_of(&group_to_json(&h)),
        hash_of(&group_to_json(&g)),
        args.bound
    );
    let report = match ctx.ws.cached(&key)? {
        Some(v) => v,
        None => {
            let c = classify_extensions_bounded(&h, &g, args.bound)?;
            let v = classification_json(ctx, &c)?;
            ctx.ws.remember(&key, &v)?;
            v
        }
    };
    let classes = report["classes"].as_array().context("cached classification is malformed")?;
    let split = classes.iter().filter(|k| k["split"] == true).count();
    let mut code = ExitCode::SUCCESS;
    let mut oracle = Value::Null;
    if args.oracle {
        let o = factor_set_oracle_bounded(&h, &g, args.bound)?;
        let o_split = o.iter().filter(|k| k.split).count();
        let agree = o.len() == classes.len() && o_split == split;
        if !agree {
            code = ExitCode::FAILURE;
        }
        oracle = json!({"classes": o.len(), "split": o_split, "agree": agree});
    }
    if args.csv {
        out!("H,G,classes,split");
        out!("{},{},{},{}", h.name(), g.name(), classes.len(), split);
    } else if ctx.cli.json {
        let mut out = report.clone();
        out["oracle"] = oracle.clone();
        out!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        out!("extensions of {} by {}: classes {}, split {}", h.name(), g.name(), classes.len(), split);
        for (i, k) in classes.iter().enumerate() {
            out!(
                "  class {i}: E = {}, split = {}, butterfly {}",
                k["E_type"].as_str().unwrap_or("?"),
                k["split"],
                k["butterfly"].as_str().unwrap_or("?")
            );
        }
    }
    if !oracle.is_null() && !ctx.cli.json {
        let line = format!("oracle: classes {}, split {}", oracle["classes"], oracle["split"]);
        if oracle["agree"] == true {
            out!("{line}; routes agree");
        } else {
            out!("{line}; MISMATCH");
        }
    }
    Ok(code)
}

fn suite(ctx: &Ctx, args: &SuiteArgs) -> Result<ExitCode> {
    if args.bound > MAX_FIXTURE_BOUND {
        bail!(Usage(format!("--bound {} is above the maximum {MAX_FIXTURE_BOUND}", args.bound)));
    }
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        bail!(Error::UnknownSuite(args.suite.clone()));
    };
    let fx = generate_fixtures(args.seed, args.bound);
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, &fx, args.fault)?);
    }
    let clean = reports.iter().all(|r| r.is_ok());
    if ctx.cli.json {
        out!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            out!(
                "{:<15} {:>6} cases {:>5} failures  {:.2}s",
                r.name,
                r.cases,
                r.failures.len(),
                r.wall_time_secs
            );
            for f in r.failures.iter().take(3) {
                out!("    case {} [{}] {}", f.case, f.check, f.detail);
            }
        }
    }
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn store(ctx: &Ctx, command: &StoreCommand) -> Result<ExitCode> {
    match command {
        StoreCommand::Ls => {
            let entries = ctx.ws.list()?;
            if ctx.cli.json {
                let v: Vec<Value> = entries
                    .iter()
                    .map(|e| json!({"ref": e.hash, "kind": e.kind, "name": e.name}))
                    .collect();
                out!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for e in entries {
                    out!("{}  {:<16} {}", e.hash, e.kind, e.name);
                }
            }
        }
        StoreCommand::Get { r#ref } => {
            use std::io::Write;
            let _ = std::io::stdout().write_all(ctx.ws.get_text(r#ref)?.as_bytes());
        }
        StoreCommand::Put { input } => {
            let v = ctx.load(input)?;
            if v.get("kind").and_then(Value::as_str).is_none() {
                bail!(Usage(format!("{input}: object has no 'kind'")));
            }
            let kind = v["kind"].as_str().unwrap().to_string();
            ctx.emit(&v, &kind, json!({}))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
