use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use gradstar_core::content::{
    classical_gauss_check, content_a, content_generators, dm_exponent, gauss_check, GaussOutcome,
};
use gradstar_core::falsify::{self as fz, FalsifyOutcome, FamilyBounds, Identity};
use gradstar_core::ideal::{frac_inverse, ideal_member, FracIdeal};
use gradstar_core::kron::{bezout_combine, kr_member, KrDecision, KrMode};
use gradstar_core::nagata::{is_star_invertible, n_membership, pic_generator, Certificate};
use gradstar_core::parse::{parse_ideal_parts, parse_polyx, parse_quotient, parse_value};
use gradstar_core::registry;
use gradstar_core::report::SCHEMA;
use gradstar_core::ring::{PolyX, RingRef};
use gradstar_core::star::StarOp;
use gradstar_core::suite::{self, SUITES};
use gradstar_core::Error;

use crate::{Global, IdealOp, ModeArg};

pub enum Status {
    Ok,
    /// A search bound ran out; reported but not a failure.
    Warning(String),
    /// A certificate refuting an identity was produced.
    Counterexample,
}

pub struct Output {
    command: &'static str,
    body: Value,
    text: String,
    status: Status,
}

impl Output {
    fn new(command: &'static str, body: Value, text: String) -> Self {
        Output { command, body, text, status: Status::Ok }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn emit(mut self, as_json: bool) -> ExitCode {
        let status = match &self.status {
            Status::Ok => "ok",
            Status::Warning(_) => "bound-exhausted",
            Status::Counterexample => "counterexample",
        };
        if as_json {
            if let Value::Object(m) = &mut self.body {
                m.insert("schema".into(), json!(SCHEMA));
                m.insert("command".into(), json!(self.command));
                m.insert("status".into(), json!(status));
            }
            println!("{}", serde_json::to_string_pretty(&self.body).unwrap());
        } else {
            print!("{}", self.text);
        }
        match self.status {
            Status::Ok => ExitCode::SUCCESS,
            Status::Warning(w) => {
                eprintln!("warning: {w}");
                ExitCode::SUCCESS
            }
            Status::Counterexample => ExitCode::from(1),
        }
    }
}

fn ring(g: &Global) -> Result<RingRef> {
    Ok(registry::resolve(&g.ring)?)
}

fn star_or(g: &Global, ring: &RingRef, default: &str) -> Result<StarOp> {
    Ok(StarOp::parse(g.star.as_deref().unwrap_or(default), ring)?)
}

fn optional_star(g: &Global, ring: &RingRef) -> Result<Option<StarOp>> {
    g.star.as_deref().map(|s| StarOp::parse(s, ring)).transpose().map_err(Into::into)
}

fn poly(s: &str, ring: &RingRef) -> Result<PolyX> {
    parse_polyx(s, ring).with_context(|| format!("parsing `{s}`"))
}

fn ideal_literal(s: &str, ring: &RingRef) -> Result<FracIdeal> {
    let (gens, den) = parse_ideal_parts(s, ring).with_context(|| format!("parsing ideal `{s}`"))?;
    Ok(FracIdeal::new(ring, gens, den)?)
}

pub fn ring_list(_g: &Global) -> Result<Output> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for name in registry::names() {
        let r = registry::shipped(name)?;
        let flags: Vec<&str> = r.flags().map(|f| f.name()).collect();
        writeln!(text, "{name}: base {:?}, dim {}, flags [{}]", r.base(), r.dim(), flags.join(", "))?;
        rows.push(json!({"name": name, "spec": r.spec()}));
    }
    Ok(Output::new("ring list", json!({ "rings": rows }), text))
}

pub fn ring_show(g: &Global, name: Option<&str>) -> Result<Output> {
    let r = registry::resolve(name.unwrap_or(&g.ring))?;
    let m = r.monoid();
    let gens: Vec<String> = m.generators().iter().map(|d| d.to_string()).collect();
    let flags: Vec<&str> = r.flags().map(|f| f.name()).collect();
    let body = json!({
        "name": r.name(),
        "spec": r.spec(),
        "group": m.is_group(),
        "toric_relations": r.toric().len(),
    });
    let text = format!(
        "{}\n  base: {:?}\n  generators: {}\n  names: {}\n  flags: [{}]\n  group grading: {}\n  toric relations: {}\n",
        r.name(),
        r.base(),
        gens.join(" "),
        r.names().join(" "),
        flags.join(", "),
        m.is_group(),
        r.toric().len()
    );
    Ok(Output::new("ring show", body, text))
}

pub fn eval(g: &Global, expr: &str) -> Result<Output> {
    let r = ring(g)?;
    let v = parse_value(expr, &r)?;
    let mut body = json!({"input": expr, "value": v.to_string(), "in_ring": v.in_ring()});
    let mut text = format!("{v}\n");
    if v.degree().unwrap_or(0) == 0 {
        let a = v.coeff(0);
        let comps: Vec<String> = a.decompose().into_iter().map(|(_, c)| c.to_string()).collect();
        body["homogeneous"] = json!(a.is_homogeneous());
        body["components"] = json!(comps);
        if g.trace {
            writeln!(text, "components: {}", comps.join(" | "))?;
        }
    }
    Ok(Output::new("eval", body, text))
}

pub fn ideal(g: &Global, op: IdealOp, args: &[String]) -> Result<Output> {
    let r = ring(g)?;
    let need = |n: usize| -> Result<()> {
        if args.len() != n {
            bail!("this operation takes {n} operand(s), got {}", args.len());
        }
        Ok(())
    };
    let (name, result): (&str, Value) = match op {
        IdealOp::Show => {
            need(1)?;
            ("show", json!(ideal_literal(&args[0], &r)?.to_string()))
        }
        IdealOp::Member => {
            need(2)?;
            let x = parse_quotient(&args[0], &r)?;
            ("member", json!(ideal_member(&x, &ideal_literal(&args[1], &r)?)))
        }
        IdealOp::Inverse => {
            need(1)?;
            ("inverse", json!(frac_inverse(&ideal_literal(&args[0], &r)?)?.to_string()))
        }
        _ => {
            need(2)?;
            let (i, j) = (ideal_literal(&args[0], &r)?, ideal_literal(&args[1], &r)?);
            match op {
                IdealOp::Equals => ("equals", json!(i.equals(&j))),
                IdealOp::Sum => ("sum", json!(i.sum(&j).to_string())),
                IdealOp::Product => ("product", json!(i.product(&j).to_string())),
                IdealOp::Colon => ("colon", json!(i.colon(&j)?.to_string())),
                IdealOp::Intersect => ("intersect", json!(i.intersect(&j).to_string())),
                _ => unreachable!(),
            }
        }
    };
    let mut body = json!({"op": name, "operands": args, "result": result});
    let mut text = match &body["result"] {
        Value::String(s) => format!("{s}\n"),
        v => format!("{v}\n"),
    };
    if g.trace {
        let traces: Vec<Value> = args
            .iter()
            .filter_map(|a| ideal_literal(a, &r).ok())
            .map(|i| serde_json::to_value(i.basis().trace()).unwrap())
            .collect();
        for t in &traces {
            writeln!(text, "groebner ({}): {}", t["ordering"].as_str().unwrap_or(""), t["basis"])?;
        }
        body["trace"] = json!(traces);
    }
    Ok(Output::new("ideal", body, text))
}

pub fn content(g: &Global, f: &str) -> Result<Output> {
    let r = ring(g)?;
    let f = poly(f, &r)?;
    let a = content_a(&f)?;
    let kind = if f.degree() == Some(0) { "C(a)" } else { "A_f" };
    let gens: Vec<String> = content_generators(&f).iter().map(|c| c.to_string()).collect();
    let mut body = json!({"f": f.to_string(), "kind": kind, "content": a.to_string(), "generators": gens});
    let mut text = format!("{kind} = {a}\n");
    if g.trace {
        let t = a.basis().trace();
        writeln!(text, "groebner ({}): {:?}", t.ordering, t.basis)?;
        body["trace"] = serde_json::to_value(t)?;
    }
    Ok(Output::new("content", body, text))
}

pub fn dm(g: &Global, f: &str, gg: &str, cap: u32) -> Result<Output> {
    let r = ring(g)?;
    let (f, gp) = (poly(f, &r)?, poly(gg, &r)?);
    let (m, trace, status) = match dm_exponent(&f, &gp, cap) {
        Ok(res) => (Some(res.m), res.trace, Status::Ok),
        Err(Error::CapExceeded { cap, trace }) => {
            (None, trace, Status::Warning(format!("no exponent found for m <= {cap}")))
        }
        Err(e) => return Err(e.into()),
    };
    let mut body = json!({"f": f.to_string(), "g": gp.to_string(), "m": m, "cap": cap});
    let mut text = match m {
        Some(m) => format!("m = {m}\n"),
        None => format!("m > {cap} (cap reached)\n"),
    };
    if g.trace {
        for line in &trace {
            writeln!(text, "  {line}")?;
        }
        body["trace"] = json!(trace);
    }
    Ok(Output::new("dm", body, text).with_status(status))
}

fn gauss_text(out: &GaussOutcome, star: Option<&StarOp>) -> String {
    let (l, r) = match star {
        Some(s) => (format!("(A_f A_g)^{s}"), format!("(A_fg)^{s}")),
        None => ("A_f A_g".to_string(), "A_fg".to_string()),
    };
    let mut t = format!("{l:<10} = {}\n{r:<10} = {}\nequal: {}\n", out.lhs, out.rhs, out.equal);
    if let Some(w) = &out.to_json()["witness"].as_str() {
        let _ = writeln!(t, "witness: {w}");
    }
    t
}

pub fn gauss(g: &Global, f: &str, gg: &str, classical: bool) -> Result<Output> {
    let r = ring(g)?;
    let (f, gp) = (poly(f, &r)?, poly(gg, &r)?);
    let star = optional_star(g, &r)?;
    if classical && star.is_some() {
        bail!("--classical compares coefficient contents and takes no --star");
    }
    let out = if classical { classical_gauss_check(&f, &gp)? } else { gauss_check(&f, &gp, star.as_ref())? };
    let mut body = out.to_json();
    body["f"] = json!(f.to_string());
    body["g"] = json!(gp.to_string());
    body["star"] = json!(star.as_ref().map(|s| s.to_string()));
    body["classical"] = json!(classical);
    let status = if out.equal { Status::Ok } else { Status::Counterexample };
    let text = gauss_text(&out, star.as_ref());
    Ok(Output::new("gauss", body, text).with_status(status))
}

pub fn star(g: &Global, ideal: &str) -> Result<Output> {
    let r = ring(g)?;
    let s = star_or(g, &r, "v")?;
    let i = ideal_literal(ideal, &r)?;
    let c = s.apply(&i)?;
    let closed = c.equals(&i);
    let body = json!({"star": s.to_string(), "ideal": i.to_string(), "closure": c.to_string(), "closed": closed});
    let text = format!("{i}^{s} = {c}\nclosed: {closed}\n");
    Ok(Output::new("star", body, text))
}

pub fn nagata_member(g: &Global, f: &str) -> Result<Output> {
    let r = ring(g)?;
    let s = star_or(g, &r, "d")?;
    let f = poly(f, &r)?;
    let member = n_membership(&f, &s)?;
    let closure = s.apply(&content_a(&f)?)?;
    let cert = Certificate {
        kind: "nagata-membership".into(),
        witness_poly: Some(f.to_string()),
        aux_h: None,
        bound: None,
        verdict: if member { "member" } else { "not-member" }.into(),
    };
    let body = json!({"f": f.to_string(), "star": s.to_string(), "member": member,
        "content_closure": closure.to_string(), "certificate": cert.to_json()});
    let text = format!("{f} in N({s}): {member}\nA_f^{s} = {closure}\n");
    Ok(Output::new("nagata member", body, text))
}

pub fn nagata_invert(g: &Global, ideal: &str) -> Result<Output> {
    let r = ring(g)?;
    let s = star_or(g, &r, "d")?;
    let i = ideal_literal(ideal, &r)?;
    if !i.is_homogeneous() {
        bail!("ideal {i} is not homogeneous");
    }
    let inv = frac_inverse(&i)?;
    let prod = s.apply(&i.product(&inv))?;
    let invertible = is_star_invertible(&i, &s)?;
    // The stacked generators give f with A_f = sI; when I is ⋆-invertible,
    // f/s generates the extension of I to the Nagata ring.
    let gens: Vec<PolyX> = i.generators().iter().cloned().map(PolyX::constant).collect();
    let f = pic_generator(&gens)?;
    let den = i.denominator();
    let generator = if den.is_one() { f.to_string() } else { format!("({f})/({den})") };
    let cert = Certificate {
        kind: "star-invertibility".into(),
        witness_poly: invertible.then(|| generator.clone()),
        aux_h: None,
        bound: None,
        verdict: if invertible { "invertible" } else { "not-invertible" }.into(),
    };
    let body = json!({"ideal": i.to_string(), "star": s.to_string(), "inverse": inv.to_string(),
        "product_closure": prod.to_string(), "invertible": invertible, "certificate": cert.to_json()});
    let mut text = format!("I^-1 = {inv}\n(I I^-1)^{s} = {prod}\ninvertible: {invertible}\n");
    if invertible {
        writeln!(text, "extended generator: {generator}")?;
    }
    Ok(Output::new("nagata invert", body, text))
}

pub fn nagata_pic(g: &Global, fs: &[String]) -> Result<Output> {
    let r = ring(g)?;
    let fs: Vec<PolyX> = fs.iter().map(|f| poly(f, &r)).collect::<Result<_>>()?;
    let h = pic_generator(&fs)?;
    let mut sum = content_a(&fs[0])?;
    for f in &fs[1..] {
        sum = sum.sum(&content_a(f)?);
    }
    let ah = content_a(&h)?;
    let additive = ah.equals(&sum);
    let inputs: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    let body = json!({"inputs": inputs, "generator": h.to_string(), "content": ah.to_string(), "additive": additive});
    let text = format!("h = {h}\nA_h = {ah}\nadditive: {additive}\n");
    Ok(Output::new("nagata pic", body, text))
}

fn kr_mode(mode: Option<ModeArg>, bound: u32, s: &StarOp) -> KrMode {
    match mode {
        Some(ModeArg::Eab) => KrMode::Eab,
        Some(ModeArg::General) => KrMode::General { bound },
        None if s.eab_asserted() => KrMode::Eab,
        None => KrMode::General { bound },
    }
}

fn mode_name(m: KrMode) -> String {
    match m {
        KrMode::Eab | KrMode::EabAsserted => "eab".into(),
        KrMode::General { bound } => format!("general:{bound}"),
    }
}

pub fn kron_member(g: &Global, f: &str, gg: &str, mode: Option<ModeArg>, bound: u32) -> Result<Output> {
    let r = ring(g)?;
    let s = star_or(g, &r, "v")?;
    let (f, gp) = (poly(f, &r)?, poly(gg, &r)?);
    let mode = kr_mode(mode, bound, &s);
    let d = kr_member(&f, &gp, &s, mode)?;
    let mut body = d.to_json();
    body["f"] = json!(f.to_string());
    body["g"] = json!(gp.to_string());
    body["star"] = json!(s.to_string());
    body["mode"] = json!(mode_name(mode));
    let (verdict, status) = match &d {
        KrDecision::Member(_) => ("member", Status::Ok),
        KrDecision::NotMember => ("not member", Status::Ok),
        KrDecision::NotFoundAtBound { bound } => {
            ("not found at bound", Status::Warning(format!("no auxiliary h in the catalog of degree {bound}")))
        }
    };
    let mut text = format!("({f})/({gp}) in Kr(R, {s}): {verdict}\n");
    if let Some(h) = body["aux_h"].as_str() {
        writeln!(text, "auxiliary h: {h}")?;
    }
    Ok(Output::new("kron member", body, text).with_status(status))
}

pub fn kron_combine(g: &Global, fs: &[String], gg: &str, mode: Option<ModeArg>, bound: u32) -> Result<Output> {
    if fs.len() != 2 {
        bail!("kron combine takes exactly two --f numerators");
    }
    let r = ring(g)?;
    let s = star_or(g, &r, "v")?;
    let den = poly(gg, &r)?;
    let mode = kr_mode(mode, bound, &s);
    let mut fracs = Vec::new();
    for f in fs {
        let f = poly(f, &r)?;
        match kr_member(&f, &den, &s, mode)? {
            KrDecision::Member(k) => fracs.push(k),
            other => bail!("({f})/({den}) is not certified in Kr(R, {s}): {}", other.to_json()["verdict"]),
        }
    }
    let c = bezout_combine(&fracs[0], &fracs[1], mode)?;
    let mut body = c.to_json();
    body["star"] = json!(s.to_string());
    body["mode"] = json!(mode_name(mode));
    let text = format!(
        "gamma = ({})/({})\nalpha/gamma = ({})/({})\nbeta/gamma = ({})/({})\n",
        c.gamma.numerator(),
        c.gamma.denominator(),
        c.alpha_over_gamma.numerator(),
        c.alpha_over_gamma.denominator(),
        c.beta_over_gamma.numerator(),
        c.beta_over_gamma.denominator()
    );
    Ok(Output::new("kron combine", body, text))
}

pub fn suite_list(_g: &Global) -> Result<Output> {
    let rows: Vec<Value> =
        SUITES.iter().map(|s| json!({"name": s, "default_budget": suite::default_budget(s)})).collect();
    let text: String = SUITES.iter().map(|s| format!("{s} (budget {})\n", suite::default_budget(s))).collect();
    Ok(Output::new("suite list", json!({ "suites": rows }), text))
}

pub fn suite_run(g: &Global, name: &str) -> Result<Output> {
    let r = ring(g)?;
    let star = match &g.star {
        Some(s) => Some(StarOp::parse(s, &r)?),
        None => suite::default_star(name, &r)?,
    };
    let budget = g.budget.unwrap_or_else(|| suite::default_budget(name));
    let rep = suite::run_suite(name, &r, star.as_ref(), g.seed, budget)?;
    let body: Value = serde_json::from_str(&rep.to_json())?;
    let mut text = format!(
        "{} on {} (star {}): {} samples, {} pass, {} fail, {} bound-exhausted, {} vacuous\n",
        name,
        r.name(),
        star.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "none".into()),
        rep.samples,
        rep.pass,
        rep.fail,
        rep.bound_exhausted,
        rep.vacuous
    );
    for rec in rep.records.iter().filter(|rec| g.trace || !rec.pass()) {
        writeln!(text, "  [{:?}] {} {}: {}", rec.outcome, rec.check, rec.sample, rec.certificate)?;
    }
    let status = if rep.has_counterexample() {
        Status::Counterexample
    } else if rep.bound_exhausted > 0 {
        Status::Warning(format!("{} checks exhausted their search bound", rep.bound_exhausted))
    } else {
        Status::Ok
    };
    Ok(Output::new("suite run", body, text).with_status(status))
}

pub fn falsify(g: &Global, identity: &str, max_x_degree: usize, max_terms: usize, max_coef: i64) -> Result<Output> {
    let r = ring(g)?;
    let id = Identity::parse(identity)?;
    let star = optional_star(g, &r)?;
    let bounds = FamilyBounds { max_x_degree, max_terms, max_coef };
    let out = fz::falsify(id, &r, star.as_ref(), &bounds, g.budget.map(|b| b as u64))?;
    let mut body = serde_json::to_value(&out)?;
    body["identity"] = json!(id.name());
    body["ring"] = json!(r.name());
    body["bounds"] = serde_json::to_value(bounds)?;
    let (text, status) = match &out {
        FalsifyOutcome::Counterexample { checked, certificate, .. } => {
            let ok = fz::revalidate(certificate, &r)?;
            body["revalidated"] = json!(ok);
            (format!("counterexample after {checked} candidates (revalidated: {ok})\n{certificate:#}\n"), Status::Counterexample)
        }
        FalsifyOutcome::Exhausted { checked, family_size } => {
            (format!("exhausted: {checked} of {family_size} candidates checked, no counterexample\n"), Status::Ok)
        }
        FalsifyOutcome::BudgetReached { checked, family_size } => (
            format!("budget reached after {checked} of {family_size} candidates\n"),
            Status::Warning("the family was not exhausted".into()),
        ),
    };
    Ok(Output::new("falsify", body, text).with_status(status))
}
