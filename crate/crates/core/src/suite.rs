//! Seeded theorem suites producing `report_v1` JSON.
//!
//! Samples are drawn sequentially from one seeded stream, then evaluated in
//! parallel with an order-preserving collect, so the report does not depend
//! on the worker count.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::content::{content_a, dm_exponent, gauss_check, DEFAULT_DM_CAP};
use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::kron::{bezout_combine, closure_check, kr_member, representation_check, KrDecision, KrMode};
use crate::nagata::{cor_c_evidence, n_saturation_check, pic_generator, DEFAULT_WITNESS_BOUND};
use crate::report::{CheckRecord, Outcome, SCHEMA};
use crate::ring::{GradedElement, PolyX, RingFlag, RingRef};
use crate::sample::Sampler;
use crate::star::{default_catalog, star_a_bounded, StarOp};

pub const SUITES: [&str; 8] = ["dm", "gauss-cp", "gauss-v", "nkp1-9", "n-sat", "kron-bezout", "pic", "krull-pid"];

/// Catalog degrees compared by `nkp1-9`; agreement of the two is reported as
/// empirical stabilization.
pub const NKP_CATALOG_DEGREES: (u32, u32) = (1, 2);

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub ring: String,
    pub star: Option<String>,
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
    pub pass: usize,
    pub fail: usize,
    pub bound_exhausted: usize,
    pub vacuous: usize,
    pub summary: Value,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn has_counterexample(&self) -> bool {
        self.fail > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fail)
    }
}

/// The star used when none is given.
pub fn default_star(suite: &str, ring: &RingRef) -> Result<Option<StarOp>> {
    Ok(match suite {
        "dm" => None,
        "gauss-cp" | "n-sat" | "pic" => Some(StarOp::d(ring)),
        "gauss-v" | "nkp1-9" | "kron-bezout" | "krull-pid" => Some(StarOp::v(ring)),
        _ => return Err(Error::Unknown { kind: "suite", name: suite.into() }),
    })
}

pub fn default_budget(suite: &str) -> usize {
    match suite {
        "dm" | "kron-bezout" => 200,
        "gauss-cp" | "gauss-v" | "n-sat" => 500,
        "nkp1-9" => 20,
        _ => 100,
    }
}

fn incompatible(s: &StarOp, ring: &RingRef, reason: &str) -> Error {
    Error::IncompatibleStar { star: s.to_string(), ring: ring.name().into(), reason: reason.into() }
}

fn par_eval<T: Sync, F>(items: &[T], f: F) -> Result<Vec<CheckRecord>>
where
    F: Fn(&T) -> Result<Vec<CheckRecord>> + Sync + Send,
{
    let parts: Vec<Result<Vec<CheckRecord>>> = items.par_iter().map(f).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn pair_label(f: &PolyX, g: &PolyX) -> String {
    format!("f={f}; g={g}")
}

/// Canonical Gauss probes from the first two monoid generators `a`, `b`:
/// `(a + bX, a − bX)` and `(a + bX, b + aX)`.
fn gauss_probes(ring: &RingRef) -> Vec<(PolyX, PolyX)> {
    let gens = ring.monoid().generators();
    if gens.len() < 2 {
        return Vec::new();
    }
    let one = crate::ring::Coef::from_integer(1.into());
    let a = GradedElement::raw_term(ring, one.clone(), gens[0].clone());
    let b = GradedElement::raw_term(ring, one, gens[1].clone());
    let z = GradedElement::zero(ring);
    let p = |c0: &GradedElement, c1: &GradedElement| PolyX::new(ring, vec![c0.clone(), c1.clone()]);
    vec![(p(&a, &b), p(&a, &(&z - &b))), (p(&a, &b), p(&b, &a))]
}

fn sample_pairs(sm: &mut Sampler, n: usize) -> Vec<(PolyX, PolyX)> {
    (0..n).map(|_| (sm.polyx(), sm.polyx())).collect()
}

pub fn run_suite(name: &str, ring: &RingRef, star: Option<&StarOp>, seed: u64, budget: usize) -> Result<SuiteReport> {
    let star = match star {
        Some(s) => Some(s.clone()),
        None => default_star(name, ring)?,
    };
    if let Some(s) = &star {
        if !s.ring().same(ring) {
            return Err(Error::RingMismatch(ring.name().into(), s.ring().name().into()));
        }
    }
    let mut sm = Sampler::new(ring, seed);
    let mut summary = json!({});
    let records = match name {
        "dm" => {
            let items: Vec<(PolyX, PolyX, GradedElement)> =
                (0..budget).map(|_| (sm.polyx(), sm.polyx(), sm.term())).collect();
            let recs = par_eval(&items, |(f, g, a)| {
                let mono = PolyX::constant(a.clone());
                let mut out = Vec::new();
                for (check, f) in [("dm-exponent", f), ("dm-monomial-content", &mono)] {
                    let rec = match dm_exponent(f, g, DEFAULT_DM_CAP) {
                        Ok(r) => {
                            let ok = check == "dm-exponent" || r.m == 1;
                            CheckRecord::new(
                                check,
                                pair_label(f, g),
                                if ok { Outcome::Pass } else { Outcome::Fail },
                                json!({"m": r.m, "trace": r.trace}),
                            )
                        }
                        Err(Error::CapExceeded { cap, trace }) => CheckRecord::new(
                            check,
                            pair_label(f, g),
                            Outcome::BoundExhausted,
                            json!({"cap": cap, "trace": trace}),
                        ),
                        Err(e) => return Err(e),
                    };
                    out.push(rec);
                }
                Ok(out)
            })?;
            let ms: Vec<u64> = recs
                .iter()
                .filter(|r| r.check == "dm-exponent")
                .filter_map(|r| r.certificate.get("m").and_then(|m| m.as_u64()))
                .collect();
            let mut hist = std::collections::BTreeMap::new();
            for m in &ms {
                *hist.entry(m.to_string()).or_insert(0u64) += 1;
            }
            summary = json!({"max_m": ms.iter().max(), "found": ms.len(), "m_histogram": hist, "cap": DEFAULT_DM_CAP});
            recs
        }
        "gauss-cp" | "gauss-v" => {
            let s = star.clone().unwrap();
            if name == "gauss-v" && !ring.has_flag(RingFlag::IntegrallyClosed) {
                return Err(incompatible(&s, ring, "gauss-v applies to rings flagged integrally_closed"));
            }
            let mut items = gauss_probes(ring);
            items.truncate(budget);
            let rest = budget - items.len();
            items.extend(sample_pairs(&mut sm, rest));
            let sref = if s.is_identity() { None } else { Some(&s) };
            let check = if name == "gauss-cp" { "gauss" } else { "gauss-star" };
            par_eval(&items, |(f, g)| {
                let out = gauss_check(f, g, sref)?;
                let mut c = out.to_json();
                c["f"] = json!(f.to_string());
                c["g"] = json!(g.to_string());
                Ok(vec![CheckRecord::new(check, pair_label(f, g), if out.equal { Outcome::Pass } else { Outcome::Fail }, c)])
            })?
        }
        "nkp1-9" => {
            let s = star.clone().unwrap();
            let tilde = s.tilde()?;
            let (n0, n1) = NKP_CATALOG_DEGREES;
            let (c0, c1) = (default_catalog(ring, n0), default_catalog(ring, n1));
            let items: Vec<FracIdeal> = (0..budget).map(|_| sm.ideal(3)).collect();
            let recs = par_eval(&items, |i| {
                let lhs = tilde.apply(i)?;
                let r0 = star_a_bounded(&tilde, i, &c0)?;
                let r1 = star_a_bounded(&tilde, i, &c1)?;
                // The unit ideal is in the catalog, so r1 ⊇ I^{~}; anything
                // strictly larger is a counterexample.
                let ok = r1.is_subset(&lhs);
                Ok(vec![CheckRecord::new(
                    "tilde-equals-tilde-a",
                    format!("I={i}"),
                    if ok { Outcome::Pass } else { Outcome::Fail },
                    json!({
                        "I": i.to_string(),
                        "tilde": lhs.to_string(),
                        "tilde_a_bounded": r1.to_string(),
                        "catalog_degree": n1,
                        "stable_from_previous_degree": r0.equals(&r1),
                    }),
                )])
            })?;
            let stable = recs.iter().filter(|r| r.certificate["stable_from_previous_degree"] == json!(true)).count();
            summary = json!({"catalog_degrees": [n0, n1], "stable_samples": stable});
            recs
        }
        "n-sat" => {
            let s = star.clone().unwrap();
            let items = sample_pairs(&mut sm, budget);
            par_eval(&items, |p| Ok(n_saturation_check(&s, std::slice::from_ref(p))?.records))?
        }
        "kron-bezout" => {
            let s = star.clone().unwrap();
            let mode = if s.eab_asserted() { KrMode::Eab } else { KrMode::General { bound: 1 } };
            let items: Vec<[PolyX; 5]> =
                (0..budget).map(|_| [sm.polyx(), sm.polyx(), sm.polyx(), sm.polyx(), sm.polyx()]).collect();
            summary = json!({"mode": format!("{mode:?}")});
            par_eval(&items, |[f, g, h, k, m]| kron_sample(&s, mode, f, g, h, k, m))?
        }
        "pic" => {
            let s = star.clone().unwrap();
            let items: Vec<(Vec<PolyX>, FracIdeal)> = (0..budget)
                .map(|_| {
                    let n = sm.rng().gen_range(1..=4);
                    ((0..n).map(|_| sm.polyx()).collect(), sm.ideal(3))
                })
                .collect();
            par_eval(&items, |(fs, i)| pic_sample(&s, fs, i))?
        }
        "krull-pid" => {
            let s = star.clone().unwrap();
            if !ring.has_flag(RingFlag::GradedKrull) {
                return Err(incompatible(&s, ring, "krull-pid applies to rings flagged graded_krull"));
            }
            let items: Vec<FracIdeal> = (0..budget).map(|_| sm.ideal(3)).collect();
            par_eval(&items, |i| {
                let inv = s.is_invertible(i)?;
                let gens: Vec<PolyX> = i.generators().iter().map(|g| PolyX::constant(g.clone())).collect();
                let p = pic_generator(&gens)?;
                let mut recs = vec![CheckRecord::new(
                    "krull-t-invertible",
                    format!("I={i}"),
                    if inv { Outcome::Pass } else { Outcome::Fail },
                    json!({"I": i.to_string()}),
                )];
                let ev = cor_c_evidence(&p, &s, DEFAULT_WITNESS_BOUND)?;
                let ok = ev.records.iter().all(|r| r.outcome == Outcome::Pass);
                recs.push(CheckRecord::new(
                    "krull-extended-principal",
                    format!("I={i}; generator={p}"),
                    if ok { Outcome::Pass } else if ev.all_pass() { Outcome::BoundExhausted } else { Outcome::Fail },
                    json!({"generator": p.to_string(), "witnesses": ev.records.iter().map(|r| r.certificate.clone()).collect::<Vec<_>>()}),
                ));
                Ok(recs)
            })?
        }
        _ => return Err(Error::Unknown { kind: "suite", name: name.into() }),
    };
    let count = |o| records.iter().filter(|r| r.outcome == o).count();
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: name.into(),
        ring: ring.name().into(),
        star: star.map(|s| s.to_string()),
        seed,
        budget,
        samples: budget,
        pass: count(Outcome::Pass),
        fail: count(Outcome::Fail),
        bound_exhausted: count(Outcome::BoundExhausted),
        vacuous: count(Outcome::Vacuous),
        summary,
        records,
    })
}

/// Bézout collapse plus closure and representation checks on one sample.
/// Fractions that are not members are replaced by `f·h/h`, which always is.
fn kron_sample(s: &StarOp, mode: KrMode, f: &PolyX, g: &PolyX, h: &PolyX, k: &PolyX, m: &PolyX) -> Result<Vec<CheckRecord>> {
    let member = |num: &PolyX| -> Result<(PolyX, KrDecision)> {
        let d = kr_member(num, h, s, mode)?;
        if d.accepted() {
            return Ok((num.clone(), d));
        }
        let num = num.mul(h);
        let d = kr_member(&num, h, s, mode)?;
        Ok((num, d))
    };
    let (f, da) = member(f)?;
    let (g, db) = member(g)?;
    let mut out = Vec::new();
    let label = format!("f={f}; g={g}; h={h}");
    let (Some(a), Some(b)) = (da.fraction(), db.fraction()) else {
        out.push(CheckRecord::new("kr-bezout-collapse", label, Outcome::BoundExhausted, json!({"alpha": da.to_json(), "beta": db.to_json()})));
        return Ok(out);
    };
    match bezout_combine(a, b, mode) {
        Ok(c) => {
            let ok = c.gamma.revalidate()? && c.alpha_over_gamma.revalidate()? && c.beta_over_gamma.revalidate()?;
            out.push(CheckRecord::new("kr-bezout-collapse", label.clone(), if ok { Outcome::Pass } else { Outcome::Fail }, c.to_json()));
        }
        Err(Error::Invalid(msg)) => {
            let o = if matches!(mode, KrMode::General { .. }) && msg.contains("not-found-at-bound") { Outcome::BoundExhausted } else { Outcome::Fail };
            out.push(CheckRecord::new("kr-bezout-collapse", label.clone(), o, json!({"error": msg})));
        }
        Err(e) => return Err(e),
    }
    out.extend(closure_check(a, b, mode)?);
    // Equal fraction pair: f/h = (f·k)/(h·k).
    let quad = (f.clone(), h.clone(), f.mul(k), h.mul(k));
    out.extend(representation_check(s, mode, &[quad])?.records);
    // A second representation with an unrelated factor.
    let quad = (g.clone(), h.clone(), g.mul(m), h.mul(m));
    out.extend(representation_check(s, mode, &[quad])?.records);
    Ok(out)
}

/// Content additivity of `pic_generator`, and principality of the extended
/// ideal of a ⋆-invertible homogeneous ideal.
fn pic_sample(s: &StarOp, fs: &[PolyX], i: &FracIdeal) -> Result<Vec<CheckRecord>> {
    let p = pic_generator(fs)?;
    let lhs = content_a(&p)?;
    let mut rhs = content_a(&fs[0])?;
    for f in &fs[1..] {
        rhs = rhs.sum(&content_a(f)?);
    }
    let label = fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ; ");
    let mut out = vec![CheckRecord::new(
        "pic-content-additivity",
        label,
        if lhs.equals(&rhs) { Outcome::Pass } else { Outcome::Fail },
        json!({"generator": p.to_string(), "A_generator": lhs.to_string(), "sum_of_contents": rhs.to_string()}),
    )];
    if s.is_invertible(i)? {
        let gens: Vec<PolyX> = i.generators().iter().map(|g| PolyX::constant(g.clone())).collect();
        let q = pic_generator(&gens)?;
        let ev = cor_c_evidence(&q, s, DEFAULT_WITNESS_BOUND)?;
        let ok = ev.records.iter().all(|r| r.outcome == Outcome::Pass);
        out.push(CheckRecord::new(
            "pic-invertible-is-principal",
            format!("I={i}; generator={q}"),
            if ok { Outcome::Pass } else if ev.all_pass() { Outcome::BoundExhausted } else { Outcome::Fail },
            json!({"generator": q.to_string(), "witnesses": ev.records.iter().map(|r| r.certificate.clone()).collect::<Vec<_>>()}),
        ));
    } else {
        out.push(CheckRecord::new("pic-invertible-is-principal", format!("I={i}"), Outcome::Vacuous, json!(null)));
    }
    Ok(out)
}
