//! Star operations on finitely generated fractional ideals: `d`, `v`, `t`
//! (= `v` on finitely generated input), `w` (alias of `t`, only on rings
//! flagged PvMD) and the catalog-bounded `⋆_a`.

use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::report::{CheckRecord, CheckReport, Outcome};
use crate::ring::{BaseDomain, Coef, Degree, GradedElement, HQuotientElement, RingFlag, RingRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicStar {
    D,
    V,
    T,
    W,
}

impl BasicStar {
    pub fn name(self) -> &'static str {
        match self {
            BasicStar::D => "d",
            BasicStar::V => "v",
            BasicStar::T => "t",
            BasicStar::W => "w",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "d" => BasicStar::D,
            "v" => BasicStar::V,
            "t" => BasicStar::T,
            "w" => BasicStar::W,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StarName {
    Basic(BasicStar),
    /// `(inner)_a` computed over the default catalog of degree `bound`.
    StarA { inner: BasicStar, bound: u32 },
}

pub const DEFAULT_CATALOG_DEGREE: u32 = 3;

#[derive(Clone)]
pub struct StarOp {
    name: StarName,
    ring: RingRef,
    catalog: Option<Arc<Vec<FracIdeal>>>,
}

impl fmt::Debug for StarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarOp({self})")
    }
}

impl fmt::Display for StarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            StarName::Basic(b) => write!(f, "{}", b.name()),
            StarName::StarA { inner: BasicStar::V, bound } => write!(f, "star_a:{bound}"),
            StarName::StarA { inner, bound } => write!(f, "star_a:{}:{bound}", inner.name()),
        }
    }
}

impl StarOp {
    pub fn new(name: StarName, ring: &RingRef) -> Result<Self> {
        let inner = match &name {
            StarName::Basic(b) => *b,
            StarName::StarA { inner, .. } => *inner,
        };
        if inner == BasicStar::W && !ring.has_flag(RingFlag::Pvmd) {
            return Err(Error::IncompatibleStar {
                star: "w".into(),
                ring: ring.name().into(),
                reason: "w is only provided as an alias of t on rings flagged pvmd".into(),
            });
        }
        let catalog = match &name {
            StarName::StarA { bound, .. } => Some(Arc::new(default_catalog(ring, *bound))),
            StarName::Basic(_) => None,
        };
        Ok(StarOp { name, ring: ring.clone(), catalog })
    }

    pub fn d(ring: &RingRef) -> Self {
        Self::new(StarName::Basic(BasicStar::D), ring).unwrap()
    }

    pub fn v(ring: &RingRef) -> Self {
        Self::new(StarName::Basic(BasicStar::V), ring).unwrap()
    }

    pub fn t(ring: &RingRef) -> Self {
        Self::new(StarName::Basic(BasicStar::T), ring).unwrap()
    }

    pub fn w(ring: &RingRef) -> Result<Self> {
        Self::new(StarName::Basic(BasicStar::W), ring)
    }

    /// Parses `d`, `v`, `t`, `w`, `star_a:N` (that is `(v)_a`) or
    /// `star_a:<s>:N`.
    pub fn parse(s: &str, ring: &RingRef) -> Result<Self> {
        if let Some(b) = BasicStar::parse(s) {
            return Self::new(StarName::Basic(b), ring);
        }
        let bad = || Error::Unknown { kind: "star operation", name: s.to_string() };
        let rest = s.strip_prefix("star_a:").ok_or_else(bad)?;
        let (inner, n) = match rest.split_once(':') {
            Some((i, n)) => (BasicStar::parse(i).ok_or_else(bad)?, n),
            None => (BasicStar::V, rest),
        };
        let bound: u32 = n.parse().map_err(|_| bad())?;
        Self::new(StarName::StarA { inner, bound }, ring)
    }

    pub fn name(&self) -> &StarName {
        &self.name
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_identity(&self) -> bool {
        self.name == StarName::Basic(BasicStar::D)
    }

    fn inner(&self) -> BasicStar {
        match &self.name {
            StarName::Basic(b) => *b,
            StarName::StarA { inner, .. } => *inner,
        }
    }

    /// The stable closure used by the Nagata-side statements: `d` for `d`,
    /// and the `w` alias (needs the pvmd flag) for `v`, `t`, `w`.
    pub fn tilde(&self) -> Result<StarOp> {
        match self.inner() {
            BasicStar::D => Ok(StarOp::d(&self.ring)),
            _ => StarOp::w(&self.ring).map_err(|_| Error::IncompatibleStar {
                star: self.to_string(),
                ring: self.ring.name().into(),
                reason: "the stable closure is only available on rings flagged pvmd".into(),
            }),
        }
    }

    /// Whether this operation may be treated as e.a.b. without sampling:
    /// `v`, `t`, `w` on rings flagged graded Krull.
    pub fn eab_asserted(&self) -> bool {
        matches!(self.name, StarName::Basic(BasicStar::V | BasicStar::T | BasicStar::W))
            && self.ring.has_flag(RingFlag::GradedKrull)
    }

    pub fn apply(&self, i: &FracIdeal) -> Result<FracIdeal> {
        if !i.ring().same(&self.ring) {
            return Err(Error::RingMismatch(self.ring.name().into(), i.ring().name().into()));
        }
        if i.is_zero() {
            return Err(Error::Zero("ideal"));
        }
        match &self.name {
            StarName::Basic(b) => apply_basic(*b, i),
            StarName::StarA { inner, .. } => {
                star_a_bounded_with(*inner, i, self.catalog.as_ref().unwrap())
            }
        }
    }

    pub fn catalog(&self) -> Option<&[FracIdeal]> {
        self.catalog.as_deref().map(|v| v.as_slice())
    }

    /// `1 ∈ (I·I⁻¹)^⋆`.
    pub fn is_invertible(&self, i: &FracIdeal) -> Result<bool> {
        let inv = i.inverse()?;
        Ok(self.apply(&i.product(&inv))?.contains_one())
    }
}

fn apply_basic(b: BasicStar, i: &FracIdeal) -> Result<FracIdeal> {
    match b {
        BasicStar::D => Ok(i.clone()),
        // t and w agree with v on finitely generated ideals.
        BasicStar::V | BasicStar::T | BasicStar::W => i.inverse()?.inverse(),
    }
}

fn star_a_bounded_with(inner: BasicStar, i: &FracIdeal, catalog: &[FracIdeal]) -> Result<FracIdeal> {
    if catalog.is_empty() {
        return Err(Error::Empty("catalog"));
    }
    let mut acc: Option<FracIdeal> = None;
    for h in catalog {
        let num = apply_basic(inner, &i.product(h))?;
        let den = apply_basic(inner, h)?;
        let part = num.colon(&den)?;
        acc = Some(match acc {
            None => part,
            Some(a) => a.sum(&part),
        });
    }
    Ok(acc.unwrap())
}

/// The ideal generated by `∪_{H ∈ catalog} ((I·H)^s : H^s)`.
pub fn star_a_bounded(s: &StarOp, i: &FracIdeal, catalog: &[FracIdeal]) -> Result<FracIdeal> {
    if catalog.is_empty() {
        return Err(Error::Empty("catalog"));
    }
    if i.is_zero() {
        return Err(Error::Zero("ideal"));
    }
    let mut acc: Option<FracIdeal> = None;
    for h in catalog {
        let part = s.apply(&i.product(h))?.colon(&s.apply(h)?)?;
        acc = Some(match acc {
            None => part,
            Some(a) => a.sum(&part),
        });
    }
    Ok(acc.unwrap())
}

/// Degrees of Γ with L1 norm at most `n`, in (L1, lex) order.
pub fn small_degrees(ring: &RingRef, n: u32) -> Vec<Degree> {
    let dim = ring.dim();
    let n = n as i64;
    let mut out = Vec::new();
    let mut cur = vec![-n; dim];
    loop {
        let d = Degree::from_slice(&cur);
        if d.l1() <= n && ring.monoid().contains(&d) {
            out.push(d);
        }
        let mut k = 0;
        loop {
            if k == dim {
                out.sort_by(|a, b| a.l1().cmp(&b.l1()).then_with(|| a.cmp(b)));
                return out;
            }
            cur[k] += 1;
            if cur[k] > n {
                cur[k] = -n;
                k += 1;
            } else {
                break;
            }
        }
    }
}

/// Homogeneous ideals with at most two term generators `c·t^γ`,
/// `‖γ‖₁ ≤ n`, coefficients `{1}` over Q or `{1, 2, 3}` over Z; deduplicated
/// by ideal equality, unit ideal first.
pub fn default_catalog(ring: &RingRef, n: u32) -> Vec<FracIdeal> {
    let coefs: Vec<i64> = match ring.base() {
        BaseDomain::Rationals => vec![1],
        BaseDomain::Integers => vec![1, 2, 3],
    };
    let mut terms = Vec::new();
    for d in small_degrees(ring, n) {
        for &c in &coefs {
            terms.push(GradedElement::raw_term(ring, Coef::from_integer(c.into()), d.clone()));
        }
    }
    let mut out: Vec<FracIdeal> = vec![FracIdeal::unit(ring)];
    let push = |i: FracIdeal, out: &mut Vec<FracIdeal>| {
        if !out.iter().any(|o| o.equals(&i)) {
            out.push(i);
        }
    };
    for a in &terms {
        push(FracIdeal::principal(a), &mut out);
    }
    for (k, a) in terms.iter().enumerate() {
        for b in &terms[k + 1..] {
            push(FracIdeal::integral(ring, vec![a.clone(), b.clone()]).unwrap(), &mut out);
        }
    }
    out
}

fn ideal_json(i: &FracIdeal) -> serde_json::Value {
    json!(i.to_string())
}

fn frac_json(n: &GradedElement, d: &GradedElement) -> serde_json::Value {
    if d.is_one() {
        json!(n.to_string())
    } else {
        json!(format!("({n})/({d})"))
    }
}

/// One axiom-check sample: `E`, a superset `F ⊇ E`, and a homogeneous
/// scalar `x`.
#[derive(Clone, Debug)]
pub struct AxiomSample {
    pub e: FracIdeal,
    pub f: FracIdeal,
    pub x: HQuotientElement,
}

/// Checks extensivity, monotonicity, idempotence, the scaling law, and
/// `d ≤ s ≤ v` on every sample.
pub fn star_axiom_check(s: &StarOp, samples: &[AxiomSample]) -> Result<CheckReport> {
    let v = StarOp::v(s.ring());
    let mut rep = CheckReport::default();
    for (k, smp) in samples.iter().enumerate() {
        let label = format!("#{k}: E={}, F={}, x={}", smp.e, smp.f, smp.x);
        let es = s.apply(&smp.e)?;
        let record = |name: &str, bad: Option<serde_json::Value>| {
            CheckRecord::new(
                name,
                label.clone(),
                if bad.is_some() { Outcome::Fail } else { Outcome::Pass },
                bad.unwrap_or(serde_json::Value::Null),
            )
        };
        // scaling
        let xe = smp.e.scale_quotient(&smp.x);
        let lhs = s.apply(&xe)?;
        let rhs = es.scale_quotient(&smp.x);
        let bad = (!lhs.equals(&rhs)).then(|| json!({"lhs": ideal_json(&lhs), "rhs": ideal_json(&rhs)}));
        rep.push(record("star1-scaling", bad));
        // monotone
        let premise = smp.e.is_subset(&smp.f);
        if premise {
            let fs = s.apply(&smp.f)?;
            let bad = es.first_outside(&fs).map(|(n, d)| json!({"witness": frac_json(&n, &d)}));
            rep.push(record("star2-monotone", bad));
        } else {
            rep.push(CheckRecord::new("star2-monotone", label.clone(), Outcome::Vacuous, json!(null)));
        }
        // extensive
        let bad = smp.e.first_outside(&es).map(|(n, d)| json!({"witness": frac_json(&n, &d)}));
        rep.push(record("star3-extensive", bad));
        // idempotent
        let ess = s.apply(&es)?;
        let bad = (!ess.equals(&es)).then(|| json!({"closure": ideal_json(&es), "closure_twice": ideal_json(&ess)}));
        rep.push(record("star4-idempotent", bad));
        // d <= s <= v
        let ev = v.apply(&smp.e)?;
        let bad = es.first_outside(&ev).map(|(n, d)| json!({"witness_outside_v": frac_json(&n, &d)}));
        rep.push(record("order-d-le-s-le-v", bad));
    }
    Ok(rep)
}

/// For each triple with `(EF)^s ⊆ (EG)^s`, records whether `F^s ⊆ G^s`.
pub fn eab_evidence(s: &StarOp, triples: &[(FracIdeal, FracIdeal, FracIdeal)]) -> Result<CheckReport> {
    let mut rep = CheckReport::default();
    for (k, (e, f, g)) in triples.iter().enumerate() {
        let label = format!("#{k}: E={e}, F={f}, G={g}");
        let ef = s.apply(&e.product(f))?;
        let eg = s.apply(&e.product(g))?;
        if !ef.is_subset(&eg) {
            rep.push(CheckRecord::new("eab", label, Outcome::Vacuous, json!(null)));
            continue;
        }
        let fs = s.apply(f)?;
        let gs = s.apply(g)?;
        match fs.first_outside(&gs) {
            None => rep.push(CheckRecord::new("eab", label, Outcome::Pass, json!(null))),
            Some((n, d)) => rep.push(CheckRecord::new(
                "eab",
                label,
                Outcome::Fail,
                json!({
                    "EF_star": ideal_json(&ef),
                    "EG_star": ideal_json(&eg),
                    "witness_in_F_star_not_G_star": frac_json(&n, &d),
                }),
            )),
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal_parts, parse_quotient};
    use crate::registry;

    fn ideal(s: &str, r: &RingRef) -> FracIdeal {
        let (g, d) = parse_ideal_parts(s, r).unwrap();
        FracIdeal::new(r, g, d).unwrap()
    }

    #[test]
    fn v_closure_examples() {
        let q = registry::shipped("poly_q2").unwrap();
        let v = StarOp::v(&q);
        assert!(v.apply(&ideal("(x, y)", &q)).unwrap().equals(&FracIdeal::unit(&q)));
        let g = ideal("(x^2 + y)", &q);
        assert!(v.apply(&g).unwrap().equals(&g));
        let d = StarOp::d(&q);
        let m = ideal("(x, y^2)", &q);
        assert!(d.apply(&m).unwrap().equals(&m));
        assert!(v.apply(&FracIdeal::zero(&q)).is_err());
    }

    #[test]
    fn w_requires_pvmd_flag() {
        let v = registry::shipped("veronese_q").unwrap();
        assert!(matches!(StarOp::w(&v), Err(Error::IncompatibleStar { .. })));
        assert!(StarOp::w(&registry::shipped("poly_q2").unwrap()).is_ok());
        assert!(StarOp::parse("star_a:w:2", &v).is_err());
    }

    #[test]
    fn parse_names() {
        let q = registry::shipped("poly_q2").unwrap();
        assert_eq!(StarOp::parse("star_a:2", &q).unwrap().to_string(), "star_a:2");
        assert_eq!(StarOp::parse("star_a:d:1", &q).unwrap().to_string(), "star_a:d:1");
        assert!(StarOp::parse("b", &q).is_err());
        assert!(StarOp::parse("star_a:x", &q).is_err());
    }

    #[test]
    fn star_a_examples() {
        let q = registry::shipped("poly_q2").unwrap();
        let v = StarOp::v(&q);
        let unit_only = vec![FracIdeal::unit(&q)];
        let m = ideal("(x, y)", &q);
        assert!(star_a_bounded(&v, &m, &unit_only).unwrap().equals(&FracIdeal::unit(&q)));
        let g = ideal("(x + y)", &q);
        let cat = default_catalog(&q, 2);
        assert!(star_a_bounded(&v, &g, &cat).unwrap().equals(&g));
        assert!(star_a_bounded(&v, &g, &[]).is_err());
        let small = star_a_bounded(&StarOp::d(&q), &ideal("(x^2, y^2)", &q), &cat[..3]).unwrap();
        let large = star_a_bounded(&StarOp::d(&q), &ideal("(x^2, y^2)", &q), &cat).unwrap();
        assert!(small.is_subset(&large));
    }

    #[test]
    fn catalog_contents() {
        let z = registry::shipped("laurent_z").unwrap();
        let cat = default_catalog(&z, 3);
        // every homogeneous ideal of Z[t,t^-1] is principal: (1), (2), (3)
        assert_eq!(cat.len(), 3);
        let q = registry::shipped("poly_q2").unwrap();
        let cat = default_catalog(&q, 1);
        // (1), (x), (y), (x, y)
        assert_eq!(cat.len(), 4);
    }

    #[test]
    fn d_is_not_eab_on_polynomials() {
        let q = registry::shipped("poly_q2").unwrap();
        let e = ideal("(x, y)", &q);
        let f = ideal("(x*y)", &q);
        let g = ideal("(x^2, y^2)", &q);
        let rep = eab_evidence(&StarOp::d(&q), &[(e, f, g)]).unwrap();
        assert_eq!(rep.count(Outcome::Fail), 1);
        let e = ideal("(x)", &q);
        let rep = eab_evidence(&StarOp::d(&q), &[(e, ideal("(y)", &q), ideal("(y, x^2)", &q))]).unwrap();
        assert!(rep.all_pass());
    }

    #[test]
    fn axioms_hold_for_unit_scaling() {
        let z = registry::shipped("laurent_z").unwrap();
        let e = ideal("(2 + t, 4)", &z);
        let f = e.sum(&ideal("(t + 3)", &z));
        let x = parse_quotient("t", &z).unwrap();
        for s in ["d", "v", "t", "w"] {
            let op = StarOp::parse(s, &z).unwrap();
            let rep = star_axiom_check(&op, &[AxiomSample { e: e.clone(), f: f.clone(), x: x.clone() }]).unwrap();
            assert!(rep.all_pass(), "{s}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
