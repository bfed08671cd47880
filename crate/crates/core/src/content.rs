//! Homogeneous contents `C(a)` and `A_f`, the graded Dedekind–Mertens
//! exponent, and Gauss-type identity checks.

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::report::{CheckRecord, CheckReport, Outcome};
use crate::ring::{BaseDomain, Coef, Degree, GradedElement, HQuotientElement, PolyX};
use crate::star::StarOp;

/// `C(a)`: the ideal generated by the homogeneous components of `a`.
pub fn content_c(a: &GradedElement) -> Result<FracIdeal> {
    if a.is_zero() {
        return Err(Error::Zero("element"));
    }
    FracIdeal::integral(a.ring(), a.components())
}

/// `A_f = Σ C(f_i)`.
pub fn content_a(f: &PolyX) -> Result<FracIdeal> {
    if f.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    let gens = f.coeffs().iter().flat_map(|c| c.components()).collect();
    FracIdeal::integral(f.ring(), gens)
}

/// Raw generator list of `A_f`: one homogeneous term per term of `f`.
pub fn content_generators(f: &PolyX) -> Vec<GradedElement> {
    f.coeffs().iter().flat_map(|c| c.components()).collect()
}

/// Clears the denominators of an `R_H[X]` element by a homogeneous
/// multiplier: returns `(c·f, c)` with `c·f ∈ R[X]`.
pub fn clear_denominators(f: &PolyX) -> (PolyX, GradedElement) {
    let ring = f.ring().clone();
    if f.in_ring() {
        return (f.clone(), GradedElement::one(&ring));
    }
    let mut all = GradedElement::zero(&ring);
    let mut lcm = num_bigint::BigInt::one();
    for c in f.coeffs() {
        // Only the joint support and the coefficient denominators matter.
        for (d, k) in c.terms() {
            lcm = lcm.lcm(k.denom());
            all = &all + &GradedElement::raw_term(&ring, Coef::one(), d.clone());
        }
    }
    let q = HQuotientElement::from_value(&all);
    let mut mult = q.denominator().clone();
    if ring.base() == BaseDomain::Integers {
        let deg = mult.as_term().map(|(d, _)| d.clone()).unwrap();
        mult = GradedElement::raw_term(&ring, Coef::from_integer(lcm), deg);
    }
    (f.scale(&mult), mult)
}

#[derive(Clone, Debug, Serialize)]
pub struct DmResult {
    pub m: u32,
    pub trace: Vec<String>,
}

pub const DEFAULT_DM_CAP: u32 = 8;

/// Least `m ≥ 1` with `A_f^{m+1} A_g = A_f^m A_{fg}`.
pub fn dm_exponent(f: &PolyX, g: &PolyX, cap: u32) -> Result<DmResult> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    let (f, _) = clear_denominators(f);
    let (g, _) = clear_denominators(g);
    let af = content_a(&f)?;
    let ag = content_a(&g)?;
    let afg = content_a(&f.mul(&g))?;
    let mut trace = Vec::new();
    let mut pow = af.clone(); // A_f^m
    for m in 1..=cap {
        let lhs = pow.product(&af).product(&ag);
        let rhs = pow.product(&afg);
        let eq = lhs.equals(&rhs);
        trace.push(format!("m={m}: {}", if eq { "equal" } else { "differ" }));
        if eq {
            return Ok(DmResult { m, trace });
        }
        pow = pow.product(&af);
    }
    Err(Error::CapExceeded { cap, trace })
}

#[derive(Clone, Debug)]
pub struct GaussOutcome {
    pub lhs: FracIdeal,
    pub rhs: FracIdeal,
    pub equal: bool,
    /// An element of `lhs` outside `rhs`, as `(numerator, denominator)`.
    pub witness: Option<(GradedElement, GradedElement)>,
}

impl GaussOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "equal": self.equal,
            "witness": self.witness.as_ref().map(|(n, d)| format_fraction(n, d)),
        })
    }
}

pub fn format_fraction(n: &GradedElement, d: &GradedElement) -> String {
    if d.is_one() {
        n.to_string()
    } else {
        HQuotientElement::new(n.clone(), d.clone())
            .map(|q| q.to_string())
            .unwrap_or_else(|_| format!("({n})/({d})"))
    }
}

fn witness_key(n: &GradedElement) -> (i64, Degree) {
    let d = n.terms().keys().next_back().cloned().unwrap_or_default();
    (n.terms().keys().map(|k| k.l1()).max().unwrap_or(0), d)
}

/// `±n`, signed so that the first printed coefficient is positive.
fn positive_leading(n: &GradedElement) -> GradedElement {
    match n.leading_for_print() {
        Some((_, c)) if c.is_negative() => -n,
        _ => n.clone(),
    }
}

/// Compares `(A_f A_g)^s` with `(A_{fg})^s`; `s = None` compares the ideals
/// themselves.
pub fn gauss_check(f: &PolyX, g: &PolyX, s: Option<&StarOp>) -> Result<GaussOutcome> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    gauss_compare(content_a(f)?.product(&content_a(g)?), content_a(&f.mul(g))?, s)
}

/// Compares `lhs^s` with `rhs^s` and picks the smallest generator of the
/// left side outside the right side as witness.
pub fn gauss_compare(mut lhs: FracIdeal, mut rhs: FracIdeal, s: Option<&StarOp>) -> Result<GaussOutcome> {
    if let Some(s) = s {
        lhs = s.apply(&lhs)?;
        rhs = s.apply(&rhs)?;
    }
    let witness = lhs
        .generators()
        .iter()
        .filter(|n| !rhs.contains_fraction(n, lhs.denominator()))
        .min_by(|a, b| witness_key(a).cmp(&witness_key(b)))
        .map(|n| (positive_leading(n), lhs.denominator().clone()));
    let equal = witness.is_none() && rhs.is_subset(&lhs);
    Ok(GaussOutcome { lhs, rhs, equal, witness })
}

/// Classical content `c(f)`: the ideal generated by the coefficients of `f`
/// themselves, not their homogeneous components.
pub fn classical_content(f: &PolyX) -> Result<FracIdeal> {
    if f.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    FracIdeal::integral(f.ring(), f.coeffs().iter().filter(|c| !c.is_zero()).cloned().collect())
}

/// `c(f)c(g)` against `c(fg)`.
pub fn classical_gauss_check(f: &PolyX, g: &PolyX) -> Result<GaussOutcome> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    gauss_compare(classical_content(f)?.product(&classical_content(g)?), classical_content(&f.mul(g))?, None)
}

/// `(a, b)^2 = (a^2, b^2)` for homogeneous `a`, `b`.
pub fn square_identity_check(a: &GradedElement, b: &GradedElement) -> Result<bool> {
    for e in [a, b] {
        if e.is_zero() {
            return Err(Error::Zero("element"));
        }
        if !e.is_homogeneous() {
            return Err(Error::NotHomogeneous(e.to_string()));
        }
    }
    let ab = FracIdeal::integral(a.ring(), vec![a.clone(), b.clone()])?;
    let sq = FracIdeal::integral(a.ring(), vec![a * a, b * b])?;
    Ok(ab.pow(2).equals(&sq))
}

/// For each probe `q ∈ R_H[X]` with `f·q ∈ R[X]`, checks that every
/// coefficient of `q` lies in `A_f⁻¹`; also checks `f·h ∈ R[X]` for each
/// generator `h` of `A_f⁻¹`.
pub fn content_colon_check(f: &PolyX, probes: &[PolyX]) -> Result<CheckReport> {
    let af = content_a(f)?;
    let inv = af.inverse()?;
    let mut rep = CheckReport::default();
    for (k, q) in probes.iter().enumerate() {
        let fq = f.mul(q);
        if !fq.in_ring() {
            return Err(Error::Invalid(format!("probe #{k} ({q}): f·q is not in R[X]")));
        }
        let bad = q
            .coeffs()
            .iter()
            .find(|c| !c.is_zero() && !inv.contains(&HQuotientElement::from_value(c)));
        rep.push(CheckRecord::new(
            "probe-in-f-Af-inverse",
            format!("#{k}: q={q}"),
            if bad.is_some() { Outcome::Fail } else { Outcome::Pass },
            bad.map_or(json!(null), |c| json!({"coefficient_outside_Af_inverse": c.to_string()})),
        ));
    }
    for (n, d) in inv.generator_fractions() {
        let h = PolyX::constant(n.exact_div(&d).unwrap());
        let fh = f.mul(&h);
        rep.push(CheckRecord::new(
            "constructed-f-h-in-RX",
            format!("h={}", format_fraction(&n, &d)),
            if fh.in_ring() { Outcome::Pass } else { Outcome::Fail },
            json!({"f_h": fh.to_string()}),
        ));
    }
    Ok(rep)
}
