//! Exhaustive counterexample searches over bounded families.
//!
//! Polynomials are enumerated up to the symmetries that fix every identity
//! searched here: an overall sign, multiplication by a power of `X`, and
//! reversal of the coefficient list. Pairs are visited in colex order
//! (`(i, j)` with `i ≤ j`, `j` outer), so the first hit has the smallest
//! larger index.

use serde::Serialize;
use serde_json::{json, Value};

use crate::content::{classical_content, classical_gauss_check, content_a, gauss_compare, square_identity_check};
use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::parse::{parse_element, parse_polyx};
use crate::ring::{Coef, Degree, GradedElement, PolyX, RingRef};
use crate::star::StarOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    ClassicalGauss,
    GradedGauss,
    SquareIdentity,
    NaVsClassicalNagata,
}

impl Identity {
    pub const ALL: [Identity; 4] =
        [Identity::ClassicalGauss, Identity::GradedGauss, Identity::SquareIdentity, Identity::NaVsClassicalNagata];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ClassicalGauss => "classical-gauss",
            Identity::GradedGauss => "graded-gauss",
            Identity::SquareIdentity => "square-identity",
            Identity::NaVsClassicalNagata => "na-vs-classical-nagata",
        }
    }

    pub fn parse(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Unknown { kind: "identity", name: s.into() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyBounds {
    pub max_x_degree: usize,
    pub max_terms: usize,
    pub max_coef: i64,
}

impl Default for FamilyBounds {
    fn default() -> Self {
        FamilyBounds { max_x_degree: 1, max_terms: 2, max_coef: 4 }
    }
}

/// Exponents used by the families: zero and the monoid generators with no
/// negative coordinate, in (L1, lex descending) order.
pub fn family_degrees(ring: &RingRef) -> Vec<Degree> {
    let mut out = vec![Degree::zero(ring.dim())];
    for g in ring.monoid().generators() {
        if g.as_slice().iter().all(|&x| x >= 0) && !out.contains(g) {
            out.push(g.clone());
        }
    }
    out.sort_by(|a, b| a.l1().cmp(&b.l1()).then_with(|| b.cmp(a)));
    out
}

/// Nonzero coefficients: at most `max_terms` terms on distinct family
/// degrees, integer coefficients in `±[1, max_coef]`. Ordered by term
/// count, then `Σ|c|`, then degree positions, then signs (positive first).
pub fn coefficient_family(ring: &RingRef, b: &FamilyBounds) -> Vec<GradedElement> {
    let degs = family_degrees(ring);
    let mut out: Vec<(Vec<usize>, Vec<i64>)> = Vec::new();
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    for k in 1..=b.max_terms.min(degs.len()) {
        let mut pos = Vec::new();
        subsets(degs.len(), k, 0, &mut Vec::new(), &mut pos);
        let mut coefs: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..k {
            coefs = coefs
                .into_iter()
                .flat_map(|c| {
                    (1..=b.max_coef).flat_map(move |m| [m, -m]).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        let mut block: Vec<(Vec<usize>, Vec<i64>)> =
            pos.iter().flat_map(|p| coefs.iter().map(move |c| (p.clone(), c.clone()))).collect();
        block.sort_by_key(|(p, c)| {
            let abs: i64 = c.iter().map(|x| x.abs()).sum();
            let mags: Vec<i64> = c.iter().map(|x| x.abs()).collect();
            let signs: Vec<bool> = c.iter().map(|&x| x < 0).collect();
            (abs, mags, p.clone(), signs)
        });
        out.extend(block);
    }
    out.into_iter()
        .map(|(p, c)| {
            GradedElement::from_raw_terms(
                ring,
                p.iter().zip(&c).map(|(&i, &x)| (degs[i].clone(), Coef::from_integer(x.into()))),
            )
        })
        .collect()
}

/// Canonical polynomials of the family: first and last coefficients
/// nonzero, first coefficient with positive leading term, and one
/// representative per reversal pair.
pub fn polynomial_family(ring: &RingRef, b: &FamilyBounds) -> Vec<PolyX> {
    let coefs = coefficient_family(ring, b);
    let n = coefs.len();
    // Index of the negation of each coefficient.
    let neg: Vec<usize> = coefs.iter().map(|c| coefs.iter().position(|d| d == &-c).unwrap()).collect();
    let positive_lead = |i: usize| {
        let c = &coefs[i];
        c.terms().values().next().map_or(false, |x| x > &Coef::from_integer(0.into()))
    };
    const Z: usize = usize::MAX;
    let mut out = Vec::new();
    for deg in 0..=b.max_x_degree {
        // tuples t[0..=deg], t[0] and t[deg] nonzero.
        let mut t = vec![0usize; deg + 1];
        let opts = n + 1; // n means zero
        let total = (opts as u128).pow(deg as u32 + 1);
        for code in 0..total {
            let mut c = code;
            for slot in t.iter_mut() {
                let k = (c % opts as u128) as usize;
                c /= opts as u128;
                *slot = if k == n { Z } else { k };
            }
            t.reverse();
            if t[0] == Z || t[deg] == Z || !positive_lead(t[0]) {
                continue;
            }
            // Reversal: normalize sign of the reversed tuple and compare.
            let mut r: Vec<usize> = t.iter().rev().copied().collect();
            if !positive_lead(r[0]) {
                r = r.iter().map(|&k| if k == Z { Z } else { neg[k] }).collect();
            }
            let key = |v: &[usize]| v.iter().map(|&k| if k == Z { n } else { k }).collect::<Vec<_>>();
            if key(&r) < key(&t) {
                continue;
            }
            let cs = t.iter().map(|&k| if k == Z { GradedElement::zero(ring) } else { coefs[k].clone() }).collect();
            out.push(PolyX::new(ring, cs));
        }
    }
    out
}

/// Number of unordered pairs over `n` items.
pub fn pair_count(n: usize) -> u64 {
    (n as u64) * (n as u64 + 1) / 2
}

/// Colex pair order: `(0,0), (0,1), (1,1), (0,2), …`.
pub fn pair_at(k: u64) -> (usize, usize) {
    let mut j = (((8 * k + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while pair_count(j as usize + 1) <= k {
        j += 1;
    }
    while j > 0 && pair_count(j as usize) > k {
        j -= 1;
    }
    ((k - pair_count(j as usize)) as usize, j as usize)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FalsifyOutcome {
    Counterexample { checked: u64, family_size: u64, certificate: Value },
    Exhausted { checked: u64, family_size: u64 },
    /// Budget ran out before the family was covered.
    BudgetReached { checked: u64, family_size: u64 },
}

impl FalsifyOutcome {
    pub fn certificate(&self) -> Option<&Value> {
        match self {
            FalsifyOutcome::Counterexample { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn checked(&self) -> u64 {
        match self {
            FalsifyOutcome::Counterexample { checked, .. }
            | FalsifyOutcome::Exhausted { checked, .. }
            | FalsifyOutcome::BudgetReached { checked, .. } => *checked,
        }
    }
}

fn outcome_json(id: Identity, ring: &RingRef, star: Option<&StarOp>, mut cert: Value) -> Value {
    cert["identity"] = json!(id.name());
    cert["ring"] = json!(ring.name());
    cert["star"] = json!(star.map(|s| s.to_string()));
    cert
}

/// Searches the bounded family for a counterexample to `id`. A `budget`
/// caps the number of candidates examined.
pub fn falsify(
    id: Identity,
    ring: &RingRef,
    star: Option<&StarOp>,
    bounds: &FamilyBounds,
    budget: Option<u64>,
) -> Result<FalsifyOutcome> {
    let limit = budget.unwrap_or(u64::MAX);
    match id {
        Identity::GradedGauss | Identity::ClassicalGauss => {
            let polys = polynomial_family(ring, bounds);
            let size = pair_count(polys.len());
            let contents: Vec<FracIdeal> = if id == Identity::GradedGauss {
                polys.iter().map(content_a).collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            let mut checked = 0u64;
            for j in 0..polys.len() {
                for i in 0..=j {
                    if checked >= limit {
                        return Ok(FalsifyOutcome::BudgetReached { checked, family_size: size });
                    }
                    checked += 1;
                    let (f, g) = (&polys[i], &polys[j]);
                    let out = if id == Identity::GradedGauss {
                        gauss_compare(contents[i].product(&contents[j]), content_a(&f.mul(g))?, star)?
                    } else {
                        classical_gauss_check(f, g)?
                    };
                    if !out.equal {
                        let mut c = out.to_json();
                        c["f"] = json!(f.to_string());
                        c["g"] = json!(g.to_string());
                        return Ok(FalsifyOutcome::Counterexample {
                            checked,
                            family_size: size,
                            certificate: outcome_json(id, ring, star, c),
                        });
                    }
                }
            }
            Ok(FalsifyOutcome::Exhausted { checked, family_size: size })
        }
        Identity::SquareIdentity => {
            let terms: Vec<GradedElement> =
                coefficient_family(ring, bounds).into_iter().filter(|c| c.is_homogeneous()).collect();
            let size = pair_count(terms.len());
            let mut checked = 0u64;
            for j in 0..terms.len() {
                for i in 0..=j {
                    if checked >= limit {
                        return Ok(FalsifyOutcome::BudgetReached { checked, family_size: size });
                    }
                    checked += 1;
                    if !square_identity_check(&terms[i], &terms[j])? {
                        let c = json!({"a": terms[i].to_string(), "b": terms[j].to_string()});
                        return Ok(FalsifyOutcome::Counterexample {
                            checked,
                            family_size: size,
                            certificate: outcome_json(id, ring, star, c),
                        });
                    }
                }
            }
            Ok(FalsifyOutcome::Exhausted { checked, family_size: size })
        }
        Identity::NaVsClassicalNagata => {
            let s = star.cloned().unwrap_or_else(|| StarOp::d(ring));
            let polys = polynomial_family(ring, bounds);
            let size = polys.len() as u64;
            let mut checked = 0u64;
            for f in &polys {
                if checked >= limit {
                    return Ok(FalsifyOutcome::BudgetReached { checked, family_size: size });
                }
                checked += 1;
                if let Some(c) = na_vs_classical_witness(f, &s)? {
                    return Ok(FalsifyOutcome::Counterexample {
                        checked,
                        family_size: size,
                        certificate: outcome_json(id, ring, Some(&s), c),
                    });
                }
            }
            Ok(FalsifyOutcome::Exhausted { checked, family_size: size })
        }
    }
}

/// `f ∈ N(⋆)` while the classical content of `f` is not ⋆-trivial.
fn na_vs_classical_witness(f: &PolyX, s: &StarOp) -> Result<Option<Value>> {
    let a = s.apply(&content_a(f)?)?;
    if !a.contains_one() {
        return Ok(None);
    }
    let c = s.apply(&classical_content(f)?)?;
    if c.contains_one() {
        return Ok(None);
    }
    Ok(Some(json!({
        "f": f.to_string(),
        "A_f_closure": a.to_string(),
        "classical_content_closure": c.to_string(),
    })))
}

/// Re-validates a counterexample certificate from scratch, parsing the
/// stored expressions.
pub fn revalidate(cert: &Value, ring: &RingRef) -> Result<bool> {
    let field = |k: &str| {
        cert.get(k).and_then(|v| v.as_str()).ok_or_else(|| Error::Invalid(format!("certificate lacks `{k}`")))
    };
    let id = Identity::parse(field("identity")?)?;
    let star = match cert.get("star").and_then(|v| v.as_str()) {
        Some(s) => Some(StarOp::parse(s, ring)?),
        None => None,
    };
    match id {
        Identity::ClassicalGauss => {
            let (f, g) = (parse_polyx(field("f")?, ring)?, parse_polyx(field("g")?, ring)?);
            Ok(!classical_gauss_check(&f, &g)?.equal)
        }
        Identity::GradedGauss => {
            let (f, g) = (parse_polyx(field("f")?, ring)?, parse_polyx(field("g")?, ring)?);
            Ok(!crate::content::gauss_check(&f, &g, star.as_ref())?.equal)
        }
        Identity::SquareIdentity => {
            let (a, b) = (parse_element(field("a")?, ring)?, parse_element(field("b")?, ring)?);
            Ok(!square_identity_check(&a, &b)?)
        }
        Identity::NaVsClassicalNagata => {
            let f = parse_polyx(field("f")?, ring)?;
            let s = star.unwrap_or_else(|| StarOp::d(ring));
            Ok(na_vs_classical_witness(&f, &s)?.is_some())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn colex_pairs() {
        let mut k = 0;
        for j in 0..40 {
            for i in 0..=j {
                assert_eq!(pair_at(k), (i, j));
                k += 1;
            }
        }
    }

    #[test]
    fn family_shapes() {
        let z = registry::shipped("laurent_z").unwrap();
        let b = FamilyBounds { max_x_degree: 1, max_terms: 2, max_coef: 1 };
        let coefs = coefficient_family(&z, &b);
        // 1, -1, t, -t, then the four signed 1 ± t.
        assert_eq!(coefs.len(), 8);
        assert_eq!(coefs[0].to_string(), "1");
        let polys = polynomial_family(&z, &b);
        // 4 constants up to sign; linear pairs (a, b) up to sign and reversal.
        assert_eq!(polys.iter().filter(|p| p.degree() == Some(0)).count(), 4);
        for p in &polys {
            assert!(!p.coeff(0).is_zero());
        }
    }

    #[test]
    fn small_searches() {
        let z = registry::shipped("laurent_z").unwrap();
        let b = FamilyBounds { max_x_degree: 1, max_terms: 2, max_coef: 2 };
        let out = falsify(Identity::ClassicalGauss, &z, None, &b, None).unwrap();
        let cert = out.certificate().expect("classical Gauss fails on Z[t, 1/t]");
        assert!(revalidate(cert, &z).unwrap());
        assert!(matches!(falsify(Identity::GradedGauss, &z, None, &b, None).unwrap(), FalsifyOutcome::Exhausted { .. }));
        let out = falsify(Identity::NaVsClassicalNagata, &z, None, &b, None).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert["f"], "1 + t");
        assert!(revalidate(cert, &z).unwrap());
        assert!(matches!(
            falsify(Identity::SquareIdentity, &z, None, &b, None).unwrap(),
            FalsifyOutcome::Exhausted { .. }
        ));
        let q = registry::shipped("poly_q2").unwrap();
        let b1 = FamilyBounds { max_x_degree: 1, max_terms: 1, max_coef: 1 };
        let out = falsify(Identity::SquareIdentity, &q, None, &b1, None).unwrap();
        assert!(revalidate(out.certificate().unwrap(), &q).unwrap());
        let out = falsify(Identity::GradedGauss, &q, None, &b1, None).unwrap();
        let cert = out.certificate().expect("graded Gauss fails on Q[x,y]");
        assert!(revalidate(cert, &q).unwrap());
        let out = falsify(Identity::GradedGauss, &q, None, &b1, Some(3)).unwrap();
        assert!(matches!(out, FalsifyOutcome::BudgetReached { checked: 3, .. }));
    }
}
