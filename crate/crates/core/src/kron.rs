//! Kronecker function ring membership `f/g ∈ Kr(R, ⋆)` with certificates,
//! and the Bézout two-to-one collapse.

use serde_json::{json, Value};

use crate::content::content_a;
use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::nagata::{pic_generator, Certificate};
use crate::report::{CheckRecord, CheckReport, Outcome};
use crate::ring::PolyX;
use crate::star::{default_catalog, StarOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrMode {
    /// Decide `A_f ⊆ A_g^⋆`; requires the ring flag that makes ⋆ e.a.b.
    Eab,
    /// As [`KrMode::Eab`], with e.a.b. asserted by the caller (for example
    /// after an `eab_evidence` pass).
    EabAsserted,
    /// Search `h` with `A_f A_h ⊆ (A_g A_h)^⋆` over products of at most three
    /// catalog ideals of degree at most `bound`.
    General { bound: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KrCertificate {
    Direct,
    Aux(PolyX),
}

#[derive(Clone, Debug)]
pub struct KroneckerFraction {
    num: PolyX,
    den: PolyX,
    star: StarOp,
    cert: KrCertificate,
}

impl KroneckerFraction {
    pub fn numerator(&self) -> &PolyX {
        &self.num
    }

    pub fn denominator(&self) -> &PolyX {
        &self.den
    }

    pub fn star(&self) -> &StarOp {
        &self.star
    }

    pub fn certificate(&self) -> &KrCertificate {
        &self.cert
    }

    /// Re-validates the stored certificate from scratch.
    pub fn revalidate(&self) -> Result<bool> {
        let h = match &self.cert {
            KrCertificate::Direct => None,
            KrCertificate::Aux(h) => Some(h),
        };
        check_with_h(&self.num, &self.den, h, &self.star)
    }

    pub fn equals(&self, o: &KroneckerFraction) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn to_json(&self, bound: Option<u32>) -> Value {
        let c = Certificate {
            kind: "kronecker".into(),
            witness_poly: Some(format!("({})/({})", self.num, self.den)),
            aux_h: match &self.cert {
                KrCertificate::Direct => None,
                KrCertificate::Aux(h) => Some(h.to_string()),
            },
            bound: bound.map(|b| b as usize),
            verdict: "member".into(),
        };
        c.to_json()
    }
}

#[derive(Clone, Debug)]
pub enum KrDecision {
    Member(KroneckerFraction),
    /// Exact negative (e.a.b. modes only).
    NotMember,
    /// No auxiliary `h` found in the bounded catalog.
    NotFoundAtBound { bound: u32 },
}

impl KrDecision {
    pub fn accepted(&self) -> bool {
        matches!(self, KrDecision::Member(_))
    }

    pub fn fraction(&self) -> Option<&KroneckerFraction> {
        match self {
            KrDecision::Member(k) => Some(k),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            KrDecision::Member(k) => k.to_json(None),
            KrDecision::NotMember => {
                json!({"kind": "kronecker", "witness_poly": null, "aux_h": null, "bound": null, "verdict": "not-member"})
            }
            KrDecision::NotFoundAtBound { bound } => {
                json!({"kind": "kronecker", "witness_poly": null, "aux_h": null, "bound": bound, "verdict": "not-found-at-bound"})
            }
        }
    }
}

fn content_or_zero(f: &PolyX) -> Result<FracIdeal> {
    if f.is_zero() {
        Ok(FracIdeal::zero(f.ring()))
    } else {
        content_a(f)
    }
}

/// `A_f A_h ⊆ (A_g A_h)^⋆`, with `h = 1` when absent.
fn check_with_h(f: &PolyX, g: &PolyX, h: Option<&PolyX>, s: &StarOp) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::Zero("denominator"));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let (af, ag) = (content_a(f)?, content_a(g)?);
    match h {
        None => Ok(af.is_subset(&s.apply(&ag)?)),
        Some(h) => {
            let ah = content_a(h)?;
            Ok(af.product(&ah).is_subset(&s.apply(&ag.product(&ah))?))
        }
    }
}

/// Catalog products of one, two, then three entries, unit ideal first.
fn catalog_products(catalog: &[FracIdeal]) -> impl Iterator<Item = FracIdeal> + '_ {
    let n = catalog.len();
    let singles = (0..n).map(move |i| catalog[i].clone());
    let pairs = (1..n)
        .flat_map(move |i| (i..n).map(move |j| (i, j)))
        .map(move |(i, j)| catalog[i].product(&catalog[j]));
    let triples = (1..n)
        .flat_map(move |i| (i..n).flat_map(move |j| (j..n).map(move |k| (i, j, k))))
        .map(move |(i, j, k)| catalog[i].product(&catalog[j]).product(&catalog[k]));
    singles.chain(pairs).chain(triples)
}

/// `f/g ∈ Kr(R, ⋆)`.
pub fn kr_member(f: &PolyX, g: &PolyX, s: &StarOp, mode: KrMode) -> Result<KrDecision> {
    if g.is_zero() {
        return Err(Error::Zero("denominator"));
    }
    if !f.in_ring() || !g.in_ring() {
        return Err(Error::Invalid("Kronecker fractions need numerator and denominator in R[X]".into()));
    }
    let member = |cert| KrDecision::Member(KroneckerFraction { num: f.clone(), den: g.clone(), star: s.clone(), cert });
    match mode {
        KrMode::Eab | KrMode::EabAsserted => {
            if mode == KrMode::Eab && !s.eab_asserted() {
                return Err(Error::IncompatibleStar {
                    star: s.to_string(),
                    ring: s.ring().name().into(),
                    reason: "e.a.b. mode needs v/t/w on a ring flagged graded_krull, or a caller assertion".into(),
                });
            }
            Ok(if check_with_h(f, g, None, s)? { member(KrCertificate::Direct) } else { KrDecision::NotMember })
        }
        KrMode::General { bound } => {
            if f.is_zero() || check_with_h(f, g, None, s)? {
                return Ok(member(KrCertificate::Direct));
            }
            let af = content_or_zero(f)?;
            let ag = content_a(g)?;
            let catalog = default_catalog(s.ring(), bound);
            for hi in catalog_products(&catalog).skip(1) {
                if af.product(&hi).is_subset(&s.apply(&ag.product(&hi))?) {
                    let gens: Vec<PolyX> = hi.generators().iter().map(|e| PolyX::constant(e.clone())).collect();
                    let h = pic_generator(&gens)?;
                    return Ok(member(KrCertificate::Aux(h)));
                }
            }
            Ok(KrDecision::NotFoundAtBound { bound })
        }
    }
}

#[derive(Clone, Debug)]
pub struct BezoutCollapse {
    /// `γ = (f + Xⁿ g)/h`.
    pub gamma: KroneckerFraction,
    /// `α/γ = f/(f + Xⁿ g)`.
    pub alpha_over_gamma: KroneckerFraction,
    /// `β/γ = g/(f + Xⁿ g)`.
    pub beta_over_gamma: KroneckerFraction,
    pub n: usize,
}

impl BezoutCollapse {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "gamma": self.gamma.to_json(None),
            "alpha_over_gamma": self.alpha_over_gamma.to_json(None),
            "beta_over_gamma": self.beta_over_gamma.to_json(None),
        })
    }
}

fn accept(f: &PolyX, g: &PolyX, s: &StarOp, mode: KrMode, what: &str) -> Result<KroneckerFraction> {
    match kr_member(f, g, s, mode)? {
        KrDecision::Member(k) => Ok(k),
        other => Err(Error::Invalid(format!("{what} ({f})/({g}) was not certified: {}", other.to_json()["verdict"]))),
    }
}

/// For `α = f/h`, `β = g/h` in `Kr(R, ⋆)`, returns `γ = (f + Xⁿ g)/h` with
/// `n = ∂f + 1` and certificates that both `α/γ` and `β/γ` are members, so
/// `(α, β) = (γ)`.
pub fn bezout_combine(alpha: &KroneckerFraction, beta: &KroneckerFraction, mode: KrMode) -> Result<BezoutCollapse> {
    let s = alpha.star();
    if alpha.denominator() != beta.denominator() {
        return Err(Error::Invalid("bezout_combine needs a shared denominator".into()));
    }
    if alpha.numerator().is_zero() || beta.numerator().is_zero() {
        return Err(Error::Zero("numerator"));
    }
    if !alpha.revalidate()? || !beta.revalidate()? {
        return Err(Error::Invalid("input certificate does not re-validate".into()));
    }
    let (f, g, h) = (alpha.numerator(), beta.numerator(), alpha.denominator());
    let n = f.degree().unwrap() + 1;
    let sum = f.add(&g.shift_x(n));
    let gamma = accept(&sum, h, s, mode, "gamma")?;
    let alpha_over_gamma = accept(f, &sum, s, mode, "alpha/gamma")?;
    let beta_over_gamma = accept(g, &sum, s, mode, "beta/gamma")?;
    Ok(BezoutCollapse { gamma, alpha_over_gamma, beta_over_gamma, n })
}

/// Equal fractions `f/g = p/q` (`fq = gp`): acceptance of one must imply
/// acceptance of the other.
pub fn representation_check(s: &StarOp, mode: KrMode, quads: &[(PolyX, PolyX, PolyX, PolyX)]) -> Result<CheckReport> {
    let mut rep = CheckReport::default();
    for (f, g, p, q) in quads {
        if f.mul(q) != g.mul(p) {
            return Err(Error::Invalid(format!("({f})/({g}) and ({p})/({q}) are not equal fractions")));
        }
        let a = kr_member(f, g, s, mode)?;
        let b = kr_member(p, q, s, mode)?;
        let outcome = match (&a, &b) {
            (KrDecision::Member(_), KrDecision::Member(_)) => Outcome::Pass,
            (KrDecision::Member(_), KrDecision::NotMember) | (KrDecision::NotMember, KrDecision::Member(_)) => Outcome::Fail,
            (KrDecision::NotMember, KrDecision::NotMember) => Outcome::Vacuous,
            _ => Outcome::BoundExhausted,
        };
        rep.push(CheckRecord::new(
            "kr-representation-independence",
            format!("({f})/({g}) = ({p})/({q})"),
            outcome,
            json!({"first": a.to_json(), "second": b.to_json()}),
        ));
    }
    Ok(rep)
}

/// Sums and products of accepted fractions are re-certified.
pub fn closure_check(a: &KroneckerFraction, b: &KroneckerFraction, mode: KrMode) -> Result<Vec<CheckRecord>> {
    let s = a.star();
    let (f1, g1, f2, g2) = (a.numerator(), a.denominator(), b.numerator(), b.denominator());
    let den = g1.mul(g2);
    let sum = f1.mul(g2).add(&f2.mul(g1));
    let prod = f1.mul(f2);
    let mut out = Vec::new();
    let sample = format!("a=({f1})/({g1}); b=({f2})/({g2})");
    for (name, num) in [("kr-closure-sum", sum), ("kr-closure-product", prod)] {
        let d = kr_member(&num, &den, s, mode)?;
        let outcome = match &d {
            KrDecision::Member(k) if k.revalidate()? => Outcome::Pass,
            KrDecision::NotFoundAtBound { .. } => Outcome::BoundExhausted,
            _ => Outcome::Fail,
        };
        out.push(CheckRecord::new(name, sample.clone(), outcome, d.to_json()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polyx;
    use crate::registry;

    #[test]
    fn kr_member_examples() {
        let q = registry::shipped("poly_q2").unwrap();
        let v = StarOp::v(&q);
        let p = |s: &str| parse_polyx(s, &q).unwrap();
        let d = kr_member(&p("x"), &p("x + y*X"), &v, KrMode::Eab).unwrap();
        assert!(d.accepted() && d.fraction().unwrap().revalidate().unwrap());
        let g = p("x^2 + y*X");
        let d = kr_member(&g, &g, &v, KrMode::General { bound: 1 }).unwrap();
        assert_eq!(d.fraction().unwrap().certificate(), &KrCertificate::Direct);
        assert!(matches!(kr_member(&p("1"), &p("x"), &v, KrMode::Eab).unwrap(), KrDecision::NotMember));
        assert!(kr_member(&p("1"), &PolyX::zero(&q), &v, KrMode::Eab).is_err());
        assert!(kr_member(&p("1"), &p("x"), &StarOp::d(&q), KrMode::Eab).is_err());
    }

    #[test]
    fn general_mode_finds_auxiliary_h() {
        // With d on Q[x,y]: A_f = (x y) and A_g = (x², y²) fail directly,
        // but h with A_h = (x, y) gives (x²y, xy²) ⊆ (x³, x²y, xy², y³).
        let q = registry::shipped("poly_q2").unwrap();
        let d = StarOp::d(&q);
        let p = |s: &str| parse_polyx(s, &q).unwrap();
        let dec = kr_member(&p("x*y"), &p("x^2 + y^2*X"), &d, KrMode::General { bound: 1 }).unwrap();
        let k = dec.fraction().expect("member");
        assert!(matches!(k.certificate(), KrCertificate::Aux(_)));
        assert!(k.revalidate().unwrap());
        let dec = kr_member(&p("1"), &p("x"), &d, KrMode::General { bound: 1 }).unwrap();
        assert!(matches!(dec, KrDecision::NotFoundAtBound { bound: 1 }));
    }

    #[test]
    fn bezout_examples() {
        let q = registry::shipped("poly_q2").unwrap();
        let v = StarOp::v(&q);
        let p = |s: &str| parse_polyx(s, &q).unwrap();
        let h = p("x + y*X");
        let a = kr_member(&p("x"), &h, &v, KrMode::Eab).unwrap().fraction().unwrap().clone();
        let b = kr_member(&p("y"), &h, &v, KrMode::Eab).unwrap().fraction().unwrap().clone();
        let c = bezout_combine(&a, &b, KrMode::Eab).unwrap();
        assert_eq!(c.n, 1);
        assert_eq!(c.gamma.numerator(), &h);
        assert!(c.alpha_over_gamma.revalidate().unwrap() && c.beta_over_gamma.revalidate().unwrap());
        let same = bezout_combine(&a, &a, KrMode::Eab).unwrap();
        assert_eq!(same.gamma.numerator(), &p("x + x*X"));
        let zero = KroneckerFraction { num: PolyX::zero(&q), den: h.clone(), star: v.clone(), cert: KrCertificate::Direct };
        assert!(bezout_combine(&a, &zero, KrMode::Eab).is_err());
    }

    #[test]
    fn representation_and_closure() {
        let q = registry::shipped("poly_q2").unwrap();
        let v = StarOp::v(&q);
        let p = |s: &str| parse_polyx(s, &q).unwrap();
        let k = p("x + X^2");
        let (f, g) = (p("x"), p("y + x*X"));
        let quads = vec![(f.clone(), g.clone(), f.mul(&k), g.mul(&k))];
        assert!(representation_check(&v, KrMode::Eab, &quads).unwrap().all_pass());
        let a = kr_member(&f, &g, &v, KrMode::Eab).unwrap().fraction().unwrap().clone();
        let b = kr_member(&p("y^2"), &p("x^2 + y*X"), &v, KrMode::Eab).unwrap().fraction().unwrap().clone();
        assert!(closure_check(&a, &b, KrMode::Eab).unwrap().iter().all(|r| r.outcome == Outcome::Pass));
    }

    #[test]
    fn monotone_in_star() {
        let q = registry::shipped("poly_q2").unwrap();
        let p = |s: &str| parse_polyx(s, &q).unwrap();
        let (d, v) = (StarOp::d(&q), StarOp::v(&q));
        for (f, g) in [("x", "x + y*X"), ("x*y", "x^2 + y^2*X"), ("x^2", "x")] {
            let a = kr_member(&p(f), &p(g), &d, KrMode::General { bound: 1 }).unwrap().accepted();
            let b = kr_member(&p(f), &p(g), &v, KrMode::Eab).unwrap().accepted();
            assert!(!a || b);
        }
    }
}
