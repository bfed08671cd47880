//! Finitely generated fractional ideals `(1/d)·(g_1, …, g_m)` of a graded
//! ring and their arithmetic.
//!
//! Ideals of R are decided through the presentation `R ≅ base[z]/T`
//! (`z_i ↦ t^{g_i}`, T the binomial relations of Γ): an ideal `I ⊆ R`
//! corresponds to `lift(I) + T`, whose Gröbner basis answers membership.
//! Inverted directions (Laurent variables) are handled by T, which contains
//! `z·z' - 1` whenever `z'` presents the inverse of `z`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Monomial, MonomialOrder, Poly, PolyRing};
use crate::ring::{BaseDomain, Coef, Degree, GradedElement, GradedRing, HQuotientElement, RingRef};

fn poly_ring(ring: &GradedRing, extra: usize, order: MonomialOrder) -> PolyRing {
    PolyRing::new(ring.nvars() + extra, order, ring.base().coeff_domain())
}

/// Lifts a ring element to the presentation, with `extra` leading
/// auxiliary variables set to the exponents in `prefix`.
fn lift(ring: &GradedRing, e: &GradedElement, prefix: &[u32], pr: &PolyRing) -> Poly {
    let terms = e
        .terms()
        .iter()
        .map(|(d, c)| {
            let m = ring.lift_degree(d).expect("element lies in R");
            let mut exps: Vec<u32> = prefix.to_vec();
            exps.extend_from_slice(&m.0);
            (Monomial::from_exponents(&exps), c.clone())
        })
        .collect();
    pr.poly(terms)
}

fn lower(ring: &RingRef, p: &Poly, skip: usize) -> GradedElement {
    GradedElement::from_raw_terms(
        ring,
        p.terms.iter().map(|(m, c)| {
            let core = Monomial::from_exponents(&m.0[skip..]);
            (ring.lower_monomial(&core), c.clone())
        }),
    )
}

fn toric_lifted(ring: &GradedRing, extra: usize, pr: &PolyRing) -> Vec<Poly> {
    ring.toric()
        .iter()
        .map(|p| {
            pr.poly(
                p.terms
                    .iter()
                    .map(|(m, c)| {
                        let mut exps = vec![0u32; extra];
                        exps.extend_from_slice(&m.0);
                        (Monomial::from_exponents(&exps), c.clone())
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Multiplies by a unit monomial so that a generator over a group-graded
/// ring has no negative exponents.
fn unit_normalize(e: &GradedElement) -> GradedElement {
    let ring = e.ring();
    if e.is_zero() || !ring.monoid().is_group() {
        return e.clone();
    }
    let mut corner = e.terms().keys().next().unwrap().clone();
    for d in e.terms().keys() {
        for (a, b) in corner.0.iter_mut().zip(d.0.iter()) {
            *a = (*a).min(*b);
        }
    }
    e.shift(&-&corner)
}

/// Gröbner basis of an integral ideal of R in the presentation.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    ring: RingRef,
    gb: GroebnerBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerTrace {
    pub ordering: String,
    pub basis: Vec<String>,
    pub pair_count: usize,
}

impl IdealBasis {
    pub fn new(ring: &RingRef, gens: &[GradedElement], order: MonomialOrder) -> Self {
        let pr = poly_ring(ring, 0, order);
        let mut polys: Vec<Poly> = gens.iter().map(|g| lift(ring, &unit_normalize(g), &[], &pr)).collect();
        polys.extend(toric_lifted(ring, 0, &pr));
        IdealBasis { ring: ring.clone(), gb: pr.groebner(&polys) }
    }

    pub fn contains(&self, e: &GradedElement) -> bool {
        let pr = &self.gb.ring;
        self.gb.contains(&lift(&self.ring, e, &[], pr))
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Basis elements mapped back into R (toric relations vanish there).
    pub fn lowered(&self) -> Vec<GradedElement> {
        self.gb
            .basis
            .iter()
            .map(|p| lower(&self.ring, p, 0))
            .filter(|e| !e.is_zero())
            .collect()
    }

    pub fn trace(&self) -> GroebnerTrace {
        let names: Vec<String> = (1..=self.ring.nvars()).map(|i| format!("z{i}")).collect();
        GroebnerTrace {
            ordering: self.gb.ring.order.tag(),
            basis: self.gb.basis.iter().map(|p| format_poly(p, &names)).collect(),
            pair_count: self.gb.pair_count,
        }
    }
}

fn format_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms.iter().enumerate() {
        let mono: Vec<String> = names
            .iter()
            .zip(m.0.iter())
            .filter(|(_, &e)| e > 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono.join("*"));
        } else {
            s.push_str(&format!("{a}*{}", mono.join("*")));
        }
    }
    s
}

/// `groebner_basis` over the presentation of R.
pub fn groebner_basis(ring: &RingRef, gens: &[GradedElement], order: MonomialOrder) -> IdealBasis {
    IdealBasis::new(ring, gens, order)
}

/// Intersection of two integral ideals of R by eliminating a tag variable
/// `w` from `w·A + (1-w)·B`.
pub fn intersect_integral(ring: &RingRef, a: &[GradedElement], b: &[GradedElement]) -> Vec<GradedElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if let Some(r) = intersect_terms(ring, a, b) {
        return r;
    }
    let pr = poly_ring(ring, 1, MonomialOrder::Elimination { block: 1 });
    let mut polys = Vec::new();
    for g in a {
        polys.push(lift(ring, &unit_normalize(g), &[1], &pr));
    }
    for g in b {
        let g = unit_normalize(g);
        let p0 = lift(ring, &g, &[0], &pr);
        let p1 = lift(ring, &g, &[1], &pr);
        polys.push(pr.poly(p0.terms.into_iter().chain(p1.terms.into_iter().map(|(m, c)| (m, -c))).collect()));
    }
    polys.extend(toric_lifted(ring, 1, &pr));
    let gb = pr.groebner(&polys);
    gb.eliminate(1)
        .iter()
        .map(|p| lower(ring, p, 0))
        .filter(|e| !e.is_zero())
        .collect()
}

/// Monomial-ideal intersection in a polynomial ring over Q: pairwise lcms.
fn intersect_terms(ring: &RingRef, a: &[GradedElement], b: &[GradedElement]) -> Option<Vec<GradedElement>> {
    let free = ring.base() == BaseDomain::Rationals
        && ring.monoid().generators().iter().enumerate().all(|(i, g)| {
            g.0.iter().enumerate().all(|(j, &x)| x == i64::from(i == j))
        })
        && ring.monoid().generators().len() == ring.dim();
    if !free || !a.iter().chain(b).all(|g| g.is_homogeneous()) {
        return None;
    }
    let mut out = Vec::new();
    for g in a {
        for h in b {
            let (dg, _) = g.as_term().unwrap();
            let (dh, _) = h.as_term().unwrap();
            let l = Degree(dg.0.iter().zip(dh.0.iter()).map(|(x, y)| *x.max(y)).collect());
            out.push(GradedElement::raw_term(ring, Coef::one(), l));
        }
    }
    Some(minimize_terms(ring, out))
}

/// `(A :_R g) = (1/g)(A ∩ (g))` for an integral ideal `A`.
fn colon_element(ring: &RingRef, a: &FracIdeal, g: &GradedElement) -> Vec<GradedElement> {
    if a.contains_element(g) {
        return vec![GradedElement::one(ring)];
    }
    intersect_integral(ring, a.generators(), std::slice::from_ref(g))
        .into_iter()
        .map(|h| h.div_in_ring(g).expect("element of (g) is divisible by g"))
        .collect()
}

/// Drops redundant generators of a term ideal and replaces coefficients by
/// the gcd of the coefficients that reach the same degree.
fn minimize_terms(ring: &RingRef, gens: Vec<GradedElement>) -> Vec<GradedElement> {
    let m = ring.monoid();
    if m.is_group() {
        // Every term is a unit times its coefficient (group gradings only
        // occur over Z).
        let g = gens.iter().flat_map(|e| e.terms().values()).fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        return vec![GradedElement::constant(ring, Coef::from_integer(g))];
    }
    let mut terms: Vec<(Degree, Coef)> = gens
        .iter()
        .filter_map(|g| g.as_term().map(|(d, c)| (d.clone(), c.clone())))
        .collect();
    match ring.base() {
        BaseDomain::Rationals => terms.iter_mut().for_each(|t| t.1 = Coef::one()),
        BaseDomain::Integers => {
            let orig = terms.clone();
            for t in terms.iter_mut() {
                let g = orig
                    .iter()
                    .filter(|(d, _)| m.contains(&(&t.0 - d)))
                    .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
                t.1 = Coef::from_integer(g);
            }
        }
    }
    terms.sort_by(|a, b| a.0.total().cmp(&b.0.total()).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1)));
    let divides = |small: &(Degree, Coef), big: &(Degree, Coef)| {
        m.contains(&(&big.0 - &small.0)) && (big.1.clone() / small.1.clone()).is_integer()
    };
    let mut kept: Vec<(Degree, Coef)> = Vec::new();
    for t in terms {
        if kept.iter().any(|k| divides(k, &t)) {
            continue;
        }
        kept.retain(|k| !divides(&t, k));
        kept.push(t);
    }
    kept.into_iter().map(|(d, c)| GradedElement::raw_term(ring, c, d)).collect()
}

/// Finitely generated fractional ideal `(1/den)·(gens)`.
#[derive(Clone)]
pub struct FracIdeal {
    ring: RingRef,
    den: GradedElement,
    gens: Vec<GradedElement>,
    basis: OnceLock<Arc<IdealBasis>>,
}

impl fmt::Debug for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")?;
        if !self.den.is_one() {
            if self.den.len() == 1 && !self.den.to_string().contains(['*', '/']) {
                write!(f, "/{}", self.den)?;
            } else {
                write!(f, "/({})", self.den)?;
            }
        }
        Ok(())
    }
}

impl FracIdeal {
    /// Ideal `(1/den)·(gens)`; generators and denominator must lie in R.
    pub fn new(ring: &RingRef, gens: Vec<GradedElement>, den: GradedElement) -> Result<Self> {
        for g in gens.iter().chain(std::iter::once(&den)) {
            if !g.ring().same(ring) {
                return Err(Error::RingMismatch(ring.name().into(), g.ring().name().into()));
            }
            g.check_in_ring()?;
        }
        if den.is_zero() {
            return Err(Error::Zero("denominator"));
        }
        Ok(Self::build(ring, gens, den))
    }

    pub fn integral(ring: &RingRef, gens: Vec<GradedElement>) -> Result<Self> {
        Self::new(ring, gens, GradedElement::one(ring))
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::build(ring, vec![GradedElement::one(ring)], GradedElement::one(ring))
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::build(ring, vec![], GradedElement::one(ring))
    }

    pub fn principal(a: &GradedElement) -> Self {
        Self::build(a.ring(), vec![a.clone()], GradedElement::one(a.ring()))
    }

    /// `x·R` for `x ∈ R_H`.
    pub fn principal_quotient(x: &HQuotientElement) -> Self {
        Self::build(x.ring(), vec![x.numerator().clone()], x.denominator().clone())
    }

    pub(crate) fn build(ring: &RingRef, gens: Vec<GradedElement>, den: GradedElement) -> Self {
        let mut s = FracIdeal { ring: ring.clone(), den, gens, basis: OnceLock::new() };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let ring = self.ring.clone();
        self.gens.retain(|g| !g.is_zero());
        if self.gens.is_empty() {
            self.den = GradedElement::one(&ring);
            return;
        }
        // Integral ideals whose generators are all divisible by the denominator.
        if !self.den.is_one() {
            let q: Option<Vec<_>> = self.gens.iter().map(|g| g.div_in_ring(&self.den)).collect();
            if let Some(q) = q {
                self.gens = q;
                self.den = GradedElement::one(&ring);
            }
        }
        // Unit part of a homogeneous denominator.
        if let Some((d, c)) = self.den.as_term().map(|(d, c)| (d.clone(), c.clone())) {
            let mut scale = c.recip();
            let mut keep = Coef::one();
            if ring.base() == BaseDomain::Integers {
                // Only ±1 are units; keep the absolute value as denominator.
                scale = if c.is_negative() { -Coef::one() } else { Coef::one() };
                keep = c.abs();
            }
            let shift = if ring.monoid().contains(&-&d) { -&d } else { Degree::zero(ring.dim()) };
            let den_deg = &d + &shift;
            self.gens = self.gens.iter().map(|g| g.scale(&scale).shift(&shift)).collect();
            self.den = GradedElement::raw_term(&ring, keep, den_deg);
        }
        // Common integer content over Z.
        if ring.base() == BaseDomain::Integers {
            let mut g = BigInt::zero();
            for e in self.gens.iter().chain(std::iter::once(&self.den)) {
                for c in e.terms().values() {
                    g = g.gcd(c.numer());
                }
            }
            if !g.is_zero() && !g.is_one() {
                let inv = Coef::new(BigInt::one(), g);
                self.gens = self.gens.iter().map(|e| e.scale(&inv)).collect();
                self.den = self.den.scale(&inv);
            }
        }
        // Common monomial factors of denominator and generators.
        'outer: loop {
            if self.den.is_one() {
                break;
            }
            for (i, gdeg) in ring.monoid().generators().iter().enumerate() {
                // Unit monomials always divide; cancelling them never ends.
                if ring.monoid().is_unit_generator(i) {
                    continue;
                }
                let mono = GradedElement::raw_term(&ring, Coef::one(), gdeg.clone());
                let Some(nd) = self.den.div_in_ring(&mono) else { continue };
                let ng: Option<Vec<_>> = self.gens.iter().map(|g| g.div_in_ring(&mono)).collect();
                if let Some(ng) = ng {
                    self.den = nd;
                    self.gens = ng;
                    continue 'outer;
                }
            }
            break;
        }
        if self.gens.iter().all(|g| g.is_homogeneous()) {
            self.gens = minimize_terms(&ring, std::mem::take(&mut self.gens));
        } else {
            let mut seen = Vec::new();
            for g in std::mem::take(&mut self.gens) {
                if !seen.contains(&g) {
                    seen.push(g);
                }
            }
            self.gens = seen;
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn denominator(&self) -> &GradedElement {
        &self.den
    }

    pub fn generators(&self) -> &[GradedElement] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Every stored generator and the denominator are homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.den.is_homogeneous() && self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Generators as elements of `R_H` (or of the fraction field).
    pub fn generator_fractions(&self) -> Vec<(GradedElement, GradedElement)> {
        self.gens.iter().map(|g| (g.clone(), self.den.clone())).collect()
    }

    pub fn basis(&self) -> &IdealBasis {
        self.basis
            .get_or_init(|| Arc::new(IdealBasis::new(&self.ring, &self.gens, MonomialOrder::DegRevLex)))
    }

    fn integral_contains(&self, y: &GradedElement) -> bool {
        if y.is_zero() {
            return true;
        }
        if self.gens.is_empty() {
            return false;
        }
        if self.gens.iter().all(|g| g.is_homogeneous()) {
            return term_ideal_contains(&self.ring, &self.gens, y);
        }
        self.basis().contains(y)
    }

    /// Membership through the Gröbner basis only (for cross-checking the
    /// term-ideal route).
    pub fn contains_via_groebner(&self, x: &HQuotientElement) -> bool {
        match self.cleared(x.numerator(), x.denominator()) {
            None => false,
            Some(y) => y.is_zero() || (!self.gens.is_empty() && self.basis().contains(&y)),
        }
    }

    /// `n·den/d` if it lies in R.
    fn cleared(&self, n: &GradedElement, d: &GradedElement) -> Option<GradedElement> {
        (n * &self.den).div_in_ring(d)
    }

    /// `n/d ∈ I` for `n, d ∈ R`, `d ≠ 0`.
    pub fn contains_fraction(&self, n: &GradedElement, d: &GradedElement) -> bool {
        match self.cleared(n, d) {
            None => false,
            Some(y) => self.integral_contains(&y),
        }
    }

    pub fn contains(&self, x: &HQuotientElement) -> bool {
        self.contains_fraction(x.numerator(), x.denominator())
    }

    pub fn contains_element(&self, a: &GradedElement) -> bool {
        self.contains_fraction(a, &GradedElement::one(&self.ring))
    }

    pub fn contains_one(&self) -> bool {
        self.contains_element(&GradedElement::one(&self.ring))
    }

    /// First generator of `self` not in `other`, as a fraction.
    pub fn first_outside(&self, other: &FracIdeal) -> Option<(GradedElement, GradedElement)> {
        self.gens
            .iter()
            .find(|g| !other.contains_fraction(g, &self.den))
            .map(|g| (g.clone(), self.den.clone()))
    }

    pub fn is_subset(&self, other: &FracIdeal) -> bool {
        self.first_outside(other).is_none()
    }

    pub fn equals(&self, other: &FracIdeal) -> bool {
        if self.den == other.den && self.gens == other.gens {
            return true;
        }
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn sum(&self, other: &FracIdeal) -> FracIdeal {
        if self.den == other.den {
            let gens = self.gens.iter().chain(&other.gens).cloned().collect();
            return Self::build(&self.ring, gens, self.den.clone());
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g * &other.den)
            .chain(other.gens.iter().map(|h| h * &self.den))
            .collect();
        Self::build(&self.ring, gens, &self.den * &other.den)
    }

    pub fn product(&self, other: &FracIdeal) -> FracIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g * h);
            }
        }
        Self::build(&self.ring, gens, &self.den * &other.den)
    }

    pub fn pow(&self, e: u32) -> FracIdeal {
        let mut acc = FracIdeal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// `x·I` for `x = n/d`.
    pub fn scale(&self, n: &GradedElement, d: &GradedElement) -> FracIdeal {
        Self::build(&self.ring, self.gens.iter().map(|g| g * n).collect(), &self.den * d)
    }

    pub fn scale_quotient(&self, x: &HQuotientElement) -> FracIdeal {
        self.scale(x.numerator(), x.denominator())
    }

    /// `(self : other) = {x : x·other ⊆ self}`.
    pub fn colon(&self, other: &FracIdeal) -> Result<FracIdeal> {
        if other.is_zero() {
            return Err(Error::Zero("ideal"));
        }
        if self.is_zero() {
            return Ok(FracIdeal::zero(&self.ring));
        }
        let ring = &self.ring;
        let f = other.gens[0].clone();
        // (I : J) = (b/(a f))·(f I' :_R J') with I = I'/a, J = J'/b.
        let a = FracIdeal::build(ring, self.gens.iter().map(|g| g * &f).collect(), GradedElement::one(ring));
        let mut acc: Vec<GradedElement> = self.gens.clone();
        for g in &other.gens[1..] {
            let c = colon_element(ring, &a, g);
            if c.len() == 1 && c[0].is_one() {
                continue;
            }
            acc = intersect_integral(ring, &acc, &c);
        }
        let den = &self.den * &f;
        let gens = acc.into_iter().map(|y| &y * &other.den).collect();
        Ok(Self::build(ring, gens, den))
    }

    /// `(R : I)`.
    pub fn inverse(&self) -> Result<FracIdeal> {
        if self.is_zero() {
            return Err(Error::Zero("ideal"));
        }
        FracIdeal::unit(&self.ring).colon(self)
    }

    /// Intersection of fractional ideals.
    pub fn intersect(&self, other: &FracIdeal) -> FracIdeal {
        if self.is_zero() || other.is_zero() {
            return FracIdeal::zero(&self.ring);
        }
        // Over the common denominator e = a·b: I ∩ J = (1/e)(bI' ∩ aJ').
        let a: Vec<_> = self.gens.iter().map(|g| g * &other.den).collect();
        let b: Vec<_> = other.gens.iter().map(|g| g * &self.den).collect();
        let gens = intersect_integral(&self.ring, &a, &b);
        Self::build(&self.ring, gens, &self.den * &other.den)
    }

    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

/// Membership in an integral ideal generated by terms: the component of
/// degree γ of `y` must lie in `Σ c_i·base` over generators with
/// `γ - γ_i ∈ Γ`.
fn term_ideal_contains(ring: &RingRef, gens: &[GradedElement], y: &GradedElement) -> bool {
    let m = ring.monoid();
    y.terms().iter().all(|(d, c)| {
        let reach = gens.iter().filter_map(|g| g.as_term()).filter(|(gd, _)| m.contains(&(d - gd)));
        match ring.base() {
            BaseDomain::Rationals => reach.count() > 0,
            BaseDomain::Integers => {
                let g = reach.fold(BigInt::zero(), |acc, (_, gc)| acc.gcd(gc.numer()));
                !g.is_zero() && c.numer().is_multiple_of(&g)
            }
        }
    })
}

pub fn ideal_member(x: &HQuotientElement, i: &FracIdeal) -> bool {
    i.contains(x)
}

pub fn ideal_equals(i: &FracIdeal, j: &FracIdeal) -> bool {
    i.equals(j)
}

pub fn ideal_sum(i: &FracIdeal, j: &FracIdeal) -> FracIdeal {
    i.sum(j)
}

pub fn ideal_product(i: &FracIdeal, j: &FracIdeal) -> FracIdeal {
    i.product(j)
}

pub fn ideal_colon(i: &FracIdeal, j: &FracIdeal) -> Result<FracIdeal> {
    i.colon(j)
}

pub fn frac_inverse(i: &FracIdeal) -> Result<FracIdeal> {
    i.inverse()
}
