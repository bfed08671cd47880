use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Coef, Degree, RingRef};
use crate::error::{Error, Result};

/// Exact element of `base[⟨Γ⟩]` with rational coefficients.
///
/// Ring elements proper satisfy [`GradedElement::in_ring`]: every degree lies
/// in Γ and, over Z, every coefficient is an integer. Intermediate results of
/// division (elements of `R_H`) may leave the ring.
#[derive(Clone)]
pub struct GradedElement {
    ring: RingRef,
    terms: BTreeMap<Degree, Coef>,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring.same(&other.ring)
    }
}

impl Eq for GradedElement {}

impl Hash for GradedElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl GradedElement {
    pub fn zero(ring: &RingRef) -> Self {
        GradedElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Coef::one())
    }

    pub fn constant(ring: &RingRef, c: Coef) -> Self {
        Self::raw_term(ring, c, Degree::zero(ring.dim()))
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, Coef::from_integer(c.into()))
    }

    /// `c·t^d` without validating membership in the ring.
    pub fn raw_term(ring: &RingRef, c: Coef, d: Degree) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(d, c);
        }
        GradedElement { ring: ring.clone(), terms }
    }

    /// `c·t^d`, checked to lie in R.
    pub fn term(ring: &RingRef, c: Coef, d: Degree) -> Result<Self> {
        Self::from_terms(ring, [(d, c)])
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Degree, Coef)>) -> Result<Self> {
        let e = Self::from_raw_terms(ring, terms);
        e.check_in_ring()?;
        Ok(e)
    }

    pub fn from_raw_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Degree, Coef)>) -> Self {
        let mut map: BTreeMap<Degree, Coef> = BTreeMap::new();
        for (d, c) in terms {
            assert_eq!(d.dim(), ring.dim(), "degree dimension mismatch");
            *map.entry(d).or_insert_with(Coef::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        GradedElement { ring: ring.clone(), terms: map }
    }

    /// The `i`-th named coordinate monomial `t_i`, which need not lie in R.
    pub fn coordinate(ring: &RingRef, i: usize) -> Self {
        let mut d = Degree::zero(ring.dim());
        d.0[i] = 1;
        Self::raw_term(ring, Coef::one(), d)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Degree, Coef> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && {
            let (d, c) = self.terms.iter().next().unwrap();
            d.is_zero() && c.is_one()
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Single-term view `(degree, coefficient)` of a nonzero homogeneous element.
    pub fn as_term(&self) -> Option<(&Degree, &Coef)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn in_ring(&self) -> bool {
        self.check_in_ring().is_ok()
    }

    pub fn check_in_ring(&self) -> Result<()> {
        for (d, c) in &self.terms {
            if !self.ring.base().admits(c) {
                return Err(Error::NonIntegralCoefficient(c.to_string()));
            }
            if !self.ring.monoid().contains(d) {
                return Err(Error::DegreeOutsideMonoid(d.to_string()));
            }
        }
        Ok(())
    }

    /// Homogeneous components in increasing lexicographic order of degree.
    pub fn decompose(&self) -> Vec<(Degree, GradedElement)> {
        self.terms
            .iter()
            .map(|(d, c)| (d.clone(), Self::raw_term(&self.ring, c.clone(), d.clone())))
            .collect()
    }

    pub fn components(&self) -> Vec<GradedElement> {
        self.decompose().into_iter().map(|(_, e)| e).collect()
    }

    pub fn scale(&self, k: &Coef) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        GradedElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * k)).collect(),
        }
    }

    pub fn shift(&self, by: &Degree) -> Self {
        GradedElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, c)| (d + by, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(self + o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        Ok(self * o)
    }

    pub fn same_ring(&self, o: &Self) -> Result<()> {
        if self.ring.same(&o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.name().into(), o.ring.name().into()))
        }
    }

    /// Exact quotient in `Frac(base)[⟨Γ⟩]`, if one exists. The result is not
    /// checked against R; use [`GradedElement::div_in_ring`] for that.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero(&self.ring));
        }
        if let Some((dd, dc)) = d.as_term() {
            let inv = dc.recip();
            let neg = -dd;
            return Some(GradedElement {
                ring: self.ring.clone(),
                terms: self.terms.iter().map(|(k, c)| (k + &neg, c * &inv)).collect(),
            });
        }
        // Shift both operands to polynomials with no monomial factor in the
        // divisor, then long-divide in lex order. Coordinate monomials are
        // units in the Laurent ring and prime in the polynomial ring, so
        // divisibility is unaffected by the shift.
        let ns = min_corner(&self.terms);
        let ds = min_corner(&d.terms);
        let num = self.shift(&-&ns);
        let den = d.shift(&-&ds);
        let (lead_d, lead_c) = den.terms.iter().next_back().unwrap();
        let mut rem = num.terms;
        let mut quot: BTreeMap<Degree, Coef> = BTreeMap::new();
        while let Some((lr, lc)) = rem.iter().next_back() {
            if lr.0.iter().zip(lead_d.0.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let qd = lr - lead_d;
            let qc = lc / lead_c;
            for (k, c) in &den.terms {
                let key = k + &qd;
                let v = rem.remove(&key).unwrap_or_else(Coef::zero) - c * &qc;
                if !v.is_zero() {
                    rem.insert(key, v);
                }
            }
            quot.insert(qd, qc);
        }
        let q = GradedElement { ring: self.ring.clone(), terms: quot };
        Some(q.shift(&(&ns - &ds)))
    }

    /// Exact quotient lying in R.
    pub fn div_in_ring(&self, d: &Self) -> Option<Self> {
        self.exact_div(d).filter(|q| q.in_ring())
    }

    /// Smallest degree under (total, lex) order among the terms.
    pub fn leading_for_print(&self) -> Option<(&Degree, &Coef)> {
        self.print_order().into_iter().next()
    }

    fn print_order(&self) -> Vec<(&Degree, &Coef)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.total().cmp(&b.0.total()).then_with(|| b.0.cmp(a.0)));
        v
    }

    /// Formats a monomial `t^d` with the ring's generator names, or `None`
    /// for the zero degree.
    pub fn format_monomial(ring: &RingRef, d: &Degree) -> Option<String> {
        let parts: Vec<String> = ring
            .names()
            .iter()
            .zip(d.0.iter())
            .filter(|(_, &e)| e != 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            None
        } else {
            Some(parts.join("*"))
        }
    }
}

fn min_corner(terms: &BTreeMap<Degree, Coef>) -> Degree {
    let mut it = terms.keys();
    let mut m = it.next().unwrap().clone();
    for d in it {
        for (a, b) in m.0.iter_mut().zip(d.0.iter()) {
            *a = (*a).min(*b);
        }
    }
    m
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.print_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match Self::format_monomial(&self.ring, d) {
                None => write!(f, "{a}")?,
                Some(m) if a.is_one() => write!(f, "{m}")?,
                Some(m) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, o: &GradedElement) -> GradedElement {
        debug_assert!(self.ring.same(&o.ring));
        let mut terms = self.terms.clone();
        for (d, c) in &o.terms {
            let v = terms.remove(d).unwrap_or_else(Coef::zero) + c;
            if !v.is_zero() {
                terms.insert(d.clone(), v);
            }
        }
        GradedElement { ring: self.ring.clone(), terms }
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        GradedElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, o: &GradedElement) -> GradedElement {
        self + &(-o)
    }
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, o: &GradedElement) -> GradedElement {
        debug_assert!(self.ring.same(&o.ring));
        let mut terms: BTreeMap<Degree, Coef> = BTreeMap::new();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                *terms.entry(d1 + d2).or_insert_with(Coef::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GradedElement { ring: self.ring.clone(), terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    fn q(n: i64) -> Coef {
        Coef::from_integer(n.into())
    }

    #[test]
    fn decompose_reads_off_terms() {
        let r = registry::shipped("laurent_z").unwrap();
        let a = GradedElement::from_terms(&r, [(Degree::from_slice(&[0]), q(2)), (Degree::from_slice(&[1]), q(3))]).unwrap();
        let parts = a.decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, Degree::from_slice(&[0]));
        assert_eq!(parts[1].1.to_string(), "3*t");
        assert_eq!(a.to_string(), "2 + 3*t");
        assert!(GradedElement::zero(&r).decompose().is_empty());
    }

    #[test]
    fn exact_division_in_laurent_ring() {
        let r = registry::shipped("laurent_z").unwrap();
        let t = GradedElement::coordinate(&r, 0);
        let one = GradedElement::one(&r);
        let a = &(&one + &t) * &(&t - &one.scale(&q(2)));
        let b = &one + &t;
        assert_eq!(a.exact_div(&b).unwrap(), &t - &one.scale(&q(2)));
        assert!((&one + &t.pow(2)).exact_div(&b).is_none());
        let tinv = one.exact_div(&t).unwrap();
        assert!(tinv.in_ring());
        assert_eq!(tinv.to_string(), "t^-1");
    }

    #[test]
    fn division_detects_non_integral_quotients() {
        let r = registry::shipped("laurent_z").unwrap();
        let one = GradedElement::one(&r);
        let two = one.scale(&q(2));
        assert!(one.div_in_ring(&two).is_none());
        assert!(one.exact_div(&two).is_some());
    }

    #[test]
    fn veronese_division_stays_in_monoid() {
        let r = registry::shipped("veronese_q").unwrap();
        let x2 = GradedElement::term(&r, q(1), Degree::from_slice(&[2, 0])).unwrap();
        let xy = GradedElement::term(&r, q(1), Degree::from_slice(&[1, 1])).unwrap();
        let prod = &x2 * &xy;
        assert_eq!(prod.div_in_ring(&xy).unwrap(), x2);
        assert!(xy.div_in_ring(&x2).is_none());
        assert!(GradedElement::term(&r, q(1), Degree::from_slice(&[1, 0])).is_err());
    }
}
