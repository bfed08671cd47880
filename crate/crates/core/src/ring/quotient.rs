use std::fmt;

use num_integer::Integer;
use num_traits::One;

use super::{Coef, Degree, GradedElement, RingRef};
use crate::error::{Error, Result};
use crate::ring::BaseDomain;

/// Element `n/d` of `R_H` with `d` homogeneous, kept in normal form: the
/// denominator is `c·t^δ` with δ the first degree in (L1, lex) order that
/// clears the value into R, and `c` the least positive integer clearing the
/// coefficients over Z (`c = 1` over Q).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HQuotientElement {
    num: GradedElement,
    den: GradedElement,
}

impl fmt::Debug for HQuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl HQuotientElement {
    pub fn new(num: GradedElement, den: GradedElement) -> Result<Self> {
        num.same_ring(&den)?;
        if den.is_zero() {
            return Err(Error::Zero("denominator"));
        }
        if !den.is_homogeneous() {
            return Err(Error::NotHomogeneous(den.to_string()));
        }
        Ok(Self::from_value(&num.exact_div(&den).unwrap()))
    }

    pub fn from_element(a: &GradedElement) -> Self {
        Self::from_value(a)
    }

    /// Normal form of a Laurent value with rational coefficients.
    pub fn from_value(v: &GradedElement) -> Self {
        let ring = v.ring().clone();
        if v.is_zero() {
            return HQuotientElement { num: v.clone(), den: GradedElement::one(&ring) };
        }
        let delta = clearing_degree(v);
        let c = match ring.base() {
            BaseDomain::Rationals => Coef::one(),
            BaseDomain::Integers => {
                let l = v.terms().values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
                Coef::from_integer(l)
            }
        };
        let den = GradedElement::raw_term(&ring, c.clone(), delta.clone());
        let num = v.shift(&delta).scale(&c);
        HQuotientElement { num, den }
    }

    pub fn numerator(&self) -> &GradedElement {
        &self.num
    }

    pub fn denominator(&self) -> &GradedElement {
        &self.den
    }

    pub fn ring(&self) -> &RingRef {
        self.num.ring()
    }

    /// The value as a Laurent element with rational coefficients.
    pub fn value(&self) -> GradedElement {
        self.num.exact_div(&self.den).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn in_ring(&self) -> bool {
        self.value().in_ring()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_value(&(&self.value() * &o.value()))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_value(&(&self.value() + &o.value()))
    }
}

/// First δ ∈ Γ in (L1, lex) order with `supp(v) + δ ⊆ Γ`.
fn clearing_degree(v: &GradedElement) -> Degree {
    let ring = v.ring();
    let dim = ring.dim();
    let fits = |d: &Degree| ring.monoid().contains(d) && v.terms().keys().all(|k| ring.monoid().contains(&(k + d)));
    let mut radius = 0i64;
    loop {
        let mut pts = Vec::new();
        l1_sphere(dim, radius, &mut Vec::new(), &mut pts);
        pts.sort();
        if let Some(d) = pts.into_iter().find(|d| fits(d)) {
            return d;
        }
        radius += 1;
        // A value obtained from an actual quotient always clears at the
        // denominator's degree, so this loop is bounded by its L1 norm.
        assert!(radius < 1 << 20, "no clearing degree for {v}");
    }
}

fn l1_sphere(dim: usize, r: i64, prefix: &mut Vec<i64>, out: &mut Vec<Degree>) {
    if prefix.len() + 1 == dim {
        let used: i64 = prefix.iter().map(|x| x.abs()).sum();
        let left = r - used;
        for last in if left == 0 { vec![0] } else { vec![-left, left] } {
            prefix.push(last);
            out.push(Degree::from_slice(prefix));
            prefix.pop();
        }
        return;
    }
    let used: i64 = prefix.iter().map(|x| x.abs()).sum();
    for x in -(r - used)..=(r - used) {
        prefix.push(x);
        l1_sphere(dim, r, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for HQuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let d = if self.den.to_string().contains('*') { format!("({})", self.den) } else { self.den.to_string() };
        write!(f, "{n}/{d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::registry;

    #[test]
    fn normal_form_over_laurent_integers() {
        let r = registry::shipped("laurent_z").unwrap();
        let n = parse_element("2 + 2*t", &r).unwrap();
        let d = parse_element("4*t", &r).unwrap();
        let q = HQuotientElement::new(n, d).unwrap();
        // (1+t)/(2t) = (t^-1 + 1)/2: denominator 2, no monomial needed.
        assert_eq!(q.denominator(), &parse_element("2", &r).unwrap());
        assert_eq!(q.numerator(), &parse_element("t^-1 + 1", &r).unwrap());
    }

    #[test]
    fn normal_form_over_polynomials() {
        let r = registry::shipped("poly_q2").unwrap();
        let a = HQuotientElement::new(parse_element("x^2*y + x*y^2", &r).unwrap(), parse_element("3*x^2*y", &r).unwrap()).unwrap();
        let b = HQuotientElement::new(parse_element("x + y", &r).unwrap(), parse_element("3*x", &r).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.denominator(), &parse_element("x", &r).unwrap());
        assert!(HQuotientElement::new(parse_element("x", &r).unwrap(), parse_element("x + y", &r).unwrap()).is_err());
    }
}
