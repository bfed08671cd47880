use std::fmt;

use super::{Coef, Degree, GradedElement, RingRef};
use crate::error::{Error, Result};

/// Element of `R[X]`; `coeffs[i]` is the coefficient of `X^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyX {
    ring: RingRef,
    coeffs: Vec<GradedElement>,
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PolyX {
    pub fn new(ring: &RingRef, coeffs: Vec<GradedElement>) -> Self {
        let mut p = PolyX { ring: ring.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(ring: &RingRef) -> Self {
        PolyX { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: GradedElement) -> Self {
        let ring = c.ring().clone();
        Self::new(&ring, vec![c])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(GradedElement::one(ring))
    }

    /// `X^n`.
    pub fn x_pow(ring: &RingRef, n: usize) -> Self {
        let mut coeffs = vec![GradedElement::zero(ring); n];
        coeffs.push(GradedElement::one(ring));
        PolyX { ring: ring.clone(), coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coeffs(&self) -> &[GradedElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `∂f`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> GradedElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| GradedElement::zero(&self.ring))
    }

    pub fn in_ring(&self) -> bool {
        self.coeffs.iter().all(|c| c.in_ring())
    }

    /// Number of nonzero homogeneous terms over all coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(|c| c.len()).sum()
    }

    pub fn add(&self, o: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        PolyX::new(&self.ring, coeffs)
    }

    pub fn sub(&self, o: &PolyX) -> PolyX {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyX {
        PolyX { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &PolyX) -> PolyX {
        if self.is_zero() || o.is_zero() {
            return PolyX::zero(&self.ring);
        }
        let mut coeffs = vec![GradedElement::zero(&self.ring); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        PolyX::new(&self.ring, coeffs)
    }

    pub fn scale(&self, a: &GradedElement) -> PolyX {
        PolyX::new(&self.ring, self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn scale_coef(&self, k: &Coef) -> PolyX {
        PolyX::new(&self.ring, self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    /// Multiplies by `X^n`.
    pub fn shift_x(&self, n: usize) -> PolyX {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![GradedElement::zero(&self.ring); n];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { ring: self.ring.clone(), coeffs }
    }

    /// Divides every coefficient exactly by `d`.
    pub fn exact_div_coeffs(&self, d: &GradedElement) -> Option<PolyX> {
        let coeffs: Option<Vec<_>> = self.coeffs.iter().map(|c| c.exact_div(d)).collect();
        coeffs.map(|c| PolyX::new(&self.ring, c))
    }

    /// Exact quotient `self / d` in `Frac(base)[⟨Γ⟩][X]`, if it exists.
    pub fn exact_div(&self, d: &PolyX) -> Option<PolyX> {
        assert!(!d.is_zero(), "division by zero");
        let dn = d.degree().unwrap();
        let lead = &d.coeffs[dn];
        let mut rem = self.clone();
        let mut quot = vec![GradedElement::zero(&self.ring); self.coeffs.len().saturating_sub(dn).max(1)];
        while let Some(rn) = rem.degree() {
            if rn < dn {
                return None;
            }
            let q = rem.coeffs[rn].exact_div(lead)?;
            let qt = PolyX::constant(q.clone()).shift_x(rn - dn);
            rem = rem.sub(&qt.mul(d));
            quot[rn - dn] = q;
        }
        Some(PolyX::new(&self.ring, quot))
    }

    pub fn checked_mul(&self, o: &PolyX) -> Result<PolyX> {
        if !self.ring.same(&o.ring) {
            return Err(Error::RingMismatch(self.ring.name().into(), o.ring.name().into()));
        }
        Ok(self.mul(o))
    }

    /// The bivariate-family form `Σ c·Y^γ X^i`: one entry per homogeneous
    /// term of each coefficient, as `(X-exponent, Y-exponent, coefficient)`.
    pub fn polynomialize(&self) -> Result<Vec<(usize, Degree, Coef)>> {
        if self.is_zero() {
            return Err(Error::Zero("polynomial"));
        }
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for (d, k) in c.terms() {
                out.push((i, d.clone(), k.clone()));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // A single negative term is printed as a subtraction.
            let negative = c.len() == 1 && c.to_string().starts_with('-');
            let c = if negative && !first { -c } else { c.clone() };
            if !first {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let xs = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{xs}")?;
            } else if (-&c).is_one() {
                write!(f, "-{xs}")?;
            } else if c.len() == 1 {
                write!(f, "{c}*{xs}")?;
            } else {
                write!(f, "({c})*{xs}")?;
            }
        }
        Ok(())
    }
}
