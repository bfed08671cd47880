//! Seeded random samplers for ring elements, `R[X]` polynomials, and
//! homogeneous ideals.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::FracIdeal;
use crate::ring::{BaseDomain, Coef, Degree, GradedElement, PolyX, RingRef};
use crate::star::small_degrees;

pub const MAX_X_DEGREE: usize = 3;
pub const MAX_TERMS: usize = 3;
pub const COEF_BOUND: i64 = 5;

pub struct Sampler {
    ring: RingRef,
    rng: ChaCha8Rng,
    pool: Vec<Degree>,
}

impl Sampler {
    /// Degrees are drawn from the elements of Γ of L1 norm at most twice the
    /// largest generator norm.
    pub fn new(ring: &RingRef, seed: u64) -> Self {
        let top = ring.monoid().generators().iter().map(|g| g.l1()).max().unwrap_or(1).max(1);
        let pool = small_degrees(ring, (2 * top) as u32);
        Sampler { ring: ring.clone(), rng: ChaCha8Rng::seed_from_u64(seed), pool }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn pool(&self) -> &[Degree] {
        &self.pool
    }

    fn small_int(&mut self) -> i64 {
        let k = self.rng.gen_range(1..=COEF_BOUND);
        if self.rng.gen_bool(0.5) {
            -k
        } else {
            k
        }
    }

    /// Nonzero coefficient: `[−5, 5] \ {0}` over Z, and such a numerator
    /// over a denominator in `1..=3` over Q.
    pub fn coef(&mut self) -> Coef {
        let n = self.small_int();
        match self.ring.base() {
            BaseDomain::Integers => Coef::from_integer(n.into()),
            BaseDomain::Rationals => {
                let d = self.rng.gen_range(1..=3i64);
                Coef::new(BigInt::from(n), BigInt::from(d))
            }
        }
    }

    pub fn degree(&mut self) -> Degree {
        self.pool.choose(&mut self.rng).unwrap().clone()
    }

    /// A nonzero homogeneous element `c·t^γ`.
    pub fn term(&mut self) -> GradedElement {
        let c = self.coef();
        let d = self.degree();
        GradedElement::raw_term(&self.ring, c, d)
    }

    /// A term with coefficient 1 (or a unit coefficient).
    pub fn monic_term(&mut self) -> GradedElement {
        let d = self.degree();
        GradedElement::raw_term(&self.ring, Coef::from_integer(1.into()), d)
    }

    /// Nonzero element with between 1 and `max_terms` terms.
    pub fn element(&mut self, max_terms: usize) -> GradedElement {
        loop {
            let n = self.rng.gen_range(1..=max_terms.max(1));
            let mut e = GradedElement::zero(&self.ring);
            for _ in 0..n {
                e = &e + &self.term();
            }
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Nonzero `f ∈ R[X]` with X-degree at most 3 and at most 3 terms per
    /// coefficient; the leading coefficient is nonzero.
    pub fn polyx(&mut self) -> PolyX {
        let deg = self.rng.gen_range(0..=MAX_X_DEGREE);
        let mut coeffs = Vec::with_capacity(deg + 1);
        for i in 0..=deg {
            if i == deg || self.rng.gen_bool(0.75) {
                coeffs.push(self.element(MAX_TERMS));
            } else {
                coeffs.push(GradedElement::zero(&self.ring));
            }
        }
        PolyX::new(&self.ring, coeffs)
    }

    /// Integral homogeneous ideal with 1 to `max_gens` term generators.
    pub fn ideal(&mut self, max_gens: usize) -> FracIdeal {
        let n = self.rng.gen_range(1..=max_gens.max(1));
        let gens = (0..n).map(|_| self.term()).collect();
        FracIdeal::integral(&self.ring, gens).unwrap()
    }

    /// Homogeneous fractional ideal: an integral sample over a random term
    /// denominator half of the time.
    pub fn frac_ideal(&mut self, max_gens: usize) -> FracIdeal {
        let i = self.ideal(max_gens);
        if self.rng.gen_bool(0.5) {
            let d = self.term();
            FracIdeal::new(&self.ring, i.generator_fractions().into_iter().map(|(n, _)| n).collect(), d).unwrap()
        } else {
            i
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn deterministic_and_in_ring() {
        for ring in registry::all() {
            let mut a = Sampler::new(&ring, 7);
            let mut b = Sampler::new(&ring, 7);
            for _ in 0..50 {
                let f = a.polyx();
                assert_eq!(f, b.polyx());
                assert!(!f.is_zero() && f.in_ring());
                assert!(f.degree().unwrap() <= MAX_X_DEGREE);
                for c in f.coeffs() {
                    assert!(c.len() <= MAX_TERMS);
                }
                let i = a.ideal(3);
                assert!(i.is_homogeneous() && !i.is_zero());
                b.ideal(3);
            }
        }
    }

    #[test]
    fn coefficient_box() {
        let z = registry::shipped("laurent_z").unwrap();
        let mut s = Sampler::new(&z, 1);
        for _ in 0..200 {
            let c = s.coef();
            assert!(c.is_integer());
            let n: i64 = c.to_integer().try_into().unwrap();
            assert!(n != 0 && n.abs() <= COEF_BOUND);
        }
        assert_eq!(s.pool().len(), 5);
    }
}
