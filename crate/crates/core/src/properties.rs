//! Randomized invariants. Each case draws a ring and a seed; the seeded
//! sampler then builds the algebraic objects, so shrinking walks toward
//! small seeds rather than small polynomials.

use crate::content::{content_a, dm_exponent, gauss_check, DEFAULT_DM_CAP};
use crate::groebner::MonomialOrder;
use crate::ideal::{frac_inverse, FracIdeal, IdealBasis};
use crate::kron::{kr_member, KrMode};
use crate::nagata::{n_membership, pic_generator};
use crate::parse::{parse_element, parse_polyx};
use crate::registry;
use crate::ring::{GradedElement, HQuotientElement, PolyX, RingRef};
use crate::sample::Sampler;
use crate::star::{default_catalog, star_a_bounded, star_axiom_check, AxiomSample, StarOp};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn ring(i: usize) -> RingRef {
    registry::all()[i % 3].clone()
}

fn any_ring() -> impl Strategy<Value = (usize, u64)> {
    (0usize..3, any::<u64>())
}

fn light() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

fn heavy() -> ProptestConfig {
    ProptestConfig { cases: 16, ..ProptestConfig::default() }
}

/// Small polynomial in X: at most two coefficients of at most two terms.
fn small_polyx(s: &mut Sampler) -> PolyX {
    let ring = s.ring().clone();
    let mut c = vec![s.element(2)];
    if s.rng().gen_bool(0.7) {
        c.push(s.element(2));
    }
    PolyX::new(&ring, c)
}


proptest! {
    #![proptest_config(light())]

    #[test]
    fn ring_axioms((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (a, b, c) = (s.element(3), s.element(3), s.element(3));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn decomposition((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (a, b) = (s.element(3), s.element(3));
        let parts = a.decompose();
        let mut total = GradedElement::zero(a.ring());
        for w in parts.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous());
            prop_assert_eq!(p.as_term().unwrap().0, d);
            total = &total + p;
        }
        prop_assert_eq!(total, a.clone());
        // decompose(a + b) is the degreewise merge of both decompositions
        let sum = &a + &b;
        for (d, p) in sum.decompose() {
            let pick = |x: &GradedElement| {
                x.decompose().into_iter().find(|(e, _)| *e == d).map(|(_, q)| q).unwrap_or_else(|| GradedElement::zero(x.ring()))
            };
            prop_assert_eq!(p, &pick(&a) + &pick(&b));
        }
    }

    #[test]
    fn homogeneous_products((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (a, b) = (s.term(), s.term());
        let ab = &a * &b;
        prop_assert!(ab.is_homogeneous());
        let want = a.as_term().unwrap().0 + b.as_term().unwrap().0;
        prop_assert_eq!(ab.as_term().unwrap().0, &want);
    }

    #[test]
    fn quotient_normal_form((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (n, d, c) = (s.element(3), s.term(), s.term());
        let x = HQuotientElement::new(n.clone(), d.clone()).unwrap();
        let y = HQuotientElement::new(&n * &c, &d * &c).unwrap();
        prop_assert_eq!(&x, &y);
        // cross-multiplication agrees with normal-form equality
        let (m, e) = (s.element(2), s.term());
        let z = HQuotientElement::new(m.clone(), e.clone()).unwrap();
        prop_assert_eq!(x == z, &n * &e == &m * &d);
        prop_assert_eq!(x.denominator().len(), 1);
    }

    #[test]
    fn print_parse_round_trip((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let a = s.element(3);
        prop_assert_eq!(parse_element(&a.to_string(), a.ring()).unwrap(), a.clone());
        let f = s.polyx();
        prop_assert_eq!(parse_polyx(&f.to_string(), f.ring()).unwrap(), f.clone());
    }

    #[test]
    fn pic_content_additivity((r, seed) in any_ring(), n in 1usize..4) {
        let mut s = Sampler::new(&ring(r), seed);
        let fs: Vec<PolyX> = (0..n).map(|_| s.polyx()).collect();
        let h = pic_generator(&fs).unwrap();
        let mut sum = content_a(&fs[0]).unwrap();
        for f in &fs[1..] {
            sum = sum.sum(&content_a(f).unwrap());
        }
        prop_assert!(content_a(&h).unwrap().equals(&sum));
    }
}

proptest! {
    #![proptest_config(heavy())]

    #[test]
    fn content_laws((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (f, g) = (small_polyx(&mut s), small_polyx(&mut s));
        let (af, ag) = (content_a(&f).unwrap(), content_a(&g).unwrap());
        prop_assert!(content_a(&f.mul(&g)).unwrap().is_subset(&af.product(&ag)));
        let sum = f.add(&g);
        if !sum.is_zero() {
            prop_assert!(content_a(&sum).unwrap().is_subset(&af.sum(&ag)));
        }
        let a = s.term();
        prop_assert!(content_a(&f.scale(&a)).unwrap().equals(&af.scale(&a, &GradedElement::one(a.ring()))));
    }

    #[test]
    fn dm_exponent_is_minimal((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (f, g) = (small_polyx(&mut s), small_polyx(&mut s));
        let m = dm_exponent(&f, &g, DEFAULT_DM_CAP).unwrap().m;
        let (af, ag, afg) = (content_a(&f).unwrap(), content_a(&g).unwrap(), content_a(&f.mul(&g)).unwrap());
        let holds = |k: u32| af.pow(k + 1).product(&ag).equals(&af.pow(k).product(&afg));
        prop_assert!(holds(m));
        if m > 1 {
            prop_assert!(!holds(m - 1));
        }
    }

    #[test]
    fn gauss_is_monotone_in_star((r, seed) in any_ring()) {
        let ring = ring(r);
        let mut s = Sampler::new(&ring, seed);
        let (f, g) = (small_polyx(&mut s), small_polyx(&mut s));
        if gauss_check(&f, &g, None).unwrap().equal {
            for st in [StarOp::d(&ring), StarOp::v(&ring), StarOp::t(&ring)] {
                prop_assert!(gauss_check(&f, &g, Some(&st)).unwrap().equal);
            }
        }
    }

    #[test]
    fn colon_laws((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let (i, j) = (s.frac_ideal(2), s.frac_ideal(2));
        prop_assert!(i.is_subset(&i.product(&j).colon(&j).unwrap()));
        prop_assert!(i.colon(&j).unwrap().product(&j).is_subset(&i));
    }

    #[test]
    fn inverse_scaling((r, seed) in any_ring()) {
        let mut s = Sampler::new(&ring(r), seed);
        let i = s.frac_ideal(2);
        let x = s.term();
        let one = GradedElement::one(x.ring());
        let inv = frac_inverse(&i).unwrap();
        prop_assert!(inv.is_homogeneous());
        let lhs = frac_inverse(&i.scale(&x, &one)).unwrap();
        prop_assert!(lhs.equals(&inv.scale(&one, &x)));
        prop_assert!(i.product(&inv).is_subset(&FracIdeal::unit(x.ring())));
    }

    #[test]
    fn groebner_independent_of_generator_order(seed in any::<u64>()) {
        let ring = registry::shipped("poly_q2").unwrap();
        let mut s = Sampler::new(&ring, seed);
        let mut gens: Vec<GradedElement> = (0..3).map(|_| s.element(2)).collect();
        let a = IdealBasis::new(&ring, &gens, MonomialOrder::DegRevLex);
        gens.shuffle(s.rng());
        let b = IdealBasis::new(&ring, &gens, MonomialOrder::DegRevLex);
        prop_assert_eq!(&a.groebner().basis, &b.groebner().basis);
        for g in &gens {
            prop_assert!(a.contains(g));
        }
    }

    #[test]
    fn star_axioms((r, seed) in any_ring()) {
        let ring = ring(r);
        let mut s = Sampler::new(&ring, seed);
        let e = s.frac_ideal(2);
        let f = e.sum(&s.frac_ideal(1));
        let t = s.term();
        let x = HQuotientElement::new(GradedElement::one(&ring), t).unwrap();
        let samples = [AxiomSample { e, f, x }];
        for st in [StarOp::d(&ring), StarOp::v(&ring)] {
            let rep = star_axiom_check(&st, &samples).unwrap();
            prop_assert!(rep.all_pass(), "{}: {:?}", st, rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn star_a_grows_with_catalog((r, seed) in any_ring()) {
        let ring = ring(r);
        let mut s = Sampler::new(&ring, seed);
        let i = s.ideal(2);
        let v = StarOp::v(&ring);
        let small = star_a_bounded(&v, &i, &default_catalog(&ring, 1)).unwrap();
        let large = star_a_bounded(&v, &i, &default_catalog(&ring, 2)).unwrap();
        prop_assert!(i.is_subset(&small));
        prop_assert!(small.is_subset(&large));
        prop_assert!(large.is_subset(&v.apply(&i).unwrap()));
    }

    #[test]
    fn laurent_ideals_are_divisorial(seed in any::<u64>()) {
        let ring = registry::shipped("laurent_z").unwrap();
        let mut s = Sampler::new(&ring, seed);
        let i = s.frac_ideal(3);
        prop_assert!(StarOp::v(&ring).apply(&i).unwrap().equals(&i));
    }

    #[test]
    fn nagata_saturation((r, seed) in any_ring()) {
        let ring = ring(r);
        let mut s = Sampler::new(&ring, seed);
        let (f, g) = (small_polyx(&mut s), small_polyx(&mut s));
        for st in [StarOp::d(&ring), StarOp::v(&ring)] {
            let fg = n_membership(&f.mul(&g), &st).unwrap();
            prop_assert_eq!(fg, n_membership(&f, &st).unwrap() && n_membership(&g, &st).unwrap());
        }
    }

    #[test]
    fn kronecker_representation_and_monotonicity(seed in any::<u64>()) {
        let ring = registry::shipped("poly_q2").unwrap();
        let mut s = Sampler::new(&ring, seed);
        let (f, g, h) = (small_polyx(&mut s), small_polyx(&mut s), small_polyx(&mut s));
        let v = StarOp::v(&ring);
        let a = kr_member(&f, &g, &v, KrMode::Eab).unwrap();
        let b = kr_member(&f.mul(&h), &g.mul(&h), &v, KrMode::Eab).unwrap();
        prop_assert_eq!(a.accepted(), b.accepted());
        let d = kr_member(&f, &g, &StarOp::d(&ring), KrMode::General { bound: 1 }).unwrap();
        if d.accepted() {
            prop_assert!(a.accepted());
        }
    }
}
