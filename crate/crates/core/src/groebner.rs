//! Gröbner kernel: Buchberger's algorithm over Q and strong Gröbner bases
//! over Z (S-polynomials plus gcd-polynomials).
//!
//! Polynomials here are raw sparse term lists in `nvars` variables. The ring
//! layer lifts graded elements into this representation and lowers results
//! back; nothing in this module knows about gradings.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Scalar = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    DegRevLex,
    /// Block order: the first `block` variables are compared first (by
    /// degrevlex) and are eliminated; ties go to degrevlex on the rest.
    Elimination { block: usize },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Elimination { block } => grevlex(&a.0[..block], &b.0[..block])
                .then_with(|| grevlex(&a.0[block..], &b.0[block..])),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".to_string(),
            MonomialOrder::Elimination { block } => format!("elim({block})+degrevlex"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffDomain {
    Field,
    Integers,
}

/// Sparse polynomial, terms sorted by decreasing monomial under the order of
/// the [`PolyRing`] that built it. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Scalar {
        &self.terms[0].1
    }
}

fn int(x: &Scalar) -> BigInt {
    debug_assert!(x.is_integer());
    x.numer().clone()
}

fn rat(x: BigInt) -> Scalar {
    BigRational::from_integer(x)
}

/// Euclidean division with remainder in `[0, |b|)`.
fn floor_divmod(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let r = a.mod_floor(&b.abs());
    let q = (a - &r) / b;
    (q, r)
}

#[derive(Clone, Debug)]
pub struct PolyRing {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub domain: CoeffDomain,
}

impl PolyRing {
    pub fn new(nvars: usize, order: MonomialOrder, domain: CoeffDomain) -> Self {
        PolyRing { nvars, order, domain }
    }

    pub fn poly(&self, mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    /// `p - coeff * mono * g`, merged in order.
    fn sub_scaled(&self, p: &[(Monomial, Scalar)], coeff: &Scalar, mono: &Monomial, g: &Poly) -> Vec<(Monomial, Scalar)> {
        let mut out = Vec::with_capacity(p.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(m, c)| (m.mul(mono), c * coeff)).peekable();
        while i < p.len() || gi.peek().is_some() {
            let take_p = match (p.get(i), gi.peek()) {
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((pm, _)), Some((gm, _))) => self.order.cmp(pm, gm),
                (None, None) => unreachable!(),
            };
            match take_p {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = gi.next().unwrap();
                    out.push((m, -c));
                }
                Ordering::Equal => {
                    let (m, c) = gi.next().unwrap();
                    let v = &p[i].1 - c;
                    if !v.is_zero() {
                        out.push((m, v));
                    }
                    i += 1;
                }
            }
        }
        out
    }

    fn add_scaled(&self, a: &Poly, ca: &Scalar, ma: &Monomial, b: &Poly, cb: &Scalar, mb: &Monomial) -> Poly {
        let lhs: Vec<_> = a.terms.iter().map(|(m, c)| (m.mul(ma), c * ca)).collect();
        let neg = -cb.clone();
        Poly { terms: self.sub_scaled(&lhs, &neg, mb, b) }
    }

    /// Quotient of leading coefficients if `g` can top-reduce a term with
    /// coefficient `c`; `None` otherwise.
    fn reduction_quotient(&self, c: &Scalar, g: &Poly) -> Option<Scalar> {
        match self.domain {
            CoeffDomain::Field => Some(c / g.lc()),
            CoeffDomain::Integers => {
                let (q, _) = floor_divmod(&int(c), &int(g.lc()));
                if q.is_zero() {
                    None
                } else {
                    Some(rat(q))
                }
            }
        }
    }

    /// Full normal form of `p` with respect to `basis`.
    pub fn reduce(&self, p: &Poly, basis: &[Poly]) -> Poly {
        let mut cur: Vec<(Monomial, Scalar)> = p.terms.clone();
        let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
        let mut start = 0;
        while start < cur.len() {
            let (lm, lc) = (&cur[start].0, &cur[start].1);
            let mut step = None;
            for g in basis {
                if g.is_zero() || !g.lm().divides(lm) {
                    continue;
                }
                if let Some(q) = self.reduction_quotient(lc, g) {
                    step = Some((q, lm.div(g.lm()), g));
                    break;
                }
            }
            match step {
                Some((q, m, g)) => {
                    cur = self.sub_scaled(&cur[start..], &q, &m, g);
                    start = 0;
                }
                None => {
                    rem.push(cur[start].clone());
                    start += 1;
                }
            }
        }
        Poly { terms: rem }
    }

    /// True iff the leading term of `p` is reducible to zero by the basis in
    /// one strong step (used for minimization).
    fn strongly_divides(&self, g: &Poly, p: &Poly) -> bool {
        if !g.lm().divides(p.lm()) {
            return false;
        }
        match self.domain {
            CoeffDomain::Field => true,
            CoeffDomain::Integers => int(p.lc()).is_multiple_of(&int(g.lc())),
        }
    }

    fn normalize_lead(&self, p: Poly) -> Poly {
        if p.is_zero() {
            return p;
        }
        match self.domain {
            CoeffDomain::Field => {
                let inv = p.lc().recip();
                Poly { terms: p.terms.into_iter().map(|(m, c)| (m, c * &inv)).collect() }
            }
            CoeffDomain::Integers => {
                if p.lc().is_negative() {
                    Poly { terms: p.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
                } else {
                    p
                }
            }
        }
    }

    fn s_poly(&self, f: &Poly, g: &Poly) -> Poly {
        let l = f.lm().lcm(g.lm());
        let (mf, mg) = (l.div(f.lm()), l.div(g.lm()));
        match self.domain {
            CoeffDomain::Field => {
                self.add_scaled(f, &f.lc().recip(), &mf, g, &-g.lc().recip(), &mg)
            }
            CoeffDomain::Integers => {
                let (a, b) = (int(f.lc()), int(g.lc()));
                let c = a.lcm(&b);
                self.add_scaled(f, &rat(&c / &a), &mf, g, &rat(-(&c / &b)), &mg)
            }
        }
    }

    /// Gcd-polynomial `u*(L/lm f)*f + v*(L/lm g)*g` with `u*a + v*b = gcd(a, b)`.
    fn g_poly(&self, f: &Poly, g: &Poly) -> Option<Poly> {
        let (a, b) = (int(f.lc()), int(g.lc()));
        if a.is_multiple_of(&b) || b.is_multiple_of(&a) {
            return None;
        }
        let e = a.extended_gcd(&b);
        let l = f.lm().lcm(g.lm());
        Some(self.add_scaled(f, &rat(e.x), &l.div(f.lm()), g, &rat(e.y), &l.div(g.lm())))
    }

    pub fn groebner(&self, gens: &[Poly]) -> GroebnerBasis {
        let mut basis: Vec<Poly> = Vec::new();
        for g in gens {
            let r = self.normalize_lead(self.reduce(g, &basis));
            if !r.is_zero() {
                basis.push(r);
            }
        }
        let mut pending: Vec<(usize, usize)> = Vec::new();
        let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pending.push((i, j));
                pending_set.insert((i, j));
            }
        }
        let mut pair_count = 0usize;
        while !pending.is_empty() {
            let (pos, _) = pending
                .iter()
                .enumerate()
                .min_by(|(_, &(i1, j1)), (_, &(i2, j2))| {
                    let l1 = basis[i1].lm().lcm(basis[j1].lm());
                    let l2 = basis[i2].lm().lcm(basis[j2].lm());
                    l1.degree().cmp(&l2.degree()).then((i1, j1).cmp(&(i2, j2)))
                })
                .unwrap();
            let (i, j) = pending.swap_remove(pos);
            pending_set.remove(&(i, j));
            pair_count += 1;
            let (f, g) = (&basis[i], &basis[j]);
            let mut candidates = Vec::new();
            match self.domain {
                CoeffDomain::Field => {
                    if f.lm().is_coprime(g.lm()) {
                        continue;
                    }
                    let l = f.lm().lcm(g.lm());
                    let chain = (0..basis.len()).any(|k| {
                        k != i
                            && k != j
                            && basis[k].lm().divides(&l)
                            && !pending_set.contains(&(i.min(k), i.max(k)))
                            && !pending_set.contains(&(j.min(k), j.max(k)))
                    });
                    if chain {
                        continue;
                    }
                    candidates.push(self.s_poly(f, g));
                }
                CoeffDomain::Integers => {
                    candidates.push(self.s_poly(f, g));
                    if let Some(gp) = self.g_poly(f, g) {
                        candidates.push(gp);
                    }
                }
            }
            for c in candidates {
                let r = self.normalize_lead(self.reduce(&c, &basis));
                if r.is_zero() {
                    continue;
                }
                let k = basis.len();
                basis.push(r);
                for i in 0..k {
                    pending.push((i, k));
                    pending_set.insert((i, k));
                }
            }
        }
        let basis = self.interreduce(basis);
        GroebnerBasis {
            ring: self.clone(),
            basis,
            pair_count,
        }
    }

    fn interreduce(&self, mut basis: Vec<Poly>) -> Vec<Poly> {
        basis.sort_by(|a, b| {
            self.order
                .cmp(a.lm(), b.lm())
                .then_with(|| int_abs(a.lc()).cmp(&int_abs(b.lc())))
        });
        let mut kept: Vec<Poly> = Vec::new();
        for p in basis {
            if !kept.iter().any(|g| self.strongly_divides(g, &p)) {
                kept.retain(|g| !self.strongly_divides(&p, g));
                kept.push(p);
            }
        }
        let mut out = Vec::with_capacity(kept.len());
        for idx in 0..kept.len() {
            let p = &kept[idx];
            let others: Vec<Poly> = kept
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != idx)
                .map(|(_, g)| g.clone())
                .collect();
            let tail = Poly { terms: p.terms[1..].to_vec() };
            let mut terms = vec![p.terms[0].clone()];
            terms.extend(self.reduce(&tail, &others).terms);
            out.push(self.normalize_lead(Poly { terms }));
        }
        out.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        out
    }
}

fn int_abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: PolyRing,
    pub basis: Vec<Poly>,
    pub pair_count: usize,
}

impl GroebnerBasis {
    pub fn reduce(&self, p: &Poly) -> Poly {
        self.ring.reduce(p, &self.basis)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Basis elements free of the first `block` variables, with those
    /// variables dropped.
    pub fn eliminate(&self, block: usize) -> Vec<Poly> {
        self.basis
            .iter()
            .filter(|p| p.terms.iter().all(|(m, _)| m.0[..block].iter().all(|&e| e == 0)))
            .map(|p| Poly {
                terms: p
                    .terms
                    .iter()
                    .map(|(m, c)| (Monomial(SmallVec::from_slice(&m.0[block..])), c.clone()))
                    .collect(),
            })
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis
            .iter()
            .any(|p| p.terms.len() == 1 && p.lm().is_one() && (self.ring.domain == CoeffDomain::Field || p.lc().is_one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_orders_by_degree_then_reverse_last_variable() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&mono(&[2, 0]), &mono(&[0, 1])), Ordering::Greater);
        // x*y^... : x^2 > x*y > y^2 in grevlex with x > y
        assert_eq!(o.cmp(&mono(&[2, 0]), &mono(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[1, 1]), &mono(&[0, 2])), Ordering::Greater);
        // x*z vs y^2 in three variables: y^2 > x*z
        assert_eq!(o.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn already_reduced_basis_is_kept() {
        let r = PolyRing::new(2, MonomialOrder::DegRevLex, CoeffDomain::Field);
        let x = r.poly(vec![(mono(&[1, 0]), q(1))]);
        let y = r.poly(vec![(mono(&[0, 1]), q(1))]);
        let gb = r.groebner(&[x.clone(), y.clone()]);
        assert_eq!(gb.basis, vec![y, x]);
    }

    #[test]
    fn integer_gcd_through_strong_basis() {
        let r = PolyRing::new(1, MonomialOrder::DegRevLex, CoeffDomain::Integers);
        let two = r.poly(vec![(mono(&[0]), q(2))]);
        let three = r.poly(vec![(mono(&[0]), q(3))]);
        let gb = r.groebner(&[two, three]);
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.basis.len(), 1);
    }

    #[test]
    fn integer_membership_needs_gcd_polynomials() {
        // (2x, 3x + 1) over Z contains x * (3x+1) * 2 - ... ; simplest check: 2 and x+1
        // generate an ideal not containing 1 but containing 2x + 2.
        let r = PolyRing::new(1, MonomialOrder::DegRevLex, CoeffDomain::Integers);
        let two = r.poly(vec![(mono(&[0]), q(2))]);
        let xp1 = r.poly(vec![(mono(&[1]), q(1)), (mono(&[0]), q(1))]);
        let gb = r.groebner(&[two, xp1]);
        assert!(!gb.is_unit_ideal());
        assert!(gb.contains(&r.poly(vec![(mono(&[1]), q(2)), (mono(&[0]), q(2))])));
        assert!(gb.contains(&r.poly(vec![(mono(&[2]), q(1)), (mono(&[0]), q(-1))])));
        assert!(!gb.contains(&r.poly(vec![(mono(&[1]), q(1))])));
    }

    #[test]
    fn product_membership() {
        let r = PolyRing::new(2, MonomialOrder::DegRevLex, CoeffDomain::Field);
        let a = r.poly(vec![(mono(&[2, 1]), q(1))]);
        let b = r.poly(vec![(mono(&[1, 2]), q(1))]);
        let gb = r.groebner(&[a, b]);
        assert!(gb.contains(&r.poly(vec![(mono(&[2, 2]), q(1))])));
        assert!(!gb.contains(&r.poly(vec![(mono(&[1, 1]), q(1))])));
    }

    #[test]
    fn elimination_computes_intersection() {
        // (x) ∩ (y) = (xy) via w*x, (1-w)*y eliminating w.
        let r = PolyRing::new(3, MonomialOrder::Elimination { block: 1 }, CoeffDomain::Field);
        let wx = r.poly(vec![(mono(&[1, 1, 0]), q(1))]);
        let y = r.poly(vec![(mono(&[0, 0, 1]), q(1)), (mono(&[1, 0, 1]), q(-1))]);
        let gb = r.groebner(&[wx, y]);
        let elim = gb.eliminate(1);
        assert_eq!(elim.len(), 1);
        assert_eq!(elim[0].terms, vec![(mono(&[1, 1]), q(1))]);
    }

    #[test]
    fn reduced_basis_is_canonical_under_shuffling() {
        let r = PolyRing::new(2, MonomialOrder::DegRevLex, CoeffDomain::Field);
        let f = r.poly(vec![(mono(&[2, 0]), q(1)), (mono(&[0, 1]), q(-1))]);
        let g = r.poly(vec![(mono(&[1, 1]), q(1)), (mono(&[0, 0]), q(-1))]);
        let h = r.poly(vec![(mono(&[0, 3]), q(2)), (mono(&[1, 0]), q(1))]);
        let a = r.groebner(&[f.clone(), g.clone(), h.clone()]);
        let b = r.groebner(&[h, f, g]);
        assert_eq!(a.basis, b.basis);
    }
}
