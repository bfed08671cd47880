//! Graded monoid algebras `base[Γ]` with Γ a finitely generated submonoid
//! of Z^k, graded by `R_γ = base·t^γ`.

mod element;
mod lattice;
mod polyx;
mod quotient;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::groebner::{CoeffDomain, Monomial, MonomialOrder, Poly, PolyRing};

pub use element::GradedElement;
pub use lattice::Lattice;
pub use polyx::PolyX;
pub use quotient::HQuotientElement;

pub type Coef = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseDomain {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Z")]
    Integers,
}

impl BaseDomain {
    pub fn coeff_domain(self) -> CoeffDomain {
        match self {
            BaseDomain::Rationals => CoeffDomain::Field,
            BaseDomain::Integers => CoeffDomain::Integers,
        }
    }

    pub fn admits(self, c: &Coef) -> bool {
        match self {
            BaseDomain::Rationals => true,
            BaseDomain::Integers => c.is_integer(),
        }
    }
}

/// A vector in Z^k. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Degree(pub SmallVec<[i64; 4]>);

impl Degree {
    pub fn zero(dim: usize) -> Self {
        Degree(SmallVec::from_elem(0, dim))
    }

    pub fn from_slice(v: &[i64]) -> Self {
        Degree(SmallVec::from_slice(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn l1(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Degree {
        Degree(self.0.iter().map(|x| x * k).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, o: &Degree) -> Degree {
        Degree(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = Degree;
    fn sub(self, o: &Degree) -> Degree {
        Degree(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Search bound for the unit-direction part of a membership certificate.
const UNIT_SEARCH_DEPTH: u32 = 4;

/// The submonoid of Z^k generated by finitely many vectors.
pub struct GradingMonoid {
    dim: usize,
    generators: Vec<Degree>,
    /// `unit[i]` iff the negation of generator `i` lies in Γ.
    unit: Vec<bool>,
    unit_lattice: Lattice,
    unit_index: Vec<usize>,
    /// For unit generators: a certificate for its negation.
    neg_cert: Vec<Option<Vec<u32>>>,
    group: Lattice,
    /// Γ is the full orthant ℕ^k (generators are the standard basis).
    orthant: bool,
    cache: Mutex<HashMap<Degree, Option<Vec<u32>>>>,
}

impl fmt::Debug for GradingMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradingMonoid")
            .field("dim", &self.dim)
            .field("generators", &self.generators)
            .finish()
    }
}

impl GradingMonoid {
    pub fn new(dim: usize, generators: Vec<Degree>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRing("embedding dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidRing("monoid needs at least one generator".into()));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::InvalidRing(format!("generator {g} does not have length {dim}")));
            }
            if g.is_zero() {
                return Err(Error::InvalidRing("zero generator".into()));
            }
        }
        let n = generators.len();
        let mut neg_cert = vec![None; n];
        for (i, g) in generators.iter().enumerate() {
            neg_cert[i] = small_combination(&generators, &-g, UNIT_SEARCH_DEPTH);
        }
        let unit: Vec<bool> = neg_cert.iter().map(|c| c.is_some()).collect();
        for (i, g) in generators.iter().enumerate() {
            if !unit[i] && g.0.iter().any(|&x| x < 0) {
                return Err(Error::InvalidRing(format!(
                    "generator {g} has a negative exponent but its negation is not in the monoid"
                )));
            }
        }
        let unit_index: Vec<usize> = (0..n).filter(|&i| unit[i]).collect();
        let unit_vecs: Vec<Vec<i64>> = unit_index.iter().map(|&i| generators[i].0.to_vec()).collect();
        let all_vecs: Vec<Vec<i64>> = generators.iter().map(|g| g.0.to_vec()).collect();
        let orthant = (0..dim).all(|i| {
            generators.iter().any(|g| g.0.iter().enumerate().all(|(j, &x)| x == (i == j) as i64))
        }) && generators.iter().all(|g| g.0.iter().all(|&x| x >= 0));
        Ok(GradingMonoid {
            dim,
            orthant,
            unit_lattice: Lattice::new(&unit_vecs, dim),
            group: Lattice::new(&all_vecs, dim),
            generators,
            unit,
            unit_index,
            neg_cert,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Degree] {
        &self.generators
    }

    pub fn is_group(&self) -> bool {
        self.unit.iter().all(|&u| u)
    }

    pub fn is_unit_generator(&self, i: usize) -> bool {
        self.unit[i]
    }

    /// Membership in the quotient group ⟨Γ⟩.
    pub fn group_contains(&self, d: &Degree) -> bool {
        self.group.contains(&d.0)
    }

    pub fn contains(&self, d: &Degree) -> bool {
        if d.dim() != self.dim {
            return false;
        }
        if self.is_group() {
            return self.group.contains(&d.0);
        }
        if self.orthant {
            return d.0.iter().all(|&x| x >= 0);
        }
        self.certificate(d).is_some()
    }

    /// Nonnegative integer coefficients expressing `d` in the generators.
    pub fn certificate(&self, d: &Degree) -> Option<Vec<u32>> {
        if let Some(c) = self.cache.lock().unwrap().get(d) {
            return c.clone();
        }
        let c = self.search(d);
        self.cache.lock().unwrap().insert(d.clone(), c.clone());
        c
    }

    fn search(&self, d: &Degree) -> Option<Vec<u32>> {
        if d.dim() != self.dim || !self.group.contains(&d.0) {
            return None;
        }
        let n = self.generators.len();
        if self.unit_index.is_empty() {
            // Pointed case: every generator is nonnegative and nonzero.
            if d.0.iter().any(|&x| x < 0) {
                return None;
            }
            let mut counts = vec![0u32; n];
            return pointed_dfs(&self.generators, 0, d.clone(), &mut counts).then_some(counts);
        }
        let free: Vec<usize> = (0..n).filter(|&i| !self.unit[i]).collect();
        let bound = d.l1() as u32 + 2;
        for total in 0..=bound {
            let mut found = None;
            compositions(free.len(), total, &mut |parts| {
                let mut rest = d.clone();
                for (k, &i) in free.iter().enumerate() {
                    rest = &rest - &self.generators[i].scale(parts[k] as i64);
                }
                if let Some(z) = self.unit_lattice.solve(&rest.0) {
                    let mut cert = vec![0u32; n];
                    for (k, &i) in free.iter().enumerate() {
                        cert[i] += parts[k];
                    }
                    for (j, &zj) in z.iter().enumerate() {
                        let gi = self.unit_index[j];
                        if zj >= 0 {
                            cert[gi] += zj as u32;
                        } else {
                            let neg = self.neg_cert[gi].as_ref().unwrap();
                            for (c, &e) in cert.iter_mut().zip(neg) {
                                *c += e * (-zj) as u32;
                            }
                        }
                    }
                    found = Some(cert);
                    return true;
                }
                false
            });
            if found.is_some() {
                return found;
            }
            if free.is_empty() {
                break;
            }
        }
        None
    }
}

fn pointed_dfs(gens: &[Degree], i: usize, rest: Degree, counts: &mut [u32]) -> bool {
    if rest.is_zero() {
        return true;
    }
    if i == gens.len() {
        return false;
    }
    let g = &gens[i];
    let max = g
        .0
        .iter()
        .zip(rest.0.iter())
        .filter(|(gc, _)| **gc > 0)
        .map(|(gc, rc)| rc / gc)
        .min()
        .unwrap_or(0);
    for k in (0..=max).rev() {
        let r = &rest - &g.scale(k);
        if r.0.iter().all(|&x| x >= 0) {
            counts[i] = k as u32;
            if pointed_dfs(gens, i + 1, r, counts) {
                return true;
            }
        }
    }
    counts[i] = 0;
    false
}

/// Calls `f` on every composition of `total` into `parts` nonnegative
/// parts until it returns true.
fn compositions(parts: usize, total: u32, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    fn go(buf: &mut Vec<u32>, parts: usize, left: u32, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if buf.len() + 1 == parts {
            buf.push(left);
            let r = f(buf);
            buf.pop();
            return r;
        }
        for k in (0..=left).rev() {
            buf.push(k);
            let r = go(buf, parts, left - k, f);
            buf.pop();
            if r {
                return true;
            }
        }
        false
    }
    if parts == 0 {
        return total == 0 && f(&[]);
    }
    go(&mut Vec::with_capacity(parts), parts, total, f)
}

/// Combination of at most `depth` generators summing to `target`.
fn small_combination(gens: &[Degree], target: &Degree, depth: u32) -> Option<Vec<u32>> {
    for total in 1..=depth {
        let mut found = None;
        compositions(gens.len(), total, &mut |parts| {
            let mut s = Degree::zero(target.dim());
            for (g, &k) in gens.iter().zip(parts) {
                s = &s + &g.scale(k as i64);
            }
            if &s == target {
                found = Some(parts.to_vec());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingFlag {
    IntegrallyClosed,
    Pvmd,
    GradedKrull,
}

impl RingFlag {
    pub fn name(self) -> &'static str {
        match self {
            RingFlag::IntegrallyClosed => "integrally_closed",
            RingFlag::Pvmd => "pvmd",
            RingFlag::GradedKrull => "graded_krull",
        }
    }
}

/// On-disk ring description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub base: BaseDomain,
    pub dim: usize,
    pub monoid_generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub flags: Vec<RingFlag>,
    pub names: Vec<String>,
}

pub type RingRef = Arc<GradedRing>;

#[derive(Debug)]
pub struct GradedRing {
    name: String,
    spec: RingSpec,
    base: BaseDomain,
    monoid: GradingMonoid,
    flags: BTreeSet<RingFlag>,
    /// Binomial relations among the generator variables `z_i ↦ t^{g_i}`.
    toric: Vec<Poly>,
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.spec == other.spec
    }
}

impl Eq for GradedRing {}

impl std::hash::Hash for GradedRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}

impl GradedRing {
    pub fn from_spec(name: &str, spec: RingSpec) -> Result<RingRef> {
        if spec.names.len() != spec.dim {
            return Err(Error::InvalidRing(format!(
                "{} names given for embedding dimension {}",
                spec.names.len(),
                spec.dim
            )));
        }
        let mut seen = BTreeSet::new();
        for n in &spec.names {
            let ok = !n.is_empty()
                && n.chars().next().unwrap().is_ascii_alphabetic()
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || n == "X" || !seen.insert(n.clone()) {
                return Err(Error::InvalidRing(format!("bad or duplicate generator name `{n}`")));
            }
        }
        let gens = spec.monoid_generators.iter().map(|g| Degree::from_slice(g)).collect();
        let monoid = GradingMonoid::new(spec.dim, gens)?;
        if monoid.is_group() && spec.base == BaseDomain::Rationals {
            return Err(Error::InvalidRing(
                "a group grading over a field gives R = R_H; no nontrivial fractional ideals".into(),
            ));
        }
        let toric = toric_relations(&monoid);
        Ok(Arc::new(GradedRing {
            name: name.to_string(),
            base: spec.base,
            flags: spec.flags.iter().copied().collect(),
            spec,
            monoid,
            toric,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn base(&self) -> BaseDomain {
        self.base
    }

    pub fn monoid(&self) -> &GradingMonoid {
        &self.monoid
    }

    pub fn dim(&self) -> usize {
        self.monoid.dim
    }

    pub fn names(&self) -> &[String] {
        &self.spec.names
    }

    pub fn has_flag(&self, f: RingFlag) -> bool {
        self.flags.contains(&f)
    }

    pub fn flags(&self) -> impl Iterator<Item = RingFlag> + '_ {
        self.flags.iter().copied()
    }

    pub fn toric(&self) -> &[Poly] {
        &self.toric
    }

    /// Number of presentation variables `z_i`.
    pub fn nvars(&self) -> usize {
        self.monoid.generators.len()
    }

    /// Monomial in the presentation variables representing `t^d`.
    pub fn lift_degree(&self, d: &Degree) -> Result<Monomial> {
        self.monoid
            .certificate(d)
            .map(|c| Monomial::from_exponents(&c))
            .ok_or_else(|| Error::DegreeOutsideMonoid(d.to_string()))
    }

    pub fn lower_monomial(&self, m: &Monomial) -> Degree {
        let mut d = Degree::zero(self.dim());
        for (g, &e) in self.monoid.generators.iter().zip(m.0.iter()) {
            if e > 0 {
                d = &d + &g.scale(e as i64);
            }
        }
        d
    }

    pub fn same(&self, other: &GradedRing) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

/// Kernel of `base[z_1..z_n] -> base[Γ]`, by eliminating `t` and an inverse
/// of `t_1⋯t_k` from the graph ideal. The reduced basis consists of monic
/// pure binomials, so it also generates the kernel over Z.
fn toric_relations(m: &GradingMonoid) -> Vec<Poly> {
    let k = m.dim;
    let n = m.generators.len();
    let block = k + 1;
    let nv = block + n;
    let ring = PolyRing::new(nv, MonomialOrder::Elimination { block }, CoeffDomain::Field);
    let one = Coef::from_integer(1.into());
    let mut gens = Vec::new();
    for (i, g) in m.generators.iter().enumerate() {
        let mut lhs = vec![0u32; nv];
        let mut rhs = vec![0u32; nv];
        lhs[block + i] = 1;
        for (c, &x) in g.0.iter().enumerate() {
            if x < 0 {
                lhs[c] = (-x) as u32;
            } else {
                rhs[c] = x as u32;
            }
        }
        gens.push(ring.poly(vec![
            (Monomial::from_exponents(&lhs), one.clone()),
            (Monomial::from_exponents(&rhs), -one.clone()),
        ]));
    }
    let mut inv = vec![1u32; block];
    inv.resize(nv, 0);
    gens.push(ring.poly(vec![
        (Monomial::from_exponents(&inv), one.clone()),
        (Monomial::one(nv), -one),
    ]));
    let gb = ring.groebner(&gens);
    let target = PolyRing::new(n, MonomialOrder::DegRevLex, CoeffDomain::Field);
    let lowered: Vec<Poly> = gb.eliminate(block).into_iter().map(|p| target.poly(p.terms)).collect();
    target.groebner(&lowered).basis
}
