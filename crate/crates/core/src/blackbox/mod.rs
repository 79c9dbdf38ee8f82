//! Groups of black-box type.
//!
//! A [`Group`] is an ambient backend (residue tuples, permutations, matrices
//! mod a prime), a list of generators, and optionally a [`Congruence`] that
//! replaces the backend's equality with equality modulo a normal subgroup.
//! Algorithms only multiply, invert and compare; nothing looks inside an
//! [`Element`] except the backend itself.

mod closure;
pub mod format;
mod random;
mod slp;

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

pub use closure::{
    derived_subgroup, derived_subgroup_words, enumerate_span, normal_closure, normal_closure_words,
    quotient, Span, DEFAULT_ENUMERATION_BOUND,
};
pub use random::{random_element, ProductReplacement};
pub use slp::Slp;

use crate::arith::{inv_mod, mul_mod, pow_mod};
use crate::order::FactoredInteger;
use crate::{Error, Result};

/// Opaque group element. The payload is interpreted by the [`Ambient`] it
/// belongs to and is always stored in reduced form, so payload equality is
/// backend equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) SmallVec<[u64; 4]>);

impl Element {
    pub fn from_slice(values: &[u64]) -> Self {
        Element(SmallVec::from_slice(values))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// Canonical byte encoding (little-endian words).
    pub fn encode(&self) -> Vec<u8> {
        self.0.iter().flat_map(|v| v.to_le_bytes()).collect()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// The concrete arithmetic elements live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `Z/d₁ × … × Z/dₛ`, componentwise addition.
    Zmod { moduli: Vec<u64> },
    /// `Z/c ⋉ Z/d` on pairs `(u, k)` read as `x^u y^k` with `x⁻¹ y x = y^action`.
    Twisted { c: u64, d: u64, action: u64 },
    /// Permutations of `0..degree`; products apply the left factor first.
    Perm { degree: usize },
    /// Invertible `dim × dim` matrices mod `prime`, row-major.
    MatMod { prime: u64, dim: usize },
    /// Units of `Z/modulus` under multiplication.
    Units { modulus: u64 },
}

impl Ambient {
    pub fn identity(&self) -> Element {
        match self {
            Ambient::Zmod { moduli } => Element(SmallVec::from_elem(0, moduli.len())),
            Ambient::Twisted { .. } => Element::from_slice(&[0, 0]),
            Ambient::Perm { degree } => Element((0..*degree as u64).collect()),
            Ambient::MatMod { dim, .. } => {
                let mut v = SmallVec::from_elem(0, dim * dim);
                for i in 0..*dim {
                    v[i * dim + i] = 1;
                }
                Element(v)
            }
            Ambient::Units { .. } => Element::from_slice(&[1]),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match self {
            Ambient::Zmod { moduli } => Element(
                moduli
                    .iter()
                    .zip(a.0.iter().zip(b.0.iter()))
                    .map(|(&m, (&x, &y))| ((x as u128 + y as u128) % m as u128) as u64)
                    .collect(),
            ),
            Ambient::Twisted { c, d, action } => {
                let (u1, k1) = (a.0[0], a.0[1]);
                let (u2, k2) = (b.0[0], b.0[1]);
                let twist = mul_mod(k1, pow_mod(*action, u2, *d), *d);
                Element::from_slice(&[(u1 + u2) % c, (twist + k2) % d])
            }
            Ambient::Perm { .. } => Element(a.0.iter().map(|&i| b.0[i as usize]).collect()),
            Ambient::MatMod { prime, dim } => {
                let n = *dim;
                let mut out = SmallVec::from_elem(0u64, n * n);
                for i in 0..n {
                    for k in 0..n {
                        let aik = a.0[i * n + k];
                        if aik == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] =
                                (out[i * n + j] + mul_mod(aik, b.0[k * n + j], *prime)) % prime;
                        }
                    }
                }
                Element(out)
            }
            Ambient::Units { modulus } => Element::from_slice(&[mul_mod(a.0[0], b.0[0], *modulus)]),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match self {
            Ambient::Zmod { moduli } => Element(
                moduli
                    .iter()
                    .zip(a.0.iter())
                    .map(|(&m, &x)| (m - x % m) % m)
                    .collect(),
            ),
            Ambient::Twisted { c, d, action } => {
                let (u, k) = (a.0[0], a.0[1]);
                let back = (c - u % c) % c;
                let twist = mul_mod(k, pow_mod(*action, back, *d), *d);
                Element::from_slice(&[back, (d - twist) % d])
            }
            Ambient::Perm { degree } => {
                let mut out = SmallVec::from_elem(0u64, *degree);
                for (i, &img) in a.0.iter().enumerate() {
                    out[img as usize] = i as u64;
                }
                Element(out)
            }
            Ambient::MatMod { prime, dim } => {
                Element(mat_inverse(&a.0, *dim, *prime).expect("matrix elements are invertible"))
            }
            Ambient::Units { modulus } => Element::from_slice(&[
                inv_mod(a.0[0], *modulus).expect("unit elements are invertible")
            ]),
        }
    }

    /// Check that raw values describe an element of this ambient.
    pub fn validate(&self, a: &Element) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidInput(format!("{a:?}: {why}")));
        match self {
            Ambient::Zmod { moduli } => {
                if a.0.len() != moduli.len() {
                    return bad("wrong number of residues");
                }
                if a.0.iter().zip(moduli).any(|(&x, &m)| x >= m) {
                    return bad("residue not reduced");
                }
            }
            Ambient::Twisted { c, d, .. } => {
                if a.0.len() != 2 || a.0[0] >= *c || a.0[1] >= *d {
                    return bad("not a reduced pair");
                }
            }
            Ambient::Perm { degree } => {
                let mut seen = vec![false; *degree];
                if a.0.len() != *degree {
                    return bad("wrong degree");
                }
                for &i in a.0.iter() {
                    if i as usize >= *degree || seen[i as usize] {
                        return bad("not a permutation");
                    }
                    seen[i as usize] = true;
                }
            }
            Ambient::MatMod { prime, dim } => {
                if a.0.len() != dim * dim || a.0.iter().any(|&x| x >= *prime) {
                    return bad("not a reduced square matrix");
                }
                if mat_inverse(&a.0, *dim, *prime).is_none() {
                    return bad("singular matrix");
                }
            }
            Ambient::Units { modulus } => {
                if a.0.len() != 1 || a.0[0] >= *modulus || inv_mod(a.0[0], *modulus).is_none() {
                    return bad("not a unit");
                }
            }
        }
        Ok(())
    }
}

fn mat_inverse(a: &[u64], n: usize, p: u64) -> Option<SmallVec<[u64; 4]>> {
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..i * n + n]);
        m[i * w + n + i] = 1 % p;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
        if pivot != col {
            for j in 0..w {
                m.swap(col * w + j, pivot * w + j);
            }
        }
        let inv = inv_mod(m[col * w + col], p)?;
        for j in 0..w {
            m[col * w + j] = mul_mod(m[col * w + j], inv, p);
        }
        for r in 0..n {
            if r != col && m[r * w + col] != 0 {
                let f = m[r * w + col];
                for j in 0..w {
                    let sub = mul_mod(f, m[col * w + j], p);
                    m[r * w + j] = (m[r * w + j] + p - sub) % p;
                }
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|i| m[i * w + n..i * w + w].to_vec())
            .collect(),
    )
}

/// Membership predicate of a normal subgroup `N`, used as the equality of
/// `G/N`: `x ≡ y` iff `x⁻¹y ∈ N`. The predicate may be undefined (`None`).
#[derive(Clone)]
pub struct Congruence {
    membership: Arc<dyn Fn(&Element) -> Option<bool> + Send + Sync>,
}

impl Congruence {
    pub fn new(membership: impl Fn(&Element) -> Option<bool> + Send + Sync + 'static) -> Self {
        Self {
            membership: Arc::new(membership),
        }
    }

    pub fn contains(&self, x: &Element) -> Option<bool> {
        (self.membership)(x)
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Congruence")
    }
}

/// Handle to a group of black-box type.
#[derive(Clone, Debug)]
pub struct Group {
    ambient: Arc<Ambient>,
    generators: Vec<Element>,
    congruence: Option<Congruence>,
    known_order: Option<FactoredInteger>,
}

impl Group {
    /// A group on a base backend. Generators are validated against the ambient.
    pub fn new(ambient: Ambient, generators: Vec<Element>) -> Result<Self> {
        for g in &generators {
            ambient.validate(g)?;
        }
        Ok(Self {
            ambient: Arc::new(ambient),
            generators,
            congruence: None,
            known_order: None,
        })
    }

    pub fn with_order(mut self, order: FactoredInteger) -> Self {
        self.known_order = Some(order);
        self
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn known_order(&self) -> Option<&FactoredInteger> {
        self.known_order.as_ref()
    }

    pub fn congruence(&self) -> Option<&Congruence> {
        self.congruence.as_ref()
    }

    /// Whether equality is plain payload equality (so elements can be hashed).
    pub fn has_canonical_keys(&self) -> bool {
        self.congruence.is_none()
    }

    /// Same ambient and congruence, new generators, no known order.
    pub fn subgroup(&self, generators: Vec<Element>) -> Group {
        Group {
            ambient: Arc::clone(&self.ambient),
            generators,
            congruence: self.congruence.clone(),
            known_order: None,
        }
    }

    /// Same ambient and generators with the congruence replaced.
    pub fn with_congruence(&self, congruence: Congruence) -> Group {
        Group {
            ambient: Arc::clone(&self.ambient),
            generators: self.generators.clone(),
            congruence: Some(congruence),
            known_order: None,
        }
    }

    /// Drop any congruence, returning the group on the bare backend.
    pub fn without_congruence(&self) -> Group {
        Group {
            congruence: None,
            ..self.clone()
        }
    }

    pub fn identity(&self) -> Element {
        self.ambient.identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.ambient.mul(a, b)
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.ambient.inv(a)
    }

    pub fn pow(&self, a: &Element, mut e: u64) -> Element {
        let mut acc = self.identity();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow_signed(&self, a: &Element, e: i64) -> Element {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(&self.inv(a), e.unsigned_abs())
        }
    }

    /// `by⁻¹ · a · by`.
    pub fn conj(&self, a: &Element, by: &Element) -> Element {
        self.mul(&self.mul(&self.inv(by), a), by)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    /// Equality under the congruence; `None` where it is undefined.
    pub fn try_eq(&self, a: &Element, b: &Element) -> Option<bool> {
        match &self.congruence {
            None => Some(a == b),
            Some(c) => {
                if a == b {
                    return Some(true);
                }
                c.contains(&self.mul(&self.inv(a), b))
            }
        }
    }

    pub fn eq(&self, a: &Element, b: &Element) -> Result<bool> {
        self.try_eq(a, b).ok_or(Error::Undefined)
    }

    pub fn is_identity(&self, a: &Element) -> Result<bool> {
        match &self.congruence {
            None => Ok(*a == self.identity()),
            Some(c) => {
                if *a == self.identity() {
                    return Ok(true);
                }
                c.contains(a).ok_or(Error::Undefined)
            }
        }
    }

    /// Exact order of `g` given a multiple `n` of it: start from `n` and strip
    /// primes while the power stays trivial.
    pub fn order_dividing(&self, g: &Element, n: &FactoredInteger) -> Result<FactoredInteger> {
        if !self.is_identity(&self.pow(g, n.value()))? {
            return Err(Error::Precondition(format!(
                "{g:?} has order not dividing {}",
                n.value()
            )));
        }
        let mut order = n.value();
        let mut pairs = Vec::new();
        for &(p, e) in n.factors() {
            order /= p.pow(e);
            let rest = self.pow(g, order);
            let mut f = 0;
            let mut cur = rest;
            while !self.is_identity(&cur)? {
                cur = self.pow(&cur, p);
                f += 1;
            }
            order *= p.pow(f);
            if f > 0 {
                pairs.push((p, f));
            }
        }
        FactoredInteger::from_factors(&pairs)
    }

    /// Order of `g` using the known group order.
    pub fn element_order(&self, g: &Element) -> Result<FactoredInteger> {
        let n = self.known_order.as_ref().ok_or(Error::MissingOrder)?;
        self.order_dividing(g, n)
    }

    /// Whether all generators pairwise commute.
    pub fn generators_commute(&self) -> Result<bool> {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if !self.is_identity(&self.commutator(a, b))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Evaluate an SLP over this group's generators.
    pub fn evaluate(&self, slp: &Slp) -> Result<Element> {
        slp.evaluate(self, &self.generators)
    }
}
