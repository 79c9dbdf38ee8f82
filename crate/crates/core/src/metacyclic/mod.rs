//! Coprime meta-cyclic groups `Z/c ⋉ Z/d` of black-box type: recognition,
//! deconjugation of the action and the isomorphism test.

mod deconjugate;
mod solvable;

use std::fmt;

use rand::Rng;

pub use deconjugate::{
    deconjugate, deconjugate_with, standard_iso_witness, FailureBudget, LAS_VEGAS_SITES,
};
pub use solvable::{
    cyclic_normal_generators, hall_membership, normal_sylow, solvable_data, SolvableData,
};

use crate::abelian::{
    abel_recog_2, canonical_basis, cyclic_generator_random, OneWayIso, TwoWayIso,
};
use crate::blackbox::{derived_subgroup, Element, Group, Slp, DEFAULT_ENUMERATION_BOUND};
use crate::constructions;
use crate::order::{split_square_free_top, threshold, FactoredInteger};
use crate::{Error, Result};

/// Knobs shared by the recognition and isomorphism routines.
#[derive(Clone, Copy, Debug)]
pub struct MetacyclicConfig {
    /// Prime bound `c` splitting `n = ab`; defaults to the order convention.
    pub threshold: Option<f64>,
    pub budget: FailureBudget,
    pub enumeration_bound: usize,
}

impl Default for MetacyclicConfig {
    fn default() -> Self {
        MetacyclicConfig {
            threshold: None,
            budget: FailureBudget::default(),
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

/// `G = U ⋉ K` with `U = ⟨u⟩ ≅ Z/c`, `K = ⟨k⟩ ≅ Z/d` and `u⁻¹ku = k^v`.
#[derive(Clone, Debug)]
pub struct MetacyclicDecomposition {
    pub c: FactoredInteger,
    pub d: FactoredInteger,
    pub u: Element,
    pub k: Element,
    /// The pieces multiplied into `k`: the generator of the large Hall part
    /// and one generator per small Sylow subgroup inside `K`.
    pub k_parts: Vec<(Element, FactoredInteger)>,
    /// Two-way isomorphism onto `U`.
    pub alpha: TwoWayIso,
    /// One-way isomorphism onto `K`.
    pub beta: OneWayIso,
    pub v: u64,
}

/// Why a group is not coprime meta-cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refusal {
    NotSolvable,
    NonCyclicSylow(u64),
    NonCyclicKernel,
    NonCyclicQuotient,
    NotNormal,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::NotSolvable => write!(f, "the small part is not solvable"),
            Refusal::NonCyclicSylow(p) => write!(f, "the Sylow {p}-subgroup is not cyclic"),
            Refusal::NonCyclicKernel => write!(f, "the normal part is not cyclic"),
            Refusal::NonCyclicQuotient => {
                write!(f, "the quotient by the normal part is not cyclic")
            }
            Refusal::NotNormal => write!(f, "the cyclic part is not normal"),
        }
    }
}

/// Verdict of [`recognize_coprime_metacyclic`].
#[derive(Clone, Debug)]
pub enum Recognition {
    Metacyclic(MetacyclicDecomposition),
    Refused(Refusal),
}

impl Recognition {
    pub fn decomposition(&self) -> Option<&MetacyclicDecomposition> {
        match self {
            Recognition::Metacyclic(d) => Some(d),
            Recognition::Refused(_) => None,
        }
    }
}

fn refuse_on_nonabelian<T>(r: Result<T>, why: Refusal) -> Result<std::result::Result<T, Refusal>> {
    match r {
        Ok(x) => Ok(Ok(x)),
        Err(Error::NonAbelian) => Ok(Err(why)),
        Err(e) => Err(e),
    }
}

/// Decide whether `G` of order `n` is coprime meta-cyclic and, if so, find
/// `U`, `K` and the action.
///
/// The large primes form a normal cyclic Hall subgroup `B`, recognised by
/// `g^b = 1`. From constructive data for `G/B`, `B` is generated by relator
/// values, and each small prime whose Sylow subgroup is normal and cyclic in
/// `G/B` and centralises `B` joins `K`. What is left must be cyclic.
pub fn recognize_coprime_metacyclic<R: Rng + ?Sized>(
    group: &Group,
    n: &FactoredInteger,
    config: &MetacyclicConfig,
    rng: &mut R,
) -> Result<Recognition> {
    let bound = config.enumeration_bound;
    let c = config.threshold.unwrap_or_else(|| threshold(n.value()));
    let (a, b) = split_square_free_top(n, c);
    let q1 = if b.is_one() {
        group.clone()
    } else {
        group.with_congruence(hall_membership(group, &b))
    };
    let data = match solvable_data(&q1, &a, bound) {
        Err(Error::NotSolvable) => return Ok(Recognition::Refused(Refusal::NotSolvable)),
        r => r?,
    };
    let b_gens = cyclic_normal_generators(group, data.presentation())?;
    let b_group = group.subgroup(b_gens);
    if !b_group.generators_commute()? {
        // square-free order, so non-abelian means non-cyclic
        return Err(Error::NotApplicable(format!(
            "the Hall subgroup of order {} above the threshold is not cyclic; try a larger threshold",
            b.value()
        )));
    }
    let (y_b, _) =
        cyclic_generator_random(&b_group, &b, rng, Some(config.budget.tries(b.value())))?;

    let mut k = y_b.clone();
    let mut d = b.clone();
    let mut k_parts = Vec::new();
    if !b.is_one() {
        k_parts.push((y_b.clone(), b.clone()));
    }
    for &(p, e) in a.factors() {
        let Some(gens) = normal_sylow(&data, p)? else {
            continue;
        };
        let pe = FactoredInteger::from_factors(&[(p, e)])?;
        let sylow = q1.subgroup(gens);
        let iso = match refuse_on_nonabelian(abel_recog_2(&sylow, &pe), Refusal::NonCyclicSylow(p))?
        {
            Ok(iso) => iso,
            Err(why) => return Ok(Recognition::Refused(why)),
        };
        match iso.moduli() {
            [m] if *m == pe.value() => {}
            [] | [_] => {
                return Err(Error::OrderMismatch(format!(
                    "the Sylow {p}-subgroup has order below {}",
                    pe.value()
                )))
            }
            _ => return Ok(Recognition::Refused(Refusal::NonCyclicSylow(p))),
        }
        let x_p = group.pow(&iso.one_way().images()[0], n.value() / pe.value());
        if !group.eq(&group.mul(&x_p, &y_b), &group.mul(&y_b, &x_p))? {
            // acts on B, so it belongs to the complement
            continue;
        }
        k = group.mul(&k, &x_p);
        d = d.mul(&pe)?;
        k_parts.push((x_p, pe));
    }
    if !group.is_identity(&group.pow(&k, d.value()))? || group.order_dividing(&k, &d)? != d {
        return Ok(Recognition::Refused(Refusal::NonCyclicKernel));
    }

    let c_part = n.div_exact(&d)?;
    let quotient = group.with_congruence(hall_membership(group, &d));
    let derived = derived_subgroup(&quotient, bound)?;
    for x in derived.generators() {
        if !quotient.is_identity(x)? {
            return Ok(Recognition::Refused(Refusal::NonCyclicQuotient));
        }
    }
    let cb = match refuse_on_nonabelian(
        canonical_basis(&quotient, &c_part),
        Refusal::NonCyclicQuotient,
    )? {
        Ok(cb) => cb,
        Err(why) => return Ok(Recognition::Refused(why)),
    };
    if cb.invariants().len() > 1 {
        return Ok(Recognition::Refused(Refusal::NonCyclicQuotient));
    }
    if cb.order() != c_part.value() {
        return Err(Error::OrderMismatch(format!(
            "the quotient has order {} where {} was expected",
            cb.order(),
            c_part.value()
        )));
    }
    let g0 = cb
        .basis()
        .elements
        .first()
        .cloned()
        .unwrap_or_else(|| group.identity());
    let u = group.pow(&g0, d.value());
    let alpha = abel_recog_2(&group.subgroup(vec![u.clone()]), &c_part)?;
    let v = match deconjugate_with(group, &u, &k, &c_part, &d, rng, &config.budget) {
        Err(Error::Precondition(_)) => return Ok(Recognition::Refused(Refusal::NotNormal)),
        r => r?,
    };
    let beta = OneWayIso::new(
        &group.subgroup(vec![k.clone()]),
        vec![d.value()],
        vec![k.clone()],
        vec![Slp::generator(0)],
    );
    Ok(Recognition::Metacyclic(MetacyclicDecomposition {
        c: c_part,
        d,
        u,
        k,
        k_parts,
        alpha,
        beta,
        v,
    }))
}

/// Which input failed recognition.
fn not_metacyclic(which: &str, why: &Refusal) -> Error {
    Error::NotApplicable(format!(
        "the {which} group is not coprime meta-cyclic: {why}"
    ))
}

/// Decide `G ≅ H` for coprime meta-cyclic groups of order `n`: equal shapes
/// `(c, d)` and equal images `⟨v⟩ = ⟨ṽ⟩` in `(Z/d)^×`.
pub fn iso_metacyclic<R: Rng + ?Sized>(
    g: &Group,
    h: &Group,
    n: &FactoredInteger,
    config: &MetacyclicConfig,
    rng: &mut R,
) -> Result<bool> {
    let first = match recognize_coprime_metacyclic(g, n, config, rng)? {
        Recognition::Metacyclic(d) => d,
        Recognition::Refused(why) => return Err(not_metacyclic("first", &why)),
    };
    let second = match recognize_coprime_metacyclic(h, n, config, rng)? {
        Recognition::Metacyclic(d) => d,
        Recognition::Refused(why) => return Err(not_metacyclic("second", &why)),
    };
    same_action_image(&first, &second)
}

/// Compare two decompositions: same `(c, d)` and `⟨v⟩ = ⟨ṽ⟩`.
pub fn same_action_image(
    first: &MetacyclicDecomposition,
    second: &MetacyclicDecomposition,
) -> Result<bool> {
    if first.c != second.c || first.d != second.d {
        return Ok(false);
    }
    let d = first.d.value();
    if d == 1 {
        return Ok(true);
    }
    let image = constructions::units(d, &[first.v])?;
    let iso = abel_recog_2(&image, &first.c)?;
    let other = Element::from_slice(&[second.v % d]);
    if iso.inverse(&other)?.is_none() {
        return Ok(false);
    }
    let size: u64 = iso.moduli().iter().product();
    Ok(image.order_dividing(&other, &first.c)?.value() == size)
}
