//! Abelian groups of black-box type: EDL, canonical bases, one- and two-way
//! recognition, the invariant-factor isomorphism test, and the constructive
//! membership tests and presentations built on top of a two-way isomorphism.

mod basis;
mod constructive;
mod edl;

use std::sync::Arc;

use rand::Rng;

pub use basis::canonical_basis;
pub use constructive::{
    membership_from_iso, presentation_from_iso, ConstructiveMembership, ConstructivePresentation,
};
pub use edl::{edl, edl_p_group, EdlSolver};

use crate::blackbox::{Element, Group, ProductReplacement, Slp};
use crate::order::{split_square_free_top, threshold, FactoredInteger};
use crate::{Error, Result};

/// Independent elements with their orders and words over the group's
/// generators.
#[derive(Clone, Debug)]
pub struct Basis {
    pub elements: Vec<Element>,
    pub orders: Vec<FactoredInteger>,
    pub words: Vec<Slp>,
}

/// A basis whose orders form a divisor chain `d₁ | d₂ | … | dₛ`, `dᵢ ≥ 2`.
#[derive(Clone, Debug)]
pub struct CanonicalBasis(Basis);

impl CanonicalBasis {
    pub(crate) fn new_unchecked(b: Basis) -> Self {
        CanonicalBasis(b)
    }

    pub fn basis(&self) -> &Basis {
        &self.0
    }

    /// The invariant factors `d₁, …, dₛ`.
    pub fn invariants(&self) -> Vec<u64> {
        self.0.orders.iter().map(FactoredInteger::value).collect()
    }

    /// `∏ dᵢ`, the order of the span.
    pub fn order(&self) -> u64 {
        self.invariants().iter().product()
    }
}

/// Forward map `Z/d₁ × … × Z/dₛ → G`, `t ↦ ∏ xᵢ^tᵢ`.
#[derive(Clone, Debug)]
pub struct OneWayIso {
    group: Group,
    moduli: Vec<u64>,
    images: Vec<Element>,
    words: Vec<Slp>,
}

impl OneWayIso {
    pub fn new(group: &Group, moduli: Vec<u64>, images: Vec<Element>, words: Vec<Slp>) -> Self {
        OneWayIso {
            group: group.clone(),
            moduli,
            images,
            words,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Words over the group's generators for the images of the unit vectors.
    pub fn words(&self) -> &[Slp] {
        &self.words
    }

    pub fn forward(&self, t: &[u64]) -> Option<Element> {
        if t.len() != self.moduli.len() {
            return None;
        }
        let g = &self.group;
        Some(
            self.images
                .iter()
                .zip(t)
                .fold(g.identity(), |acc, (x, &e)| g.mul(&acc, &g.pow(x, e))),
        )
    }

    /// The word `∏ wᵢ^tᵢ` over the group's generators.
    pub fn forward_word(&self, t: &[u64]) -> Option<Slp> {
        (t.len() == self.moduli.len()).then(|| Slp::word(&self.words, t))
    }
}

/// A forward map together with its inverse, computed by EDL.
#[derive(Clone)]
pub struct TwoWayIso {
    forward: OneWayIso,
    solver: Arc<EdlSolver>,
}

impl std::fmt::Debug for TwoWayIso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwoWayIso")
            .field("moduli", &self.forward.moduli)
            .finish()
    }
}

impl TwoWayIso {
    pub fn one_way(&self) -> &OneWayIso {
        &self.forward
    }

    pub fn group(&self) -> &Group {
        &self.forward.group
    }

    pub fn moduli(&self) -> &[u64] {
        &self.forward.moduli
    }

    pub fn forward(&self, t: &[u64]) -> Option<Element> {
        self.forward.forward(t)
    }

    /// Exponent tuple of `x`, or `None` when `x` is not in the group.
    pub fn inverse(&self, x: &Element) -> Result<Option<Vec<u64>>> {
        self.solver.solve(x)
    }
}

/// Two-way isomorphism from a canonical basis of an abelian group whose order
/// divides `n`.
pub fn abel_recog_2(group: &Group, n: &FactoredInteger) -> Result<TwoWayIso> {
    let cb = canonical_basis(group, n)?;
    Ok(iso_from_basis(group, cb.basis(), n)?)
}

pub(crate) fn iso_from_basis(group: &Group, b: &Basis, n: &FactoredInteger) -> Result<TwoWayIso> {
    let solver = EdlSolver::new(group, &b.elements, &b.orders, n)?;
    let moduli = b.orders.iter().map(FactoredInteger::value).collect();
    Ok(TwoWayIso {
        forward: OneWayIso::new(group, moduli, b.elements.clone(), b.words.clone()),
        solver: Arc::new(solver),
    })
}

/// Options for [`iso_abelian`].
#[derive(Clone, Copy, Debug, Default)]
pub struct AbelianIsoOptions {
    /// Prime bound `c`; defaults to `log log n`.
    pub threshold: Option<f64>,
    /// Check that the generators of both inputs commute.
    pub strict: bool,
}

/// Decide `G ≅ H` for abelian groups of order `n`.
///
/// With `n = ab` split at the threshold (see [`split_square_free_top`]), only `A = ⟨s^b⟩` and its counterpart
/// are compared; the square-free part of order `b` is cyclic on both sides.
pub fn iso_abelian(
    g: &Group,
    h: &Group,
    n: &FactoredInteger,
    opts: AbelianIsoOptions,
) -> Result<bool> {
    for x in [g, h] {
        if let Some(m) = x.known_order() {
            if m != n {
                return Err(Error::OrderMismatch(format!(
                    "declared order {} but expected {}",
                    m.value(),
                    n.value()
                )));
            }
        }
        if opts.strict && !x.generators_commute()? {
            return Err(Error::NonAbelian);
        }
    }
    let c = opts.threshold.unwrap_or_else(|| threshold(n.value()));
    let (a, b) = split_square_free_top(n, c);
    let mut invariants = Vec::new();
    for x in [g, h] {
        let small = x.subgroup(x.generators().iter().map(|s| x.pow(s, b.value())).collect());
        let cb = canonical_basis(&small, &a)?;
        if cb.order() != a.value() {
            return Err(Error::OrderMismatch(format!(
                "the part of order {} has order {} in one input",
                a.value(),
                cb.order()
            )));
        }
        invariants.push(cb.invariants());
    }
    Ok(invariants[0] == invariants[1])
}

/// Default Las Vegas budget `64·⌈log log b + 1⌉`.
pub fn default_tries(b: u64) -> usize {
    64 * (threshold(b) + 1.0).ceil() as usize
}

/// An element of exact order `b` in a group assumed cyclic of order `b`.
pub fn cyclic_generator_random<R: Rng + ?Sized>(
    group: &Group,
    b: &FactoredInteger,
    rng: &mut R,
    max_tries: Option<usize>,
) -> Result<(Element, Slp)> {
    if b.is_one() {
        return Ok((group.identity(), Slp::identity()));
    }
    let tries = max_tries.unwrap_or_else(|| default_tries(b.value()));
    let mut sampler = ProductReplacement::new(group, rng);
    for _ in 0..tries {
        let (x, w) = sampler.next_element(rng);
        if &group.order_dividing(&x, b)? == b {
            return Ok((x, w));
        }
    }
    Err(Error::Exhausted {
        what: format!("an element of order {}", b.value()),
        tries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::Ambient;
    use crate::order::factorize;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zmod_group(moduli: &[u64], gens: &[&[u64]]) -> Group {
        Group::new(
            Ambient::Zmod {
                moduli: moduli.to_vec(),
            },
            gens.iter().map(|g| Element::from_slice(g)).collect(),
        )
        .unwrap()
    }

    fn std_zmod(moduli: &[u64]) -> Group {
        let gens: Vec<Vec<u64>> = (0..moduli.len())
            .map(|i| (0..moduli.len()).map(|j| (i == j) as u64).collect())
            .collect();
        let refs: Vec<&[u64]> = gens.iter().map(Vec::as_slice).collect();
        zmod_group(moduli, &refs)
    }

    fn f(n: u64) -> FactoredInteger {
        factorize(n).unwrap()
    }

    #[test]
    fn two_way_round_trip() {
        let g = std_zmod(&[2, 4]);
        let iso = abel_recog_2(&g, &f(8)).unwrap();
        assert_eq!(iso.forward(&[0, 0]).unwrap(), g.identity());
        assert_eq!(iso.inverse(&g.identity()).unwrap(), Some(vec![0, 0]));
        let x = iso.forward(&[1, 3]).unwrap();
        assert_eq!(iso.inverse(&x).unwrap(), Some(vec![1, 3]));
    }

    #[test]
    fn inverse_off_group_is_none() {
        let s4 = Ambient::Perm { degree: 4 };
        let g = Group::new(s4, vec![Element::from_slice(&[1, 0, 2, 3])]).unwrap();
        let iso = abel_recog_2(&g, &f(2)).unwrap();
        assert_eq!(
            iso.inverse(&Element::from_slice(&[0, 1, 3, 2])).unwrap(),
            None
        );
        assert_eq!(
            iso.inverse(&Element::from_slice(&[1, 2, 3, 0])).unwrap(),
            None
        );
    }

    #[test]
    fn iso_examples() {
        let opts = |c| AbelianIsoOptions {
            threshold: Some(c),
            strict: true,
        };
        let z6 = std_zmod(&[6]);
        assert!(iso_abelian(&z6, &z6, &f(6), opts(3.0)).unwrap());
        assert!(iso_abelian(&z6, &std_zmod(&[2, 3]), &f(6), opts(3.0)).unwrap());
        assert!(!iso_abelian(&std_zmod(&[8]), &std_zmod(&[2, 4]), &f(8), opts(3.0)).unwrap());
    }

    #[test]
    fn iso_guards() {
        let opts = AbelianIsoOptions {
            threshold: Some(1.0),
            strict: false,
        };
        // 2 is above the threshold but 4 | 8, so it is treated as small
        assert!(!iso_abelian(&std_zmod(&[8]), &std_zmod(&[2, 4]), &f(8), opts).unwrap());
        assert!(iso_abelian(&std_zmod(&[12]), &std_zmod(&[4, 3]), &f(12), opts).unwrap());
        let wrong = std_zmod(&[4]).with_order(f(4));
        assert!(matches!(
            iso_abelian(&wrong, &wrong, &f(8), AbelianIsoOptions::default()),
            Err(Error::OrderMismatch(_))
        ));
        let small = std_zmod(&[4]);
        let opts = AbelianIsoOptions {
            threshold: Some(3.0),
            strict: false,
        };
        assert!(matches!(
            iso_abelian(&small, &std_zmod(&[8]), &f(8), opts),
            Err(Error::OrderMismatch(_))
        ));
    }

    #[test]
    fn cyclic_generator_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z541 = std_zmod(&[541]);
        let (x, w) = cyclic_generator_random(&z541, &f(541), &mut rng, None).unwrap();
        assert_eq!(z541.order_dividing(&x, &f(541)).unwrap().value(), 541);
        assert_eq!(z541.evaluate(&w).unwrap(), x);
        let (id, _) =
            cyclic_generator_random(&z541, &FactoredInteger::one(), &mut rng, None).unwrap();
        assert_eq!(id, z541.identity());
        let v4 = std_zmod(&[2, 2]);
        assert!(matches!(
            cyclic_generator_random(&v4, &f(4), &mut rng, None),
            Err(Error::Exhausted { .. })
        ));
    }
}
