use std::fmt;
use std::sync::Arc;

use super::TwoWayIso;
use crate::blackbox::{Element, Group, Slp};
use crate::Result;

type Rewrite = Arc<dyn Fn(&Element) -> Result<Option<Slp>> + Send + Sync>;

/// Partial map from elements to SLPs over the group's generators; `None`
/// for elements outside the group.
#[derive(Clone)]
pub struct ConstructiveMembership {
    group: Group,
    test: Rewrite,
}

impl ConstructiveMembership {
    pub fn new(
        group: &Group,
        test: impl Fn(&Element) -> Result<Option<Slp>> + Send + Sync + 'static,
    ) -> Self {
        ConstructiveMembership {
            group: group.clone(),
            test: Arc::new(test),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn test(&self, x: &Element) -> Result<Option<Slp>> {
        (self.test)(x)
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        Ok(self.test(x)?.is_some())
    }
}

impl fmt::Debug for ConstructiveMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ConstructiveMembership")
    }
}

/// Generators `X`, relators `R` (SLPs over `X`), the lift `φ` sending
/// symbol `i` to `symbols[i]`, and the rewriting map `ψ` from elements to
/// words over `X` with `g⁻¹·(gψφ) ∈ N`. Here `N` is whatever the group's
/// congruence quotients by, so relators evaluate to the identity.
#[derive(Clone)]
pub struct ConstructivePresentation {
    group: Group,
    symbols: Vec<Element>,
    relators: Vec<Slp>,
    rewrite: Rewrite,
}

impl fmt::Debug for ConstructivePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstructivePresentation")
            .field("generators", &self.symbols.len())
            .field("relators", &self.relators.len())
            .finish()
    }
}

impl ConstructivePresentation {
    pub fn new(
        group: &Group,
        symbols: Vec<Element>,
        relators: Vec<Slp>,
        rewrite: impl Fn(&Element) -> Result<Option<Slp>> + Send + Sync + 'static,
    ) -> Self {
        ConstructivePresentation {
            group: group.clone(),
            symbols,
            relators,
            rewrite: Arc::new(rewrite),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// `φ` on the symbols.
    pub fn symbols(&self) -> &[Element] {
        &self.symbols
    }

    pub fn relators(&self) -> &[Slp] {
        &self.relators
    }

    /// `φ` lifted to words.
    pub fn phi(&self, w: &Slp) -> Result<Element> {
        w.evaluate(&self.group, &self.symbols)
    }

    /// `ψ`.
    pub fn psi(&self, g: &Element) -> Result<Option<Slp>> {
        (self.rewrite)(g)
    }
}

/// Membership through the inverse map: `x ↦ ∏ wᵢ^tᵢ` when `t = inverse(x)`
/// exists and maps back to `x`.
pub fn membership_from_iso(iso: &TwoWayIso) -> ConstructiveMembership {
    let iso = iso.clone();
    let group = iso.group().clone();
    ConstructiveMembership::new(&group.clone(), move |x| {
        let Some(t) = iso.inverse(x)? else {
            return Ok(None);
        };
        let y = iso.forward(&t).expect("tuple length matches");
        if group.eq(&y, x)? {
            Ok(iso.one_way().forward_word(&t))
        } else {
            Ok(None)
        }
    })
}

/// `⟨x₁,…,xₛ ∣ xᵢ^dᵢ, [xᵢ,xⱼ]⟩` with `ψ` given by the inverse map.
pub fn presentation_from_iso(iso: &TwoWayIso) -> ConstructivePresentation {
    let s = iso.moduli().len();
    let gens: Vec<Slp> = (0..s).map(Slp::generator).collect();
    let mut relators: Vec<Slp> = gens
        .iter()
        .zip(iso.moduli())
        .map(|(x, &d)| x.pow(d as i64))
        .collect();
    for i in 0..s {
        for j in i + 1..s {
            relators.push(Slp::commutator(&gens[i], &gens[j]));
        }
    }
    let inner = iso.clone();
    ConstructivePresentation::new(
        iso.group(),
        iso.one_way().images().to_vec(),
        relators,
        move |x| Ok(inner.inverse(x)?.map(|t| Slp::word(&gens, &t))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abel_recog_2;
    use crate::blackbox::{enumerate_span, Ambient};
    use crate::order::factorize;

    fn std_zmod(moduli: &[u64]) -> Group {
        let gens = (0..moduli.len())
            .map(|i| {
                Element::from_slice(
                    &(0..moduli.len())
                        .map(|j| (i == j) as u64)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        Group::new(
            Ambient::Zmod {
                moduli: moduli.to_vec(),
            },
            gens,
        )
        .unwrap()
    }

    #[test]
    fn membership_reproduces_every_element() {
        let g = std_zmod(&[2, 4]);
        let iso = abel_recog_2(&g, &factorize(8).unwrap()).unwrap();
        let mem = membership_from_iso(&iso);
        let id = mem.test(&g.identity()).unwrap().unwrap();
        assert_eq!(g.evaluate(&id).unwrap(), g.identity());
        for x in enumerate_span(&g, 100).unwrap().elements() {
            let w = mem.test(x).unwrap().unwrap();
            assert_eq!(&g.evaluate(&w).unwrap(), x);
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let amb = Ambient::Zmod { moduli: vec![4, 4] };
        let g = Group::new(
            amb,
            vec![Element::from_slice(&[2, 0]), Element::from_slice(&[0, 1])],
        )
        .unwrap();
        let iso = abel_recog_2(&g, &factorize(8).unwrap()).unwrap();
        let mem = membership_from_iso(&iso);
        assert!(mem.test(&Element::from_slice(&[1, 0])).unwrap().is_none());
        assert!(mem.test(&Element::from_slice(&[3, 2])).unwrap().is_none());
        assert!(mem.test(&Element::from_slice(&[2, 3])).unwrap().is_some());
    }

    #[test]
    fn presentation_examples() {
        let z2 = std_zmod(&[2]);
        let pres = presentation_from_iso(&abel_recog_2(&z2, &factorize(2).unwrap()).unwrap());
        assert_eq!(pres.symbols().len(), 1);
        assert_eq!(pres.relators().len(), 1);
        let w = pres.psi(&Element::from_slice(&[1])).unwrap().unwrap();
        assert_eq!(pres.phi(&w).unwrap(), Element::from_slice(&[1]));

        let g = std_zmod(&[2, 4]);
        let pres = presentation_from_iso(&abel_recog_2(&g, &factorize(8).unwrap()).unwrap());
        assert_eq!(pres.symbols().len(), 2);
        assert_eq!(pres.relators().len(), 3);
        for r in pres.relators() {
            assert_eq!(pres.phi(r).unwrap(), g.identity());
        }
        for x in enumerate_span(&g, 100).unwrap().elements() {
            let w = pres.psi(x).unwrap().unwrap();
            assert_eq!(&pres.phi(&w).unwrap(), x);
        }
    }
}
