use rand::Rng;

use super::{Element, Group, Slp};

/// Burn-in length for a fresh sampler.
pub const BURN_IN: usize = 64;
const MIN_SLOTS: usize = 10;

/// Product-replacement sampler with an accumulator ("rattle" variant).
///
/// Every slot carries the SLP that produced it, so each returned element comes
/// with a word over the group's generators.
#[derive(Clone, Debug)]
pub struct ProductReplacement {
    group: Group,
    slots: Vec<(Element, Slp)>,
    acc: (Element, Slp),
}

impl ProductReplacement {
    pub fn new<R: Rng + ?Sized>(group: &Group, rng: &mut R) -> Self {
        let gens = group.generators();
        let mut slots = Vec::new();
        if !gens.is_empty() {
            let size = MIN_SLOTS.max(gens.len());
            for i in 0..size {
                let k = i % gens.len();
                slots.push((gens[k].clone(), Slp::generator(k)));
            }
        }
        let mut pr = ProductReplacement {
            group: group.clone(),
            slots,
            acc: (group.identity(), Slp::identity()),
        };
        for _ in 0..BURN_IN {
            pr.step(rng);
        }
        pr
    }

    fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let n = self.slots.len();
        if n < 2 {
            return;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (ej, wj) = self.slots[j].clone();
        let (ej, wj) = if rng.gen::<bool>() {
            (self.group.inv(&ej), wj.inv())
        } else {
            (ej, wj)
        };
        let (ei, wi) = &self.slots[i];
        let next = if rng.gen::<bool>() {
            (self.group.mul(ei, &ej), wi.mul(&wj))
        } else {
            (self.group.mul(&ej, ei), wj.mul(wi))
        };
        self.slots[i] = next;
        let (ei, wi) = &self.slots[i];
        self.acc = (self.group.mul(&self.acc.0, ei), self.acc.1.mul(wi));
    }

    /// Next pseudo-random element together with its SLP.
    pub fn next_element<R: Rng + ?Sized>(&mut self, rng: &mut R) -> (Element, Slp) {
        self.step(rng);
        self.acc.clone()
    }
}

/// One random element of `group` with its SLP, using a fresh sampler.
pub fn random_element<R: Rng + ?Sized>(group: &Group, rng: &mut R) -> (Element, Slp) {
    ProductReplacement::new(group, rng).next_element(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::Ambient;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn returned_slp_evaluates_to_element() {
        let g = Group::new(
            Ambient::Perm { degree: 5 },
            vec![
                Element::from_slice(&[1, 2, 3, 4, 0]),
                Element::from_slice(&[1, 0, 2, 3, 4]),
            ],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut pr = ProductReplacement::new(&g, &mut rng);
        for _ in 0..50 {
            let (e, w) = pr.next_element(&mut rng);
            assert_eq!(g.evaluate(&w).unwrap(), e);
        }
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let g = Group::new(
            Ambient::Zmod { moduli: vec![7, 9] },
            vec![Element::from_slice(&[1, 2]), Element::from_slice(&[3, 1])],
        )
        .unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pr = ProductReplacement::new(&g, &mut rng);
            (0..20)
                .map(|_| pr.next_element(&mut rng).0)
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
    }

    #[test]
    fn z7_residues_are_uniform() {
        let g = Group::new(
            Ambient::Zmod { moduli: vec![7] },
            vec![Element::from_slice(&[1])],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut pr = ProductReplacement::new(&g, &mut rng);
        let samples = 10_000;
        let mut counts = [0usize; 7];
        for _ in 0..samples {
            counts[pr.next_element(&mut rng).0.values()[0] as usize] += 1;
        }
        let p = 1.0 / 7.0;
        let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!(
                (c as f64 - samples as f64 * p).abs() < 5.0 * sigma,
                "{counts:?}"
            );
        }
    }

    #[test]
    fn z7_with_redundant_generators_is_uniform() {
        let gens = vec![
            Element::from_slice(&[1]),
            Element::from_slice(&[3]),
            Element::from_slice(&[0]),
        ];
        let g = Group::new(Ambient::Zmod { moduli: vec![7] }, gens).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut pr = ProductReplacement::new(&g, &mut rng);
        let samples = 10_000;
        let mut counts = [0usize; 7];
        for _ in 0..samples {
            counts[pr.next_element(&mut rng).0.values()[0] as usize] += 1;
        }
        let p = 1.0 / 7.0;
        let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!(
                (c as f64 - samples as f64 * p).abs() < 5.0 * sigma,
                "{counts:?}"
            );
        }
    }
}
