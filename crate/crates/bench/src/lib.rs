//! Inputs shared by the criterion benches.

use bbgroup::blackbox::{Ambient, Element, Group};
use bbgroup::order::factorize;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Z/d₁ × … × Z/dₛ` on `s + 1` random generators that still span it.
pub fn scrambled_abelian(moduli: &[u64], seed: u64) -> Group {
    let mut r = rng(seed);
    let s = moduli.len();
    let mut gens: Vec<Vec<u64>> = (0..s)
        .map(|i| (0..s).map(|j| u64::from(i == j)).collect())
        .collect();
    // unitriangular, so the rows still generate
    for i in 0..s {
        for j in i + 1..s {
            gens[i][j] = r.gen_range(0..moduli[j]);
        }
    }
    gens.push(moduli.iter().map(|&m| r.gen_range(0..m)).collect());
    let n: u64 = moduli.iter().product();
    Group::new(
        Ambient::Zmod {
            moduli: moduli.to_vec(),
        },
        gens.iter().map(|g| Element::from_slice(g)).collect(),
    )
    .expect("residues are in range")
    .with_order(factorize(n).expect("n ≥ 1"))
}
