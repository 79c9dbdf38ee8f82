#![allow(dead_code)]

use bbgroup::arith::{gcd, pow_mod};
use bbgroup::blackbox::{Ambient, Element, Group};
use bbgroup::constructions::{semidirect_perm, semidirect_zmod};
use bbgroup::order::factorize;
use bbgroup::FactoredInteger;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(n: u64) -> FactoredInteger {
    factorize(n).unwrap()
}

/// `Z/d₁ × … × Z/dₛ` on a scrambled generating set: the unit vectors
/// after random elementary moves `gᵢ ← gᵢ + k·gⱼ`, plus `extra` redundant
/// random elements.
pub fn abelian_scrambled<R: Rng>(moduli: &[u64], extra: usize, rng: &mut R) -> Group {
    let s = moduli.len();
    let mut gens: Vec<Vec<u64>> = (0..s)
        .map(|i| (0..s).map(|j| u64::from(i == j)).collect())
        .collect();
    if s > 1 {
        for _ in 0..3 * s {
            let i = rng.gen_range(0..s);
            let j = (i + rng.gen_range(1..s)) % s;
            let k = rng.gen_range(1..8u64);
            for (t, &m) in moduli.iter().enumerate() {
                gens[i][t] = (gens[i][t] + k * gens[j][t]) % m;
            }
        }
    }
    for _ in 0..extra {
        gens.push(moduli.iter().map(|&m| rng.gen_range(0..m)).collect());
    }
    let n: u64 = moduli.iter().product();
    Group::new(
        Ambient::Zmod {
            moduli: moduli.to_vec(),
        },
        gens.iter().map(|g| Element::from_slice(g)).collect(),
    )
    .unwrap()
    .with_order(f(n))
}

pub fn unit_order(v: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = v % m;
    while x != 1 {
        x = x * v % m;
        k += 1;
    }
    k
}

/// Every `(c, d, v)` with `2 ≤ c, d ≤ 15` coprime, `c·d ≤ 200`, and `v ≠ 1` a
/// unit of order dividing `c`.
pub fn metacyclic_corpus() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for c in 2..=15u64 {
        for d in 2..=15u64 {
            if gcd(c, d) != 1 || c * d > 200 {
                continue;
            }
            for v in 2..d {
                if gcd(v, d) == 1 && pow_mod(v, c, d) == 1 {
                    out.push((c, d, v));
                }
            }
        }
    }
    out
}

/// The shape a recognizer must report for `Z/c ⋉_v Z/d`: the primes of `c`
/// that act stay in `U`, the rest are central and join `K`.
pub fn expected_shape(c: u64, d: u64, v: u64) -> (u64, u64) {
    let l = unit_order(v, d);
    let fc = f(c);
    let acting: u64 = fc
        .factors()
        .iter()
        .filter(|&&(p, _)| l % p == 0)
        .map(|&(p, e)| p.pow(e))
        .product();
    (acting, c * d / acting)
}

/// A threshold putting every prime of `c` on the small side.
pub fn threshold_for(c: u64) -> f64 {
    f(c).primes().max().unwrap_or(1) as f64
}

/// The group in one of the two backends.
pub fn semidirect(c: u64, d: u64, v: u64, perm: bool) -> Group {
    if perm {
        semidirect_perm(c, d, v).unwrap()
    } else {
        semidirect_zmod(c, d, v).unwrap()
    }
}

/// A random unit of `Z/b` whose order divides `a`.
pub fn random_action<R: Rng>(a: u64, b: u64, rng: &mut R) -> u64 {
    if b == 1 {
        return 0;
    }
    let phi = f(b).totient();
    let g = gcd(a, phi);
    loop {
        let u = rng.gen_range(1..b);
        if gcd(u, b) == 1 {
            return pow_mod(u, phi / g, b);
        }
    }
}
