//! Standard groups used by tests, benches and fixtures.

use crate::arith::{gcd, pow_mod};
use crate::blackbox::{Ambient, Element, Group};
use crate::order::factorize;
use crate::{Error, Result};

/// `Z/d₁ × … × Z/dₛ` with the unit vectors as generators.
pub fn zmod(moduli: &[u64]) -> Group {
    let s = moduli.len();
    let gens = (0..s)
        .map(|i| Element::from_slice(&(0..s).map(|j| u64::from(i == j)).collect::<Vec<_>>()))
        .collect();
    Group::new(
        Ambient::Zmod {
            moduli: moduli.to_vec(),
        },
        gens,
    )
    .expect("unit vectors are valid")
}

fn check_action(c: u64, d: u64, v: u64) -> Result<()> {
    if c == 0 || d == 0 || (d > 1 && gcd(v % d, d) != 1) || pow_mod(v, c, d) != 1 % d {
        return Err(Error::InvalidInput(format!(
            "{v} does not define an action of Z/{c} on Z/{d}"
        )));
    }
    Ok(())
}

/// `Z/c ⋉ Z/d` on pairs, generated by `x = (1, 0)` and `y = (0, 1)` with
/// `x⁻¹yx = y^v`.
pub fn semidirect_zmod(c: u64, d: u64, v: u64) -> Result<Group> {
    check_action(c, d, v)?;
    let amb = Ambient::Twisted {
        c,
        d,
        action: v % d,
    };
    let g = Group::new(
        amb,
        vec![
            Element::from_slice(&[1 % c, 0]),
            Element::from_slice(&[0, 1 % d]),
        ],
    )?;
    Ok(g.with_order(factorize(c * d)?))
}

/// The same group as permutations of `d + c` points: `y` is the `d`-cycle
/// `k ↦ k+1` and `x` multiplies by `v` on the first `d` points while cycling
/// the last `c`.
pub fn semidirect_perm(c: u64, d: u64, v: u64) -> Result<Group> {
    check_action(c, d, v)?;
    let (cu, du) = (c as usize, d as usize);
    let mut x: Vec<u64> = (0..d).map(|k| (k * v) % d).collect();
    x.extend((0..c).map(|i| d + (i + 1) % c));
    let mut y: Vec<u64> = (0..d).map(|k| (k + 1) % d).collect();
    y.extend(d..d + c);
    let g = Group::new(
        Ambient::Perm { degree: du + cu },
        vec![Element::from_slice(&x), Element::from_slice(&y)],
    )?;
    Ok(g.with_order(factorize(c * d)?))
}

/// `S_n` generated by an `n`-cycle and a transposition.
pub fn symmetric(n: usize) -> Group {
    let cycle: Vec<u64> = (0..n as u64).map(|i| (i + 1) % n as u64).collect();
    let mut swap: Vec<u64> = (0..n as u64).collect();
    if n > 1 {
        swap.swap(0, 1);
    }
    let order: u64 = (1..=n as u64).product();
    Group::new(
        Ambient::Perm { degree: n },
        vec![Element::from_slice(&cycle), Element::from_slice(&swap)],
    )
    .expect("valid permutations")
    .with_order(factorize(order).expect("small factorial"))
}

/// `A₅` generated by `(0 1 2)` and `(0 1 2 3 4)`.
pub fn alternating5() -> Group {
    Group::new(
        Ambient::Perm { degree: 5 },
        vec![
            Element::from_slice(&[1, 2, 0, 3, 4]),
            Element::from_slice(&[1, 2, 3, 4, 0]),
        ],
    )
    .expect("valid permutations")
    .with_order(factorize(60).expect("small"))
}

/// `Q₈` as `2×2` matrices over `F₃`.
pub fn quaternion() -> Group {
    Group::new(
        Ambient::MatMod { prime: 3, dim: 2 },
        vec![
            Element::from_slice(&[0, 1, 2, 0]),
            Element::from_slice(&[1, 1, 1, 2]),
        ],
    )
    .expect("invertible matrices")
    .with_order(factorize(8).expect("small"))
}

/// The dihedral group of order `2n` on `n` points.
pub fn dihedral(n: u64) -> Group {
    let r: Vec<u64> = (0..n).map(|i| (i + 1) % n).collect();
    let s: Vec<u64> = (0..n).map(|i| (n - i) % n).collect();
    Group::new(
        Ambient::Perm { degree: n as usize },
        vec![Element::from_slice(&r), Element::from_slice(&s)],
    )
    .expect("valid permutations")
    .with_order(factorize(2 * n).expect("small"))
}

/// `S₃ × Z/2` on five points.
pub fn s3_times_z2() -> Group {
    Group::new(
        Ambient::Perm { degree: 5 },
        vec![
            Element::from_slice(&[1, 2, 0, 3, 4]),
            Element::from_slice(&[1, 0, 2, 3, 4]),
            Element::from_slice(&[0, 1, 2, 4, 3]),
        ],
    )
    .expect("valid permutations")
    .with_order(factorize(12).expect("small"))
}

/// The pair of `3×3` matrices over `F₅₄₁` with `|x| = 108`, `|y| = 541` and
/// `x⁻¹yx = y^316`, returned with the group they generate.
pub fn example_matrices() -> (Group, Element, Element) {
    let x = Element::from_slice(&[11, 0, 0, 0, 0, 311, 0, 311, 0]);
    let y = Element::from_slice(&[1, 47, 494, 0, 1, 0, 0, 0, 1]);
    let g = Group::new(
        Ambient::MatMod { prime: 541, dim: 3 },
        vec![x.clone(), y.clone()],
    )
    .expect("invertible matrices")
    .with_order(factorize(108 * 541).expect("small"));
    (g, x, y)
}

/// The subgroup of `(Z/m)^×` generated by the given residues.
pub fn units(modulus: u64, gens: &[u64]) -> Result<Group> {
    Group::new(
        Ambient::Units { modulus },
        gens.iter()
            .map(|&g| Element::from_slice(&[g % modulus]))
            .collect(),
    )
}

/// All abelian groups of order `n` up to isomorphism, as invariant-factor
/// lists `d₁ | d₂ | …`.
pub fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(max)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let f = factorize(n).expect("n ≥ 1");
    let mut types: Vec<Vec<u64>> = vec![vec![]];
    for &(p, e) in f.factors() {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e, e) {
                // part is descending; align largest with largest
                let len = t.len().max(part.len());
                let mut merged = vec![1u64; len];
                for (i, &x) in t.iter().rev().enumerate() {
                    merged[len - 1 - i] *= x;
                }
                for (i, &k) in part.iter().enumerate() {
                    merged[len - 1 - i] *= p.pow(k);
                }
                next.push(merged);
            }
        }
        types = next;
    }
    types
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::enumerate_span;

    #[test]
    fn orders_by_enumeration() {
        let cases = [
            (semidirect_zmod(3, 7, 2).unwrap(), 21),
            (semidirect_perm(3, 7, 2).unwrap(), 21),
            (semidirect_perm(4, 5, 2).unwrap(), 20),
            (symmetric(4), 24),
            (alternating5(), 60),
            (quaternion(), 8),
            (dihedral(4), 8),
            (s3_times_z2(), 12),
            (zmod(&[2, 4]), 8),
        ];
        for (g, n) in cases {
            assert_eq!(enumerate_span(&g, 1000).unwrap().len(), n);
        }
    }

    #[test]
    fn perm_semidirect_relation() {
        for (c, d, v) in [(3, 7, 2), (2, 5, 4), (4, 5, 3), (6, 7, 3)] {
            let g = semidirect_perm(c, d, v).unwrap();
            let (x, y) = (&g.generators()[0], &g.generators()[1]);
            assert_eq!(g.conj(y, x), g.pow(y, v));
            assert_eq!(g.element_order(x).unwrap().value(), c);
            assert_eq!(g.element_order(y).unwrap().value(), d);
        }
    }

    #[test]
    fn bad_actions_rejected() {
        assert!(semidirect_zmod(3, 7, 3).is_err());
        assert!(semidirect_perm(2, 6, 3).is_err());
    }

    #[test]
    fn abelian_type_counts() {
        assert_eq!(abelian_types(1), vec![Vec::<u64>::new()]);
        assert_eq!(abelian_types(8).len(), 3);
        assert_eq!(abelian_types(16).len(), 5);
        assert_eq!(abelian_types(72).len(), 6);
        for t in abelian_types(144) {
            assert_eq!(t.iter().product::<u64>(), 144);
            assert!(t.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
