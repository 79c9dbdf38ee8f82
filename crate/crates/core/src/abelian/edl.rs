//! Extended discrete logarithms by baby-step giant-step.
//!
//! For a basis of a p-group the exponents are recovered one p-adic digit per
//! stage. At stage `k` the unknown digits live in the elementary abelian layer
//! spanned by `yᵢ = xᵢ^(p^(eᵢ-1))`, and the digit vector is found by
//! meet-in-the-middle: the baby table covers the first half of the
//! coordinates, the giant steps the rest, and an odd middle coordinate is
//! split as `a·⌈√p⌉ + b`. Both sides have about `⌈√p⌉^s` entries.

use std::collections::HashMap;

use crate::arith::{ceil_sqrt, crt_pair};
use crate::blackbox::{Element, Group};
use crate::order::FactoredInteger;
use crate::{Error, Result};

enum Lookup {
    Hash(HashMap<Element, Vec<u64>>),
    Scan(Vec<(Element, Vec<u64>)>),
}

struct LayerTable {
    active: Vec<usize>,
    baby: Lookup,
    giant: Vec<(Element, Vec<u64>)>,
}

/// Enumerate all vectors in `ranges[0] × ranges[1] × …` (each a list of
/// allowed digits) with the product `∏ bases_i^digit_i`.
fn product_table(
    group: &Group,
    bases: &[Element],
    ranges: &[Vec<u64>],
    invert: bool,
) -> Vec<(Element, Vec<u64>)> {
    let mut out = vec![(group.identity(), Vec::new())];
    for (b, range) in bases.iter().zip(ranges) {
        let b = if invert { group.inv(b) } else { b.clone() };
        let powers: Vec<Element> = range.iter().map(|&d| group.pow(&b, d)).collect();
        let mut next = Vec::with_capacity(out.len() * range.len());
        for (e, digits) in &out {
            for (pw, &d) in powers.iter().zip(range) {
                let mut v = digits.clone();
                v.push(d);
                next.push((group.mul(e, pw), v));
            }
        }
        out = next;
    }
    out
}

impl LayerTable {
    fn new(group: &Group, p: u64, layer: &[Element], active: Vec<usize>) -> Self {
        let s = active.len();
        let bases: Vec<Element> = active.iter().map(|&i| layer[i].clone()).collect();
        let m = ceil_sqrt(p);
        let full: Vec<u64> = (0..p).collect();
        let half = s / 2;
        let mut baby_ranges = vec![vec![0]; s];
        let mut giant_ranges = vec![vec![0]; s];
        for i in 0..s {
            if i < half {
                baby_ranges[i] = full.clone();
            } else if i == half && s % 2 == 1 {
                baby_ranges[i] = (0..m.min(p)).collect();
                giant_ranges[i] = (0..p.div_ceil(m)).map(|a| a * m).collect();
            } else {
                giant_ranges[i] = full.clone();
            }
        }
        let baby = product_table(group, &bases, &baby_ranges, false);
        let giant = product_table(group, &bases, &giant_ranges, true);
        let baby = if group.has_canonical_keys() {
            let mut map = HashMap::with_capacity(baby.len());
            for (e, d) in baby {
                map.entry(e).or_insert(d);
            }
            Lookup::Hash(map)
        } else {
            Lookup::Scan(baby)
        };
        LayerTable {
            active,
            baby,
            giant,
        }
    }

    /// Digit vector `d` (over the active coordinates) with `r = ∏ yᵢ^dᵢ`.
    fn search(&self, group: &Group, p: u64, r: &Element) -> Result<Option<Vec<u64>>> {
        for (ge, gd) in &self.giant {
            let cand = group.mul(r, ge);
            let hit = match &self.baby {
                Lookup::Hash(map) => map.get(&cand).cloned(),
                Lookup::Scan(list) => {
                    let mut found = None;
                    for (be, bd) in list {
                        if group.eq(be, &cand)? {
                            found = Some(bd.clone());
                            break;
                        }
                    }
                    found
                }
            };
            if let Some(bd) = hit {
                return Ok(Some(bd.iter().zip(gd).map(|(a, b)| (a + b) % p).collect()));
            }
        }
        Ok(None)
    }
}

/// EDL solver for a basis of a p-group.
pub(crate) struct PGroupSolver {
    group: Group,
    p: u64,
    elements: Vec<Element>,
    exps: Vec<u32>,
    top: u32,
    tables: Vec<LayerTable>,
    // stage k (1-based) uses tables[stage_table[k - 1]]
    stage_table: Vec<usize>,
}

impl PGroupSolver {
    /// `orders[i]` must be `p^exps[i]` with `exps[i] ≥ 1`.
    pub fn new(group: &Group, p: u64, elements: Vec<Element>, exps: Vec<u32>) -> Self {
        let top = exps.iter().copied().max().unwrap_or(0);
        let layer: Vec<Element> = elements
            .iter()
            .zip(&exps)
            .map(|(x, &e)| group.pow(x, p.pow(e - 1)))
            .collect();
        let mut tables: Vec<LayerTable> = Vec::new();
        let mut stage_table = Vec::new();
        for k in 1..=top {
            let active: Vec<usize> = (0..exps.len()).filter(|&i| exps[i] + k > top).collect();
            match tables.last() {
                Some(t) if t.active == active => {}
                _ => tables.push(LayerTable::new(group, p, &layer, active)),
            }
            stage_table.push(tables.len() - 1);
        }
        PGroupSolver {
            group: group.clone(),
            p,
            elements,
            exps,
            top,
            tables,
            stage_table,
        }
    }

    /// Exponents `fᵢ mod p^eᵢ` with `g = ∏ xᵢ^fᵢ`, or `None` off the span.
    pub fn solve(&self, g: &Element) -> Result<Option<Vec<u64>>> {
        let group = &self.group;
        let p = self.p;
        let mut f = vec![0u64; self.elements.len()];
        let mut rest = g.clone();
        for k in 1..=self.top {
            let h = group.pow(&rest, p.pow(self.top - k));
            let table = &self.tables[self.stage_table[k as usize - 1]];
            let Some(digits) = table.search(group, p, &h)? else {
                return Ok(None);
            };
            for (&i, &d) in table.active.iter().zip(&digits) {
                if d == 0 {
                    continue;
                }
                let place = p.pow(self.exps[i] + k - self.top - 1);
                f[i] += d * place;
                let step = group.pow(&self.elements[i], d * place);
                rest = group.mul(&rest, &group.inv(&step));
            }
        }
        if group.is_identity(&rest)? {
            Ok(Some(f))
        } else {
            Ok(None)
        }
    }
}

/// Check that every order is a power of one prime; returns `(p, exponents)`.
pub(crate) fn prime_power_orders(orders: &[FactoredInteger]) -> Result<(u64, Vec<u32>)> {
    let mut prime = None;
    let mut exps = Vec::with_capacity(orders.len());
    for o in orders {
        match o.factors() {
            [(p, e)] => {
                if prime.is_some_and(|q| q != *p) {
                    return Err(Error::NotPGroup(prime.unwrap_or(*p)));
                }
                prime = Some(*p);
                exps.push(*e);
            }
            _ => return Err(Error::NotPGroup(prime.unwrap_or(0))),
        }
    }
    Ok((prime.unwrap_or(2), exps))
}

/// One-shot EDL for a basis of a p-group.
pub fn edl_p_group(
    group: &Group,
    elements: &[Element],
    orders: &[FactoredInteger],
    g: &Element,
) -> Result<Option<Vec<u64>>> {
    let (p, exps) = prime_power_orders(orders)?;
    PGroupSolver::new(group, p, elements.to_vec(), exps).solve(g)
}

struct PrimePart {
    cofactor: u64,
    // basis indices with nontrivial projection, with p^v
    indices: Vec<(usize, u64)>,
    solver: PGroupSolver,
}

/// EDL for an arbitrary basis of an abelian group whose order divides `n`,
/// reduced to the Sylow projections and recombined by CRT. Build once and
/// call [`EdlSolver::solve`] for many targets.
pub struct EdlSolver {
    group: Group,
    elements: Vec<Element>,
    orders: Vec<u64>,
    n: u64,
    parts: Vec<PrimePart>,
}

impl EdlSolver {
    pub fn new(
        group: &Group,
        elements: &[Element],
        orders: &[FactoredInteger],
        n: &FactoredInteger,
    ) -> Result<Self> {
        let mut parts = Vec::new();
        for &(p, e) in n.factors() {
            let pe = p.pow(e);
            let cofactor = n.value() / pe;
            let mut indices = Vec::new();
            let mut proj = Vec::new();
            let mut exps = Vec::new();
            for (i, (x, o)) in elements.iter().zip(orders).enumerate() {
                let v = o.valuation(p);
                if v == 0 {
                    continue;
                }
                if v > e {
                    return Err(Error::Precondition(format!(
                        "basis order {} does not divide {}",
                        o.value(),
                        n.value()
                    )));
                }
                indices.push((i, p.pow(v)));
                proj.push(group.pow(x, cofactor));
                exps.push(v);
            }
            parts.push(PrimePart {
                cofactor,
                indices,
                solver: PGroupSolver::new(group, p, proj, exps),
            });
        }
        Ok(EdlSolver {
            group: group.clone(),
            elements: elements.to_vec(),
            orders: orders.iter().map(FactoredInteger::value).collect(),
            n: n.value(),
            parts,
        })
    }

    pub fn solve(&self, g: &Element) -> Result<Option<Vec<u64>>> {
        let group = &self.group;
        let mut f = vec![(0u64, 1u64); self.elements.len()];
        for part in &self.parts {
            let gp = group.pow(g, part.cofactor);
            let Some(sol) = part.solver.solve(&gp)? else {
                return Ok(None);
            };
            // (x^N)^s = g^N forces s ≡ fᵢ mod p^v
            for (&(i, pv), s) in part.indices.iter().zip(sol) {
                let (acc, m) = f[i];
                f[i] = crt_pair(acc, m, s, pv).ok_or(Error::Overflow)?;
            }
        }
        let exps: Vec<u64> = f
            .iter()
            .zip(&self.orders)
            .map(|(&(r, _), &o)| r % o)
            .collect();
        let mut w = group.identity();
        for (x, &e) in self.elements.iter().zip(&exps) {
            w = group.mul(&w, &group.pow(x, e));
        }
        if group.eq(&w, g)? {
            return Ok(Some(exps));
        }
        if group.is_identity(&group.pow(g, self.n))? {
            // every Sylow projection lies in the span, so g does too
            return Err(Error::NonAbelian);
        }
        Ok(None)
    }
}

/// EDL over a basis whose span has order dividing `n`.
pub fn edl(
    group: &Group,
    elements: &[Element],
    orders: &[FactoredInteger],
    n: &FactoredInteger,
    g: &Element,
) -> Result<Option<Vec<u64>>> {
    EdlSolver::new(group, elements, orders, n)?.solve(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::Ambient;
    use crate::order::factorize;

    fn zmod(moduli: &[u64]) -> Group {
        Group::new(
            Ambient::Zmod {
                moduli: moduli.to_vec(),
            },
            vec![],
        )
        .unwrap()
    }

    fn e(v: &[u64]) -> Element {
        Element::from_slice(v)
    }

    fn f(n: u64) -> FactoredInteger {
        factorize(n).unwrap()
    }

    #[test]
    fn p_group_examples() {
        let z8 = zmod(&[8]);
        assert_eq!(
            edl_p_group(&z8, &[e(&[1])], &[f(8)], &e(&[0])).unwrap(),
            Some(vec![0])
        );
        assert_eq!(
            edl_p_group(&z8, &[e(&[1])], &[f(8)], &e(&[5])).unwrap(),
            Some(vec![5])
        );
        let z24 = zmod(&[2, 4]);
        let basis = [e(&[1, 0]), e(&[0, 1])];
        assert_eq!(
            edl_p_group(&z24, &basis, &[f(2), f(4)], &e(&[1, 3])).unwrap(),
            Some(vec![1, 3])
        );
        let z9 = zmod(&[9]);
        assert_eq!(
            edl_p_group(&z9, &[e(&[3])], &[f(3)], &e(&[1])).unwrap(),
            None
        );
    }

    #[test]
    fn rejects_mixed_primes() {
        let z6 = zmod(&[6]);
        assert!(matches!(
            edl_p_group(&z6, &[e(&[1])], &[f(6)], &e(&[1])),
            Err(Error::NotPGroup(_))
        ));
        assert!(matches!(
            edl_p_group(&z6, &[e(&[3]), e(&[2])], &[f(2), f(3)], &e(&[1])),
            Err(Error::NotPGroup(_))
        ));
    }

    #[test]
    fn general_examples() {
        let z6 = zmod(&[6]);
        assert_eq!(
            edl(&z6, &[e(&[1])], &[f(6)], &f(6), &e(&[0])).unwrap(),
            Some(vec![0])
        );
        assert_eq!(
            edl(&z6, &[e(&[1])], &[f(6)], &f(6), &e(&[5])).unwrap(),
            Some(vec![5])
        );
        let z23 = zmod(&[2, 3]);
        let basis = [e(&[1, 0]), e(&[0, 1])];
        assert_eq!(
            edl(&z23, &basis, &[f(2), f(3)], &f(6), &e(&[1, 2])).unwrap(),
            Some(vec![1, 2])
        );
    }

    #[test]
    fn exhaustive_small_p_groups() {
        // Z/4 × Z/8 × Z/2 with a non-standard basis
        let g = zmod(&[4, 8, 2]);
        let basis = [e(&[1, 2, 0]), e(&[0, 1, 1]), e(&[2, 4, 1])];
        let orders = [f(4), f(8), f(2)];
        let solver = EdlSolver::new(&g, &basis, &orders, &f(64)).unwrap();
        for a in 0..4 {
            for b in 0..8 {
                for c in 0..2 {
                    let x = e(&[a, b, c]);
                    let sol = solver.solve(&x).unwrap().expect("basis spans the group");
                    let mut w = g.identity();
                    for (y, &k) in basis.iter().zip(&sol) {
                        w = g.mul(&w, &g.pow(y, k));
                    }
                    assert_eq!(w, x);
                }
            }
        }
    }

    #[test]
    fn large_prime_layer() {
        let g = zmod(&[127, 127]);
        let basis = [e(&[1, 0]), e(&[0, 1])];
        let orders = [f(127), f(127)];
        let solver = PGroupSolver::new(&g, 127, basis.to_vec(), vec![1, 1]);
        for (a, b) in [(0, 0), (126, 1), (64, 99), (5, 126)] {
            assert_eq!(solver.solve(&e(&[a, b])).unwrap(), Some(vec![a, b]));
        }
        assert_eq!(
            edl(&g, &basis, &orders, &f(127 * 127), &e(&[3, 4])).unwrap(),
            Some(vec![3, 4])
        );
    }
}
