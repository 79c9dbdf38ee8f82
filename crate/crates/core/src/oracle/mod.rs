//! Brute-force ground truth for small groups: Cayley tables, exhaustive
//! isomorphism testing over minimal generating tuples, and subgroup spans.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::blackbox::{Element, Group};
use crate::{Error, Result};

/// Default cap on table size.
pub const DEFAULT_TABLE_BOUND: usize = 200;

/// Multiplication table of a finite group; label 0 is the identity and labels
/// follow breadth-first discovery order over the generators.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
    generators: Vec<usize>,
    elements: Vec<Element>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The group element behind each label.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == 0)
            .expect("tables are groups")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Rows and columns are permutations, row/column 0 is the identity, and
    /// the product is associative.
    pub fn is_valid_group(&self) -> bool {
        let m = self.order;
        let perm = |it: &mut dyn Iterator<Item = usize>| {
            let mut seen = vec![false; m];
            for x in it {
                if std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
            true
        };
        (0..m).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a)
            && (0..m).all(|a| {
                perm(&mut (0..m).map(|b| self.mul(a, b)))
                    && perm(&mut (0..m).map(|b| self.mul(b, a)))
            })
            && (0..m).all(|a| {
                (0..m).all(|b| {
                    (0..m).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
                })
            })
    }

    /// Build a table straight from a product function on `0..order`, with
    /// 0 the identity.
    pub fn from_fn(
        order: usize,
        generators: Vec<usize>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = mul(a, b) as u32;
            }
        }
        CayleyTable {
            order,
            table,
            generators,
            elements: Vec::new(),
        }
    }
}

struct Labeller<'a> {
    group: &'a Group,
    elements: Vec<Element>,
    index: Option<HashMap<Element, usize>>,
}

impl Labeller<'_> {
    fn find(&self, x: &Element) -> Result<Option<usize>> {
        if let Some(idx) = &self.index {
            return Ok(idx.get(x).copied());
        }
        for (i, e) in self.elements.iter().enumerate() {
            if self.group.eq(e, x)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn push(&mut self, x: Element) -> usize {
        let i = self.elements.len();
        if let Some(idx) = &mut self.index {
            idx.insert(x.clone(), i);
        }
        self.elements.push(x);
        i
    }
}

/// Enumerate `group` into a Cayley table.
pub fn enumerate(group: &Group, bound: usize) -> Result<CayleyTable> {
    let gens = group.generators();
    let mut lab = Labeller {
        group,
        elements: Vec::new(),
        index: group.has_canonical_keys().then(HashMap::new),
    };
    lab.push(group.identity());
    // right[k][i] = label of elements[i] * gens[k]
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut i = 0;
    while i < lab.elements.len() {
        let x = lab.elements[i].clone();
        for (k, g) in gens.iter().enumerate() {
            let y = group.mul(&x, g);
            let j = match lab.find(&y)? {
                Some(j) => j,
                None => {
                    if lab.elements.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    parent.push((i, k));
                    lab.push(y)
                }
            };
            right[k].push(j as u32);
        }
        i += 1;
    }
    let m = lab.elements.len();
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        table[a * m] = a as u32;
        for b in 1..m {
            let (p, k) = parent[b];
            table[a * m + b] = right[k][table[a * m + p] as usize];
        }
    }
    let generators = gens
        .iter()
        .map(|g| lab.find(g).map(|o| o.expect("generators are enumerated")))
        .collect::<Result<Vec<_>>>()?;
    Ok(CayleyTable {
        order: m,
        table,
        generators,
        elements: lab.elements,
    })
}

/// The labels of `⟨subset⟩`, ascending.
pub fn exhaustive_membership(t: &CayleyTable, subset: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; t.order];
    span_into(t, subset, &mut inside);
    (0..t.order).filter(|&i| inside[i]).collect()
}

fn span_into(t: &CayleyTable, gens: &[usize], inside: &mut [bool]) {
    inside[0] = true;
    let mut queue: VecDeque<usize> = (0..t.order).filter(|&i| inside[i]).collect();
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = t.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                queue.push_back(y);
            }
        }
    }
}

/// A generating tuple of least length, found level by level over the
/// subgroups reachable with `k` generators (one candidate per coset).
pub fn minimal_generating_tuple(t: &CayleyTable) -> Vec<usize> {
    if t.order == 1 {
        return Vec::new();
    }
    let mut level: Vec<(Vec<usize>, Vec<bool>)> = vec![(Vec::new(), {
        let mut v = vec![false; t.order];
        v[0] = true;
        v
    })];
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    loop {
        let mut next = Vec::new();
        for (tuple, inside) in &level {
            let mut covered = inside.clone();
            for x in 0..t.order {
                if covered[x] {
                    continue;
                }
                // mark the left coset x·S so it is not retried
                for s in 0..t.order {
                    if inside[s] {
                        covered[t.mul(x, s)] = true;
                    }
                }
                let mut span = inside.clone();
                let mut gens = tuple.clone();
                gens.push(x);
                span_into(t, &gens, &mut span);
                if span.iter().all(|&b| b) {
                    return gens;
                }
                if seen.insert(span.clone()) {
                    next.push((gens, span));
                }
            }
        }
        level = next;
    }
}

/// Isomorphism-invariant label of each element: order, number of square
/// roots, centralizer size.
fn invariants(t: &CayleyTable) -> Vec<(usize, usize, usize)> {
    let m = t.order;
    let mut roots = vec![0usize; m];
    for y in 0..m {
        roots[t.mul(y, y)] += 1;
    }
    (0..m)
        .map(|a| {
            let cent = (0..m).filter(|&b| t.mul(a, b) == t.mul(b, a)).count();
            (t.element_order(a), roots[a], cent)
        })
        .collect()
}

/// Exhaustive isomorphism test.
pub fn brute_force_iso(t1: &CayleyTable, t2: &CayleyTable) -> bool {
    if t1.order != t2.order {
        return false;
    }
    if t1.is_commutative() != t2.is_commutative() {
        return false;
    }
    let (inv1, inv2) = (invariants(t1), invariants(t2));
    let histogram = |inv: &[(usize, usize, usize)]| {
        let mut h = inv.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&inv1) != histogram(&inv2) {
        return false;
    }
    let gens = minimal_generating_tuple(t1);
    let mut images = Vec::with_capacity(gens.len());
    extend(t1, t2, &inv1, &inv2, &gens, &mut images)
}

fn extend(
    t1: &CayleyTable,
    t2: &CayleyTable,
    inv1: &[(usize, usize, usize)],
    inv2: &[(usize, usize, usize)],
    gens: &[usize],
    images: &mut Vec<usize>,
) -> bool {
    let i = images.len();
    if i == gens.len() {
        return true;
    }
    for h in 0..t2.order {
        if inv2[h] != inv1[gens[i]] {
            continue;
        }
        images.push(h);
        if consistent(t1, t2, &gens[..=i], images) && extend(t1, t2, inv1, inv2, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Whether `gens[k] ↦ images[k]` extends to an injective homomorphism on
/// `⟨gens⟩`: walk a spanning tree of the span and check every edge.
fn consistent(t1: &CayleyTable, t2: &CayleyTable, gens: &[usize], images: &[usize]) -> bool {
    let mut phi = vec![usize::MAX; t1.order];
    let mut used = vec![false; t2.order];
    phi[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in gens.iter().enumerate() {
            let y = t1.mul(x, g);
            let img = t2.mul(phi[x], images[k]);
            if phi[y] == usize::MAX {
                if used[img] {
                    return false;
                }
                phi[y] = img;
                used[img] = true;
                queue.push_back(y);
            } else if phi[y] != img {
                return false;
            }
        }
    }
    true
}
