//! Canonical bases by incremental sifting.
//!
//! Each Sylow projection is built one generator at a time. A generator `h`
//! already in the span is skipped; otherwise, with `p^k` the least power
//! putting `h` into the span, the relation lattice of the old basis plus `h`
//! is diagonalised by a Smith normal form over `Z/p^K`, and the new basis is
//! read off the column transform. The per-prime bases are then merged into a
//! divisor chain, largest with largest.

use super::edl::PGroupSolver;
use super::{Basis, CanonicalBasis};
use crate::arith::{inv_mod, mul_mod};
use crate::blackbox::{Element, Group, Slp};
use crate::order::FactoredInteger;
use crate::{Error, Result};

struct PBasis {
    elements: Vec<Element>,
    exps: Vec<u32>,
    words: Vec<Slp>,
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Diagonalise a square relation matrix over `Z/P` (`P = p^K`), returning
/// the diagonal valuations and `V⁻¹` for the column transform `M·V = U⁻¹·D`.
fn local_smith(mut m: Vec<Vec<u64>>, p: u64, modulus: u64) -> (Vec<u32>, Vec<Vec<u64>>) {
    let t = m.len();
    let mut vinv: Vec<Vec<u64>> = (0..t)
        .map(|i| (0..t).map(|j| (i == j) as u64).collect())
        .collect();
    let mut vals = Vec::with_capacity(t);
    let sub = |a: u64, b: u64| (a + modulus - b) % modulus;
    for pos in 0..t {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in pos..t {
            for j in pos..t {
                if m[i][j] != 0 {
                    let v = valuation(m[i][j], p);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else {
            // rank deficiency cannot happen for a full relation lattice
            vals.extend(std::iter::repeat(0).take(t - pos));
            break;
        };
        m.swap(i, pos);
        for row in m.iter_mut() {
            row.swap(j, pos);
        }
        vinv.swap(j, pos);
        let pv = p.pow(v);
        let unit = m[pos][pos] / pv;
        let unit_inv = inv_mod(unit % modulus, modulus).expect("pivot cofactor is a unit");
        for row in m.iter_mut() {
            row[pos] = mul_mod(row[pos], unit_inv, modulus);
        }
        for x in vinv[pos].iter_mut() {
            *x = mul_mod(*x, unit, modulus);
        }
        for r in 0..t {
            if r != pos && m[r][pos] != 0 {
                let q = m[r][pos] / pv;
                for c in 0..t {
                    let d = mul_mod(q, m[pos][c], modulus);
                    m[r][c] = sub(m[r][c], d);
                }
            }
        }
        for c in pos + 1..t {
            if m[pos][c] != 0 {
                let q = m[pos][c] / pv;
                for row in m.iter_mut() {
                    let d = mul_mod(q, row[pos], modulus);
                    row[c] = sub(row[c], d);
                }
                for k in 0..t {
                    let d = mul_mod(q, vinv[c][k], modulus);
                    vinv[pos][k] = (vinv[pos][k] + d) % modulus;
                }
            }
        }
        vals.push(v);
    }
    (vals, vinv)
}

fn sylow_basis(group: &Group, p: u64, e: u32, gens: Vec<(Element, Slp)>) -> Result<PBasis> {
    let mut b = PBasis {
        elements: Vec::new(),
        exps: Vec::new(),
        words: Vec::new(),
    };
    for (h, w) in gens {
        if group.is_identity(&h)? {
            continue;
        }
        let solver = PGroupSolver::new(group, p, b.elements.clone(), b.exps.clone());
        if solver.solve(&h)?.is_some() {
            continue;
        }
        let mut hk = h.clone();
        let mut relation = None;
        for k in 1..=e {
            hk = group.pow(&hk, p);
            if let Some(c) = solver.solve(&hk)? {
                relation = Some((k, c));
                break;
            }
        }
        let Some((k, c)) = relation else {
            return Err(Error::Precondition(format!(
                "an element has order not dividing {p}^{e}"
            )));
        };
        let r = b.elements.len();
        let total: u32 = b.exps.iter().sum::<u32>() + k;
        let modulus = p.checked_pow(total + 1).ok_or(Error::Overflow)?;
        let mut m = vec![vec![0u64; r + 1]; r + 1];
        for i in 0..r {
            m[i][i] = p.pow(b.exps[i]) % modulus;
            m[r][i] = (modulus - c[i] % modulus) % modulus;
        }
        m[r][r] = p.pow(k);
        let (vals, vinv) = local_smith(m, p, modulus);
        let mut old_elems = b.elements.clone();
        old_elems.push(h.clone());
        let mut old_words = b.words.clone();
        old_words.push(w.clone());
        let mut old_orders: Vec<u64> = b.exps.iter().map(|&x| p.pow(x)).collect();
        old_orders.push(p.pow(e));
        let mut next = PBasis {
            elements: Vec::new(),
            exps: Vec::new(),
            words: Vec::new(),
        };
        for (row, &v) in vinv.iter().zip(&vals) {
            if v == 0 {
                continue;
            }
            let mut z = group.identity();
            let mut zw = Slp::identity();
            for ((y, yw), (&coef, &ord)) in old_elems
                .iter()
                .zip(&old_words)
                .zip(row.iter().zip(&old_orders))
            {
                let coef = coef % ord;
                if coef != 0 {
                    z = group.mul(&z, &group.pow(y, coef));
                    zw = zw.mul(&yw.pow(coef as i64));
                }
            }
            next.elements.push(z);
            next.exps.push(v);
            next.words.push(zw);
        }
        if next.exps.iter().sum::<u32>() > e {
            return Err(Error::NonAbelian);
        }
        let check = PGroupSolver::new(group, p, next.elements.clone(), next.exps.clone());
        if check.solve(&h)?.is_none() {
            return Err(Error::NonAbelian);
        }
        b = next;
    }
    Ok(b)
}

/// A canonical basis of an abelian group whose order divides `n`.
pub fn canonical_basis(group: &Group, n: &FactoredInteger) -> Result<CanonicalBasis> {
    let gens: Vec<(Element, Slp)> = group
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), Slp::generator(i)))
        .collect();
    let mut per_prime = Vec::new();
    for &(p, e) in n.factors() {
        let cofactor = n.value() / p.pow(e);
        let projected = gens
            .iter()
            .map(|(g, w)| (group.pow(g, cofactor), w.pow(cofactor as i64)))
            .collect();
        let mut b = sylow_basis(group, p, e, projected)?;
        // ascending exponents
        let mut idx: Vec<usize> = (0..b.exps.len()).collect();
        idx.sort_by_key(|&i| b.exps[i]);
        b = PBasis {
            elements: idx.iter().map(|&i| b.elements[i].clone()).collect(),
            exps: idx.iter().map(|&i| b.exps[i]).collect(),
            words: idx.iter().map(|&i| b.words[i].clone()).collect(),
        };
        per_prime.push((p, b));
    }
    let s = per_prime
        .iter()
        .map(|(_, b)| b.elements.len())
        .max()
        .unwrap_or(0);
    let mut elements = Vec::with_capacity(s);
    let mut orders = Vec::with_capacity(s);
    let mut words = Vec::with_capacity(s);
    for slot in 0..s {
        // slot counts from the smallest invariant factor
        let from_top = s - slot;
        let mut x = group.identity();
        let mut w = Slp::identity();
        let mut pairs = Vec::new();
        for (p, b) in &per_prime {
            let len = b.elements.len();
            if from_top <= len {
                let i = len - from_top;
                x = group.mul(&x, &b.elements[i]);
                w = w.mul(&b.words[i]);
                pairs.push((*p, b.exps[i]));
            }
        }
        elements.push(x);
        orders.push(FactoredInteger::from_factors(&pairs)?);
        words.push(w);
    }
    let basis = Basis {
        elements,
        orders,
        words,
    };
    // every generator must be recovered; a mismatch means the input is not abelian
    let solver = super::edl::EdlSolver::new(group, &basis.elements, &basis.orders, n)?;
    for g in group.generators() {
        if solver.solve(g)?.is_none() {
            return Err(Error::NonAbelian);
        }
    }
    Ok(CanonicalBasis::new_unchecked(basis))
}
