//! Recovering the exponent `v` with `x⁻¹yx = y^v`.

use rand::Rng;

use crate::abelian::default_tries;
use crate::arith::{ext_gcd, gcd, inv_mod, mul_mod, pow_mod, reduce_signed};
use crate::blackbox::{Element, Group};
use crate::order::FactoredInteger;
use crate::{Error, Result};

/// Number of Las Vegas call sites sharing one failure budget: the cyclic
/// generator search and the unit search in [`deconjugate`].
pub const LAS_VEGAS_SITES: u32 = 2;

/// Global failure probability for the randomized steps, split evenly across
/// the [`LAS_VEGAS_SITES`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FailureBudget {
    epsilon: f64,
}

impl Default for FailureBudget {
    fn default() -> Self {
        FailureBudget {
            epsilon: (2.0f64).powi(-20),
        }
    }
}

impl FailureBudget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        Ok(FailureBudget { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Tries for a search whose success rate is at least `1/(2(ln ln b + 2))`.
    pub fn tries(&self, b: u64) -> usize {
        let per_site = self.epsilon / f64::from(LAS_VEGAS_SITES);
        let lnln = if b > 2 {
            (b as f64).ln().ln().max(0.0)
        } else {
            0.0
        };
        let needed = ((1.0 / per_site).ln() * 2.0 * (lnln + 2.0)).ceil() as usize;
        default_tries(b).max(needed)
    }
}

/// `v mod b` with `x⁻¹yx = y^v`, where `|x|` divides `a`, `|y|` divides `b`
/// and `gcd(a, b) = 1`.
pub fn deconjugate<R: Rng + ?Sized>(
    group: &Group,
    x: &Element,
    y: &Element,
    a: &FactoredInteger,
    b: &FactoredInteger,
    rng: &mut R,
) -> Result<u64> {
    deconjugate_with(group, x, y, a, b, rng, &FailureBudget::default())
}

pub fn deconjugate_with<R: Rng + ?Sized>(
    group: &Group,
    x: &Element,
    y: &Element,
    a: &FactoredInteger,
    b: &FactoredInteger,
    rng: &mut R,
    budget: &FailureBudget,
) -> Result<u64> {
    if gcd(a.value(), b.value()) != 1 {
        return Err(Error::Precondition(format!(
            "orders {} and {} are not coprime",
            a.value(),
            b.value()
        )));
    }
    let v = solve(group, x, y, a, b, rng, budget)?;
    if !group.eq(&group.conj(y, x), &group.pow(y, v))? {
        return Err(Error::Precondition(
            "x does not normalise the cyclic group of y".into(),
        ));
    }
    Ok(v)
}

fn largest_prime_power(n: &FactoredInteger) -> (u64, u32) {
    *n.factors()
        .iter()
        .max_by_key(|(p, e)| p.pow(*e))
        .expect("nontrivial")
}

fn pow_signed_mod(base: u64, e: i128, m: u64) -> Result<u64> {
    if e >= 0 {
        return Ok(pow_mod(base, e as u64, m));
    }
    let inv = inv_mod(base, m)
        .ok_or_else(|| Error::Precondition(format!("{base} is not a unit mod {m}")))?;
    Ok(pow_mod(inv, e.unsigned_abs() as u64, m))
}

fn solve<R: Rng + ?Sized>(
    group: &Group,
    x: &Element,
    y: &Element,
    a: &FactoredInteger,
    b: &FactoredInteger,
    rng: &mut R,
    budget: &FailureBudget,
) -> Result<u64> {
    let bv = b.value();
    if a.is_one() || b.is_one() {
        return Ok(1 % bv);
    }
    if a.factors().len() > 1 {
        let (p, e) = largest_prime_power(a);
        let big = p.pow(e);
        let rest = a.value() / big;
        let m_big = solve(
            group,
            &group.pow(x, rest),
            y,
            &FactoredInteger::from_factors(&[(p, e)])?,
            b,
            rng,
            budget,
        )?;
        let m_rest = solve(
            group,
            &group.pow(x, big),
            y,
            &a.restrict(|q| q != p),
            b,
            rng,
            budget,
        )?;
        // x = (x^big)^s · (x^rest)^t
        let (_, s, t) = ext_gcd(big as i128, rest as i128);
        return Ok(mul_mod(
            pow_signed_mod(m_rest, s, bv)?,
            pow_signed_mod(m_big, t, bv)?,
            bv,
        ));
    }
    if b.factors().len() > 1 {
        let (q, f) = largest_prime_power(b);
        let u = q.pow(f);
        let v = bv / u;
        // y^u has order dividing v, y^v order dividing u
        let m_u = solve(
            group,
            x,
            &group.pow(y, u),
            a,
            &b.restrict(|r| r != q),
            rng,
            budget,
        )?;
        let m_v = solve(
            group,
            x,
            &group.pow(y, v),
            a,
            &FactoredInteger::from_factors(&[(q, f)])?,
            rng,
            budget,
        )?;
        let (_, s, t) = ext_gcd(u as i128, v as i128);
        let us = reduce_signed(u as i128 * s, bv);
        let vt = reduce_signed(v as i128 * t, bv);
        return Ok((mul_mod(m_u, us, bv) + mul_mod(m_v, vt, bv)) % bv);
    }
    prime_power_case(group, x, y, a.factors()[0], b.factors()[0], rng, budget)
}

/// `a = p^e`, `b = q^f`. The action lies in the subgroup of order `p^h` of
/// the cyclic group `(Z/b)^×`, `h = min(e, v_p(φ(b)))`; with `k` generating it
/// the exponent `m` in `k^m` is read one `p`-adic digit at a time.
fn prime_power_case<R: Rng + ?Sized>(
    group: &Group,
    x: &Element,
    y: &Element,
    (p, e): (u64, u32),
    (q, f): (u64, u32),
    rng: &mut R,
    budget: &FailureBudget,
) -> Result<u64> {
    let b = q.pow(f);
    let phi = q.pow(f - 1) * (q - 1);
    let mut g = 0;
    let mut rest = phi;
    while rest % p == 0 {
        rest /= p;
        g += 1;
    }
    if g == 0 {
        // no automorphism of order p
        return Ok(1);
    }
    let h = e.min(g);
    let tries = budget.tries(b);
    let mut k0 = None;
    for _ in 0..tries {
        let r = rng.gen_range(1..b);
        if r % q == 0 {
            continue;
        }
        let c = pow_mod(r, phi / p.pow(g), b);
        if pow_mod(c, p.pow(g - 1), b) != 1 {
            k0 = Some(c);
            break;
        }
    }
    let k0 = k0.ok_or_else(|| Error::Exhausted {
        what: format!("a unit of order {p}^{g} mod {b}"),
        tries,
    })?;
    let k = pow_mod(k0, p.pow(g - h), b);
    let mut m = 0u64;
    for i in 1..=h {
        let step = p.pow(h - i);
        let t = group.pow(x, step);
        let target = group.conj(y, &t);
        let ks = pow_mod(k, step, b);
        let place = p.pow(i - 1);
        let mut found = None;
        for d in 0..p {
            let cand = m + d * place;
            if group.eq(&group.pow(y, pow_mod(ks, cand, b)), &target)? {
                found = Some(cand);
                break;
            }
        }
        m = found.ok_or_else(|| {
            Error::Precondition(format!("no digit matches at position {i} for p = {p}"))
        })?;
    }
    Ok(pow_mod(k, m, b))
}

/// Multiplicative order of a unit by enumeration.
fn unit_order(x: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(x, m) != 1 {
        return None;
    }
    let mut acc = x % m;
    let mut k = 1;
    while acc != 1 {
        acc = mul_mod(acc, x, m);
        k += 1;
    }
    Some(k)
}

/// For `⟨ℓ⟩ = ⟨ℓ̃⟩` in `(Z/b)^×`, an `m` prime to `a` with `ℓ̃^m ≡ ℓ`, returned
/// with the unit `1` for the `Z/b` factor; `None` when the subgroups differ.
///
/// With `ℓ̃^u ≡ ℓ` and `l = |ℓ|`, take `m = u + x·l` where `x` is the product
/// of the primes dividing `a/l` but not `u`.
pub fn standard_iso_witness(
    a: &FactoredInteger,
    b: &FactoredInteger,
    ell: u64,
    ell_tilde: u64,
) -> Option<(u64, u64)> {
    let bv = b.value();
    let (ell, ell_tilde) = (ell % bv, ell_tilde % bv);
    let l = unit_order(ell, bv)?;
    if unit_order(ell_tilde, bv)? != l || a.value() % l != 0 {
        return None;
    }
    let mut acc = 1 % bv;
    let mut u = None;
    for i in 0..l {
        if acc == ell {
            u = Some(i);
            break;
        }
        acc = mul_mod(acc, ell_tilde, bv);
    }
    let u = u?;
    let cofactor = a.value() / l;
    let x: u64 = a
        .primes()
        .filter(|&p| cofactor % p == 0 && u % p != 0)
        .product();
    let m = (u as u128 + x as u128 * l as u128) % a.value() as u128;
    Some((m as u64, 1))
}
