use std::fmt;

use crate::arith::{gcd, is_prime, isqrt, mul_mod};
use crate::Error;

/// A positive integer together with its prime factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// empty factorization is the integer 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self {
            value: 1,
            factors: Vec::new(),
        }
    }

    /// Build from `(prime, exponent)` pairs. Pairs may come in any order and
    /// repeated primes are merged; zero exponents are dropped.
    pub fn from_factors(pairs: &[(u64, u32)]) -> Result<Self, Error> {
        let mut factors: Vec<(u64, u32)> = Vec::with_capacity(pairs.len());
        let mut sorted = pairs.to_vec();
        sorted.sort_unstable();
        for (p, e) in sorted {
            if e == 0 {
                continue;
            }
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            match factors.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => factors.push((p, e)),
            }
        }
        let mut value = 1u64;
        for &(p, e) in &factors {
            let pe = p.checked_pow(e).ok_or(Error::Overflow)?;
            value = value.checked_mul(pe).ok_or(Error::Overflow)?;
        }
        Ok(Self { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Exponent of `p` in this integer (zero when `p` does not divide it).
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// The largest power of `p` dividing this integer.
    pub fn p_part(&self, p: u64) -> u64 {
        p.pow(self.valuation(p))
    }

    /// The part of this integer made of primes satisfying `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(u64) -> bool) -> Self {
        let factors: Vec<_> = self
            .factors
            .iter()
            .copied()
            .filter(|&(p, _)| keep(p))
            .collect();
        let value = factors.iter().map(|&(p, e)| p.pow(e)).product();
        Self { value, factors }
    }

    /// The factored divisor `gcd(self, m)`.
    pub fn gcd_with(&self, m: u64) -> Self {
        let mut factors = Vec::new();
        let mut rest = gcd(self.value, m);
        for &(p, _) in &self.factors {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        let value = factors.iter().map(|&(p, e)| p.pow(e)).product();
        Self { value, factors }
    }

    /// Factor a divisor `d` of this integer, reusing the known primes.
    pub fn divisor(&self, d: u64) -> Result<Self, Error> {
        if d == 0 || self.value % d != 0 {
            return Err(Error::InvalidInput(format!(
                "{d} does not divide {}",
                self.value
            )));
        }
        Ok(self.gcd_with(d))
    }

    /// `self / other`, which must divide exactly.
    pub fn div_exact(&self, other: &Self) -> Result<Self, Error> {
        self.divisor(self.value / other.value).and_then(|q| {
            if q.value * other.value == self.value {
                Ok(q)
            } else {
                Err(Error::InvalidInput(format!(
                    "{} does not divide {}",
                    other.value, self.value
                )))
            }
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        let mut pairs = self.factors.clone();
        pairs.extend_from_slice(&other.factors);
        Self::from_factors(&pairs)
    }

    /// Largest exponent in the factorization; 0 for the integer 1.
    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    /// Euler's totient.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// The largest exponent in the factorization of `n`.
pub fn mu(n: &FactoredInteger) -> u32 {
    n.max_exponent()
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Factor `n` by trial division up to 10^6, then Pollard rho on what remains.
pub fn factorize(n: u64) -> Result<FactoredInteger, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3;
    while d <= TRIAL_LIMIT && d * d <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort_unstable();
        for p in large {
            match pairs.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => pairs.push((p, 1)),
            }
        }
    }
    FactoredInteger::from_factors(&pairs)
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}
