//! Integer-level machinery: sieving, factoring, the small/big prime split of a
//! group order, membership in the order sets 𝒟 and 𝒟̂, and density scans.
//!
//! The threshold separating small from big primes is `log log n`. The default
//! [`LogConvention::Log2OfLn`] evaluates it as `log₂(ln n)`, which is the
//! reading that reproduces the published densities of 𝒟; the plain natural
//! reading `ln ln n` is available as [`LogConvention::Natural`]. Prime powers
//! of small primes are always bounded by `ln n`. For `n ≤ 2` the threshold is 0.

mod density;
mod factored;

pub use density::{density_count, density_scan, DensitySet};
pub use factored::{factorize, mu, FactoredInteger};

/// How `log log n` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogConvention {
    /// `log₂(ln n)`.
    #[default]
    Log2OfLn,
    /// `ln(ln n)`.
    Natural,
}

impl LogConvention {
    pub fn threshold(self, n: u64) -> f64 {
        if n <= 2 {
            return 0.0;
        }
        let ln = (n as f64).ln();
        let t = match self {
            LogConvention::Log2OfLn => ln.log2(),
            LogConvention::Natural => ln.ln(),
        };
        t.max(0.0)
    }
}

/// `log log n` under the default convention.
pub fn threshold(n: u64) -> f64 {
    LogConvention::default().threshold(n)
}

/// All primes `≤ limit`, ascending (sieve of Eratosthenes).
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Split `n = a·b` where `a` collects the full prime powers of primes `≤ c`
/// and `b` the rest.
pub fn split_by_prime_bound(n: &FactoredInteger, c: f64) -> (FactoredInteger, FactoredInteger) {
    let a = n.restrict(|p| (p as f64) <= c);
    let b = n.restrict(|p| (p as f64) > c);
    (a, b)
}

/// Like [`split_by_prime_bound`], but a prime above `c` whose square divides
/// `n` also goes into `a`, so `b` is always square-free.
pub fn split_square_free_top(n: &FactoredInteger, c: f64) -> (FactoredInteger, FactoredInteger) {
    let big = |p: u64| (p as f64) > c && n.valuation(p) == 1;
    (n.restrict(|p| !big(p)), n.restrict(big))
}

/// Classification of an integer against 𝒟 and 𝒟̂.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderClassification {
    pub n: u64,
    pub threshold: f64,
    pub small_part: FactoredInteger,
    pub big_part: FactoredInteger,
    pub pseudo_square_free: bool,
    /// `(2, threshold)`-free: every prime whose square divides `n` is small.
    pub two_threshold_free: bool,
    /// `threshold`-separable.
    pub separable: bool,
    pub in_d: bool,
    pub in_dhat: bool,
}

/// Membership flags computed straight from a factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Flags {
    pub pseudo_square_free: bool,
    pub two_threshold_free: bool,
    pub separable: bool,
}

impl Flags {
    pub fn in_d(self) -> bool {
        self.pseudo_square_free
    }

    pub fn in_dhat(self) -> bool {
        self.pseudo_square_free && self.two_threshold_free && self.separable
    }
}

pub(crate) fn flags(n: u64, factors: &[(u64, u32)], c: f64) -> Flags {
    let ln_n = if n > 1 { (n as f64).ln() } else { 0.0 };
    let mut pseudo_square_free = true;
    let mut two_threshold_free = true;
    for &(p, e) in factors {
        let small = (p as f64) <= c;
        if small {
            // p^e ≤ ln n; p^e fits in u64 since it divides n
            if (p.pow(e) as f64) > ln_n {
                pseudo_square_free = false;
            }
        } else if e > 1 {
            pseudo_square_free = false;
            two_threshold_free = false;
        }
    }
    let mut separable = true;
    'outer: for &(p, _) in factors {
        if (p as f64) <= c {
            continue;
        }
        for &(q, e) in factors {
            let q_mod = q % p;
            let mut power = 1u64;
            for _ in 0..e {
                power = power * q_mod % p;
                if power == 1 {
                    separable = false;
                    break 'outer;
                }
            }
        }
    }
    Flags {
        pseudo_square_free,
        two_threshold_free,
        separable,
    }
}

/// Classify `n` with the default convention, or against an explicit threshold.
pub fn classify_order(
    n: u64,
    threshold_override: Option<f64>,
) -> Result<OrderClassification, crate::Error> {
    classify_order_with(n, threshold_override, LogConvention::default())
}

pub fn classify_order_with(
    n: u64,
    threshold_override: Option<f64>,
    convention: LogConvention,
) -> Result<OrderClassification, crate::Error> {
    let f = factorize(n)?;
    let c = threshold_override.unwrap_or_else(|| convention.threshold(n));
    let (small_part, big_part) = split_by_prime_bound(&f, c);
    let fl = flags(n, f.factors(), c);
    Ok(OrderClassification {
        n,
        threshold: c,
        small_part,
        big_part,
        pseudo_square_free: fl.pseudo_square_free,
        two_threshold_free: fl.two_threshold_free,
        separable: fl.separable,
        in_d: fl.in_d(),
        in_dhat: fl.in_dhat(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_primes(limit: u64) -> Vec<u64> {
        (2..=limit)
            .filter(|&n| (2..n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn sieve_examples() {
        assert!(sieve_primes(1).is_empty());
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(sieve_primes(2000), trial_primes(2000));
    }

    #[test]
    fn split_examples() {
        let sixty = factorize(60).unwrap();
        let (a, b) = split_by_prime_bound(&sixty, 3.0);
        assert_eq!((a.value(), b.value()), (12, 5));
        let (a, b) = split_by_prime_bound(&sixty, 1.0);
        assert_eq!((a.value(), b.value()), (1, 60));
        let (a, b) = split_by_prime_bound(&factorize(58428).unwrap(), 3.0);
        assert_eq!((a.value(), b.value()), (108, 541));
    }

    #[test]
    fn classify_examples() {
        assert!(classify_order(30, None).unwrap().pseudo_square_free);
        assert!(!classify_order(300, None).unwrap().pseudo_square_free);
        let c = classify_order(4036, None).unwrap();
        assert!(c.pseudo_square_free);
        assert_eq!(c.small_part.value(), 4);
        assert_eq!(c.big_part.value(), 1009);
        assert!(!classify_order(6, None).unwrap().in_dhat);
        let one = classify_order(1, None).unwrap();
        assert!(one.in_d && one.in_dhat);
        assert_eq!(one.threshold, 0.0);
    }

    #[test]
    fn natural_convention_examples() {
        // ln ln 30 ≈ 1.22, ln ln 300 ≈ 1.74, ln ln 4036 ≈ 2.12
        let nat = |n| classify_order_with(n, None, LogConvention::Natural).unwrap();
        assert!((nat(30).threshold - 1.2241).abs() < 1e-3);
        assert!(nat(30).pseudo_square_free);
        assert!(!nat(300).pseudo_square_free);
        assert!(nat(4036).pseudo_square_free);
        assert!(!nat(6).in_dhat);
    }

    #[test]
    fn threshold_override_is_used() {
        let c = classify_order(21, Some(3.0)).unwrap();
        assert_eq!(c.small_part.value(), 3);
        assert_eq!(c.big_part.value(), 7);
        assert!(c.in_d);
        // 7 ≢ 1 mod anything big, 3 ≢ 1 mod 7
        assert!(c.separable);
    }
}
