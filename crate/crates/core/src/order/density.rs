//! Density of 𝒟 and 𝒟̂ among `1..=limit` by a segmented factoring sieve.
//!
//! Each segment fully factors its integers by dividing out the base primes
//! `≤ √limit`; whatever remains above one is a single large prime. Segments
//! are independent and their counts are summed as integers, so the result
//! does not depend on how segments are scheduled across threads.

use rayon::prelude::*;

use super::{flags, sieve_primes, LogConvention};
use crate::arith::isqrt;

/// Which order set to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensitySet {
    D,
    DHat,
}

const SEGMENT: u64 = 1 << 15;
// 2·3·5·7·11·13·17·19·23 > 10^8; 15 primes cover all of u64
const MAX_DISTINCT: usize = 15;

/// Number of `n` in `1..=limit` lying in the selected set.
pub fn density_count(set: DensitySet, limit: u64, convention: LogConvention) -> u64 {
    if limit == 0 {
        return 0;
    }
    let base = sieve_primes(isqrt(limit));
    let segments = limit.div_ceil(SEGMENT);
    (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = 1 + s * SEGMENT;
            let hi = (lo + SEGMENT).min(limit + 1);
            count_segment(set, lo, hi, &base, convention)
        })
        .sum()
}

/// `|{1 ≤ n ≤ limit : n ∈ set}| / limit`.
pub fn density_scan(set: DensitySet, limit: u64, convention: LogConvention) -> f64 {
    if limit == 0 {
        return 0.0;
    }
    density_count(set, limit, convention) as f64 / limit as f64
}

fn count_segment(
    set: DensitySet,
    lo: u64,
    hi: u64,
    base: &[u64],
    convention: LogConvention,
) -> u64 {
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    let mut facs = vec![[(0u64, 0u32); MAX_DISTINCT]; len];
    let mut counts = vec![0u8; len];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0;
            while rest[i] % p == 0 {
                rest[i] /= p;
                e += 1;
            }
            facs[i][counts[i] as usize] = (p, e);
            counts[i] += 1;
            m += p;
        }
    }
    let mut count = 0;
    for i in 0..len {
        if rest[i] > 1 {
            facs[i][counts[i] as usize] = (rest[i], 1);
            counts[i] += 1;
        }
        let n = lo + i as u64;
        let fl = flags(n, &facs[i][..counts[i] as usize], convention.threshold(n));
        let hit = match set {
            DensitySet::D => fl.in_d(),
            DensitySet::DHat => fl.in_dhat(),
        };
        count += hit as u64;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::classify_order;

    #[test]
    fn sieve_agrees_with_direct_classification() {
        let limit = 5000;
        let direct_d = (1..=limit)
            .filter(|&n| classify_order(n, None).unwrap().in_d)
            .count() as u64;
        let direct_dh = (1..=limit)
            .filter(|&n| classify_order(n, None).unwrap().in_dhat)
            .count() as u64;
        assert_eq!(
            density_count(DensitySet::D, limit, LogConvention::default()),
            direct_d
        );
        assert_eq!(
            density_count(DensitySet::DHat, limit, LogConvention::default()),
            direct_dh
        );
    }

    #[test]
    fn tiny_limits() {
        assert_eq!(
            density_scan(DensitySet::D, 1, LogConvention::default()),
            1.0
        );
        assert_eq!(density_count(DensitySet::D, 0, LogConvention::default()), 0);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let limit = 200_000;
        let reference = density_count(DensitySet::DHat, limit, LogConvention::default());
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let got =
                pool.install(|| density_count(DensitySet::DHat, limit, LogConvention::default()));
            assert_eq!(got, reference);
        }
    }
}
