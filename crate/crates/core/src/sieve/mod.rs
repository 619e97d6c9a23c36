//! Factor or classify every integer of a short interval `(x, x+y]`.
//!
//! Two regimes, picked per interval:
//!
//! - `isqrt(x+y) <= spf_limit`: a segmented sieve divides out every prime up
//!   to `isqrt(x+y)`; whatever cofactor remains is 1 or a prime.
//! - otherwise only primes up to `min(spf_limit, 10^6)` are sieved and each
//!   leftover cofactor is finished by primality testing and Pollard rho.
//!
//! Segments are independent and may run on a worker pool. Output never
//! depends on segment size or thread count.

mod powerful;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::exact::isqrt;
use crate::arith::prime::{is_prime, primes_through, TRIAL_BOUND};
use crate::arith::{Factorization, PoweredThreshold, FACTOR_LIMIT};
use crate::error::{capacity, domain, param, Result};

pub use crate::arith::primes_up_to;
pub use powerful::enumerate_powerful;

/// The half-open interval `(x, x+y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::dec")]
    x: u128,
    #[serde(with = "crate::dec")]
    y: u128,
}

impl Interval {
    pub fn new(x: u128, y: u128) -> Result<Self> {
        if y == 0 {
            return Err(param("interval length y must be at least 1"));
        }
        match x.checked_add(y) {
            Some(hi) if hi < FACTOR_LIMIT => Ok(Interval { x, y }),
            _ => Err(capacity(format!(
                "interval end x + y must stay below {FACTOR_LIMIT}"
            ))),
        }
    }

    pub fn x(&self) -> u128 {
        self.x
    }

    pub fn y(&self) -> u128 {
        self.y
    }

    /// Smallest member, `x + 1`.
    pub fn lo(&self) -> u128 {
        self.x + 1
    }

    /// Largest member, `x + y`.
    pub fn hi(&self) -> u128 {
        self.x + self.y
    }

    pub fn contains(&self, n: u128) -> bool {
        n > self.x && n <= self.hi()
    }

    /// The short-interval regime `1 <= y <= x` the counting theorems assume.
    pub fn require_short(&self) -> Result<()> {
        if self.y > self.x {
            return Err(param(format!(
                "short interval requires y <= x (got x = {}, y = {})",
                self.x, self.y
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    /// Largest prime the full-factorization sieve may use.
    pub spf_limit: u64,
    pub segment_size: usize,
    /// Seed for Pollard rho in the fallback regime (mixed with each n).
    pub rng_seed: u64,
    /// Worker threads; 1 runs inline.
    pub threads: usize,
    /// Largest interval [`factor_interval`] will materialize.
    pub max_materialized: u128,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            spf_limit: 1 << 26,
            segment_size: 1 << 16,
            rng_seed: 0x5eed,
            threads: 1,
            max_materialized: 1 << 26,
        }
    }
}

impl SieveConfig {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.spf_limit < 2 {
            return Err(param("spf_limit must be at least 2"));
        }
        if self.segment_size == 0 {
            return Err(param("segment_size must be at least 1"));
        }
        if self.threads == 0 {
            return Err(param("threads must be at least 1"));
        }
        Ok(())
    }
}

/// Run `f` on a pool of `threads` workers (inline when `threads == 1`).
pub(crate) fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if threads <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| capacity(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

struct Plan {
    primes: Arc<Vec<u64>>,
    /// Primes `<= sieve_bound` are divided out.
    sieve_bound: u64,
    /// Every leftover cofactor is prime (first regime).
    complete: bool,
    rng_seed: u64,
}

impl Plan {
    fn new(interval: &Interval, cfg: &SieveConfig) -> Plan {
        let root = isqrt(interval.hi());
        let (sieve_bound, complete) = if root <= cfg.spf_limit as u128 {
            (root as u64, true)
        } else {
            (cfg.spf_limit.min(TRIAL_BOUND), false)
        };
        Plan {
            primes: primes_through(sieve_bound),
            sieve_bound,
            complete,
            rng_seed: cfg.rng_seed,
        }
    }

    fn sieve_primes(&self) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= self.sieve_bound);
        &self.primes[..end]
    }

    fn factor_segment(&self, lo: u128, len: usize) -> Vec<Factorization> {
        let mut rem: Vec<u128> = (0..len as u128).map(|i| lo + i).collect();
        let mut entries: Vec<Vec<(u128, u32)>> = vec![Vec::new(); len];
        for &p in self.sieve_primes() {
            let p128 = p as u128;
            let offset = ((p128 - lo % p128) % p128) as usize;
            if offset >= len {
                continue;
            }
            for i in (offset..len).step_by(p as usize) {
                let mut e = 0;
                let r = &mut rem[i];
                while *r % p128 == 0 {
                    *r /= p128;
                    e += 1;
                }
                entries[i].push((p128, e));
            }
        }
        let bound = self.sieve_bound as u128;
        rem.into_iter()
            .zip(entries)
            .map(|(r, mut e)| {
                if r > 1 {
                    if self.complete || r <= bound * bound || is_prime(r) {
                        e.push((r, 1));
                    } else {
                        self.finish_cofactor(r, &mut e);
                    }
                }
                Factorization::from_entries_unchecked(e)
            })
            .collect()
    }

    fn finish_cofactor(&self, r: u128, entries: &mut Vec<(u128, u32)>) {
        // seeded by the cofactor itself so output is independent of segmentation
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed ^ (r as u64) ^ ((r >> 64) as u64));
        let mut split = Vec::new();
        crate::arith::factor::split_composite(r, &mut rng, &mut split);
        split.sort_unstable();
        for p in split {
            match entries.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => entries.push((p, 1)),
            }
        }
    }
}

fn segments(interval: &Interval, segment_size: usize) -> Vec<(u128, usize)> {
    let seg = segment_size as u128;
    let mut out = Vec::new();
    let mut lo = interval.lo();
    let hi = interval.hi();
    while lo <= hi {
        let len = (hi - lo + 1).min(seg);
        out.push((lo, len as usize));
        lo += len;
    }
    out
}

/// Factor every segment of `interval` and hand each to `per_segment` together
/// with its first value. Results come back in ascending segment order.
pub fn scan_segments<T, F>(interval: &Interval, cfg: &SieveConfig, per_segment: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u128, &[Factorization]) -> T + Sync + Send,
{
    cfg.validate()?;
    let plan = Plan::new(interval, cfg);
    let segs = segments(interval, cfg.segment_size);
    let work = |&(lo, len): &(u128, usize)| {
        let facs = plan.factor_segment(lo, len);
        per_segment(lo, &facs)
    };
    if cfg.threads <= 1 {
        return Ok(segs.iter().map(work).collect());
    }
    in_pool(cfg.threads, || segs.par_iter().map(work).collect())
}

/// Number of `n` in the interval whose factorization satisfies `pred`.
pub fn count_where<F>(interval: &Interval, cfg: &SieveConfig, pred: F) -> Result<u128>
where
    F: Fn(u128, &Factorization) -> bool + Sync + Send,
{
    let parts = scan_segments(interval, cfg, |lo, facs| {
        facs.iter()
            .enumerate()
            .filter(|(i, f)| pred(lo + *i as u128, f))
            .count() as u128
    })?;
    Ok(parts.into_iter().sum())
}

/// Ascending list of the `n` in the interval satisfying `pred`.
pub fn filter_where<F>(interval: &Interval, cfg: &SieveConfig, pred: F) -> Result<Vec<u128>>
where
    F: Fn(u128, &Factorization) -> bool + Sync + Send,
{
    let parts = scan_segments(interval, cfg, |lo, facs| {
        facs.iter()
            .enumerate()
            .map(|(i, f)| (lo + i as u128, f))
            .filter(|(n, f)| pred(*n, f))
            .map(|(n, _)| n)
            .collect::<Vec<_>>()
    })?;
    Ok(parts.concat())
}

/// Every `(n, factorization)` with `n` in the interval, ascending.
pub fn factor_interval(
    interval: &Interval,
    cfg: &SieveConfig,
) -> Result<Vec<(u128, Factorization)>> {
    if interval.y() > cfg.max_materialized {
        return Err(capacity(format!(
            "interval of length {} exceeds the materialization cap {}",
            interval.y(),
            cfg.max_materialized
        )));
    }
    let parts = scan_segments(interval, cfg, |lo, facs| {
        facs.iter()
            .enumerate()
            .map(|(i, f)| (lo + i as u128, f.clone()))
            .collect::<Vec<_>>()
    })?;
    Ok(parts.concat())
}

/// All k-powered numbers in the interval, ascending.
pub fn enumerate_k_powered(
    interval: &Interval,
    k: PoweredThreshold,
    cfg: &SieveConfig,
) -> Result<Vec<u128>> {
    filter_where(interval, cfg, |_, f| f.is_k_powered(k))
}

/// Count of `n` in `(x, x+y]` with no prime factor `p` satisfying `p^2 <= y`.
/// `n = 1` counts when it lies in the interval.
pub fn count_rough(interval: &Interval, cfg: &SieveConfig) -> Result<u128> {
    cfg.validate()?;
    if interval.y() < 2 {
        return Err(domain("rough-number count needs y >= 2"));
    }
    let root = isqrt(interval.y());
    let table = primes_through(root.min(u64::MAX as u128) as u64);
    let primes = &table[..table.partition_point(|&p| p as u128 <= root)];
    let segs = segments(interval, cfg.segment_size);
    let work = |&(lo, len): &(u128, usize)| {
        let mut hit = vec![false; len];
        for &p in primes {
            let p = p as u128;
            let offset = ((p - lo % p) % p) as usize;
            for i in (offset..len).step_by(p as usize) {
                hit[i] = true;
            }
        }
        hit.iter().filter(|h| !**h).count() as u128
    };
    let parts: Vec<u128> = if cfg.threads <= 1 {
        segs.iter().map(work).collect()
    } else {
        in_pool(cfg.threads, || segs.par_iter().map(work).collect())?
    };
    Ok(parts.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor;

    fn iv(x: u128, y: u128) -> Interval {
        Interval::new(x, y).unwrap()
    }

    fn per_n(interval: &Interval) -> Vec<(u128, Factorization)> {
        (interval.lo()..=interval.hi())
            .map(|n| (n, factor(n).unwrap()))
            .collect()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(5, 0).is_err());
        assert!(Interval::new(FACTOR_LIMIT - 1, 1).is_err());
        assert!(iv(0, 1).require_short().is_err());
        assert!(iv(1, 1).require_short().is_ok());
        assert!(iv(10, 5).contains(15) && !iv(10, 5).contains(10));
    }

    #[test]
    fn small_interval_factorizations() {
        let got = factor_interval(&iv(0, 6), &SieveConfig::default()).unwrap();
        assert_eq!(got, per_n(&iv(0, 6)));
        assert!(got[0].1.entries().is_empty());
    }

    #[test]
    fn oracle_equivalence_both_regimes() {
        let cfg = SieveConfig::default();
        let i = iv(1_000_000, 1000);
        assert_eq!(factor_interval(&i, &cfg).unwrap(), per_n(&i));
        // fallback: sieve only to 10^4 then finish cofactors individually
        let fallback = SieveConfig {
            spf_limit: 10_000,
            ..SieveConfig::default()
        };
        let j = iv(1_000_000_000_000, 100);
        assert_eq!(factor_interval(&j, &fallback).unwrap(), per_n(&j));
        let k = iv(10u128.pow(20), 50);
        assert_eq!(factor_interval(&k, &cfg).unwrap(), per_n(&k));
    }

    #[test]
    fn segmentation_and_threads_invisible() {
        let i = iv(987_654, 3000);
        let base = factor_interval(&i, &SieveConfig::default()).unwrap();
        for seg in [1, 7, 1000, 4096] {
            for threads in [1, 3] {
                let cfg = SieveConfig {
                    segment_size: seg,
                    threads,
                    ..SieveConfig::default()
                };
                assert_eq!(factor_interval(&i, &cfg).unwrap(), base);
            }
        }
    }

    #[test]
    fn materialization_cap() {
        let cfg = SieveConfig {
            max_materialized: 10,
            ..SieveConfig::default()
        };
        assert!(matches!(
            factor_interval(&iv(0, 11), &cfg),
            Err(crate::Error::Capacity(_))
        ));
    }

    #[test]
    fn k_powered_examples() {
        let cfg = SieveConfig::default();
        let two = PoweredThreshold::integer(2).unwrap();
        let three = PoweredThreshold::integer(3).unwrap();
        // 48 = 2^4 * 3 is 2-powered (6^2 <= 48) without being powerful
        assert_eq!(
            enumerate_k_powered(&iv(0, 50), two, &cfg).unwrap(),
            vec![1, 4, 8, 9, 16, 25, 27, 32, 36, 48, 49]
        );
        assert_eq!(
            enumerate_k_powered(&iv(640, 10), three, &cfg).unwrap(),
            vec![648]
        );
        assert_eq!(
            enumerate_k_powered(&iv(0, 1), three, &cfg).unwrap(),
            vec![1]
        );
    }

    #[test]
    fn rough_counts() {
        let cfg = SieveConfig::default();
        assert_eq!(count_rough(&iv(0, 100), &cfg).unwrap(), 22);
        assert!(matches!(
            count_rough(&iv(2, 1), &cfg),
            Err(crate::Error::Domain(_))
        ));
        // (2, 4]: only prime with p^2 <= 2 is none, so both 3 and 4 count
        assert_eq!(count_rough(&iv(2, 2), &cfg).unwrap(), 2);
        let i = iv(1_000_000, 10_000);
        let brute = (i.lo()..=i.hi())
            .filter(|&n| (2..=100u128).all(|p| p * p > 10_000 || !is_prime(p) || n % p != 0))
            .count() as u128;
        assert_eq!(count_rough(&i, &cfg).unwrap(), brute);
    }
}
