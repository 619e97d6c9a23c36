//! Complete factorization: trial division, Miller-Rabin, then Pollard rho (Brent).

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::prime::{is_prime, mul_mod, small_primes, MR_DETERMINISTIC_LIMIT, TRIAL_BOUND};
use super::Factorization;
use crate::error::{capacity, domain, Result};

/// Largest value (exclusive) that can be factored with a certified result.
pub const FACTOR_LIMIT: u128 = MR_DETERMINISTIC_LIMIT;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Primes up to this bound are removed by trial division.
    pub trial_bound: u64,
    /// Seed for the polynomial constants of Pollard rho.
    pub rng_seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: TRIAL_BOUND,
            rng_seed: 0x5eed,
        }
    }
}

/// Factor `n` with the default configuration.
pub fn factor(n: u128) -> Result<Factorization> {
    factor_with(n, &FactorConfig::default())
}

pub fn factor_with(n: u128, cfg: &FactorConfig) -> Result<Factorization> {
    if n == 0 {
        return Err(domain("cannot factor 0"));
    }
    if n >= FACTOR_LIMIT {
        return Err(capacity(format!(
            "{n} is at or above the certified factoring limit {FACTOR_LIMIT}"
        )));
    }
    let mut entries = Vec::new();
    let mut rem = n;
    let bound = cfg.trial_bound.min(TRIAL_BOUND);
    for &p in small_primes() {
        if p > bound {
            break;
        }
        let p = p as u128;
        if p * p > rem {
            break;
        }
        let mut e = 0;
        if rem <= u64::MAX as u128 {
            let (mut r, p) = (rem as u64, p as u64);
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            rem = r as u128;
        } else {
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
        }
        // past the tiny primes, stop early once what remains is prime
        if e > 0 {
            entries.push((p, e));
            if p >= 97 && rem > 1 && is_prime(rem) {
                break;
            }
        } else if p == 97 && is_prime(rem) {
            break;
        }
    }
    if rem > 1 {
        let b = bound as u128;
        if rem < b * b || is_prime(rem) {
            entries.push((rem, 1));
        } else {
            let mut big = Vec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            split_composite(rem, &mut rng, &mut big);
            big.sort_unstable();
            for p in big {
                match entries.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => entries.push((p, 1)),
                }
            }
        }
    }
    let f = Factorization::from_entries_unchecked(entries);
    debug_assert_eq!(f.value(), n);
    Ok(f)
}

/// Fully split `n` into primes (with repetition), appending to `out`.
pub(crate) fn split_composite(n: u128, rng: &mut ChaCha8Rng, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = perfect_square_root(n) {
        split_composite(r, rng, out);
        split_composite(r, rng, out);
        return;
    }
    let d = loop {
        let c = rng.gen_range(1..n);
        let y0 = rng.gen_range(0..n);
        if let Some(d) = brent_rho(n, c, y0) {
            break d;
        }
    };
    split_composite(d, rng, out);
    split_composite(n / d, rng, out);
}

fn perfect_square_root(n: u128) -> Option<u128> {
    let r = super::exact::isqrt(n);
    (r * r == n).then_some(r)
}

/// Brent's cycle-finding variant of Pollard rho on `x -> x^2 + c`.
/// Returns a nontrivial divisor, or `None` when this `(c, y0)` fails.
fn brent_rho(n: u128, c: u128, y0: u128) -> Option<u128> {
    const BATCH: u64 = 128;
    let f = |x: u128| {
        let s = mul_mod(x, x, n) + c;
        if s >= n {
            s - n
        } else {
            s
        }
    };
    let mut y = y0;
    let mut r: u64 = 1;
    let mut q: u128 = 1;
    let mut g: u128 = 1;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        // batch overshot; replay one step at a time
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}
