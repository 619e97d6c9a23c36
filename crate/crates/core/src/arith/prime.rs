//! Prime tables and deterministic Miller-Rabin.

use std::sync::{Arc, Mutex, OnceLock};

/// Miller-Rabin with the first 13 prime bases is deterministic below this
/// value (Sorenson and Webster, psi_13).
pub const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
// Additional bases used only above the deterministic limit.
const MR_EXTRA_BASES: [u64; 7] = [43, 47, 53, 59, 61, 67, 71];

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = usize::try_from(bound).expect("prime bound exceeds address space");
    // odd-only sieve: index i represents 2i + 1
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_pi(bound));
    primes.push(2);
    for (i, &c) in composite.iter().enumerate().skip(1) {
        let p = 2 * i as u64 + 1;
        if p > bound {
            break;
        }
        if !c {
            primes.push(p);
        }
    }
    primes
}

fn estimate_pi(bound: u64) -> usize {
    let b = bound as f64;
    if b < 17.0 {
        8
    } else {
        (1.26 * b / b.ln()) as usize
    }
}

/// Trial-division bound used by [`crate::arith::factor`] and the fallback sieve regime.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// The primes up to [`TRIAL_BOUND`], computed once.
pub fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(TRIAL_BOUND))
}

/// Shared read-only prime table covering at least `bound`.
///
/// The largest table requested so far is retained and reused.
pub fn primes_through(bound: u64) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<(u64, Arc<Vec<u64>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((0, Arc::new(Vec::new()))));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if guard.0 < bound {
        let target = bound.max(TRIAL_BOUND);
        *guard = (target, Arc::new(primes_up_to(target)));
    }
    Arc::clone(&guard.1)
}

/// `a * b mod m` without overflow for any `m < 2^127`.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0 && m < 1 << 127);
    if m <= u64::MAX as u128 {
        return ((a % m) * (b % m)) % m;
    }
    let (a, b) = (a % m, b % m);
    if m < 1 << 86 {
        // Horner over 41-bit limbs of b: r < 2^86 so r << 41 < 2^127,
        // and a * limb < 2^86 * 2^41.
        const LIMB: u32 = 41;
        const MASK: u128 = (1 << LIMB) - 1;
        let mut r: u128 = 0;
        let mut shift = 123;
        loop {
            let limb = (b >> shift) & MASK;
            r = ((r << LIMB) % m + (a * limb) % m) % m;
            if shift == 0 {
                break;
            }
            shift -= LIMB;
        }
        r
    } else {
        let mut r: u128 = 0;
        let mut base = a;
        let mut e = b;
        while e > 0 {
            if e & 1 == 1 {
                r = add_mod(r, base, m);
            }
            base = add_mod(base, base, m);
            e >>= 1;
        }
        r
    }
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m < 2^127 so the sum fits.
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

fn strong_probable_prime(n: u128, base: u64, d: u128, s: u32) -> bool {
    let a = base as u128 % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
        if x == 1 {
            return false;
        }
    }
    false
}

/// Primality test. Deterministic for `n <` [`MR_DETERMINISTIC_LIMIT`]; above
/// that it is a 20-base strong probable-prime test.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 43 * 43 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let extra: &[u64] = if n < MR_DETERMINISTIC_LIMIT {
        &[]
    } else {
        &MR_EXTRA_BASES
    };
    MR_BASES
        .iter()
        .chain(extra)
        .all(|&b| strong_probable_prime(n, b, d, s))
}
