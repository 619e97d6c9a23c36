//! Direct enumeration of powerful numbers as `a^2 b^3` with `b` squarefree.
//!
//! Every powerful number has exactly one such representation, so no
//! deduplication is needed.

use super::Interval;
use crate::arith::exact::{iroot, isqrt};
use crate::arith::prime::primes_through;

const CHUNK: u128 = 1 << 20;

/// Squarefree flags for `start..start + len`.
fn squarefree_flags(start: u128, len: usize, primes: &[u64]) -> Vec<bool> {
    let mut flags = vec![true; len];
    let end = start + len as u128;
    for &p in primes {
        let sq = (p as u128) * (p as u128);
        if sq >= end {
            break;
        }
        let first = start.div_ceil(sq) * sq;
        let mut m = first;
        while m < end {
            flags[(m - start) as usize] = false;
            m += sq;
        }
    }
    flags
}

/// Powerful numbers in `(x, x+y]`, ascending. Includes 1 when `x = 0`.
pub fn enumerate_powerful(interval: &Interval) -> Vec<u128> {
    let lo = interval.lo();
    let hi = interval.hi();
    let b_max = iroot(hi, 3);
    let primes = primes_through(isqrt(b_max) as u64);
    let mut out = Vec::new();
    let mut start = 1u128;
    while start <= b_max {
        let len = (b_max - start + 1).min(CHUNK);
        let flags = squarefree_flags(start, len as usize, &primes);
        for (i, sf) in flags.into_iter().enumerate() {
            if !sf {
                continue;
            }
            let b = start + i as u128;
            let b3 = b * b * b;
            // a^2 in [ceil(lo / b3), floor(hi / b3)]
            let a_max = isqrt(hi / b3);
            let q = lo.div_ceil(b3);
            let mut a_min = isqrt(q);
            if a_min * a_min < q {
                a_min += 1;
            }
            for a in a_min.max(1)..=a_max {
                out.push(a * a * b3);
            }
        }
        start += len;
    }
    out.sort_unstable();
    out
}
