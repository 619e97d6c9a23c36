//! Naive per-n reference predicates, written directly against prime-power
//! lists so they share no logic with `Factorization`.

#![allow(dead_code)]

use num_bigint::BigUint;
use powered_core::arith::{factor, Rational};

pub type Entries = Vec<(u128, u32)>;

pub fn entries(n: u128) -> Entries {
    factor(n).unwrap().entries().to_vec()
}

fn big(v: u128) -> BigUint {
    BigUint::from(v)
}

/// `a^ea <= b^eb`
pub fn pow_le(a: u128, ea: u64, b: u128, eb: u64) -> bool {
    big(a).pow(ea as u32) <= big(b).pow(eb as u32)
}

pub fn radical(e: &Entries) -> u128 {
    e.iter().map(|&(p, _)| p).product()
}

pub fn value(e: &Entries) -> u128 {
    e.iter().map(|&(p, k)| p.pow(k)).product()
}

/// `kappa(n) <= n^(num/den)` inverted: `kappa^num <= n^den`.
pub fn k_powered(e: &Entries, num: u64, den: u64) -> bool {
    pow_le(radical(e), num, value(e), den)
}

pub fn largest_with(e: &Entries, pred: impl Fn(u32) -> bool) -> u128 {
    e.iter()
        .filter(|&&(_, k)| pred(k))
        .map(|&(p, _)| p)
        .max()
        .unwrap_or(1)
}

pub fn rat(r: Rational) -> (u64, u64) {
    (*r.numer(), *r.denom())
}

pub fn theorem1(e: &Entries, y: u128, k: (u64, u64), delta: (u64, u64)) -> bool {
    // p+(n/kappa)^den <= y^(den - num) for 1 - delta = (den - num)/den
    let p = largest_with(e, |k| k >= 2);
    k_powered(e, k.0, k.1) && pow_le(p, delta.1, y, delta.1 - delta.0)
}

pub fn theorem2(e: &Entries, k: (u64, u64), w: u128) -> bool {
    k_powered(e, k.0, k.1) && largest_with(e, |k| k == 1) <= w
}

pub fn smooth_powerful(e: &Entries, y: u128) -> bool {
    e.iter().all(|&(_, k)| k >= 2) && pow_le(largest_with(e, |_| true), 2, y, 1)
}

pub fn verysmooth(e: &Entries, cut: u128) -> bool {
    largest_with(e, |k| k == 1) <= cut
}

pub fn smooth_divisor(e: &Entries, y: u128, alpha: (u64, u64), w: u128) -> bool {
    let s: u128 = e
        .iter()
        .filter(|&&(p, _)| p <= w)
        .map(|&(p, k)| p.pow(k))
        .product();
    !pow_le(s, alpha.1, y, alpha.0)
}

pub fn rough(e: &Entries, y: u128) -> bool {
    e.iter().all(|&(p, _)| p * p > y)
}

/// Maximal progressions of length >= `len` in an ascending set, by trying
/// every start and every difference up to the span.
pub fn brute_aps(set: &[u128], len: usize) -> Vec<(u128, u128, usize)> {
    let (Some(&lo), Some(&hi)) = (set.first(), set.last()) else {
        return Vec::new();
    };
    let mut member = vec![false; (hi - lo + 1) as usize];
    for &v in set {
        member[(v - lo) as usize] = true;
    }
    let has = |v: i128| v >= lo as i128 && v <= hi as i128 && member[(v - lo as i128) as usize];
    let mut out = Vec::new();
    for &s in set {
        for d in 1..=(hi - s) {
            if has(s as i128 - d as i128) {
                continue;
            }
            let mut n = 1;
            while has(s as i128 + (n * d) as i128) {
                n += 1;
            }
            if n as usize >= len {
                out.push((s, d, n as usize));
            }
        }
    }
    out
}

/// Largest AP-free subset size of `{1..N}` for every `N <= max_n`, by
/// checking every subset of `{1..max_n}` against every progression.
pub fn rk_table_exhaustive(max_n: u32, k: u32) -> Vec<u32> {
    let mut aps = Vec::new();
    for d in 1..max_n {
        for a in 1..=max_n {
            let last = a + (k - 1) * d;
            if last > max_n {
                break;
            }
            aps.push((0..k).fold(0u32, |m, j| m | 1 << (a + j * d - 1)));
        }
    }
    let mut best_by_top = vec![0u32; max_n as usize + 1];
    for m in 0u32..1 << max_n {
        if aps.iter().all(|&ap| m & ap != ap) {
            let top = 32 - m.leading_zeros();
            best_by_top[top as usize] = best_by_top[top as usize].max(m.count_ones());
        }
    }
    // r(N) = best over subsets whose top element is <= N
    let mut r = vec![0u32; max_n as usize + 1];
    for n in 1..=max_n as usize {
        r[n] = r[n - 1].max(best_by_top[n]);
    }
    r
}
