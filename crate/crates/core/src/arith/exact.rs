//! Exact comparisons against rational powers, integer roots, and logarithms of big values.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{param, Result};

/// Nonnegative rational parameter (k, delta, alpha, ...).
pub type Rational = Ratio<u64>;

/// Largest numerator or denominator accepted in a rational exponent.
/// Exact comparisons raise interval values to these powers.
pub const MAX_EXPONENT_PART: u64 = 4096;

/// Parses `"p/q"` or a bare integer `"p"` (read as `p/1`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: u64 = num
        .parse()
        .map_err(|_| param(format!("invalid rational '{s}': bad numerator")))?;
    let den: u64 = den
        .parse()
        .map_err(|_| param(format!("invalid rational '{s}': bad denominator")))?;
    if den == 0 {
        return Err(param(format!("invalid rational '{s}': zero denominator")));
    }
    let r = Rational::new(num, den);
    check_exponent(r)?;
    Ok(r)
}

pub(crate) fn check_exponent(r: Rational) -> Result<()> {
    if *r.numer() > MAX_EXPONENT_PART || *r.denom() > MAX_EXPONENT_PART {
        return Err(param(format!(
            "rational {}/{} has a part above {MAX_EXPONENT_PART}",
            r.numer(),
            r.denom()
        )));
    }
    Ok(())
}

/// Always `"p/q"`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `a^ea <= b^eb`, exactly.
pub fn pow_le(a: u128, ea: u32, b: u128, eb: u32) -> bool {
    if let (Some(l), Some(r)) = (a.checked_pow(ea), b.checked_pow(eb)) {
        return l <= r;
    }
    BigUint::from(a).pow(ea) <= BigUint::from(b).pow(eb)
}

fn exp_u32(e: u64) -> u32 {
    u32::try_from(e).expect("exponent bounded by MAX_EXPONENT_PART")
}

/// `v <= y^r` for rational `r = p/q`, decided as `v^q <= y^p`.
pub fn le_rational_power(v: u128, y: u128, r: Rational) -> bool {
    pow_le(v, exp_u32(*r.denom()), y, exp_u32(*r.numer()))
}

/// `v > y^r`, exactly.
pub fn gt_rational_power(v: u128, y: u128, r: Rational) -> bool {
    !le_rational_power(v, y, r)
}

/// `floor(y^r)` for rational `r`, exactly.
pub fn floor_rational_power(y: u128, r: Rational) -> BigUint {
    let p = exp_u32(*r.numer());
    let q = exp_u32(*r.denom());
    let target = BigUint::from(y).pow(p);
    iroot_big(&target, q)
}

/// `floor(n^(1/k))` for big `n`, by binary search on exact powers.
pub fn iroot_big(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n.is_zero() || n.is_one() {
        return n.clone();
    }
    // num-bigint's nth_root is exact floor for all inputs.
    let r = n.nth_root(k);
    debug_assert!(r.pow(k) <= *n && (&r + 1u32).pow(k) > *n);
    r
}

/// `floor(n^(1/k))` for `n: u128`.
pub fn iroot(n: u128, k: u32) -> u128 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u128;
    // float estimate is within a few units; settle exactly
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

pub fn isqrt(n: u128) -> u128 {
    iroot(n, 2)
}

/// Natural logarithm of an arbitrarily large value.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
