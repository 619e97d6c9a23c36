//! Left-hand sides of the short-interval counting results, each paired with
//! its right-hand bound shape.

use std::collections::BTreeMap;
use std::time::Instant;

use super::CountReport;
use crate::arith::exact::{gt_rational_power, le_rational_power};
use crate::arith::{format_rational, Factorization, PoweredThreshold, Rational};
use crate::error::{domain, param, Result};
use crate::sieve::{self, count_where, Interval, SieveConfig};

/// Constants for the `y / exp(C (log log y)^c)` shape; both default to 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoweredConstants {
    pub big_c: f64,
    pub small_c: f64,
}

impl Default for PoweredConstants {
    fn default() -> Self {
        PoweredConstants {
            big_c: 1.0,
            small_c: 1.0,
        }
    }
}

fn require_k_above_one(k: PoweredThreshold) -> Result<()> {
    if k.rational() <= Rational::from_integer(1) {
        return Err(param(format!("k = {k} must exceed 1")));
    }
    Ok(())
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn yf(interval: &Interval) -> f64 {
    interval.y() as f64
}

/// Membership in the first theorem's set: k-powered with
/// `p+(n / kappa(n)) <= y^(1 - delta)`.
pub fn theorem1_member(f: &Factorization, y: u128, k: PoweredThreshold, delta: Rational) -> bool {
    f.is_k_powered(k)
        && le_rational_power(
            f.largest_repeated_prime(),
            y,
            Rational::from_integer(1) - delta,
        )
}

pub fn count_theorem1(
    interval: &Interval,
    k: PoweredThreshold,
    delta: Rational,
    cfg: &SieveConfig,
) -> Result<CountReport> {
    interval.require_short()?;
    require_k_above_one(k)?;
    if delta >= Rational::from_integer(1) {
        return Err(param("delta must lie in [0, 1)"));
    }
    let start = Instant::now();
    let y = interval.y();
    let count = count_where(interval, cfg, |_, f| theorem1_member(f, y, k, delta))?;
    let kf = k.as_f64();
    let d = *delta.numer() as f64 / *delta.denom() as f64;
    let bound = yf(interval).powf((3.0 * kf + 1.0) / (4.0 * kf))
        + yf(interval).powf(1.0 - d) / (yf(interval) + 1.0).ln();
    Ok(CountReport::new(
        "count-t1",
        *interval,
        params([("k", k.to_string()), ("delta", format_rational(&delta))]),
        count,
        "y^((3k+1)/(4k)) + y^(1-delta)/log(y+1)",
        Some(bound),
        start.elapsed(),
    ))
}

pub fn theorem2_member(f: &Factorization, k: PoweredThreshold, w: u128) -> bool {
    f.is_k_powered(k) && f.largest_simple_prime() <= w
}

pub fn count_theorem2(
    interval: &Interval,
    k: PoweredThreshold,
    w: u128,
    cfg: &SieveConfig,
) -> Result<CountReport> {
    interval.require_short()?;
    require_k_above_one(k)?;
    if w < 2 || w > interval.y() {
        return Err(param("w must satisfy 2 <= w <= y"));
    }
    let start = Instant::now();
    let count = count_where(interval, cfg, |_, f| theorem2_member(f, k, w))?;
    let (y, lw) = (yf(interval), (w as f64).ln());
    let bound = y * lw / y.ln() + y * (-y.ln() / (3.0 * lw)).exp() + y.powf(11.0 / 12.0);
    Ok(CountReport::new(
        "count-t2",
        *interval,
        params([("k", k.to_string()), ("w", w.to_string())]),
        count,
        "y*log(w)/log(y) + y*exp(-log(y)/(3*log(w))) + y^(11/12)",
        Some(bound),
        start.elapsed(),
    ))
}

/// All k-powered numbers in the interval. Unlike the theorem counts this
/// accepts any `x >= 0`; the bound needs `y >= 3`.
pub fn count_powered(
    interval: &Interval,
    k: PoweredThreshold,
    constants: PoweredConstants,
    cfg: &SieveConfig,
) -> Result<CountReport> {
    require_k_above_one(k)?;
    let start = Instant::now();
    let count = count_where(interval, cfg, |_, f| f.is_k_powered(k))?;
    let y = yf(interval);
    let bound = (interval.y() >= 3)
        .then(|| y / (constants.big_c * y.ln().ln().powf(constants.small_c)).exp());
    Ok(CountReport::new(
        "count-powered",
        *interval,
        params([
            ("k", k.to_string()),
            ("C", constants.big_c.to_string()),
            ("c", constants.small_c.to_string()),
        ]),
        count,
        "y/exp(C*(log log y)^c)",
        bound,
        start.elapsed(),
    ))
}

/// Powerful `n` with `p+(n)^2 <= y`, against `y^(11/12)`.
pub fn count_smooth_powerful(interval: &Interval) -> Result<CountReport> {
    if interval.y() < 2 {
        return Err(domain("needs y >= 2"));
    }
    let start = Instant::now();
    let y = interval.y();
    let mut count = 0u128;
    for n in sieve::enumerate_powerful(interval) {
        let p = crate::arith::factor(n)?.largest_prime_factor();
        if le_rational_power(p, y, Rational::new(1, 2)) {
            count += 1;
        }
    }
    Ok(CountReport::new(
        "count-eq1",
        *interval,
        BTreeMap::new(),
        count,
        "y^(11/12)",
        Some(yf(interval).powf(11.0 / 12.0)),
        start.elapsed(),
    ))
}

/// `T = log(y+1) * log log(y+2)` and its floor, the effective prime cut.
pub fn verysmooth_threshold(y: u128) -> (f64, u128) {
    let y = y as f64;
    let t = (y + 1.0).ln() * (y + 2.0).ln().ln();
    (t, t.floor() as u128)
}

/// `n` with `p+(q(n)) <= log(y+1) log log(y+2)`.
pub fn count_verysmooth(interval: &Interval, cfg: &SieveConfig) -> Result<CountReport> {
    if interval.y() < 2 {
        return Err(domain("needs y >= 2"));
    }
    let start = Instant::now();
    let (t, cut) = verysmooth_threshold(interval.y());
    let count = count_where(interval, cfg, |_, f| f.largest_simple_prime() <= cut)?;
    let y = yf(interval);
    Ok(CountReport::new(
        "count-eq3",
        *interval,
        params([
            ("threshold", t.to_string()),
            ("threshold_floor", cut.to_string()),
        ]),
        count,
        "y*log log(y+2)/log(y+2)",
        Some(y * (y + 2.0).ln().ln() / (y + 2.0).ln()),
        start.elapsed(),
    ))
}

/// `n` has a divisor `d > y^alpha` with `p+(d) <= w`; equivalently its
/// w-smooth part exceeds `y^alpha`.
pub fn smooth_divisor_member(f: &Factorization, y: u128, alpha: Rational, w: u128) -> bool {
    gt_rational_power(f.smooth_part(w), y, alpha)
}

pub fn count_smooth_divisor(
    interval: &Interval,
    alpha: Rational,
    w: u128,
    cfg: &SieveConfig,
) -> Result<CountReport> {
    if interval.y() < 2 {
        return Err(domain("needs y >= 2"));
    }
    if w < 2 {
        return Err(param("w must be at least 2"));
    }
    if alpha == Rational::from_integer(0) || alpha > Rational::from_integer(1) {
        return Err(param("alpha must lie in (0, 1]"));
    }
    let start = Instant::now();
    let y = interval.y();
    let count = count_where(interval, cfg, |_, f| smooth_divisor_member(f, y, alpha, w))?;
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    let (yl, wl) = ((y as f64).ln(), (w as f64).ln());
    let bound = y as f64 * ((-a * yl / wl).exp() + (-a * yl / 3.0).exp());
    Ok(CountReport::new(
        "sdivisor",
        *interval,
        params([("alpha", format_rational(&alpha)), ("w", w.to_string())]),
        count,
        "y*(exp(-alpha*log(y)/log(w)) + y^(-alpha/3))",
        Some(bound),
        start.elapsed(),
    ))
}

/// Rough numbers against the sieve bound `2y / log y`.
pub fn count_rough_report(interval: &Interval, cfg: &SieveConfig) -> Result<CountReport> {
    let start = Instant::now();
    let count = sieve::count_rough(interval, cfg)?;
    let y = yf(interval);
    Ok(CountReport::new(
        "rough",
        *interval,
        BTreeMap::new(),
        count,
        "2y/log(y)",
        Some(2.0 * y / y.ln()),
        start.elapsed(),
    ))
}
