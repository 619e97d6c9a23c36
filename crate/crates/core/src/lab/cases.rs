//! The `n = a1 a2 b1 b2` decomposition behind the first counting theorem,
//! used as a diagnostic and to check the `b2 > 1` step exhaustively.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::exact::{floor_rational_power, pow_le};
use crate::arith::{factor, Factorization, LeastPrime, PoweredThreshold, Rational};
use crate::error::{param, Result};
use crate::sieve::{self, Interval, SieveConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseLabel {
    Case1,
    Case2,
    Case3a,
    Case3b,
    None,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3a => "case3a",
            CaseLabel::Case3b => "case3b",
            CaseLabel::None => "none",
        }
    }
}

/// `n = a b` with `a` squarefree and `b` powerful, `a = a1 a2` and `b = b1 b2`
/// where `a1` (resp. `b1`) is the longest ascending prefix product with
/// `a1 <= y/z` (resp. `b1 <= z`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDecomposition {
    #[serde(with = "crate::dec")]
    pub n: u128,
    #[serde(with = "crate::dec")]
    pub a: u128,
    #[serde(with = "crate::dec")]
    pub b: u128,
    #[serde(with = "crate::dec")]
    pub a1: u128,
    #[serde(with = "crate::dec")]
    pub a2: u128,
    #[serde(with = "crate::dec")]
    pub b1: u128,
    #[serde(with = "crate::dec")]
    pub b2: u128,
    pub case: CaseLabel,
}

/// Decompose an already-factored `n` for interval length `y` and split point `z`.
///
/// Label order: `case1` when `b1^2 > z`; otherwise `none` when `b2 = 1`;
/// otherwise by `p = p-(b2)`: `case2` if `p^2 <= z`, `case3a` if `p^2 <= y`,
/// else `case3b`.
pub fn decompose_factored(f: &Factorization, y: u128, z: u128) -> CaseDecomposition {
    let n = f.value();
    let (a, b) = (f.squarefree_part(), f.powerful_part());

    // a1 * z <= y, extended prime by prime
    let mut a1 = 1u128;
    for (p, _) in f.entries().iter().filter(|&&(_, e)| e == 1) {
        match a1.checked_mul(*p).and_then(|v| v.checked_mul(z)) {
            Some(v) if v <= y => a1 *= p,
            _ => break,
        }
    }
    let mut b1 = 1u128;
    let mut rest = f.entries().iter().filter(|&&(_, e)| e >= 2).peekable();
    while let Some(&&(q, e)) = rest.peek() {
        let next = b1 * q.pow(e);
        if next > z {
            break;
        }
        b1 = next;
        rest.next();
    }
    let b2 = b / b1;
    let least_b2 = rest
        .next()
        .map_or(LeastPrime::Unit, |&(q, _)| LeastPrime::Prime(q));

    let case = if !pow_le(b1, 2, z, 1) {
        CaseLabel::Case1
    } else {
        match least_b2 {
            LeastPrime::Unit => CaseLabel::None,
            LeastPrime::Prime(p) if pow_le(p, 2, z, 1) => CaseLabel::Case2,
            LeastPrime::Prime(p) if pow_le(p, 2, y, 1) => CaseLabel::Case3a,
            LeastPrime::Prime(_) => CaseLabel::Case3b,
        }
    };
    CaseDecomposition {
        n,
        a,
        b,
        a1,
        a2: a / a1,
        b1,
        b2,
        case,
    }
}

pub fn decompose_case(n: u128, interval: &Interval, z: u128) -> Result<CaseDecomposition> {
    if !interval.contains(n) {
        return Err(param(format!("{n} is not in the interval")));
    }
    if z == 0 {
        return Err(param("z must be at least 1"));
    }
    Ok(decompose_factored(&factor(n)?, interval.y(), z))
}

/// `floor(y^((k-1)/k))`, the split point used with the first theorem.
pub fn default_z(y: u128, k: PoweredThreshold) -> u128 {
    let r = (k.rational() - Rational::from_integer(1)) / k.rational();
    u128::try_from(floor_rational_power(y, r)).expect("floor(y^r) <= y")
}

fn check_b2_preconditions(interval: &Interval, k: PoweredThreshold, z: u128) -> Result<()> {
    interval.require_short()?;
    if k.rational() <= Rational::from_integer(1) {
        return Err(param("k must exceed 1"));
    }
    if z == 0 {
        return Err(param("z must be at least 1"));
    }
    // z^k <= y^(k-1)  <=>  z^num <= y^(num - den)
    let (num, den) = (k.num() as u32, k.den() as u32);
    if !pow_le(z, num, interval.y(), num - den) {
        return Err(param(format!(
            "z = {z} violates z^k <= y^(k-1) for k = {k}, y = {}",
            interval.y()
        )));
    }
    Ok(())
}

/// Every k-powered `n` in the interval with `b1^2 <= z` and `b2 = 1`.
/// The argument says there are none whenever `z^k <= y^(k-1)` and `y <= x`.
pub fn verify_b2_claim(
    interval: &Interval,
    k: PoweredThreshold,
    z: u128,
    cfg: &SieveConfig,
) -> Result<Vec<u128>> {
    check_b2_preconditions(interval, k, z)?;
    let y = interval.y();
    sieve::filter_where(interval, cfg, |_, f| {
        f.is_k_powered(k) && {
            let d = decompose_factored(f, y, z);
            d.b2 == 1 && pow_le(d.b1, 2, z, 1)
        }
    })
}

/// Case label counts over the k-powered numbers of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTally {
    pub interval: Interval,
    pub k: String,
    #[serde(with = "crate::dec")]
    pub z: u128,
    pub counts: BTreeMap<String, u64>,
    pub decompositions: Vec<CaseDecomposition>,
}

pub fn case_tally(
    interval: &Interval,
    k: PoweredThreshold,
    z: u128,
    keep_list: bool,
    cfg: &SieveConfig,
) -> Result<CaseTally> {
    if z == 0 {
        return Err(param("z must be at least 1"));
    }
    let y = interval.y();
    let parts = sieve::scan_segments(interval, cfg, |_, facs| {
        facs.iter()
            .filter(|f| f.is_k_powered(k))
            .map(|f| decompose_factored(f, y, z))
            .collect::<Vec<_>>()
    })?;
    let all: Vec<CaseDecomposition> = parts.concat();
    let mut counts: BTreeMap<String, u64> = [
        CaseLabel::Case1,
        CaseLabel::Case2,
        CaseLabel::Case3a,
        CaseLabel::Case3b,
        CaseLabel::None,
    ]
    .iter()
    .map(|c| (c.as_str().to_string(), 0))
    .collect();
    for d in &all {
        *counts.get_mut(d.case.as_str()).expect("all labels present") += 1;
    }
    Ok(CaseTally {
        interval: *interval,
        k: k.to_string(),
        z,
        counts,
        decompositions: if keep_list { all } else { Vec::new() },
    })
}
