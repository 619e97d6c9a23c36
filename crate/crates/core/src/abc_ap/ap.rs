//! Arithmetic progressions inside the powerful or k-powered numbers of an
//! interval, and the interval length below which long progressions are ruled out.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::exact::floor_rational_power;
use crate::arith::{PoweredThreshold, Rational};
use crate::error::{domain, param, Result};
use crate::sieve::{enumerate_k_powered, enumerate_powerful, Interval, SieveConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApPredicate {
    Powerful,
    KPowered(PoweredThreshold),
}

impl fmt::Display for ApPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApPredicate::Powerful => write!(f, "powerful"),
            ApPredicate::KPowered(k) => write!(f, "k-powered({k})"),
        }
    }
}

/// A progression `start, start + d, ...` of `length` terms, `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    #[serde(with = "crate::dec")]
    pub start: u128,
    #[serde(with = "crate::dec")]
    pub d: u128,
    pub length: usize,
    #[serde(with = "crate::dec::vec")]
    pub terms: Vec<u128>,
}

/// Every saturated progression of at least `min_len` terms in an ascending
/// set: one that cannot be extended by the same difference at either end.
/// Ordered by start, then difference.
pub fn find_aps(sorted: &[u128], min_len: usize) -> Vec<ApWitness> {
    let members: HashSet<u128> = sorted.iter().copied().collect();
    let mut out = Vec::new();
    for (i, &s) in sorted.iter().enumerate() {
        for &second in &sorted[i + 1..] {
            let d = second - s;
            if s.checked_sub(d).is_some_and(|prev| members.contains(&prev)) {
                continue;
            }
            let mut terms = vec![s, second];
            let mut next = second + d;
            while members.contains(&next) {
                terms.push(next);
                next += d;
            }
            if terms.len() >= min_len {
                out.push(ApWitness {
                    start: s,
                    d,
                    length: terms.len(),
                    terms,
                });
            }
        }
    }
    out
}

pub fn find_ap_powered(
    interval: &Interval,
    pred: ApPredicate,
    min_len: usize,
    cfg: &SieveConfig,
) -> Result<Vec<ApWitness>> {
    if min_len < 3 {
        return Err(param("progression length must be at least 3"));
    }
    let set = match pred {
        ApPredicate::Powerful => enumerate_powerful(interval),
        ApPredicate::KPowered(k) => enumerate_k_powered(interval, k, cfg)?,
    };
    Ok(find_aps(&set, min_len))
}

/// `floor(x^((4k - 5) / (8k)))`, exactly. Needs `k > 5/4`.
pub fn threshold_y(x: u128, k: PoweredThreshold) -> Result<u128> {
    let k = k.rational();
    if k <= Rational::new(5, 4) {
        return Err(domain("threshold needs k > 5/4"));
    }
    let r = (Rational::from_integer(4) * k - Rational::from_integer(5))
        / (Rational::from_integer(8) * k);
    Ok(u128::try_from(floor_rational_power(x, r)).expect("result <= x"))
}
