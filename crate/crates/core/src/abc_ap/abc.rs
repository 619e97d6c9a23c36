//! abc triples from the quartic identity
//! `(n + 2d)^3 (n - 2d) + 16 d^3 (n + d) = n^3 (n + 4d)`.
//!
//! After reducing by `t = gcd(n, d)`, the two sides share at most
//! `D = 2^e2 3^e3` with `e2 <= 4`, `e3 <= 1`. Dividing through by `D` gives
//! a coprime triple `a + b = c`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::exact::ln_big;
use crate::arith::factor;
use crate::error::{domain, param, Error, Result};
use crate::sieve::in_pool;

/// The three exactly evaluated terms of the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTerms {
    #[serde(with = "crate::dec::big_signed")]
    pub lhs1: BigInt,
    #[serde(with = "crate::dec::big_signed")]
    pub lhs2: BigInt,
    #[serde(with = "crate::dec::big_signed")]
    pub rhs: BigInt,
    pub holds: bool,
}

/// Evaluate both sides of the identity. Signed, so `n < 2d` is allowed.
pub fn identity_check(n: u128, d: u128) -> IdentityTerms {
    let (n, d) = (BigInt::from(n), BigInt::from(d));
    let lhs1 = (&n + 2u32 * &d).pow(3) * (&n - 2u32 * &d);
    let lhs2 = 16u32 * d.pow(3) * (&n + &d);
    let rhs = n.pow(3) * (&n + 4u32 * &d);
    let holds = &lhs1 + &lhs2 == rhs;
    IdentityTerms {
        lhs1,
        lhs2,
        rhs,
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbcTriple {
    #[serde(with = "crate::dec")]
    pub n: u128,
    #[serde(with = "crate::dec")]
    pub d: u128,
    #[serde(with = "crate::dec")]
    pub t: u128,
    #[serde(with = "crate::dec")]
    pub n_red: u128,
    #[serde(with = "crate::dec")]
    pub d_red: u128,
    #[serde(rename = "D")]
    pub big_d: u32,
    pub e2: u32,
    pub e3: u32,
    #[serde(with = "crate::dec::big")]
    pub a: BigUint,
    #[serde(with = "crate::dec::big")]
    pub b: BigUint,
    #[serde(with = "crate::dec::big")]
    pub c: BigUint,
    #[serde(with = "crate::dec::big")]
    pub radical: BigUint,
    pub quality: f64,
}

/// Everything but the radical and quality; cheap enough for exhaustive sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Reduced {
    t: u128,
    n_red: u128,
    d_red: u128,
    big_d: u32,
    e2: u32,
    e3: u32,
    a: BigUint,
    b: BigUint,
    c: BigUint,
}

fn valuation(mut v: BigUint, p: u32) -> (u32, BigUint) {
    let mut e = 0;
    let p = BigUint::from(p);
    while !v.is_zero() && (&v % &p).is_zero() {
        v /= &p;
        e += 1;
    }
    (e, v)
}

/// Reduce by `t`, take `D` as the literal gcd of the two blocks, and check
/// the whole claimed structure. Any deviation is a [`Error::LemmaViolation`].
pub(crate) fn reduce(n: u128, d: u128) -> Result<Reduced> {
    if d == 0 {
        return Err(param("d = 0 is a trivial progression"));
    }
    if n <= 2 * d {
        return Err(domain(format!(
            "n = {n} <= 2d = {}: first term would be <= 0",
            2 * d
        )));
    }
    let t = n.gcd(&d);
    let (nr, dr) = (n / t, d / t);
    let (bn, bd) = (BigUint::from(nr), BigUint::from(dr));
    let lhs1 = (&bn + 2u32 * &bd).pow(3) * (&bn - 2u32 * &bd);
    let lhs2 = 16u32 * bd.pow(3) * (&bn + &bd);
    let rhs = bn.pow(3) * (&bn + 4u32 * &bd);
    let big_d = rhs.gcd(&lhs2);
    let (e2, rest) = valuation(big_d.clone(), 2);
    let (e3, rest) = valuation(rest, 3);
    let violation = |what: String| {
        Err(Error::LemmaViolation(format!(
            "(n', d') = ({nr}, {dr}): {what}"
        )))
    };
    if !rest.is_one() {
        return violation(format!("D = {big_d} has a prime factor other than 2 and 3"));
    }
    if e2 > 4 || e3 > 1 {
        return violation(format!("D = {big_d} has e2 = {e2}, e3 = {e3}"));
    }
    let a = lhs1 / &big_d;
    let b = lhs2 / &big_d;
    let c = rhs / &big_d;
    if &a + &b != c {
        return violation("a + b != c".into());
    }
    if !a.gcd(&b).is_one() || !a.gcd(&c).is_one() || !b.gcd(&c).is_one() {
        return violation("reduced triple is not pairwise coprime".into());
    }
    Ok(Reduced {
        t,
        n_red: nr,
        d_red: dr,
        big_d: big_d.to_u32().expect("D <= 48"),
        e2,
        e3,
        a,
        b,
        c,
    })
}

/// Radical of `a b c` from the linear factors of the identity:
/// `abc = (n'+2d')^3 (n'-2d') 2^4 d'^3 (n'+d') n'^3 (n'+4d') / D^3`.
fn radical_from_pieces(r: &Reduced) -> Result<BigUint> {
    let (n, d) = (r.n_red, r.d_red);
    let pieces: [(u128, i64); 7] = [
        (n + 2 * d, 3),
        (n - 2 * d, 1),
        (2, 4),
        (d, 3),
        (n + d, 1),
        (n, 3),
        (n + 4 * d, 1),
    ];
    let mut exps: BTreeMap<u128, i64> = BTreeMap::new();
    for (v, m) in pieces {
        for &(p, e) in factor(v)?.entries() {
            *exps.entry(p).or_default() += e as i64 * m;
        }
    }
    *exps.entry(2).or_default() -= 3 * r.e2 as i64;
    *exps.entry(3).or_default() -= 3 * r.e3 as i64;
    Ok(exps
        .into_iter()
        .filter(|&(_, e)| e > 0)
        .map(|(p, _)| BigUint::from(p))
        .product())
}

pub fn build_abc_triple(n: u128, d: u128) -> Result<AbcTriple> {
    let r = reduce(n, d)?;
    let radical = radical_from_pieces(&r)?;
    let quality = ln_big(&r.c) / ln_big(&radical);
    Ok(AbcTriple {
        n,
        d,
        t: r.t,
        n_red: r.n_red,
        d_red: r.d_red,
        big_d: r.big_d,
        e2: r.e2,
        e3: r.e3,
        a: r.a,
        b: r.b,
        c: r.c,
        radical,
        quality,
    })
}

/// `log c / log kappa(abc)` for coprime `a + b = c`.
pub fn abc_quality(a: u128, b: u128, c: u128) -> Result<f64> {
    if a == 0 || b == 0 {
        return Err(param("a and b must be positive"));
    }
    if a.checked_add(b) != Some(c) {
        return Err(param(format!("{a} + {b} != {c}")));
    }
    if a.gcd(&b) != 1 {
        return Err(param(format!("gcd({a}, {b}) != 1")));
    }
    // pairwise coprime, so the radical is multiplicative
    let radical: BigUint = [a, b, c]
        .into_iter()
        .map(|v| factor(v).map(|f| BigUint::from(f.kernel())))
        .product::<Result<BigUint>>()?;
    Ok((c as f64).ln() / ln_big(&radical))
}

/// Outcome of sweeping every coprime `(n', d')` with `2d' < n' <= max_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DStructureScan {
    pub max_n: u64,
    pub pairs_checked: u64,
    pub violations: Vec<String>,
    /// Number of pairs attaining each value of D.
    pub d_histogram: BTreeMap<u32, u64>,
    /// First pair (in scan order) attaining `e2 = 4`.
    pub first_e2_max: Option<(u64, u64)>,
}

pub fn scan_d_structure(max_n: u64, threads: usize) -> Result<DStructureScan> {
    let row = |n: u64| {
        let mut part = DStructureScan::default();
        for d in 1..=(n - 1) / 2 {
            if n.gcd(&d) != 1 {
                continue;
            }
            part.pairs_checked += 1;
            match reduce(n as u128, d as u128) {
                Ok(r) => {
                    *part.d_histogram.entry(r.big_d).or_default() += 1;
                    if r.e2 == 4 && part.first_e2_max.is_none() {
                        part.first_e2_max = Some((n, d));
                    }
                }
                Err(e) => part.violations.push(e.to_string()),
            }
        }
        part
    };
    let rows: Vec<DStructureScan> = if threads <= 1 {
        (3..=max_n).map(row).collect()
    } else {
        in_pool(threads, || (3..=max_n).into_par_iter().map(row).collect())?
    };
    let mut total = DStructureScan {
        max_n,
        ..Default::default()
    };
    for part in rows {
        total.pairs_checked += part.pairs_checked;
        total.violations.extend(part.violations);
        for (k, v) in part.d_histogram {
            *total.d_histogram.entry(k).or_default() += v;
        }
        if total.first_e2_max.is_none() {
            total.first_e2_max = part.first_e2_max;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_examples() {
        let t = identity_check(3, 1);
        assert_eq!((t.lhs1, t.lhs2, t.rhs), (125.into(), 64.into(), 189.into()));
        assert!(t.holds);
        let t = identity_check(2, 1);
        assert_eq!((t.lhs1, t.lhs2, t.rhs), (0.into(), 48.into(), 48.into()));
        let t = identity_check(7, 0);
        assert_eq!((t.lhs1.clone(), t.rhs.clone()), (2401.into(), 2401.into()));
        assert!(identity_check(1, 5).holds);
    }

    #[test]
    fn triple_three_one() {
        let t = build_abc_triple(3, 1).unwrap();
        assert_eq!((t.t, t.big_d, t.e2, t.e3), (1, 1, 0, 0));
        assert_eq!(
            (t.a, t.b, t.c),
            (125u32.into(), 64u32.into(), 189u32.into())
        );
        assert_eq!(t.radical, BigUint::from(210u32));
        assert!((t.quality - 189f64.ln() / 210f64.ln()).abs() < 1e-14);
        assert!((t.quality - 0.98029).abs() < 1e-5);
    }

    #[test]
    fn triple_four_one_attains_sixteen() {
        let t = build_abc_triple(4, 1).unwrap();
        assert_eq!((t.big_d, t.e2, t.e3), (16, 4, 0));
        assert_eq!((t.a, t.b, t.c), (27u32.into(), 5u32.into(), 32u32.into()));
        // log 32 / log 30 = 1.018975...
        assert!((t.quality - 32f64.ln() / 30f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn reduction_by_gcd() {
        let t = build_abc_triple(6, 2).unwrap();
        assert_eq!((t.t, t.n_red, t.d_red), (2, 3, 1));
        assert_eq!(
            (t.a, t.b, t.c),
            (125u32.into(), 64u32.into(), 189u32.into())
        );
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(build_abc_triple(4, 2), Err(Error::Domain(_))));
        assert!(matches!(build_abc_triple(4, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn quality_examples() {
        assert!((abc_quality(1, 8, 9).unwrap() - 9f64.ln() / 6f64.ln()).abs() < 1e-14);
        assert!((abc_quality(1, 8, 9).unwrap() - 1.22629).abs() < 1e-5);
        assert_eq!(abc_quality(1, 1, 2).unwrap(), 1.0);
        assert!((abc_quality(27, 5, 32).unwrap() - 1.018975).abs() < 1e-6);
        assert!(abc_quality(2, 4, 6).is_err());
        assert!(abc_quality(1, 2, 4).is_err());
        assert!(abc_quality(0, 2, 2).is_err());
    }

    #[test]
    fn piecewise_radical_matches_direct() {
        for n in 3..60u128 {
            for d in 1..=(n - 1) / 2 {
                let t = build_abc_triple(n, d).unwrap();
                let (a, b, c) = (
                    t.a.to_u128().unwrap(),
                    t.b.to_u128().unwrap(),
                    t.c.to_u128().unwrap(),
                );
                let q = abc_quality(a, b, c).unwrap();
                assert!((q - t.quality).abs() < 1e-12, "({n}, {d})");
            }
        }
    }

    #[test]
    fn small_d_scan() {
        let s = scan_d_structure(60, 1).unwrap();
        assert!(s.violations.is_empty());
        assert_eq!(s.first_e2_max, Some((4, 1)));
        assert!(s.d_histogram.keys().all(|d| 48 % d == 0));
        assert_eq!(scan_d_structure(60, 3).unwrap(), s);
    }
}
