//! Exact integer predicates and decompositions: kernel, squarefree and
//! powerful parts, smooth parts, k-full and k-powered tests.
//!
//! Integer values are `u128`; anything that can be factored lies below
//! [`FACTOR_LIMIT`] (about 3.3e24). Power comparisons that may overflow are
//! done in `BigUint`.

pub mod exact;
pub(crate) mod factor;
pub mod prime;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use exact::{format_rational, parse_rational, Rational};
pub use factor::{factor, factor_with, FactorConfig, FACTOR_LIMIT};
pub use prime::{is_prime, primes_up_to};

use crate::error::{domain, param, Error, Result};

/// Prime-power decomposition of a positive integer. Primes strictly
/// increasing, exponents at least 1; the empty list is `n = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    entries: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Validating constructor: checks ordering, exponents, and primality.
    pub fn from_entries(entries: Vec<(u128, u32)>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(param("primes must be strictly increasing"));
            }
        }
        for &(p, e) in &entries {
            if e == 0 {
                return Err(param(format!("zero exponent for prime {p}")));
            }
            if !is_prime(p) {
                return Err(param(format!("{p} is not prime")));
            }
        }
        let f = Factorization { entries };
        f.try_value()
            .ok_or_else(|| param("factorization value overflows u128"))?;
        Ok(f)
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<(u128, u32)>) -> Self {
        Factorization { entries }
    }

    pub fn entries(&self) -> &[(u128, u32)] {
        &self.entries
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    fn try_value(&self) -> Option<u128> {
        self.entries
            .iter()
            .try_fold(1u128, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// The integer this factorization recomposes to.
    pub fn value(&self) -> u128 {
        self.try_value().expect("validated factorization fits u128")
    }

    fn product_where(&self, keep: impl Fn(u128, u32) -> bool, full_power: bool) -> u128 {
        self.entries
            .iter()
            .filter(|&&(p, e)| keep(p, e))
            .map(|&(p, e)| if full_power { p.pow(e) } else { p })
            .product()
    }

    /// Squarefree kernel: product of the distinct primes.
    pub fn kernel(&self) -> u128 {
        self.product_where(|_, _| true, false)
    }

    /// Product of the primes with exponent exactly 1.
    pub fn squarefree_part(&self) -> u128 {
        self.product_where(|_, e| e == 1, false)
    }

    /// Product of the prime powers with exponent at least 2.
    pub fn powerful_part(&self) -> u128 {
        self.product_where(|_, e| e >= 2, true)
    }

    /// Largest divisor whose prime factors are all `<= w`.
    pub fn smooth_part(&self, w: u128) -> u128 {
        self.product_where(|p, _| p <= w, true)
    }

    pub fn is_w_smooth(&self, w: u128) -> bool {
        self.entries.iter().all(|&(p, _)| p <= w)
    }

    /// p+(n); 1 for n = 1.
    pub fn largest_prime_factor(&self) -> u128 {
        self.entries.last().map_or(1, |&(p, _)| p)
    }

    pub fn smallest_prime_factor(&self) -> LeastPrime {
        self.entries
            .first()
            .map_or(LeastPrime::Unit, |&(p, _)| LeastPrime::Prime(p))
    }

    /// Largest prime with exponent at least 2 (that is, p+(n / kappa(n))); 1 if none.
    pub fn largest_repeated_prime(&self) -> u128 {
        self.entries
            .iter()
            .rev()
            .find(|&&(_, e)| e >= 2)
            .map_or(1, |&(p, _)| p)
    }

    /// p+(q(n)): largest prime with exponent exactly 1; 1 if none.
    pub fn largest_simple_prime(&self) -> u128 {
        self.entries
            .iter()
            .rev()
            .find(|&&(_, e)| e == 1)
            .map_or(1, |&(p, _)| p)
    }

    pub fn is_powerful(&self) -> bool {
        self.is_k_full(2)
    }

    pub fn is_k_full(&self, k: u32) -> bool {
        self.entries.iter().all(|&(_, e)| e >= k)
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&(_, e)| e == 1)
    }

    /// Exact test `kappa(n)^num <= n^den` for `k = num/den`.
    pub fn is_k_powered(&self, k: PoweredThreshold) -> bool {
        let n = self.value();
        let kappa = self.kernel();
        if kappa == n {
            // squarefree: kappa = n <= n^(1/k) only when n = 1 or k = 1
            return n == 1 || k.0 == Rational::from_integer(1);
        }
        let (num, den) = k.parts();
        exact::pow_le(kappa, num, n, den)
    }

    /// `log n / log kappa(n)`. Advisory only; decisions use [`Self::is_k_powered`].
    pub fn powered_exponent(&self) -> Result<f64> {
        let n = self.value();
        if n < 2 {
            return Err(domain("powered exponent of 1 is 0/0"));
        }
        Ok((n as f64).ln() / (self.kernel() as f64).ln())
    }
}

/// Smallest prime factor, with `Unit` standing for n = 1. `Unit` orders
/// above every prime, so `p-(1) > bound` holds for any finite bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeastPrime {
    Prime(u128),
    Unit,
}

impl LeastPrime {
    pub fn prime(self) -> Option<u128> {
        match self {
            LeastPrime::Prime(p) => Some(p),
            LeastPrime::Unit => None,
        }
    }
}

/// The powering threshold `k = num/den >= 1`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PoweredThreshold(Rational);

impl PoweredThreshold {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(param("k has zero denominator"));
        }
        Self::from_rational(Rational::new(num, den))
    }

    pub fn from_rational(k: Rational) -> Result<Self> {
        if k < Rational::from_integer(1) {
            return Err(param(format!(
                "k = {} must be at least 1",
                format_rational(&k)
            )));
        }
        exact::check_exponent(k)?;
        Ok(PoweredThreshold(k))
    }

    pub fn integer(k: u64) -> Result<Self> {
        Self::new(k, 1)
    }

    pub fn rational(&self) -> Rational {
        self.0
    }

    pub fn num(&self) -> u64 {
        *self.0.numer()
    }

    pub fn den(&self) -> u64 {
        *self.0.denom()
    }

    fn parts(&self) -> (u32, u32) {
        (self.num() as u32, self.den() as u32)
    }

    pub fn as_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }
}

impl PartialOrd for PoweredThreshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PoweredThreshold {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for PoweredThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for PoweredThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_rational(parse_rational(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u128) -> Factorization {
        factor(n).unwrap()
    }

    fn k(num: u64, den: u64) -> PoweredThreshold {
        PoweredThreshold::new(num, den).unwrap()
    }

    #[test]
    fn kernel_and_parts() {
        assert_eq!(f(648).kernel(), 6);
        assert_eq!(f(1).kernel(), 1);
        assert_eq!(f(360).kernel(), 30);
        assert_eq!(f(72).squarefree_part(), 1);
        assert_eq!(f(360).squarefree_part(), 5);
        assert_eq!(f(30).squarefree_part(), 30);
        assert_eq!(f(360).powerful_part(), 72);
        assert_eq!(f(30).powerful_part(), 1);
        assert_eq!(f(648).powerful_part(), 648);
        assert_eq!(f(1).squarefree_part(), 1);
        assert_eq!(f(1).powerful_part(), 1);
    }

    #[test]
    fn extreme_primes() {
        assert_eq!(f(360).largest_prime_factor(), 5);
        assert_eq!(f(360).smallest_prime_factor(), LeastPrime::Prime(2));
        assert_eq!(f(1).largest_prime_factor(), 1);
        assert_eq!(f(1).smallest_prime_factor(), LeastPrime::Unit);
        assert!(LeastPrime::Unit > LeastPrime::Prime(u128::MAX));
        assert_eq!(f(649).largest_prime_factor(), 59);
        assert_eq!(f(648).largest_repeated_prime(), 3);
        assert_eq!(f(360).largest_simple_prime(), 5);
        assert_eq!(f(72).largest_simple_prime(), 1);
    }

    #[test]
    fn fullness() {
        assert!(f(72).is_powerful());
        assert!(f(648).is_k_full(3));
        assert!(!f(72).is_k_full(3));
        assert!(f(30).is_squarefree());
        assert!(!f(360).is_squarefree());
        let one = f(1);
        assert!(one.is_powerful() && one.is_k_full(7) && one.is_squarefree());
    }

    #[test]
    fn powered() {
        assert!(f(648).is_k_powered(k(7, 2)));
        assert!(!f(648).is_k_powered(k(4, 1)));
        assert!(f(1).is_k_powered(k(100, 1)));
        assert!(f(2).is_k_powered(k(1, 1)));
        assert!(!f(2).is_k_powered(k(11, 10)));
        let e = f(648).powered_exponent().unwrap();
        assert!((e - 3.613147).abs() < 1e-6, "{e}");
        assert_eq!(f(2).powered_exponent().unwrap(), 1.0);
        assert_eq!(f(8).powered_exponent().unwrap(), 3.0);
        assert!(f(1).powered_exponent().is_err());
    }

    #[test]
    fn smooth() {
        assert_eq!(f(720).smooth_part(3), 144);
        assert_eq!(f(720).smooth_part(5), 720);
        assert_eq!(f(7).smooth_part(2), 1);
        assert!(f(720).is_w_smooth(5));
        assert!(!f(720).is_w_smooth(3));
    }

    #[test]
    fn threshold_parsing() {
        assert_eq!("7/2".parse::<PoweredThreshold>().unwrap(), k(7, 2));
        assert_eq!("2".parse::<PoweredThreshold>().unwrap(), k(2, 1));
        assert_eq!(
            "4/2".parse::<PoweredThreshold>().unwrap().to_string(),
            "2/1"
        );
        assert!("1/2".parse::<PoweredThreshold>().is_err());
        assert!(k(3, 2) < k(2, 1));
    }

    #[test]
    fn validating_constructor() {
        assert!(Factorization::from_entries(vec![(2, 3), (3, 2)]).is_ok());
        assert!(Factorization::from_entries(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_entries(vec![(4, 1)]).is_err());
        assert!(Factorization::from_entries(vec![(2, 0)]).is_err());
        assert!(Factorization::from_entries(vec![(2, 200)]).is_err());
    }
}
