//! Upper-bound shapes for `r_k(N)`, evaluated in floating point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, param, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum BoundForm {
    /// `N (log log N)^(-c_k)`, `c_k = 2^(-2^(k+9))`.
    Gowers { k: u32 },
    /// `N exp(-c (log N)^(1/9))`.
    R3Exp { c: f64 },
    /// `N (log N)^(-c)`.
    Gt4 { c: f64 },
    /// `N exp(-(log log N)^(c_k))`.
    Lss { c_k: f64 },
}

impl BoundForm {
    pub fn name(&self) -> &'static str {
        match self {
            BoundForm::Gowers { .. } => "gowers",
            BoundForm::R3Exp { .. } => "r3_exp",
            BoundForm::Gt4 { .. } => "gt4",
            BoundForm::Lss { .. } => "lss",
        }
    }
}

impl fmt::Display for BoundForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundForm::Gowers { k } => write!(f, "gowers(k={k})"),
            BoundForm::R3Exp { c } => write!(f, "r3_exp(c={c})"),
            BoundForm::Gt4 { c } => write!(f, "gt4(c={c})"),
            BoundForm::Lss { c_k } => write!(f, "lss(c_k={c_k})"),
        }
    }
}

/// `log2` of the Gowers exponent, `-2^(k+9)`. The exponent itself is
/// below the smallest positive double for every `k >= 3`.
pub fn gowers_exponent_log2(k: u32) -> f64 {
    -(2f64.powi(k as i32 + 9))
}

pub fn gowers_exponent(k: u32) -> f64 {
    gowers_exponent_log2(k).exp2()
}

/// Evaluate a bound shape at `N`. The log-log forms need `N > e`, the others `N > 1`.
pub fn bound_eval(n: f64, form: BoundForm) -> Result<f64> {
    if !n.is_finite() {
        return Err(param("N must be finite"));
    }
    let ln = n.ln();
    let lnln = || {
        if ln > 1.0 {
            Ok(ln.ln())
        } else {
            Err(domain(format!("N = {n} is too small for log log N > 0")))
        }
    };
    if ln <= 0.0 {
        return Err(domain(format!("N = {n} is too small for log N > 0")));
    }
    Ok(match form {
        BoundForm::Gowers { k } => {
            if k < 3 {
                return Err(param("k must be at least 3"));
            }
            n * (-gowers_exponent(k) * lnln()?.ln()).exp()
        }
        BoundForm::R3Exp { c } => n * (-c * ln.powf(1.0 / 9.0)).exp(),
        BoundForm::Gt4 { c } => n * ln.powf(-c),
        BoundForm::Lss { c_k } => n * (-lnln()?.powf(c_k)).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn exact_points() {
        let n = E.powf(E);
        assert!(close(
            bound_eval(n, BoundForm::Lss { c_k: 1.0 }).unwrap(),
            n / E
        ));
        let n = 512f64.exp();
        assert!(close(
            bound_eval(n, BoundForm::R3Exp { c: 1.0 }).unwrap(),
            n * (-2f64).exp()
        ));
        assert!(close(
            bound_eval(E.powi(4), BoundForm::Gt4 { c: 0.5 }).unwrap(),
            E.powi(4) / 2.0
        ));
    }

    #[test]
    fn gowers_is_essentially_n() {
        assert_eq!(gowers_exponent_log2(3), -4096.0);
        assert_eq!(gowers_exponent(3), 0.0);
        let v = bound_eval(1e6, BoundForm::Gowers { k: 3 }).unwrap();
        assert!(v <= 1e6 && v > 1e6 * (1.0 - 1e-12));
    }

    #[test]
    fn domains() {
        assert!(bound_eval(2.0, BoundForm::Lss { c_k: 1.0 }).is_err());
        assert!(bound_eval(2.0, BoundForm::Gowers { k: 3 }).is_err());
        assert!(bound_eval(1.0, BoundForm::Gt4 { c: 1.0 }).is_err());
        assert!(bound_eval(2.0, BoundForm::Gt4 { c: 1.0 }).is_ok());
        assert!(bound_eval(16.0, BoundForm::Gowers { k: 2 }).is_err());
    }
}
