//! `r_k(N)`: the largest subset of `{1..N}` without a `k`-term progression.

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{capacity, param, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RkMethod {
    Exact,
    Greedy,
}

impl RkMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RkMethod::Exact => "exact",
            RkMethod::Greedy => "greedy",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApFreeResult {
    #[serde(rename = "N")]
    pub n: u32,
    pub k: u32,
    pub size: u32,
    pub witness: Vec<u32>,
    pub method: RkMethod,
}

/// Largest `N` accepted by [`rk_exact`] for a given `k`.
pub fn default_cap(k: u32) -> u32 {
    match k {
        3 => 40,
        4 => 48,
        _ => 64,
    }
}

fn check_args(n: u32, k: u32) -> Result<()> {
    if n == 0 {
        return Err(param("N must be at least 1"));
    }
    if k < 3 {
        return Err(param("k must be at least 3"));
    }
    Ok(())
}

/// Independent check: no `k` members `a, a+d, ..., a+(k-1)d` with `d >= 1`.
pub fn is_ap_free(set: &[u32], k: u32) -> bool {
    let members: HashSet<u64> = set.iter().map(|&v| v as u64).collect();
    for &a in set {
        for &b in set {
            if b <= a {
                continue;
            }
            let d = (b - a) as u64;
            if (2..k as u64).all(|j| members.contains(&(a as u64 + j * d))) {
                return false;
            }
        }
    }
    true
}

/// Bit `i - 1` stands for element `i`. True if `i` would close a k-term
/// progression whose other terms are all in `mask`.
fn closes_ap(mask: u64, i: u32, k: u32) -> bool {
    let mut d = 1;
    while (k - 1) * d < i {
        if (1..k).all(|j| mask >> (i - j * d - 1) & 1 == 1) {
            return true;
        }
        d += 1;
    }
    false
}

struct Search<'a> {
    n: u32,
    k: u32,
    target: u32,
    r: &'a [u32],
}

impl Search<'_> {
    /// Choose among `i..n` with `n` forced in; `1` is already in `mask`.
    fn dfs(&self, i: u32, mask: u64, count: u32) -> Option<u64> {
        if i == self.n {
            return (count + 1 >= self.target && !closes_ap(mask, i, self.k))
                .then_some(mask | 1 << (i - 1));
        }
        if count + self.r[(self.n - i + 1) as usize] < self.target {
            return None;
        }
        if !closes_ap(mask, i, self.k) {
            if let Some(m) = self.dfs(i + 1, mask | 1 << (i - 1), count + 1) {
                return Some(m);
            }
        }
        self.dfs(i + 1, mask, count)
    }
}

fn mask_to_vec(mask: u64) -> Vec<u32> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Exact `r_k(N)` for `N` up to [`default_cap`].
pub fn rk_exact(n: u32, k: u32) -> Result<ApFreeResult> {
    rk_exact_capped(n, k, default_cap(k))
}

/// Builds `r_k(1), ..., r_k(N)` in turn. `r_k(m)` is `r_k(m-1) + 1` exactly
/// when some optimal set contains both `1` and `m`, so each step is one
/// existence search, pruned by the smaller values already known.
pub fn rk_exact_capped(n: u32, k: u32, cap: u32) -> Result<ApFreeResult> {
    check_args(n, k)?;
    if n > cap.min(64) {
        return Err(capacity(format!(
            "N = {n} exceeds the exact-search cap {} for k = {k}; use the greedy method",
            cap.min(64)
        )));
    }
    let mut r = vec![0u32; n as usize + 1];
    let mut best = 0u64;
    for m in 1..=n {
        let target = r[m as usize - 1] + 1;
        let found = if m == 1 {
            Some(1)
        } else {
            Search {
                n: m,
                k,
                target,
                r: &r,
            }
            .dfs(2, 1, 1)
        };
        match found {
            Some(mask) => {
                r[m as usize] = target;
                best = mask;
            }
            None => r[m as usize] = target - 1,
        }
    }
    Ok(ApFreeResult {
        n,
        k,
        size: r[n as usize],
        witness: mask_to_vec(best),
        method: RkMethod::Exact,
    })
}

/// Take each of `1, 2, ..., N` unless it completes a progression.
pub fn rk_greedy(n: u32, k: u32) -> Result<ApFreeResult> {
    check_args(n, k)?;
    let mut taken = vec![false; n as usize + 1];
    let mut witness = Vec::new();
    for i in 1..=n as usize {
        let k = k as usize;
        let closes = (1..)
            .take_while(|d| (k - 1) * d < i)
            .any(|d| (1..k).all(|j| taken[i - j * d]));
        if !closes {
            taken[i] = true;
            witness.push(i as u32);
        }
    }
    Ok(ApFreeResult {
        n,
        k,
        size: witness.len() as u32,
        witness,
        method: RkMethod::Greedy,
    })
}

pub const RK_CSV_COLUMNS: [&str; 5] = ["N", "k", "size", "method", "witness"];

pub fn write_rk_csv<W: Write>(out: W, rows: &[ApFreeResult]) -> Result<()> {
    let io = |e: csv::Error| capacity(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RK_CSV_COLUMNS).map_err(io)?;
    for r in rows {
        let witness = r
            .witness
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.size.to_string(),
            r.method.as_str().to_string(),
            witness,
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| capacity(format!("csv output failed: {e}")))?;
    Ok(())
}
