mod common;

use num_integer::Integer;
use powered_core::abc_ap::{build_abc_triple, identity_check, is_ap_free, rk_exact, rk_greedy};
use powered_core::arith::{factor, PoweredThreshold, Rational};
use powered_core::lab::{count_smooth_divisor, decompose_case};
use powered_core::sieve::{enumerate_k_powered, factor_interval, Interval, SieveConfig};
use proptest::prelude::*;

fn k_strategy() -> impl Strategy<Value = PoweredThreshold> {
    (1u64..=12, 1u64..=6).prop_map(|(a, b)| PoweredThreshold::new(a + b, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn recomposition(n in 1u128..1_000_000_000_000_000_000_000) {
        let f = factor(n).unwrap();
        prop_assert_eq!(f.value(), n);
        prop_assert!(f.entries().windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn kernel_facts(a in 1u128..1_000_000, b in 1u128..1_000_000) {
        let ka = factor(a).unwrap().kernel();
        prop_assert!(ka <= a);
        prop_assert_eq!(factor(a * a * a).unwrap().kernel(), ka);
        let kab = factor(a * b).unwrap().kernel();
        let kb = factor(b).unwrap().kernel();
        prop_assert!(ka <= kab && kab <= ka * kb);
        if a.gcd(&b) == 1 {
            prop_assert_eq!(kab, ka * kb);
        }
    }

    #[test]
    fn powered_monotone(n in 1u128..10_000_000_000, k1 in k_strategy(), k2 in k_strategy()) {
        let f = factor(n).unwrap();
        let (lo, hi) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
        if f.is_k_powered(hi) {
            prop_assert!(f.is_k_powered(lo));
        }
    }

    #[test]
    fn identity_holds(n in 0u128..=1_000_000_000, d in 0u128..=1_000_000_000) {
        prop_assert!(identity_check(n, d).holds);
    }

    #[test]
    fn triple_scale_invariant(n in 3u128..100_000, d in 1u128..50_000, m in 1u128..1000) {
        prop_assume!(n > 2 * d);
        let a = build_abc_triple(n, d).unwrap();
        let b = build_abc_triple(m * n, m * d).unwrap();
        prop_assert_eq!((a.a, a.b, a.c, a.big_d), (b.a, b.b, b.c, b.big_d));
    }

    #[test]
    fn decomposition_reconstructs(x in 1u128..1_000_000_000, off in 1u128..=1000, z in 1u128..100) {
        let i = Interval::new(x, 1000).unwrap();
        let n = x + off;
        let d = decompose_case(n, &i, z).unwrap();
        prop_assert_eq!(d.a1 * d.a2 * d.b1 * d.b2, n);
        prop_assert_eq!(d.a * d.b, n);
    }

    #[test]
    fn k_powered_sets_nest(x in 0u128..1_000_000_000, k1 in k_strategy(), k2 in k_strategy()) {
        let i = Interval::new(x, 500).unwrap();
        let cfg = SieveConfig::default();
        let (lo, hi) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
        let small = enumerate_k_powered(&i, hi, &cfg).unwrap();
        let big = enumerate_k_powered(&i, lo, &cfg).unwrap();
        prop_assert!(small.iter().all(|n| big.binary_search(n).is_ok()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn smooth_divisor_monotone(x in 10u128..1_000_000_000, w1 in 2u128..200, w2 in 2u128..200) {
        let i = Interval::new(x, 300).unwrap();
        let cfg = SieveConfig::default();
        let c = |a: Rational, w| count_smooth_divisor(&i, a, w, &cfg).unwrap().count;
        let (wl, wh) = (w1.min(w2), w1.max(w2));
        prop_assert!(c(Rational::new(1, 2), wh) >= c(Rational::new(1, 2), wl));
        prop_assert!(c(Rational::new(1, 3), wl) >= c(Rational::new(1, 2), wl));
    }

    #[test]
    fn rk_steps(n in 1u32..30, k in 3u32..6) {
        let a = rk_exact(n, k).unwrap();
        let b = rk_exact(n + 1, k).unwrap();
        prop_assert!(a.size <= b.size && b.size <= a.size + 1);
        let g = rk_greedy(n, k).unwrap();
        prop_assert!(g.size <= a.size);
        prop_assert!(is_ap_free(&g.witness, k) && is_ap_free(&a.witness, k));
    }
}

#[test]
fn decomposition_parts_to_one_million() {
    let all = factor_interval(
        &Interval::new(0, 1_000_000).unwrap(),
        &SieveConfig::default(),
    )
    .unwrap();
    for (n, f) in &all {
        let (a, b) = (f.squarefree_part(), f.powerful_part());
        assert_eq!(a * b, *n);
        assert_eq!(a.gcd(&b), 1);
        assert!(factor(a).unwrap().is_squarefree());
        assert!(factor(b).unwrap().is_powerful());
    }
}

#[test]
fn k_full_implies_k_powered_to_one_million() {
    let all = factor_interval(
        &Interval::new(0, 1_000_000).unwrap(),
        &SieveConfig::default(),
    )
    .unwrap();
    for k in 2..=4u32 {
        let kt = PoweredThreshold::integer(k as u64).unwrap();
        for (n, f) in &all {
            if f.is_k_full(k) {
                assert!(f.is_k_powered(kt), "{n} is {k}-full");
            }
        }
    }
}

/// Largest divisor with all primes <= w, found by walking every divisor.
fn max_smooth_divisor(n: u128, lpf: &[u32], w: u128) -> u128 {
    let mut best = 1;
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            for e in [d, n / d] {
                if lpf[e as usize] as u128 <= w && e > best {
                    best = e;
                }
            }
        }
        d += 1;
    }
    best
}

#[test]
fn smooth_part_is_largest_smooth_divisor() {
    const N: usize = 100_000;
    // largest prime factor table, 1 for n = 1
    let mut lpf = vec![1u32; N + 1];
    for p in 2..=N {
        if lpf[p] == 1 {
            for m in (p..=N).step_by(p) {
                lpf[m] = p as u32;
            }
        }
    }
    for n in 1..=N as u128 {
        let f = factor(n).unwrap();
        for w in [10, 100] {
            assert_eq!(
                f.smooth_part(w),
                max_smooth_divisor(n, &lpf, w),
                "n={n} w={w}"
            );
        }
    }
}
