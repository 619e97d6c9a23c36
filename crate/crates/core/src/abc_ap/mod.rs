//! The quartic identity and its abc triples, progressions of powerful
//! numbers, and `r_k(N)`.

mod abc;
mod ap;
mod bounds;
mod rk;

pub use abc::{
    abc_quality, build_abc_triple, identity_check, scan_d_structure, AbcTriple, DStructureScan,
    IdentityTerms,
};
pub use ap::{find_ap_powered, find_aps, threshold_y, ApPredicate, ApWitness};
pub use bounds::{bound_eval, gowers_exponent, gowers_exponent_log2, BoundForm};
pub use rk::{
    default_cap, is_ap_free, rk_exact, rk_exact_capped, rk_greedy, write_rk_csv, ApFreeResult,
    RkMethod, RK_CSV_COLUMNS,
};
