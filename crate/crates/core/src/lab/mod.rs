//! Counting experiments over short intervals and the case-decomposition
//! diagnostics. Every count is exact; bound values and ratios are reported,
//! never asserted.

mod cases;
mod counts;
mod report;

pub use cases::{
    case_tally, decompose_case, decompose_factored, default_z, verify_b2_claim, CaseDecomposition,
    CaseLabel, CaseTally,
};
pub use counts::{
    count_powered, count_rough_report, count_smooth_divisor, count_smooth_powerful, count_theorem1,
    count_theorem2, count_verysmooth, smooth_divisor_member, theorem1_member, theorem2_member,
    verysmooth_threshold, PoweredConstants,
};
pub use report::{write_csv, CountReport, CSV_COLUMNS};
