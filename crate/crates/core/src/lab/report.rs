use std::collections::BTreeMap;
use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{capacity, Result};
use crate::sieve::Interval;

/// One counting experiment: parameters, exact count, the evaluated
/// right-hand side (implicit constants set to 1 unless supplied) and their ratio.
///
/// `elapsed` is wall-clock time and is neither serialized nor compared, so
/// reports stay byte-identical across runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountReport {
    pub experiment: String,
    pub interval: Interval,
    pub params: BTreeMap<String, String>,
    #[serde(with = "crate::dec")]
    pub count: u128,
    pub bound_form: String,
    pub bound_value: Option<f64>,
    pub ratio: Option<f64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for CountReport {
    fn eq(&self, other: &Self) -> bool {
        self.experiment == other.experiment
            && self.interval == other.interval
            && self.params == other.params
            && self.count == other.count
            && self.bound_form == other.bound_form
            && self.bound_value == other.bound_value
            && self.ratio == other.ratio
    }
}

impl CountReport {
    pub(crate) fn new(
        experiment: &str,
        interval: Interval,
        params: BTreeMap<String, String>,
        count: u128,
        bound_form: &str,
        bound_value: Option<f64>,
        elapsed: Duration,
    ) -> Self {
        let bound_value = bound_value.filter(|v| v.is_finite() && *v > 0.0);
        CountReport {
            experiment: experiment.to_string(),
            interval,
            params,
            count,
            bound_form: bound_form.to_string(),
            bound_value,
            ratio: bound_value.map(|b| count as f64 / b),
            elapsed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// `k=2/1;delta=1/2` in key order.
    pub fn params_field(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn csv_record(&self) -> [String; 8] {
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        [
            self.experiment.clone(),
            self.interval.x().to_string(),
            self.interval.y().to_string(),
            self.params_field(),
            self.count.to_string(),
            self.bound_form.clone(),
            opt(self.bound_value),
            opt(self.ratio),
        ]
    }
}

/// Fixed CSV column order for report tables.
pub const CSV_COLUMNS: [&str; 8] = [
    "experiment",
    "x",
    "y",
    "params",
    "count",
    "bound_form",
    "bound_value",
    "ratio",
];

/// Write reports as RFC 4180 CSV with a header row.
pub fn write_csv<W: Write>(out: W, reports: &[CountReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| capacity(format!("csv output failed: {e}"));
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in reports {
        w.write_record(r.csv_record()).map_err(io)?;
    }
    w.flush()
        .map_err(|e| capacity(format!("csv output failed: {e}")))?;
    Ok(())
}
