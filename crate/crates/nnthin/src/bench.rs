//! Timing harness for the condensation pipeline. Each row reports the
//! spanning-tree phase and the expansion phase separately so their growth
//! rates can be compared; rows render as tab-separated values.

use crate::condense::condense_with_report;
use crate::generate::{generate, GeneratorSpec};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub mst_ms: f64,
    pub expand_ms: f64,
    pub total_ms: f64,
}

/// Times condensation at each requested size. The dataset for a size is
/// drawn from `template` with its `n` replaced; `repetitions` runs are
/// taken per size and the fastest kept, which suppresses scheduler noise.
pub fn run_bench(
    sizes: &[usize],
    template: &GeneratorSpec,
    repetitions: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<BenchRow>> {
    if sizes.is_empty() {
        return Err(Error::InvalidParameter("no sizes to benchmark".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "benchmark sizes must be strictly ascending".into(),
        ));
    }
    if repetitions == 0 {
        return Err(Error::InvalidParameter(
            "benchmark needs at least one repetition".into(),
        ));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut spec = template.clone();
        spec.n = n;
        let data = generate(&spec)?;
        let mut best: Option<BenchRow> = None;
        for _ in 0..repetitions {
            let report = condense_with_report(&data, seed, tol)?;
            let mst_ms = report.timings.mst.as_secs_f64() * 1e3;
            let expand_ms = report.timings.expansion.as_secs_f64() * 1e3;
            let row = BenchRow {
                n,
                k: report.result.len(),
                mst_ms,
                expand_ms,
                total_ms: mst_ms + expand_ms,
            };
            if best.as_ref().is_none_or(|b| row.total_ms < b.total_ms) {
                best = Some(row);
            }
        }
        rows.push(best.expect("at least one repetition ran"));
    }
    Ok(rows)
}

pub fn render_tsv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n\tk\tmst_ms\texpand_ms\ttotal_ms\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{:.3}\t{:.3}\t{:.3}\n",
            r.n, r.k, r.mst_ms, r.expand_ms, r.total_ms
        ));
    }
    out
}

/// Least-squares slope of ln(y) against ln(x). Requires at least two
/// samples with positive coordinates.
pub fn log_log_slope(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter(
            "slope needs at least two samples".into(),
        ));
    }
    if samples.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::InvalidParameter(
            "log-log slope needs positive samples".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(Error::InvalidParameter(
            "slope is undefined for identical sizes".into(),
        ));
    }
    Ok((n * sxy - sx * sy) / denom)
}
