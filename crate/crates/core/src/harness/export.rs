//! CSV/JSON writers with provenance headers.
//!
//! Every file starts with a `#`-prefixed provenance line carrying the config
//! hash and master seed. CSV fields use RFC-4180 quoting, '.' decimals, and
//! UTF-8; floats print in shortest round-trip form.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::harness::{Aggregate, ExperimentConfig, Method, MetricsRecord};
use crate::solver::SolveReport;

/// Stable FNV-1a hash of the canonical JSON serialization of the config.
pub fn config_hash(cfg: &ExperimentConfig) -> u64 {
    let text = serde_json::to_string(cfg).expect("config serializes");
    let mut hash: u64 = 0xCBF2_9CE4_8422_2325;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

fn provenance_line(cfg: &ExperimentConfig) -> String {
    format!(
        "# config_hash={:016x} master_seed={}\n",
        config_hash(cfg),
        cfg.master_seed
    )
}

/// RFC-4180: quote fields containing commas, quotes, or line breaks.
fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, content)?;
    Ok(())
}

/// Per-trial metrics table.
pub fn write_records_csv(
    path: &Path,
    cfg: &ExperimentConfig,
    records: &[MetricsRecord],
) -> Result<()> {
    let mut out = provenance_line(cfg);
    out.push_str(
        "sweep_index,sweep_param,sweep_value,trial,method,sum_rate_bps_hz,\
         min_beampattern_margin_db,sensing_feasible,fp_iterations,almo_iterations,\
         rcg_iterations\n",
    );
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.sweep_index,
            csv_field(&r.sweep_param),
            r.sweep_value,
            r.trial,
            r.method,
            r.sum_rate_bps_hz,
            r.min_beampattern_margin_db,
            r.sensing_feasible,
            r.fp_iterations,
            r.almo_iterations,
            r.rcg_iterations
        );
    }
    write_atomic(path, &out)
}

/// Aggregated statistics table.
pub fn write_aggregates_csv(
    path: &Path,
    cfg: &ExperimentConfig,
    aggregates: &[Aggregate],
) -> Result<()> {
    let mut out = provenance_line(cfg);
    out.push_str(
        "sweep_index,sweep_param,sweep_value,method,trials_completed,trials_failed,\
         mean_sum_rate_bps_hz,stderr_sum_rate_bps_hz,mean_min_margin_db,\
         sensing_feasibility_rate\n",
    );
    for a in aggregates {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            a.sweep_index,
            csv_field(&a.sweep_param),
            a.sweep_value,
            a.method,
            a.trials_completed,
            a.trials_failed,
            a.mean_sum_rate_bps_hz,
            a.stderr_sum_rate_bps_hz,
            a.mean_min_margin_db,
            a.sensing_feasibility_rate
        );
    }
    write_atomic(path, &out)
}

/// Solve report plus a config echo, as JSON.
pub fn write_report_json(
    path: &Path,
    cfg: &ExperimentConfig,
    report: Option<&SolveReport>,
) -> Result<()> {
    let doc = serde_json::json!({
        "config_hash": format!("{:016x}", config_hash(cfg)),
        "master_seed": cfg.master_seed,
        "config": cfg,
        "imbo_report": report,
    });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    write_atomic(path, &text)
}

/// Directional gain profiles, one column per method plus the threshold.
///
/// `profiles` holds `(method, gains_dbm)` with one gain per grid angle.
pub fn write_beampattern_csv(
    path: &Path,
    cfg: &ExperimentConfig,
    grid_deg: &[f64],
    profiles: &[(Method, Vec<f64>)],
) -> Result<()> {
    let mut out = provenance_line(cfg);
    out.push_str("theta_deg");
    for (method, _) in profiles {
        let _ = write!(out, ",{}_gain_dbm", method.to_string().to_lowercase());
    }
    out.push_str(",gamma_th_dbm\n");
    for (i, theta) in grid_deg.iter().enumerate() {
        let _ = write!(out, "{theta}");
        for (_, gains) in profiles {
            let _ = write!(out, ",{}", gains[i]);
        }
        let _ = writeln!(out, ",{}", cfg.gamma_th_dbm);
    }
    write_atomic(path, &out)
}
