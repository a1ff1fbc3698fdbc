//! Experiment harness: configuration, seeded Monte Carlo runner, and
//! plot-ready data export.
//!
//! Determinism contract: a `(config, master_seed)` pair produces byte
//! identical output files, independent of the worker-pool size. Trial seeds
//! are derived from `(master_seed, trial_index, sweep_index)`, results are
//! sorted before aggregation, and wall-clock timings never enter the files.

mod export;
mod run;

pub use export::{
    config_hash, write_aggregates_csv, write_beampattern_csv, write_records_csv, write_report_json,
};
pub use run::{
    beampattern_profile_dbm, monte_carlo, run_single, sweep, CampaignOutput, SingleRunOutput,
    TrialFailure,
};

use serde::{Deserialize, Serialize};

use crate::scenario::{GeometryConfig, LinkParams};
use crate::solver::SolverConfig;
use crate::units::dbm_to_watts;

/// Which beamformers to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "IMBO", alias = "imbo")]
    Imbo,
    #[serde(rename = "ZF", alias = "zf")]
    Zf,
    #[serde(rename = "MMSE", alias = "mmse")]
    Mmse,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Imbo => write!(f, "IMBO"),
            Method::Zf => write!(f, "ZF"),
            Method::Mmse => write!(f, "MMSE"),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "imbo" => Ok(Method::Imbo),
            "zf" => Ok(Method::Zf),
            "mmse" => Ok(Method::Mmse),
            other => Err(format!(
                "unknown method '{other}' (expected IMBO, ZF, or MMSE)"
            )),
        }
    }
}

/// Sweep axis: repeats the campaign per listed value.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Transmit power values, dBm.
    PowerDbm(Vec<f64>),
    /// Antenna counts.
    Antennas(Vec<usize>),
}

impl SweepAxis {
    pub fn len(&self) -> usize {
        match self {
            SweepAxis::PowerDbm(v) => v.len(),
            SweepAxis::Antennas(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn param_name(&self) -> &'static str {
        match self {
            SweepAxis::PowerDbm(_) => "power_dbm",
            SweepAxis::Antennas(_) => "antennas",
        }
    }

    pub fn value(&self, index: usize) -> f64 {
        match self {
            SweepAxis::PowerDbm(v) => v[index],
            SweepAxis::Antennas(v) => v[index] as f64,
        }
    }
}

/// Beampattern export grid, inclusive linspace in degrees.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaGrid {
    pub start_deg: f64,
    pub stop_deg: f64,
    pub points: usize,
}

impl Default for ThetaGrid {
    fn default() -> Self {
        Self {
            start_deg: -90.0,
            stop_deg: 90.0,
            points: 361,
        }
    }
}

impl ThetaGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start_deg];
        }
        let step = (self.stop_deg - self.start_deg) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.start_deg + step * i as f64)
            .collect()
    }
}

/// Full experiment description; mirrors the JSON configuration file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub geometry: GeometryConfig,
    /// Base-station antennas.
    pub m: usize,
    /// Users.
    pub k: usize,
    /// Sensing targets.
    pub n: usize,
    pub sigma2_dbm: f64,
    pub p_max_dbm: f64,
    /// Sensing gain floor applied to every target, dBm.
    pub gamma_th_dbm: f64,
    pub solver: SolverConfig,
    pub trials: usize,
    pub master_seed: u64,
    pub sweep: Option<SweepAxis>,
    pub methods: Vec<Method>,
    pub theta_grid_deg: ThetaGrid,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            geometry: GeometryConfig::default(),
            m: 16,
            k: 2,
            n: 4,
            sigma2_dbm: -80.0,
            p_max_dbm: 30.0,
            gamma_th_dbm: 20.0,
            solver: SolverConfig::default(),
            trials: 100,
            master_seed: 7_240_811,
            sweep: None,
            methods: vec![Method::Imbo, Method::Zf, Method::Mmse],
            theta_grid_deg: ThetaGrid::default(),
        }
    }
}

impl ExperimentConfig {
    /// Parse from JSON, rejecting unknown keys, then validate.
    pub fn from_json(text: &str) -> crate::Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| crate::Error::Config(vec![e.to_string()]))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> crate::Result<()> {
        let errs = self.validation_errors();
        if errs.is_empty() {
            Ok(())
        } else {
            Err(crate::Error::Config(errs))
        }
    }

    /// Field-by-field validation; returns every offending field.
    pub fn validation_errors(&self) -> Vec<String> {
        let mut errs = self.geometry.validation_errors();
        errs.extend(self.solver.validation_errors());
        if self.m == 0 {
            errs.push("m must be >= 1".into());
        }
        if self.k == 0 {
            errs.push("k must be >= 1".into());
        }
        if self.n != self.geometry.sensing_angles_deg.len() {
            errs.push(format!(
                "n = {} does not match geometry.sensing_angles_deg (len {})",
                self.n,
                self.geometry.sensing_angles_deg.len()
            ));
        }
        if self.geometry.user_placement == crate::scenario::UserPlacement::FixedAngles
            && self.k > self.geometry.user_angles_deg.len()
        {
            errs.push(format!(
                "k = {} exceeds configured user angles (len {})",
                self.k,
                self.geometry.user_angles_deg.len()
            ));
        }
        for (name, value) in [
            ("sigma2_dbm", self.sigma2_dbm),
            ("p_max_dbm", self.p_max_dbm),
            ("gamma_th_dbm", self.gamma_th_dbm),
        ] {
            if !value.is_finite() {
                errs.push(format!("{name} must be finite, got {value}"));
            }
        }
        if self.trials == 0 {
            errs.push("trials must be >= 1".into());
        }
        if self.methods.is_empty() {
            errs.push("methods must not be empty".into());
        }
        let mut seen = Vec::new();
        for m in &self.methods {
            if seen.contains(m) {
                errs.push(format!("duplicate method '{m}'"));
            }
            seen.push(*m);
        }
        let needs_gram_inverse =
            self.methods.contains(&Method::Zf) || self.methods.contains(&Method::Mmse);
        if needs_gram_inverse && self.k > self.m {
            errs.push(format!(
                "ZF/MMSE baselines need k <= m, got k = {}, m = {}",
                self.k, self.m
            ));
        }
        match &self.sweep {
            Some(axis) if axis.is_empty() => {
                errs.push("sweep list must not be empty when present".into())
            }
            Some(SweepAxis::PowerDbm(values)) => {
                for v in values {
                    if !v.is_finite() {
                        errs.push(format!("sweep.power_dbm contains non-finite value {v}"));
                    }
                }
            }
            Some(SweepAxis::Antennas(values)) => {
                for v in values {
                    if *v < self.k {
                        errs.push(format!("sweep.antennas value {v} is below k = {}", self.k));
                    }
                }
            }
            None => {}
        }
        if self.theta_grid_deg.points == 0 {
            errs.push("theta_grid_deg.points must be >= 1".into());
        }
        if self.theta_grid_deg.start_deg.is_nan()
            || self.theta_grid_deg.stop_deg.is_nan()
            || self.theta_grid_deg.start_deg > self.theta_grid_deg.stop_deg
        {
            errs.push("theta_grid_deg: start_deg must be <= stop_deg".into());
        }
        if self.theta_grid_deg.start_deg < -90.0 || self.theta_grid_deg.stop_deg > 90.0 {
            errs.push("theta_grid_deg must lie within [-90, 90]".into());
        }
        errs
    }

    /// Link-level scalars in linear watts for a given transmit power.
    pub fn link_params(&self, p_max_dbm: f64) -> LinkParams {
        LinkParams {
            sigma2: dbm_to_watts(self.sigma2_dbm),
            p_max: dbm_to_watts(p_max_dbm),
            gamma_th: vec![dbm_to_watts(self.gamma_th_dbm); self.n],
        }
    }
}

/// One row of the per-trial metrics table.
#[derive(Clone, Debug, Serialize)]
pub struct MetricsRecord {
    pub sweep_index: usize,
    /// `"power_dbm"`, `"antennas"`, or `"none"`.
    pub sweep_param: String,
    pub sweep_value: f64,
    pub trial: usize,
    pub method: Method,
    pub sum_rate_bps_hz: f64,
    /// `min_n (gain(theta_n) - Gamma_th)` in dB.
    pub min_beampattern_margin_db: f64,
    pub sensing_feasible: bool,
    pub fp_iterations: usize,
    pub almo_iterations: usize,
    pub rcg_iterations: usize,
    /// Measured wall time; kept out of the serialized outputs.
    #[serde(skip)]
    pub wall_time_s: f64,
}

/// Aggregated statistics per `(sweep point, method)`.
#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub sweep_index: usize,
    pub sweep_param: String,
    pub sweep_value: f64,
    pub method: Method,
    pub trials_completed: usize,
    pub trials_failed: usize,
    pub mean_sum_rate_bps_hz: f64,
    pub stderr_sum_rate_bps_hz: f64,
    pub mean_min_margin_db: f64,
    pub sensing_feasibility_rate: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let json = r#"{ "m": 8, "k": 2, "unknown_field": 3 }"#;
        assert!(ExperimentConfig::from_json(json).is_err());
    }

    #[test]
    fn validation_lists_every_offending_field() {
        let cfg = ExperimentConfig {
            trials: 0,
            methods: Vec::new(),
            n: 7,
            ..ExperimentConfig::default()
        };
        let errs = cfg.validation_errors();
        assert!(errs.iter().any(|e| e.contains("trials")));
        assert!(errs.iter().any(|e| e.contains("methods")));
        assert!(errs.iter().any(|e| e.contains("sensing_angles_deg")));
    }

    #[test]
    fn sweep_round_trips_through_json() {
        let cfg = ExperimentConfig {
            sweep: Some(SweepAxis::PowerDbm(vec![26.0, 28.0, 30.0])),
            ..ExperimentConfig::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"power_dbm\""));
        let back = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(back.sweep.as_ref().unwrap().len(), 3);
    }

    #[test]
    fn method_names_accept_both_cases() {
        let cfg = ExperimentConfig::from_json(r#"{ "methods": ["imbo", "ZF", "MMSE"] }"#).unwrap();
        assert_eq!(cfg.methods, vec![Method::Imbo, Method::Zf, Method::Mmse]);
        assert_eq!(Method::Imbo.to_string(), "IMBO");
    }

    #[test]
    fn theta_grid_linspace_is_inclusive() {
        let grid = ThetaGrid::default();
        let v = grid.values();
        assert_eq!(v.len(), 361);
        assert_eq!(v[0], -90.0);
        assert_eq!(*v.last().unwrap(), 90.0);
        assert!((v[1] - v[0] - 0.5).abs() < 1e-12);
    }
}
