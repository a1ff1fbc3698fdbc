//! Campaign execution: single runs, Monte Carlo, and sweeps.

use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{mmse_beamformer, zf_beamformer};
use crate::error::{Error, Result};
use crate::harness::{Aggregate, ExperimentConfig, Method, MetricsRecord};
use crate::problem::{beampattern_gain, embed_beamformer, sum_rate_entries, ProblemSpec};
use crate::rng::{derive_seed, SplitMix64};
use crate::scenario::{sample_channels, Scenario};
use crate::solver::{imbo, SolveReport, FEASIBILITY_SLACK};
use crate::units::{linear_to_db, watts_to_dbm};
use crate::CMatrix;

/// Abort threshold: fraction of failed trials tolerated before the run stops.
const MAX_FAILURE_FRACTION: f64 = 0.10;

/// A failed trial; the campaign continues past it.
#[derive(Clone, Debug)]
pub struct TrialFailure {
    pub sweep_index: usize,
    pub trial: usize,
    pub message: String,
}

/// Everything produced by one trial (all requested methods on one scenario).
#[derive(Clone, Debug)]
pub struct SingleRunOutput {
    pub records: Vec<MetricsRecord>,
    /// Present when the IMBO method ran.
    pub imbo_report: Option<SolveReport>,
    /// Physical beamformers per method, for beampattern export.
    pub beamformers: Vec<(Method, CMatrix)>,
    pub scenario: Scenario,
}

/// Aggregated campaign result (Monte Carlo or sweep).
#[derive(Clone, Debug)]
pub struct CampaignOutput {
    pub records: Vec<MetricsRecord>,
    pub aggregates: Vec<Aggregate>,
    pub failures: Vec<TrialFailure>,
}

struct SweepPoint {
    index: usize,
    param: &'static str,
    value: f64,
    m: usize,
    p_max_dbm: f64,
}

fn sweep_points(cfg: &ExperimentConfig) -> Vec<SweepPoint> {
    match &cfg.sweep {
        None => vec![SweepPoint {
            index: 0,
            param: "none",
            value: 0.0,
            m: cfg.m,
            p_max_dbm: cfg.p_max_dbm,
        }],
        Some(axis) => (0..axis.len())
            .map(|i| {
                let value = axis.value(i);
                SweepPoint {
                    index: i,
                    param: axis.param_name(),
                    value,
                    m: match axis {
                        crate::harness::SweepAxis::Antennas(v) => v[i],
                        _ => cfg.m,
                    },
                    p_max_dbm: match axis {
                        crate::harness::SweepAxis::PowerDbm(v) => v[i],
                        _ => cfg.p_max_dbm,
                    },
                }
            })
            .collect(),
    }
}

/// Run every requested method on the scenario of `(trial, sweep point)`.
fn run_trial(cfg: &ExperimentConfig, point: &SweepPoint, trial: usize) -> Result<SingleRunOutput> {
    let seed = derive_seed(cfg.master_seed, trial as u64, point.index as u64);
    let mut rng = SplitMix64::new(seed);
    let link = cfg.link_params(point.p_max_dbm);
    let scenario = sample_channels(&cfg.geometry, &link, point.m, cfg.k, &mut rng)?;
    let spec = ProblemSpec::from_scenario(&scenario)?;

    let mut records = Vec::with_capacity(cfg.methods.len());
    let mut beamformers = Vec::with_capacity(cfg.methods.len());
    let mut imbo_report = None;

    for method in &cfg.methods {
        let started = Instant::now();
        let (w, fp_iters, almo_iters, rcg_iters) = match method {
            Method::Imbo => {
                let (w, report) = imbo(&spec, &cfg.solver, &mut rng)?;
                let counts = (
                    report.fp_iterations(),
                    report.almo_iterations(),
                    report.rcg_iterations(),
                );
                imbo_report = Some(report);
                (w, counts.0, counts.1, counts.2)
            }
            Method::Zf => (zf_beamformer(&scenario.h, link.p_max)?.w, 0, 0, 0),
            Method::Mmse => (
                mmse_beamformer(&scenario.h, link.sigma2, link.p_max)?.w,
                0,
                0,
                0,
            ),
        };

        let sum_rate = sum_rate_entries(&spec, &embed_beamformer(&w, link.p_max))?;
        let mut min_margin_db = f64::INFINITY;
        let mut feasible = true;
        for (n, angle_deg) in cfg.geometry.sensing_angles_deg.iter().enumerate() {
            let gain = beampattern_gain(&spec, &w, angle_deg.to_radians())?;
            let floor = link.gamma_th[n];
            min_margin_db = min_margin_db.min(linear_to_db(gain.max(1e-30) / floor));
            feasible &= gain >= floor * (1.0 - FEASIBILITY_SLACK);
        }

        records.push(MetricsRecord {
            sweep_index: point.index,
            sweep_param: point.param.to_string(),
            sweep_value: point.value,
            trial,
            method: *method,
            sum_rate_bps_hz: sum_rate,
            min_beampattern_margin_db: min_margin_db,
            sensing_feasible: feasible,
            fp_iterations: fp_iters,
            almo_iterations: almo_iters,
            rcg_iterations: rcg_iters,
            wall_time_s: started.elapsed().as_secs_f64(),
        });
        beamformers.push((*method, w));
    }

    Ok(SingleRunOutput {
        records,
        imbo_report,
        beamformers,
        scenario,
    })
}

/// Run one scenario (trial 0) with every requested method.
pub fn run_single(cfg: &ExperimentConfig) -> Result<SingleRunOutput> {
    cfg.validate()?;
    let points = sweep_points(cfg);
    run_trial(cfg, &points[0], 0)
}

/// Seeded Monte Carlo at the base configuration point.
pub fn monte_carlo(cfg: &ExperimentConfig, threads: usize) -> Result<CampaignOutput> {
    let mut base = cfg.clone();
    base.sweep = None;
    campaign(&base, threads)
}

/// Repeat the Monte Carlo campaign for every sweep value; within a sweep
/// point all methods see identical channel realizations per trial.
pub fn sweep(cfg: &ExperimentConfig, threads: usize) -> Result<CampaignOutput> {
    if cfg.sweep.is_none() {
        return Err(Error::Config(vec![
            "sweep requested but no sweep axis configured".into(),
        ]));
    }
    campaign(cfg, threads)
}

fn campaign(cfg: &ExperimentConfig, threads: usize) -> Result<CampaignOutput> {
    cfg.validate()?;
    let points = sweep_points(cfg);
    let jobs: Vec<(usize, usize)> = points
        .iter()
        .flat_map(|p| (0..cfg.trials).map(move |t| (p.index, t)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(vec![format!("cannot build worker pool: {e}")]))?;
    let outcomes: Vec<(usize, usize, Result<SingleRunOutput>)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(pi, trial)| (pi, trial, run_trial(cfg, &points[pi], trial)))
            .collect()
    });

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (pi, trial, outcome) in outcomes {
        match outcome {
            Ok(out) => records.extend(out.records),
            Err(err) => failures.push(TrialFailure {
                sweep_index: pi,
                trial,
                message: err.to_string(),
            }),
        }
    }
    failures.sort_by_key(|f| (f.sweep_index, f.trial));

    let total_jobs = jobs.len();
    if failures.len() as f64 > MAX_FAILURE_FRACTION * total_jobs as f64 {
        let sample: Vec<String> = failures
            .iter()
            .take(5)
            .map(|f| format!("point {} trial {}: {}", f.sweep_index, f.trial, f.message))
            .collect();
        return Err(Error::Numeric {
            context: format!(
                "{} of {} trials failed (> {:.0}%): {}",
                failures.len(),
                total_jobs,
                MAX_FAILURE_FRACTION * 100.0,
                sample.join("; ")
            ),
            iteration: 0,
        });
    }

    // Deterministic order regardless of worker scheduling.
    records.sort_by(|a, b| {
        (a.sweep_index, a.trial, a.method).cmp(&(b.sweep_index, b.trial, b.method))
    });
    let aggregates = aggregate(cfg, &points, &records, &failures);
    Ok(CampaignOutput {
        records,
        aggregates,
        failures,
    })
}

/// Compensated (Kahan) accumulator; aggregate values must not depend on
/// trial order beyond rounding.
#[derive(Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

fn aggregate(
    cfg: &ExperimentConfig,
    points: &[SweepPoint],
    records: &[MetricsRecord],
    failures: &[TrialFailure],
) -> Vec<Aggregate> {
    let mut out = Vec::new();
    for point in points {
        let failed = failures
            .iter()
            .filter(|f| f.sweep_index == point.index)
            .count();
        for method in &cfg.methods {
            let rows: Vec<&MetricsRecord> = records
                .iter()
                .filter(|r| r.sweep_index == point.index && r.method == *method)
                .collect();
            let count = rows.len();
            let (mut rate_sum, mut margin_sum) = (Kahan::default(), Kahan::default());
            let mut feasible = 0usize;
            for r in &rows {
                rate_sum.add(r.sum_rate_bps_hz);
                margin_sum.add(r.min_beampattern_margin_db);
                feasible += r.sensing_feasible as usize;
            }
            let mean_rate = if count > 0 {
                rate_sum.value() / count as f64
            } else {
                f64::NAN
            };
            let mut dev_sum = Kahan::default();
            for r in &rows {
                dev_sum.add((r.sum_rate_bps_hz - mean_rate).powi(2));
            }
            let stderr = if count > 1 {
                (dev_sum.value() / (count - 1) as f64 / count as f64).sqrt()
            } else {
                0.0
            };
            out.push(Aggregate {
                sweep_index: point.index,
                sweep_param: point.param.to_string(),
                sweep_value: point.value,
                method: *method,
                trials_completed: count,
                trials_failed: failed,
                mean_sum_rate_bps_hz: mean_rate,
                stderr_sum_rate_bps_hz: stderr,
                mean_min_margin_db: if count > 0 {
                    margin_sum.value() / count as f64
                } else {
                    f64::NAN
                },
                sensing_feasibility_rate: if count > 0 {
                    feasible as f64 / count as f64
                } else {
                    0.0
                },
            });
        }
    }
    out
}

/// Beampattern gains in dBm for one beamformer over a theta grid.
pub fn beampattern_profile_dbm(
    spec: &ProblemSpec,
    w: &CMatrix,
    grid_deg: &[f64],
) -> Result<Vec<f64>> {
    grid_deg
        .iter()
        .map(|deg| {
            let gain = beampattern_gain(spec, w, deg.to_radians())?;
            Ok(watts_to_dbm(gain.max(1e-30)))
        })
        .collect()
}
