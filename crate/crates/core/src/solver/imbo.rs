//! Outer alternation: fractional-programming update + ALMO solve.

use std::time::Instant;

use crate::baselines::mmse_beamformer;
use crate::error::Result;
use crate::manifold::{random_point, LiftedPoint};
use crate::problem::{constraint_values, fp_objective, sum_rate, unlift, Multipliers, ProblemSpec};
use crate::rng::SplitMix64;
use crate::solver::{almo_solve, FpRound, InitStrategy, SolveReport, SolverConfig, StopReason};
use crate::{CMatrix, Cx};

/// Relative slack on each gain floor below which the solve is declared
/// sensing-feasible (`g_n <= FEASIBILITY_SLACK * Gamma_n`).
pub const FEASIBILITY_SLACK: f64 = 1e-4;

/// Full solve: alternate the auxiliary update `mu_k = sinr_k` with an ALMO
/// solve of the surrogate problem until the surrogate objective changes by
/// less than `delta2 * (1 + |objective|)` between rounds, then unlift the
/// beamformer.
///
/// Deterministic given `(spec, cfg, rng state)`.
pub fn imbo(
    spec: &ProblemSpec,
    cfg: &SolverConfig,
    rng: &mut SplitMix64,
) -> Result<(CMatrix, SolveReport)> {
    let started = Instant::now();
    let mut point = initial_point(spec, cfg, rng)?;
    let mut mult = Multipliers::new(
        vec![cfg.almo.lambda0; spec.n()],
        cfg.almo.rho0,
        cfg.almo.lambda_min,
        cfg.almo.lambda_max,
    )?;

    let mut fp_rounds: Vec<FpRound> = Vec::new();
    let mut prev_objective: Option<f64> = None;
    let mut converged = false;

    for _ in 0..cfg.max_fp_outer {
        let fp = crate::problem::update_mu(spec, &point)?;
        let (next_point, next_mult, almo_rounds, _) =
            almo_solve(spec, &fp, &point, mult.clone(), &cfg.almo, &cfg.rcg)?;

        let objective = -fp_objective(spec, &next_point, &fp)?;
        let violation = constraint_values(spec, &next_point)
            .iter()
            .fold(0.0f64, |a, g| a.max(*g));
        fp_rounds.push(FpRound {
            objective,
            sum_rate: sum_rate(spec, &next_point)?,
            max_violation: violation,
            almo_rounds,
        });

        point = next_point;
        if cfg.warm_start_multipliers {
            mult = next_mult;
        }

        if let Some(prev) = prev_objective {
            if (prev - objective).abs() < cfg.delta2 * (1.0 + objective.abs()) {
                converged = true;
                break;
            }
        }
        prev_objective = Some(objective);
    }

    let final_violations = constraint_values(spec, &point);
    let sensing_feasible = final_violations
        .iter()
        .zip(spec.gamma_th())
        .all(|(g, gamma)| *g <= FEASIBILITY_SLACK * gamma);
    let report = SolveReport {
        final_sum_rate: sum_rate(spec, &point)?,
        final_max_violation: final_violations.iter().fold(0.0f64, |a, g| a.max(*g)),
        sensing_feasible,
        converged,
        reason: if converged {
            StopReason::DistanceTol
        } else {
            StopReason::MaxIters
        },
        fp_rounds,
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    Ok((unlift(&point, spec.p_max(), spec.m()), report))
}

fn initial_point(
    spec: &ProblemSpec,
    cfg: &SolverConfig,
    rng: &mut SplitMix64,
) -> Result<LiftedPoint> {
    match cfg.init {
        InitStrategy::Random => Ok(random_point(spec.m() + 1, spec.k(), rng)),
        InitStrategy::MmseWarmStart => {
            // recover the physical channel from the lifted one
            let m = spec.m();
            let k = spec.k();
            let scale = Cx::new(1.0 / spec.p_max().sqrt(), 0.0);
            let h = spec.lifted().h_hat.view((0, 0), (m, k)).into_owned() * scale;
            let mmse = mmse_beamformer(&h, spec.sigma2(), spec.p_max())?;
            let mut lifted = CMatrix::zeros(m + 1, k);
            for c in 0..k {
                for r in 0..m {
                    lifted[(r, c)] = mmse.w[(r, c)];
                }
            }
            LiftedPoint::from_unnormalized(lifted)
        }
    }
}
