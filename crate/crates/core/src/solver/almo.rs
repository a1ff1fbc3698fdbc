//! Augmented-Lagrangian outer loop.

use crate::error::{Error, Result};
use crate::manifold::{distance, LiftedPoint};
use crate::problem::{constraint_values, sum_rate, FpState, Multipliers, ProblemSpec};
use crate::solver::{
    rcg_minimize, AlmoConfig, AlmoRound, AugLagrangianCost, ManifoldCost, RcgConfig, StopReason,
};

/// Solve `min L_rho(W, lambda)` over the manifold for fixed auxiliaries,
/// alternating inexact inner solves with safeguarded multiplier updates.
///
/// Per round `t`: the inner conjugate gradient runs on the (normalized)
/// `L_{rho_t}(., lambda_t)` down to a Riemannian gradient tolerance of
/// `max(eps_t, delta1) * (1 + ||grad_0||)`, with `grad_0` the Euclidean
/// gradient norm at the round's start. Then
/// `lambda_n <- clip(lambda_n + rho_t g_n)`, the accuracy shrinks
/// (`eps <- max(eps_min, theta_eps eps)`), and the penalty grows by
/// `theta_rho` unless the violation measure improved by the factor `tau` or
/// already sits below `sigma_tol`. Terminates once a floor-accuracy
/// subproblem has been solved and the iterate moved less than `d_min`, or
/// after `max_outer` rounds.
pub fn almo_solve(
    spec: &ProblemSpec,
    fp: &FpState,
    start: &LiftedPoint,
    mult0: Multipliers,
    cfg: &AlmoConfig,
    rcg_cfg: &RcgConfig,
) -> Result<(LiftedPoint, Multipliers, Vec<AlmoRound>, StopReason)> {
    let mut point = start.clone();
    let mut mult = mult0;
    let mut eps = cfg.eps0;
    let mut prev_sigma_max: Option<f64> = None;
    let mut rounds = Vec::new();
    let mut reason = StopReason::MaxIters;

    for outer in 0..cfg.max_outer {
        let cost = AugLagrangianCost::new(spec, fp, &mult);
        let cost_before = cost.cost(&point);
        let grad_anchor = cost.euclidean_gradient(&point).norm();
        let inner_tol = eps.max(rcg_cfg.delta1) * (1.0 + grad_anchor);
        let inner_cfg = RcgConfig {
            delta1: inner_tol,
            ..rcg_cfg.clone()
        };
        let (next_point, rcg) =
            rcg_minimize(&cost, &point, &inner_cfg).map_err(|e| outer_context(e, outer))?;

        let constraint = constraint_values(spec, &next_point);
        let next_mult = mult.updated(&constraint);
        let sigma_max = constraint
            .iter()
            .zip(next_mult.lambda())
            .map(|(g, l)| g.max(-l / mult.rho()).abs())
            .fold(0.0f64, f64::max);
        let improved = match prev_sigma_max {
            None => true,
            Some(prev) => sigma_max <= cfg.tau * prev || sigma_max <= cfg.sigma_tol,
        };
        let next_rho = if improved {
            mult.rho()
        } else {
            mult.rho() * cfg.theta_rho
        };
        let round_eps = eps;
        let next_eps = (cfg.theta_eps * eps).max(cfg.eps_min);
        let moved = distance(&point, &next_point)?;
        let max_violation = constraint.iter().fold(0.0f64, |a, g| a.max(*g));

        rounds.push(AlmoRound {
            cost_before,
            cost_after: rcg.best_cost,
            eps,
            inner_tol,
            grad_anchor,
            rho: mult.rho(),
            lambda: mult.lambda().to_vec(),
            sigma_max,
            max_violation,
            distance_moved: moved,
            sum_rate: sum_rate(spec, &next_point)?,
            rcg,
        });

        point = next_point;
        mult = next_mult.with_rho(next_rho);
        eps = next_eps;
        prev_sigma_max = Some(sigma_max);

        // stop only once a floor-accuracy subproblem has been solved and the
        // iterate no longer moves
        if moved < cfg.d_min && round_eps <= cfg.eps_min {
            reason = StopReason::DistanceTol;
            break;
        }
    }

    Ok((point, mult, rounds, reason))
}

fn outer_context(err: Error, outer: usize) -> Error {
    match err {
        Error::Numeric { context, iteration } => Error::Numeric {
            context: format!("{context} (outer round {outer})"),
            iteration,
        },
        other => other,
    }
}
