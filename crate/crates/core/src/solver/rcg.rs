//! Riemannian conjugate gradient on the unit-trace sphere.

use crate::error::{Error, Result};
use crate::manifold::{metric_inner, project, retract, transport, LiftedPoint, TangentVector};
use crate::solver::{ensure_finite, ManifoldCost, RcgConfig, RcgOutcome, RcgStep, StopReason};

/// Result of one Armijo backtracking search.
#[derive(Clone, Debug)]
pub struct ArmijoOutcome {
    pub alpha: f64,
    pub point: LiftedPoint,
    pub cost: f64,
    pub backtracks: u32,
    /// Backtracking budget exhausted; `point` is the smallest trial.
    pub fallback: bool,
}

const MAX_BACKTRACKS: u32 = 50;

/// Armijo backtracking line search along `eta` from `base`.
///
/// Accepts the largest `alpha_start * shrink^j` with
/// `cost(retract(base, eta, alpha)) <= cost_at_base + c1 * alpha * <grad, eta>`.
/// `eta` should be a descent direction (`<grad, eta> < 0`); callers reset
/// `eta = -grad` beforehand when it is not.
pub fn armijo_step<F>(
    cost: F,
    base: &LiftedPoint,
    cost_at_base: f64,
    eta: &TangentVector,
    grad: &TangentVector,
    cfg: &RcgConfig,
    alpha_start: f64,
) -> Result<ArmijoOutcome>
where
    F: Fn(&LiftedPoint) -> f64,
{
    ensure_finite(cost_at_base, "line search: cost at base point", 0)?;
    if !alpha_start.is_finite() || alpha_start <= 0.0 {
        return Err(Error::Domain(format!(
            "line search needs a positive finite initial step, got {alpha_start}"
        )));
    }
    let dir_deriv = metric_inner(grad, eta)?;

    let mut alpha = alpha_start;
    let mut last: Option<(f64, LiftedPoint, f64)> = None;
    for backtracks in 0..=MAX_BACKTRACKS {
        let candidate = retract(base, eta, alpha)?;
        let value = cost(&candidate);
        if value.is_finite() && value <= cost_at_base + cfg.armijo_c1 * alpha * dir_deriv {
            return Ok(ArmijoOutcome {
                alpha,
                point: candidate,
                cost: value,
                backtracks,
                fallback: false,
            });
        }
        last = Some((alpha, candidate, value));
        alpha *= cfg.armijo_shrink;
    }
    let (alpha, point, value) = last.expect("at least one trial was evaluated");
    let cost = ensure_finite(value, "line search: cost at fallback step", 0)?;
    Ok(ArmijoOutcome {
        alpha,
        point,
        cost,
        backtracks: MAX_BACKTRACKS,
        fallback: true,
    })
}

/// Minimize a smooth cost over the manifold by conjugate gradient.
///
/// Directions follow the Hestenes-Stiefel rule with a nonnegativity clamp,
/// conjugacy carried by vector transport; a degenerate denominator or a
/// non-descent direction restarts from steepest descent. The returned point
/// is the iterate with the smallest observed cost.
pub fn rcg_minimize<P: ManifoldCost>(
    problem: &P,
    start: &LiftedPoint,
    cfg: &RcgConfig,
) -> Result<(LiftedPoint, RcgOutcome)> {
    let mut point = start.clone();
    let mut cost = ensure_finite(problem.cost(&point), "rcg: cost at start", 0)?;

    let mut grad = riemannian_grad(problem, &point, 0)?;
    let mut grad_norm = grad.norm();
    let initial_grad_norm = grad_norm;

    let mut best_point = point.clone();
    let mut best_cost = cost;

    let mut max_point_residual = point.feasibility_residual();
    let mut max_tangency_residual: f64 = 0.0;
    let observe_tangency = |xi: &TangentVector, max_acc: &mut f64| {
        let norm = xi.norm();
        if norm > 0.0 {
            *max_acc = max_acc.max(xi.tangency_residual() / norm);
        }
    };
    observe_tangency(&grad, &mut max_tangency_residual);

    let mut eta = grad.scale(-1.0);
    let mut alpha_prev: Option<f64> = None;
    let mut steps = Vec::new();
    let mut armijo_fallbacks = 0usize;
    let mut iterations = 0usize;
    let mut reason = StopReason::MaxIters;

    for iter in 0..cfg.max_iters {
        if grad_norm <= cfg.delta1 {
            reason = StopReason::GradientTol;
            break;
        }
        iterations = iter + 1;

        // Restart from steepest descent when the conjugate direction is not
        // a safe descent direction or has collapsed by cancellation.
        let eta_norm = eta.norm();
        let mut dir_deriv = metric_inner(&grad, &eta)?;
        let safe_descent = dir_deriv < -1e-12 * grad_norm * eta_norm;
        if !safe_descent || eta_norm <= 1e-6 * grad_norm {
            eta = grad.scale(-1.0);
            dir_deriv = -grad_norm * grad_norm;
            alpha_prev = None;
        }
        observe_tangency(&eta, &mut max_tangency_residual);

        let alpha_start = match alpha_prev {
            Some(a) => 2.0 * a,
            None => cfg.alpha_init.unwrap_or(1.0 / grad_norm),
        };
        let accepted = armijo_step(
            |p| problem.cost(p),
            &point,
            cost,
            &eta,
            &grad,
            cfg,
            alpha_start,
        )
        .map_err(|e| at_iteration(e, iter))?;
        if accepted.fallback {
            armijo_fallbacks += 1;
        }

        let next_point = accepted.point;
        let next_cost = ensure_finite(accepted.cost, "rcg: cost after step", iter)?;
        max_point_residual = max_point_residual.max(next_point.feasibility_residual());

        let next_grad = riemannian_grad(problem, &next_point, iter)?;
        let next_grad_norm = next_grad.norm();
        observe_tangency(&next_grad, &mut max_tangency_residual);

        if cfg.collect_step_trace {
            steps.push(RcgStep {
                grad_norm,
                alpha: accepted.alpha,
                cost_before: cost,
                cost_after: next_cost,
                dir_deriv,
                backtracks: accepted.backtracks,
            });
        }

        // Hestenes-Stiefel with nonnegativity clamp; transported quantities.
        let grad_moved = transport(&next_point, &grad)?;
        let eta_moved = transport(&next_point, &eta)?;
        let y = next_grad.axpy(-1.0, &grad_moved)?;
        let denom = metric_inner(&eta_moved, &y)?;
        let beta = if denom.abs() < 1e-14 * next_grad_norm * next_grad_norm {
            0.0
        } else {
            (metric_inner(&next_grad, &y)? / denom).max(0.0)
        };
        let combined = next_grad.scale(-1.0).axpy(beta, &eta_moved)?;
        // re-project: the combination inherits the absolute rounding residue
        // of both terms, which can dominate after heavy cancellation
        eta = transport(&next_point, &combined)?;

        alpha_prev = if accepted.fallback {
            None
        } else {
            Some(accepted.alpha)
        };
        point = next_point;
        cost = next_cost;
        grad = next_grad;
        grad_norm = next_grad_norm;

        if cost < best_cost {
            best_cost = cost;
            best_point = point.clone();
        }
    }
    if grad_norm <= cfg.delta1 {
        reason = StopReason::GradientTol;
    }

    Ok((
        best_point,
        RcgOutcome {
            iterations,
            initial_grad_norm,
            final_grad_norm: grad_norm,
            best_cost,
            reason,
            max_point_residual,
            max_tangency_residual,
            armijo_fallbacks,
            steps,
        },
    ))
}

fn riemannian_grad<P: ManifoldCost>(
    problem: &P,
    point: &LiftedPoint,
    iteration: usize,
) -> Result<TangentVector> {
    let ambient = problem.euclidean_gradient(point);
    if ambient
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::Numeric {
            context: "rcg: non-finite gradient".into(),
            iteration,
        });
    }
    project(point, &ambient)
}

fn at_iteration(err: Error, iteration: usize) -> Error {
    match err {
        Error::Numeric { context, .. } => Error::Numeric { context, iteration },
        other => other,
    }
}
