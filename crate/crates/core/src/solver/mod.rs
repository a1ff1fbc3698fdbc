//! Nested solver stack.
//!
//! Three levels, innermost first:
//!
//! 1. [`rcg_minimize`] — Riemannian conjugate gradient on the unit-trace
//!    sphere with Armijo backtracking and a clamped Hestenes-Stiefel rule;
//! 2. [`almo_solve`] — augmented-Lagrangian outer loop: inexact inner solves
//!    with a tightening accuracy schedule, safeguarded multiplier updates,
//!    and penalty growth driven by constraint-violation progress;
//! 3. [`imbo`] — alternation between the fractional-programming auxiliary
//!    update and an ALMO solve until the surrogate objective plateaus.
//!
//! Feasibility is structural: every iterate is produced by a retraction, so
//! the unit-trace constraint is never restored after the fact.

mod almo;
mod imbo;
mod rcg;

pub use almo::almo_solve;
pub use imbo::{imbo, FEASIBILITY_SLACK};
pub use rcg::{armijo_step, rcg_minimize, ArmijoOutcome};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifold::LiftedPoint;
use crate::problem::{
    aug_lagrangian_weighted, euclidean_grad_weighted, FpState, Multipliers, ProblemSpec,
};
use crate::CMatrix;

/// A smooth cost on the manifold, given by value and Euclidean gradient.
pub trait ManifoldCost {
    fn cost(&self, point: &LiftedPoint) -> f64;
    fn euclidean_gradient(&self, point: &LiftedPoint) -> CMatrix;
}

/// Adapter for plain closures (used by tests and oracle problems).
pub struct FnCost<C, G>
where
    C: Fn(&LiftedPoint) -> f64,
    G: Fn(&LiftedPoint) -> CMatrix,
{
    pub cost: C,
    pub grad: G,
}

impl<C, G> ManifoldCost for FnCost<C, G>
where
    C: Fn(&LiftedPoint) -> f64,
    G: Fn(&LiftedPoint) -> CMatrix,
{
    fn cost(&self, point: &LiftedPoint) -> f64 {
        (self.cost)(point)
    }

    fn euclidean_gradient(&self, point: &LiftedPoint) -> CMatrix {
        (self.grad)(point)
    }
}

/// The augmented Lagrangian of the beamforming problem as a manifold cost.
///
/// The bare objective is normalized by `1 + sum_k gamma_hat_k` so the cost
/// the inner solver sees stays at unit scale however large the SINR
/// auxiliaries grow. The minimizers are unchanged, and the configured
/// tolerances, penalty, and multiplier bounds act at their nominal scale
/// instead of being drowned by an objective of magnitude ~sum of SINRs.
pub struct AugLagrangianCost<'a> {
    spec: &'a ProblemSpec,
    fp: &'a FpState,
    mult: &'a Multipliers,
    objective_weight: f64,
}

impl<'a> AugLagrangianCost<'a> {
    pub fn new(spec: &'a ProblemSpec, fp: &'a FpState, mult: &'a Multipliers) -> Self {
        let scale: f64 = 1.0 + fp.gamma_hat().iter().sum::<f64>();
        Self {
            spec,
            fp,
            mult,
            objective_weight: 1.0 / scale,
        }
    }

    pub fn objective_weight(&self) -> f64 {
        self.objective_weight
    }
}

impl ManifoldCost for AugLagrangianCost<'_> {
    fn cost(&self, point: &LiftedPoint) -> f64 {
        aug_lagrangian_weighted(
            self.spec,
            point.entries(),
            self.fp,
            self.mult,
            self.objective_weight,
        )
    }

    fn euclidean_gradient(&self, point: &LiftedPoint) -> CMatrix {
        euclidean_grad_weighted(
            self.spec,
            point.entries(),
            self.fp,
            self.mult,
            self.objective_weight,
        )
    }
}

/// Inner conjugate-gradient parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RcgConfig {
    /// Riemannian gradient-norm stopping tolerance.
    pub delta1: f64,
    pub max_iters: usize,
    /// Armijo sufficient-decrease constant.
    pub armijo_c1: f64,
    /// Backtracking shrink factor in (0, 1).
    pub armijo_shrink: f64,
    /// First trial step of the first iteration; `None` uses `1/||grad_0||`.
    /// Later iterations start from twice the previously accepted step.
    pub alpha_init: Option<f64>,
    /// Record per-iteration step data in the trace.
    pub collect_step_trace: bool,
}

impl Default for RcgConfig {
    fn default() -> Self {
        Self {
            delta1: 1e-6,
            max_iters: 500,
            armijo_c1: 1e-4,
            armijo_shrink: 0.5,
            alpha_init: None,
            collect_step_trace: false,
        }
    }
}

impl RcgConfig {
    pub fn validation_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if !self.delta1.is_finite() || self.delta1 <= 0.0 {
            errs.push(format!(
                "solver.rcg.delta1 must be > 0, got {}",
                self.delta1
            ));
        }
        if self.max_iters == 0 {
            errs.push("solver.rcg.max_iters must be >= 1".into());
        }
        if self.armijo_c1 <= 0.0 || self.armijo_c1 >= 1.0 || self.armijo_c1.is_nan() {
            errs.push(format!(
                "solver.rcg.armijo_c1 must be in (0, 1), got {}",
                self.armijo_c1
            ));
        }
        if self.armijo_shrink <= 0.0 || self.armijo_shrink >= 1.0 || self.armijo_shrink.is_nan() {
            errs.push(format!(
                "solver.rcg.armijo_shrink must be in (0, 1), got {}",
                self.armijo_shrink
            ));
        }
        if let Some(a) = self.alpha_init {
            if !a.is_finite() || a <= 0.0 {
                errs.push(format!(
                    "solver.rcg.alpha_init must be finite and > 0, got {a}"
                ));
            }
        }
        errs
    }
}

/// Augmented-Lagrangian outer-loop parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AlmoConfig {
    /// Initial inner accuracy.
    pub eps0: f64,
    /// Accuracy floor.
    pub eps_min: f64,
    /// Accuracy reduction factor in (0, 1).
    pub theta_eps: f64,
    /// Penalty growth factor, > 1.
    pub theta_rho: f64,
    /// Initial penalty.
    pub rho0: f64,
    /// Required violation-improvement ratio in (0, 1).
    pub tau: f64,
    /// Constraint-measure level treated as converged: once
    /// `max_n |sigma_n|` is below this, the penalty stops growing.
    pub sigma_tol: f64,
    /// Iterate-distance floor for termination.
    pub d_min: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Initial value for every multiplier (small positive).
    pub lambda0: f64,
    pub max_outer: usize,
}

impl Default for AlmoConfig {
    fn default() -> Self {
        Self {
            eps0: 1e-3,
            eps_min: 1e-6,
            theta_eps: 0.5,
            theta_rho: 4.0,
            rho0: 1.0,
            tau: 0.5,
            sigma_tol: 1e-6,
            d_min: 1e-10,
            lambda_min: 0.0,
            lambda_max: 100.0,
            lambda0: 1e-2,
            max_outer: 100,
        }
    }
}

impl AlmoConfig {
    pub fn validation_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if !self.eps_min.is_finite()
            || self.eps_min <= 0.0
            || self.eps0.is_nan()
            || self.eps_min > self.eps0
        {
            errs.push(format!(
                "solver.almo: need 0 < eps_min <= eps0, got eps_min={} eps0={}",
                self.eps_min, self.eps0
            ));
        }
        if self.theta_eps <= 0.0 || self.theta_eps >= 1.0 || self.theta_eps.is_nan() {
            errs.push(format!(
                "solver.almo.theta_eps must be in (0, 1), got {}",
                self.theta_eps
            ));
        }
        if !self.theta_rho.is_finite() || self.theta_rho <= 1.0 {
            errs.push(format!(
                "solver.almo.theta_rho must be > 1, got {}",
                self.theta_rho
            ));
        }
        if !self.rho0.is_finite() || self.rho0 <= 0.0 {
            errs.push(format!("solver.almo.rho0 must be > 0, got {}", self.rho0));
        }
        if self.tau <= 0.0 || self.tau >= 1.0 || self.tau.is_nan() {
            errs.push(format!(
                "solver.almo.tau must be in (0, 1), got {}",
                self.tau
            ));
        }
        if !self.sigma_tol.is_finite() || self.sigma_tol < 0.0 {
            errs.push(format!(
                "solver.almo.sigma_tol must be finite and >= 0, got {}",
                self.sigma_tol
            ));
        }
        if !self.d_min.is_finite() || self.d_min <= 0.0 {
            errs.push(format!("solver.almo.d_min must be > 0, got {}", self.d_min));
        }
        if self.lambda_min.is_nan()
            || self.lambda_max.is_nan()
            || self.lambda_min > self.lambda_max
            || self.lambda_min < 0.0
        {
            errs.push(format!(
                "solver.almo: need 0 <= lambda_min <= lambda_max, got [{}, {}]",
                self.lambda_min, self.lambda_max
            ));
        }
        if self.lambda0.is_nan() || self.lambda0 < self.lambda_min || self.lambda0 > self.lambda_max
        {
            errs.push(format!(
                "solver.almo.lambda0 = {} outside [{}, {}]",
                self.lambda0, self.lambda_min, self.lambda_max
            ));
        }
        if self.max_outer == 0 {
            errs.push("solver.almo.max_outer must be >= 1".into());
        }
        errs
    }
}

/// Initial point strategy for the outer alternation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InitStrategy {
    #[default]
    Random,
    /// Lift and normalize the MMSE beamformer.
    MmseWarmStart,
}

/// Full solver configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub rcg: RcgConfig,
    pub almo: AlmoConfig,
    /// Stopping tolerance on the surrogate-objective change between
    /// consecutive outer rounds, relative to the objective scale:
    /// stop when `|f_t - f_{t+1}| < delta2 * (1 + |f_{t+1}|)`.
    pub delta2: f64,
    pub max_fp_outer: usize,
    pub init: InitStrategy,
    /// Carry multipliers and penalty across outer rounds instead of
    /// re-initializing them for every ALMO call.
    pub warm_start_multipliers: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rcg: RcgConfig::default(),
            almo: AlmoConfig::default(),
            delta2: 1e-6,
            max_fp_outer: 50,
            init: InitStrategy::Random,
            warm_start_multipliers: true,
        }
    }
}

impl SolverConfig {
    pub fn validation_errors(&self) -> Vec<String> {
        let mut errs = self.rcg.validation_errors();
        errs.extend(self.almo.validation_errors());
        if !self.delta2.is_finite() || self.delta2 <= 0.0 {
            errs.push(format!("solver.delta2 must be > 0, got {}", self.delta2));
        }
        if self.max_fp_outer == 0 {
            errs.push("solver.max_fp_outer must be >= 1".into());
        }
        errs
    }
}

/// Why a solve (at any level) stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    GradientTol,
    DistanceTol,
    MaxIters,
}

/// One accepted line-search step.
#[derive(Clone, Debug, Serialize)]
pub struct RcgStep {
    pub grad_norm: f64,
    pub alpha: f64,
    pub cost_before: f64,
    pub cost_after: f64,
    /// Directional derivative `<grad, eta>` at the step's base point.
    pub dir_deriv: f64,
    pub backtracks: u32,
}

/// Outcome of one conjugate-gradient run.
#[derive(Clone, Debug, Serialize)]
pub struct RcgOutcome {
    pub iterations: usize,
    pub initial_grad_norm: f64,
    pub final_grad_norm: f64,
    pub best_cost: f64,
    pub reason: StopReason,
    /// Max `|Tr(WW^H) - 1|` over all iterates of the run.
    pub max_point_residual: f64,
    /// Max `|Re Tr(W^H xi)| / ||xi||` over all gradients and directions.
    pub max_tangency_residual: f64,
    /// Line searches that exhausted backtracking.
    pub armijo_fallbacks: usize,
    /// Per-iteration data; empty unless step tracing was requested.
    pub steps: Vec<RcgStep>,
}

/// One augmented-Lagrangian outer round.
#[derive(Clone, Debug, Serialize)]
pub struct AlmoRound {
    /// Cost `L_rho(W_t, lambda_t)` before the inner solve.
    pub cost_before: f64,
    /// Cost `L_rho(W_{t+1}, lambda_t)` after the inner solve.
    pub cost_after: f64,
    /// Accuracy `eps_t` of this round.
    pub eps: f64,
    /// Gradient tolerance handed to the inner solver:
    /// `max(eps, delta1) * (1 + grad_anchor)`.
    pub inner_tol: f64,
    /// Euclidean gradient norm at the round's start (tolerance scale).
    pub grad_anchor: f64,
    pub rho: f64,
    pub lambda: Vec<f64>,
    /// `max_n |sigma_n|` used by the penalty-update rule.
    pub sigma_max: f64,
    /// `max_n max(0, g_n)` at the round's iterate.
    pub max_violation: f64,
    pub distance_moved: f64,
    pub sum_rate: f64,
    pub rcg: RcgOutcome,
}

/// One outer fractional-programming round.
#[derive(Clone, Debug, Serialize)]
pub struct FpRound {
    /// Minimization objective (negated surrogate) at the round's end, under
    /// the round's own auxiliary state.
    pub objective: f64,
    pub sum_rate: f64,
    pub max_violation: f64,
    pub almo_rounds: Vec<AlmoRound>,
}

/// Full solve trace for convergence auditing and export.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub fp_rounds: Vec<FpRound>,
    pub converged: bool,
    pub reason: StopReason,
    /// Every sensing floor met within `1e-4 * Gamma_n` at termination.
    pub sensing_feasible: bool,
    pub final_sum_rate: f64,
    pub final_max_violation: f64,
    /// Wall-clock time; not serialized so output files stay reproducible.
    #[serde(skip)]
    pub wall_time_s: f64,
}

impl SolveReport {
    pub fn fp_iterations(&self) -> usize {
        self.fp_rounds.len()
    }

    pub fn almo_iterations(&self) -> usize {
        self.fp_rounds.iter().map(|r| r.almo_rounds.len()).sum()
    }

    pub fn rcg_iterations(&self) -> usize {
        self.fp_rounds
            .iter()
            .flat_map(|r| &r.almo_rounds)
            .map(|a| a.rcg.iterations)
            .sum()
    }

    pub fn max_point_residual(&self) -> f64 {
        self.fp_rounds
            .iter()
            .flat_map(|r| &r.almo_rounds)
            .map(|a| a.rcg.max_point_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_tangency_residual(&self) -> f64 {
        self.fp_rounds
            .iter()
            .flat_map(|r| &r.almo_rounds)
            .map(|a| a.rcg.max_tangency_residual)
            .fold(0.0, f64::max)
    }

    pub fn total_armijo_fallbacks(&self) -> usize {
        self.fp_rounds
            .iter()
            .flat_map(|r| &r.almo_rounds)
            .map(|a| a.rcg.armijo_fallbacks)
            .sum()
    }
}

pub(crate) fn ensure_finite(value: f64, context: &str, iteration: usize) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numeric {
            context: context.to_string(),
            iteration,
        })
    }
}
