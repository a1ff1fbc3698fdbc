//! Objective stack: SINR, sum rate, beampattern gain, sensing constraints,
//! the fractional-programming surrogate, the augmented Lagrangian cost, and
//! its Euclidean (Wirtinger) gradient.
//!
//! Gradient convention: `grad = 2 dL/dW*`, so that
//! `dL = Re Tr(grad^H dW) + o(||dW||)`. Correctness is pinned by a central
//! finite-difference oracle in the tests, not by symbol manipulation.
//!
//! The cost and gradient evaluators are defined for arbitrary complex
//! matrices (`*_entries` variants); the manifold constraint is enforced by
//! the solver, not here.

use crate::error::{Error, Result};
use crate::manifold::LiftedPoint;
use crate::scenario::{lift, LiftedScenario, Scenario};
use crate::{CMatrix, Cx};

/// Immutable problem data shared by all evaluators.
///
/// Holds the lifted scenario plus the precomputed adjoints `H_hat^H` and
/// `A_hat^H` so each evaluation is two small matrix products.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    lifted: LiftedScenario,
    /// `K x (M+1)`, row `k` is `h_hat_k^H`.
    h_hat_adj: CMatrix,
    /// `N x (M+1)`, row `n` is `a_hat_n^H`.
    a_hat_adj: CMatrix,
    m: usize,
    k: usize,
    n: usize,
}

impl ProblemSpec {
    pub fn new(lifted: LiftedScenario) -> Result<Self> {
        let rows = lifted.h_hat.nrows();
        if rows < 2 || lifted.a_hat.nrows() != rows {
            return Err(Error::Dimension {
                context: "problem spec",
                expected: (rows, lifted.h_hat.ncols()),
                got: lifted.a_hat.shape(),
            });
        }
        if lifted.gamma_th.len() != lifted.a_hat.ncols() {
            return Err(Error::Config(vec![format!(
                "gamma_th has {} entries for {} targets",
                lifted.gamma_th.len(),
                lifted.a_hat.ncols()
            )]));
        }
        if !lifted.sigma2.is_finite() || lifted.sigma2 <= 0.0 {
            return Err(Error::Config(vec![format!(
                "sigma2 must be > 0, got {}",
                lifted.sigma2
            )]));
        }
        let h_hat_adj = lifted.h_hat.adjoint();
        let a_hat_adj = lifted.a_hat.adjoint();
        Ok(Self {
            m: rows - 1,
            k: lifted.h_hat.ncols(),
            n: lifted.a_hat.ncols(),
            h_hat_adj,
            a_hat_adj,
            lifted,
        })
    }

    pub fn from_scenario(s: &Scenario) -> Result<Self> {
        Self::new(lift(s))
    }

    pub fn lifted(&self) -> &LiftedScenario {
        &self.lifted
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma2(&self) -> f64 {
        self.lifted.sigma2
    }

    pub fn p_max(&self) -> f64 {
        self.lifted.power_scale
    }

    pub fn gamma_th(&self) -> &[f64] {
        &self.lifted.gamma_th
    }

    fn check_point(&self, w: &CMatrix, context: &'static str) -> Result<()> {
        if w.shape() != (self.m + 1, self.k) {
            return Err(Error::Dimension {
                context,
                expected: (self.m + 1, self.k),
                got: w.shape(),
            });
        }
        Ok(())
    }

    /// `K x K` coupling matrix `C = H_hat^H W`; entry `(k, i)` is
    /// `h_hat_k^H w_i`.
    fn coupling(&self, w: &CMatrix) -> CMatrix {
        &self.h_hat_adj * w
    }

    /// `N x K` sensing response `A_hat^H W`.
    fn sensing_response(&self, w: &CMatrix) -> CMatrix {
        &self.a_hat_adj * w
    }
}

/// Fractional-programming auxiliary state: `gamma_hat = 1 + mu` elementwise.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FpState {
    mu: Vec<f64>,
    gamma_hat: Vec<f64>,
}

impl FpState {
    pub fn from_mu(mu: Vec<f64>) -> Result<Self> {
        if mu.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain(format!(
                "mu must be finite and >= 0, got {mu:?}"
            )));
        }
        let gamma_hat = mu.iter().map(|v| 1.0 + v).collect();
        Ok(Self { mu, gamma_hat })
    }

    /// State with all auxiliaries at zero (`gamma_hat = 1`).
    pub fn neutral(k: usize) -> Self {
        Self {
            mu: vec![0.0; k],
            gamma_hat: vec![1.0; k],
        }
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn gamma_hat(&self) -> &[f64] {
        &self.gamma_hat
    }
}

/// Augmented-Lagrangian multiplier state.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Multipliers {
    lambda: Vec<f64>,
    rho: f64,
    lambda_min: f64,
    lambda_max: f64,
}

impl Multipliers {
    pub fn new(lambda: Vec<f64>, rho: f64, lambda_min: f64, lambda_max: f64) -> Result<Self> {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::Domain(format!("penalty rho must be > 0, got {rho}")));
        }
        if lambda_min.is_nan() || lambda_max.is_nan() || lambda_min > lambda_max || lambda_min < 0.0
        {
            return Err(Error::Domain(format!(
                "multiplier bounds must satisfy 0 <= min <= max, got [{lambda_min}, {lambda_max}]"
            )));
        }
        if lambda
            .iter()
            .any(|l| !l.is_finite() || *l < lambda_min || *l > lambda_max)
        {
            return Err(Error::Domain(format!(
                "multipliers out of bounds [{lambda_min}, {lambda_max}]: {lambda:?}"
            )));
        }
        Ok(Self {
            lambda,
            rho,
            lambda_min,
            lambda_max,
        })
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// Safeguarded multiplier update: `clip(lambda_n + rho * g_n)`.
    pub fn updated(&self, constraint_values: &[f64]) -> Self {
        let lambda = self
            .lambda
            .iter()
            .zip(constraint_values)
            .map(|(l, g)| (l + self.rho * g).clamp(self.lambda_min, self.lambda_max))
            .collect();
        Self {
            lambda,
            rho: self.rho,
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
        }
    }

    pub fn with_rho(&self, rho: f64) -> Self {
        Self {
            rho,
            lambda: self.lambda.clone(),
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
        }
    }
}

/// SINR of user `k` (0-based) under beamformer `w` in the lifted domain:
/// `|h_hat_k^H w_k|^2 / (sum_{i != k} |h_hat_k^H w_i|^2 + sigma^2)`.
pub fn sinr(spec: &ProblemSpec, w: &LiftedPoint, k: usize) -> Result<f64> {
    spec.check_point(w.entries(), "sinr")?;
    sinr_entries(spec, w.entries(), k)
}

/// SINR evaluated on an arbitrary `(M+1) x K` matrix (the expression does not
/// need the unit-trace constraint).
pub fn sinr_entries(spec: &ProblemSpec, w: &CMatrix, k: usize) -> Result<f64> {
    if k >= spec.k {
        return Err(Error::Index {
            what: "user",
            index: k,
            count: spec.k,
        });
    }
    let row = spec.h_hat_adj.row(k) * w;
    let mut interference = spec.lifted.sigma2;
    for i in 0..spec.k {
        if i != k {
            interference += row[i].norm_sqr();
        }
    }
    Ok(row[k].norm_sqr() / interference)
}

/// Communication sum rate `sum_k log2(1 + sinr_k)` in bits/s/Hz.
pub fn sum_rate(spec: &ProblemSpec, w: &LiftedPoint) -> Result<f64> {
    sum_rate_entries(spec, w.entries())
}

/// Sum rate on an arbitrary `(M+1) x K` matrix.
pub fn sum_rate_entries(spec: &ProblemSpec, w: &CMatrix) -> Result<f64> {
    let mut rate = 0.0;
    for k in 0..spec.k {
        rate += (1.0 + sinr_entries(spec, w, k)?).log2();
    }
    Ok(rate)
}

/// Embed a physical `M x K` beamformer into the lifted domain:
/// `[W / sqrt(p_max); 0]`. Inverse of [`unlift`] for a zero auxiliary row;
/// lifted-domain evaluators return the same SINR and rates on the result.
pub fn embed_beamformer(w: &CMatrix, p_max: f64) -> CMatrix {
    let (m, k) = w.shape();
    let scale = Cx::new(1.0 / p_max.sqrt(), 0.0);
    let mut out = CMatrix::zeros(m + 1, k);
    for c in 0..k {
        for r in 0..m {
            out[(r, c)] = w[(r, c)] * scale;
        }
    }
    out
}

/// Beampattern gain of the physical `M x K` beamformer toward `theta`:
/// `a(theta)^H (sum_k w_k w_k^H) a(theta) = ||a(theta)^H W||^2`, watts.
pub fn beampattern_gain(spec: &ProblemSpec, w: &CMatrix, theta_rad: f64) -> Result<f64> {
    if w.nrows() != spec.m {
        return Err(Error::Dimension {
            context: "beampattern_gain",
            expected: (spec.m, w.ncols()),
            got: w.shape(),
        });
    }
    let a = crate::scenario::steering(theta_rad, spec.m);
    Ok((a.adjoint() * w).norm_squared())
}

/// Sensing constraint value for target `n` (0-based):
/// `g_n = Gamma_n - a_hat_n^H W W^H a_hat_n`; `<= 0` means the floor is met.
pub fn constraint_g(spec: &ProblemSpec, w: &LiftedPoint, n: usize) -> Result<f64> {
    spec.check_point(w.entries(), "constraint_g")?;
    if n >= spec.n {
        return Err(Error::Index {
            what: "target",
            index: n,
            count: spec.n,
        });
    }
    let row = spec.a_hat_adj.row(n) * w.entries();
    Ok(spec.lifted.gamma_th[n] - row.norm_squared())
}

/// All sensing constraint values at once.
pub fn constraint_values(spec: &ProblemSpec, w: &LiftedPoint) -> Vec<f64> {
    constraint_values_entries(spec, w.entries())
}

pub(crate) fn constraint_values_entries(spec: &ProblemSpec, w: &CMatrix) -> Vec<f64> {
    let response = spec.sensing_response(w);
    (0..spec.n)
        .map(|n| spec.lifted.gamma_th[n] - response.row(n).norm_squared())
        .collect()
}

/// Optimal fractional-programming update: `mu_k = sinr_k`.
pub fn update_mu(spec: &ProblemSpec, w: &LiftedPoint) -> Result<FpState> {
    let mu = (0..spec.k)
        .map(|k| sinr(spec, w, k))
        .collect::<Result<Vec<_>>>()?;
    FpState::from_mu(mu)
}

/// Quadratic-transform surrogate (maximization form):
/// `sum_k gamma_hat_k |h_hat_k^H w_k|^2 / (sum_i |h_hat_k^H w_i|^2 + sigma^2)`.
///
/// The solver minimizes its negation.
pub fn fp_objective(spec: &ProblemSpec, w: &LiftedPoint, fp: &FpState) -> Result<f64> {
    spec.check_point(w.entries(), "fp_objective")?;
    Ok(fp_objective_entries(spec, w.entries(), fp))
}

pub(crate) fn fp_objective_entries(spec: &ProblemSpec, w: &CMatrix, fp: &FpState) -> f64 {
    let coupling = spec.coupling(w);
    let mut value = 0.0;
    for k in 0..spec.k {
        let denom = coupling.row(k).norm_squared() + spec.lifted.sigma2;
        value += fp.gamma_hat[k] * coupling[(k, k)].norm_sqr() / denom;
    }
    value
}

/// Lagrangian-dual-transform objective at explicit auxiliaries:
/// `(1/ln 2) sum_k [ln(1 + mu_k) - mu_k + (1 + mu_k) sinr_k / (1 + sinr_k)]`.
///
/// At `mu_k = sinr_k` this reproduces the sum rate exactly.
pub fn dual_transform_objective(spec: &ProblemSpec, w: &LiftedPoint, fp: &FpState) -> Result<f64> {
    let ln2 = std::f64::consts::LN_2;
    let mut value = 0.0;
    for k in 0..spec.k {
        let g = sinr(spec, w, k)?;
        let mu = fp.mu[k];
        value += ((1.0 + mu).ln() - mu + (1.0 + mu) * g / (1.0 + g)) / ln2;
    }
    Ok(value)
}

/// Augmented Lagrangian (minimization form):
/// `-fp_objective + (rho/2) sum_n max{0, lambda_n/rho + g_n}^2`.
pub fn aug_lagrangian(
    spec: &ProblemSpec,
    w: &LiftedPoint,
    fp: &FpState,
    mult: &Multipliers,
) -> Result<f64> {
    spec.check_point(w.entries(), "aug_lagrangian")?;
    Ok(aug_lagrangian_entries(spec, w.entries(), fp, mult))
}

/// Augmented Lagrangian on an arbitrary ambient matrix (finite-difference
/// probes step off the manifold).
pub fn aug_lagrangian_entries(
    spec: &ProblemSpec,
    w: &CMatrix,
    fp: &FpState,
    mult: &Multipliers,
) -> f64 {
    aug_lagrangian_weighted(spec, w, fp, mult, 1.0)
}

/// Augmented Lagrangian with the bare objective scaled by
/// `objective_weight`: `-weight * fp_objective + penalty`.
///
/// A positive weight is a monotone rescaling of the objective, so the
/// constrained minimizers are unchanged; the solver passes
/// `1 / (1 + sum_k gamma_hat_k)` to keep the cost at unit scale regardless
/// of how large the SINR auxiliaries grow.
pub fn aug_lagrangian_weighted(
    spec: &ProblemSpec,
    w: &CMatrix,
    fp: &FpState,
    mult: &Multipliers,
    objective_weight: f64,
) -> f64 {
    let mut cost = -objective_weight * fp_objective_entries(spec, w, fp);
    let rho = mult.rho;
    let response = spec.sensing_response(w);
    for n in 0..spec.n {
        let g = spec.lifted.gamma_th[n] - response.row(n).norm_squared();
        let shifted = mult.lambda[n] / rho + g;
        if shifted > 0.0 {
            cost += 0.5 * rho * shifted * shifted;
        }
    }
    cost
}

/// Euclidean gradient of the augmented Lagrangian, `2 dL/dW*`.
pub fn euclidean_grad(
    spec: &ProblemSpec,
    w: &LiftedPoint,
    fp: &FpState,
    mult: &Multipliers,
) -> Result<CMatrix> {
    spec.check_point(w.entries(), "euclidean_grad")?;
    Ok(euclidean_grad_entries(spec, w.entries(), fp, mult))
}

/// Gradient evaluated on an arbitrary ambient matrix; see [`euclidean_grad`].
pub fn euclidean_grad_entries(
    spec: &ProblemSpec,
    w: &CMatrix,
    fp: &FpState,
    mult: &Multipliers,
) -> CMatrix {
    euclidean_grad_weighted(spec, w, fp, mult, 1.0)
}

/// Gradient of [`aug_lagrangian_weighted`].
pub fn euclidean_grad_weighted(
    spec: &ProblemSpec,
    w: &CMatrix,
    fp: &FpState,
    mult: &Multipliers,
    objective_weight: f64,
) -> CMatrix {
    let kk = spec.k;
    let coupling = spec.coupling(w);

    // Rate part: sum_k -gamma_hat_k [ (2 u_kk / D_k) h_k e_k^H
    //                                 - (2 |u_kk|^2 / D_k^2) h_k r_k ]
    // assembled as H_hat * V with V built row by row from the coupling matrix.
    let mut v = CMatrix::zeros(kk, kk);
    for k in 0..kk {
        let weighted_gamma = objective_weight * fp.gamma_hat[k];
        let denom = coupling.row(k).norm_squared() + spec.lifted.sigma2;
        let u_kk = coupling[(k, k)];
        let num = u_kk.norm_sqr();
        let ratio = weighted_gamma * 2.0 * num / (denom * denom);
        for i in 0..kk {
            v[(k, i)] = coupling[(k, i)] * ratio;
        }
        v[(k, k)] -= u_kk * (weighted_gamma * 2.0 / denom);
    }
    let mut grad = &spec.lifted.h_hat * v;

    // Penalty part: -2 rho sum_n 1{lambda_n/rho + g_n > 0}
    //               (lambda_n/rho + g_n) a_n a_n^H W, assembled as A_hat * Q.
    let rho = mult.rho;
    let response = spec.sensing_response(w);
    let mut q = CMatrix::zeros(spec.n, kk);
    let mut any_active = false;
    for n in 0..spec.n {
        let g = spec.lifted.gamma_th[n] - response.row(n).norm_squared();
        let shifted = mult.lambda[n] / rho + g;
        if shifted > 0.0 {
            any_active = true;
            let coeff = -2.0 * rho * shifted;
            for i in 0..kk {
                q[(n, i)] = response[(n, i)] * coeff;
            }
        }
    }
    if any_active {
        grad += &spec.lifted.a_hat * q;
    }
    grad
}

/// Recover the physical beamformer: `sqrt(p_max)` times the first `M` rows.
pub fn unlift(w: &LiftedPoint, p_max: f64, m: usize) -> CMatrix {
    let k = w.cols();
    let mut out = w.entries().view((0, 0), (m, k)).into_owned();
    out *= Cx::new(p_max.sqrt(), 0.0);
    out
}
