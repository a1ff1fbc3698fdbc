//! Physical setting: geometry, pathloss, Rayleigh channels, steering vectors,
//! and the power-normalized lifted quantities consumed by the optimizer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::units::db_to_linear;
use crate::{CMatrix, CVector, Cx};

/// How user positions are drawn inside the user region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum UserPlacement {
    /// Users sit at the configured angles, at the range of the region center.
    #[default]
    FixedAngles,
    /// Users are drawn uniformly inside the disk, one per trial.
    UniformDisk,
}

/// Geometry and large-scale propagation parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    /// Base-station position, meters.
    pub bs_position: [f64; 2],
    /// Center of the circular user region, meters.
    pub user_region_center: [f64; 2],
    /// Radius of the user region, meters.
    pub user_region_radius: f64,
    /// Nominal user angles, degrees (used by `FixedAngles` placement).
    pub user_angles_deg: Vec<f64>,
    /// Sensing directions, degrees, within [-90, 90].
    pub sensing_angles_deg: Vec<f64>,
    /// Reference pathloss at distance `d0_m`, dB.
    pub c0_db: f64,
    /// Reference distance, meters.
    pub d0_m: f64,
    /// Pathloss exponent.
    pub nu: f64,
    #[serde(default)]
    pub user_placement: UserPlacement,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            bs_position: [0.0, 0.0],
            user_region_center: [50.0, 30.0],
            user_region_radius: 20.0,
            user_angles_deg: vec![-30.0, 30.0],
            sensing_angles_deg: vec![-54.0, -18.0, 18.0, 54.0],
            c0_db: -30.0,
            d0_m: 1.0,
            nu: 2.0,
            user_placement: UserPlacement::FixedAngles,
        }
    }
}

impl GeometryConfig {
    /// Field-by-field validation; returns every offending field.
    pub fn validation_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if !self.user_region_radius.is_finite() || self.user_region_radius <= 0.0 {
            errs.push(format!(
                "geometry.user_region_radius must be > 0, got {}",
                self.user_region_radius
            ));
        }
        if !self.d0_m.is_finite() || self.d0_m <= 0.0 {
            errs.push(format!("geometry.d0_m must be > 0, got {}", self.d0_m));
        }
        if !self.nu.is_finite() || self.nu <= 0.0 {
            errs.push(format!("geometry.nu must be > 0, got {}", self.nu));
        }
        if self.user_angles_deg.is_empty() {
            errs.push("geometry.user_angles_deg must not be empty".into());
        }
        if self.sensing_angles_deg.is_empty() {
            errs.push("geometry.sensing_angles_deg must not be empty".into());
        }
        for (i, angle) in self.sensing_angles_deg.iter().enumerate() {
            if !(-90.0..=90.0).contains(angle) {
                errs.push(format!(
                    "geometry.sensing_angles_deg[{i}] = {angle} outside [-90, 90]"
                ));
            }
        }
        errs
    }
}

/// Link-level scalars carried alongside the geometry.
#[derive(Clone, Debug)]
pub struct LinkParams {
    /// Noise power, linear watts.
    pub sigma2: f64,
    /// Transmit power budget, linear watts.
    pub p_max: f64,
    /// Per-target beampattern-gain floors, linear watts.
    pub gamma_th: Vec<f64>,
}

/// One channel realization.
#[derive(Clone, Debug)]
pub struct Scenario {
    /// User channels, `M x K`, column `k` is user `k`.
    pub h: CMatrix,
    /// Unit-norm steering columns toward the sensing directions, `M x N`.
    pub a: CMatrix,
    /// Noise power, watts.
    pub sigma2: f64,
    /// Power budget, watts.
    pub p_max: f64,
    /// Sensing gain floors, watts, one per target.
    pub gamma_th: Vec<f64>,
}

impl Scenario {
    pub fn m(&self) -> usize {
        self.h.nrows()
    }

    pub fn k(&self) -> usize {
        self.h.ncols()
    }

    pub fn n(&self) -> usize {
        self.a.ncols()
    }
}

/// Power-lifted scenario: channels and steering vectors are scaled by
/// `sqrt(P)` and extended with a zero row so the power budget becomes the
/// unit-trace constraint of the manifold.
#[derive(Clone, Debug)]
pub struct LiftedScenario {
    /// `(M+1) x K`, column `k` is `sqrt(P) [h_k; 0]`.
    pub h_hat: CMatrix,
    /// `(M+1) x N`, column `n` is `sqrt(P) [a_n; 0]`.
    pub a_hat: CMatrix,
    /// Lifting power scale `P` (equal to the power budget).
    pub power_scale: f64,
    pub sigma2: f64,
    pub gamma_th: Vec<f64>,
}

/// Large-scale pathloss `C0 * (d / D0)^(-nu)` in linear power gain.
pub fn pathloss(distance_m: f64, cfg: &GeometryConfig) -> Result<f64> {
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(Error::Domain(format!(
            "pathloss distance must be > 0, got {distance_m}"
        )));
    }
    Ok(db_to_linear(cfg.c0_db) * (distance_m / cfg.d0_m).powf(-cfg.nu))
}

/// Steering vector of a half-wavelength uniform linear array:
/// `(1/sqrt(M)) [1, e^{j pi sin t}, ..., e^{j pi (M-1) sin t}]`.
pub fn steering(theta_rad: f64, m: usize) -> CVector {
    let scale = 1.0 / (m as f64).sqrt();
    let phase = std::f64::consts::PI * theta_rad.sin();
    CVector::from_fn(m, |row, _| Cx::from_polar(scale, phase * row as f64))
}

/// Draw one channel realization.
///
/// User `k` is placed per `cfg.user_placement`; its channel is
/// `sqrt(pathloss(d_k)) * CN(0, I_M)`. Steering columns are built from the
/// configured sensing angles. Deterministic given the generator state.
pub fn sample_channels(
    cfg: &GeometryConfig,
    link: &LinkParams,
    m: usize,
    k: usize,
    rng: &mut SplitMix64,
) -> Result<Scenario> {
    let mut errs = cfg.validation_errors();
    if m < 1 {
        errs.push("antenna count must be >= 1".into());
    }
    if !link.sigma2.is_finite() || link.sigma2 <= 0.0 {
        errs.push(format!("sigma2 must be > 0 W, got {}", link.sigma2));
    }
    if !link.p_max.is_finite() || link.p_max <= 0.0 {
        errs.push(format!("p_max must be > 0 W, got {}", link.p_max));
    }
    if link.gamma_th.iter().any(|g| !g.is_finite() || *g <= 0.0) {
        errs.push(format!(
            "gamma_th entries must be > 0 W, got {:?}",
            link.gamma_th
        ));
    }
    if !errs.is_empty() {
        return Err(Error::Config(errs));
    }
    if cfg.user_placement == UserPlacement::FixedAngles && k > cfg.user_angles_deg.len() {
        return Err(Error::Config(vec![format!(
            "K = {k} users requested but only {} user angles configured",
            cfg.user_angles_deg.len()
        )]));
    }
    if link.gamma_th.len() != cfg.sensing_angles_deg.len() {
        return Err(Error::Config(vec![format!(
            "gamma_th has {} entries but {} sensing angles configured",
            link.gamma_th.len(),
            cfg.sensing_angles_deg.len()
        )]));
    }

    let center_range = {
        let dx = cfg.user_region_center[0] - cfg.bs_position[0];
        let dy = cfg.user_region_center[1] - cfg.bs_position[1];
        (dx * dx + dy * dy).sqrt()
    };

    let mut h = CMatrix::zeros(m, k);
    for user in 0..k {
        let distance = match cfg.user_placement {
            UserPlacement::FixedAngles => center_range,
            UserPlacement::UniformDisk => {
                let [x, y] = rng.uniform_in_disk(cfg.user_region_center, cfg.user_region_radius);
                let dx = x - cfg.bs_position[0];
                let dy = y - cfg.bs_position[1];
                (dx * dx + dy * dy).sqrt()
            }
        };
        let gain = pathloss(distance, cfg)?.sqrt();
        for row in 0..m {
            h[(row, user)] = rng.standard_complex() * gain;
        }
    }

    let n = cfg.sensing_angles_deg.len();
    let mut a = CMatrix::zeros(m, n);
    for (target, angle_deg) in cfg.sensing_angles_deg.iter().enumerate() {
        a.set_column(target, &steering(angle_deg.to_radians(), m));
    }

    Ok(Scenario {
        h,
        a,
        sigma2: link.sigma2,
        p_max: link.p_max,
        gamma_th: link.gamma_th.clone(),
    })
}

/// Lift a scenario: `P = p_max`, channels and steering vectors scaled by
/// `sqrt(P)` and extended with an exactly-zero auxiliary row.
pub fn lift(s: &Scenario) -> LiftedScenario {
    let sqrt_p = Cx::new(s.p_max.sqrt(), 0.0);
    let (m, k, n) = (s.m(), s.k(), s.n());
    let mut h_hat = CMatrix::zeros(m + 1, k);
    for col in 0..k {
        for row in 0..m {
            h_hat[(row, col)] = s.h[(row, col)] * sqrt_p;
        }
    }
    let mut a_hat = CMatrix::zeros(m + 1, n);
    for col in 0..n {
        for row in 0..m {
            a_hat[(row, col)] = s.a[(row, col)] * sqrt_p;
        }
    }
    LiftedScenario {
        h_hat,
        a_hat,
        power_scale: s.p_max,
        sigma2: s.sigma2,
        gamma_th: s.gamma_th.clone(),
    }
}
