//! Closed-form benchmark beamformers: zero-forcing and MMSE.
//!
//! Both are communication-only designs: they invert the channel Gram matrix
//! (with noise regularization for MMSE), are scaled uniformly to exhaust the
//! power budget, and ignore the sensing targets. Sensing feasibility is
//! evaluated post hoc against the configured gain floors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{CMatrix, Cx};

/// Condition-number guard for the ZF Gram inverse.
const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaselineMethod {
    Zf,
    Mmse,
}

impl std::fmt::Display for BaselineMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaselineMethod::Zf => write!(f, "ZF"),
            BaselineMethod::Mmse => write!(f, "MMSE"),
        }
    }
}

/// A benchmark beamformer scaled to the full power budget.
#[derive(Clone, Debug)]
pub struct BaselineResult {
    /// Physical beamformer, `M x K`, `Tr(WW^H) = p_max`.
    pub w: CMatrix,
    pub method: BaselineMethod,
    /// Per-target flags, `gain(theta_n) >= Gamma_n`; filled by
    /// [`BaselineResult::with_sensing_assessment`].
    pub feasible_sensing: Vec<bool>,
}

impl BaselineResult {
    /// Evaluate the beampattern against the gain floors at the sensing
    /// steering columns `a` (`M x N`, unit-norm columns).
    pub fn with_sensing_assessment(mut self, a: &CMatrix, gamma_th: &[f64]) -> Self {
        let response = a.adjoint() * &self.w;
        self.feasible_sensing = (0..a.ncols())
            .map(|n| response.row(n).norm_squared() >= gamma_th[n])
            .collect();
        self
    }

    pub fn meets_all_sensing_floors(&self) -> bool {
        !self.feasible_sensing.is_empty() && self.feasible_sensing.iter().all(|f| *f)
    }
}

fn scale_to_power(mut w: CMatrix, p_max: f64) -> CMatrix {
    let power = w.norm_squared();
    w *= Cx::new((p_max / power).sqrt(), 0.0);
    w
}

/// Zero-forcing beamformer `H (H^H H)^{-1}`, scaled to `Tr(WW^H) = p_max`.
///
/// Requires `K <= M` and a well-conditioned Gram matrix; inter-user
/// interference of the result is numerically zero.
pub fn zf_beamformer(h: &CMatrix, p_max: f64) -> Result<BaselineResult> {
    let (m, k) = h.shape();
    if k > m {
        return Err(Error::Singular(format!(
            "zero-forcing needs K <= M, got K = {k}, M = {m}"
        )));
    }
    let gram = h.adjoint() * h;
    // Hermitian eigenvalues give the squared singular values of H.
    let eigen = gram.clone().symmetric_eigen();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for ev in eigen.eigenvalues.iter() {
        lo = lo.min(*ev);
        hi = hi.max(*ev);
    }
    if lo <= 0.0 || lo.is_nan() || hi / lo > MAX_CONDITION {
        return Err(Error::Singular(format!(
            "channel Gram matrix is rank deficient or ill-conditioned \
             (eigenvalue range [{lo:.3e}, {hi:.3e}])"
        )));
    }
    let inv = gram
        .try_inverse()
        .ok_or_else(|| Error::Singular("channel Gram matrix could not be inverted".to_string()))?;
    Ok(BaselineResult {
        w: scale_to_power(h * inv, p_max),
        method: BaselineMethod::Zf,
        feasible_sensing: Vec::new(),
    })
}

/// MMSE beamformer `H (H^H H + sigma^2 I)^{-1}`, scaled to `Tr(WW^H) = p_max`.
pub fn mmse_beamformer(h: &CMatrix, sigma2: f64, p_max: f64) -> Result<BaselineResult> {
    if !sigma2.is_finite() || sigma2 <= 0.0 {
        return Err(Error::Domain(format!(
            "MMSE regularizer sigma2 must be > 0, got {sigma2}"
        )));
    }
    let k = h.ncols();
    let mut gram = h.adjoint() * h;
    for i in 0..k {
        gram[(i, i)] += Cx::new(sigma2, 0.0);
    }
    let inv = gram.try_inverse().ok_or_else(|| {
        Error::Singular("regularized Gram matrix could not be inverted".to_string())
    })?;
    Ok(BaselineResult {
        w: scale_to_power(h * inv, p_max),
        method: BaselineMethod::Mmse,
        feasible_sensing: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn rand_channel(m: usize, k: usize, seed: u64) -> CMatrix {
        let mut rng = SplitMix64::new(seed);
        CMatrix::from_fn(m, k, |_, _| rng.standard_complex())
    }

    #[test]
    fn zf_identity_channel() {
        let h = CMatrix::identity(3, 3);
        let p_max = 2.4;
        let out = zf_beamformer(&h, p_max).unwrap();
        // W proportional to I with trace p_max
        let expected = CMatrix::identity(3, 3) * Cx::new((p_max / 3.0).sqrt(), 0.0);
        assert!((out.w - expected).norm() <= 1e-12);
    }

    #[test]
    fn zf_nulls_inter_user_interference() {
        for seed in 0..5 {
            let h = rand_channel(8, 3, seed);
            let out = zf_beamformer(&h, 1.0).unwrap();
            let cross = h.adjoint() * &out.w;
            for r in 0..3 {
                for c in 0..3 {
                    if r != c {
                        let bound = 1e-10 * h.column(r).norm() * out.w.column(c).norm();
                        assert!(
                            cross[(r, c)].norm() <= bound,
                            "leakage {:.3e} at ({r},{c})",
                            cross[(r, c)].norm()
                        );
                    }
                }
            }
            assert!((out.w.norm_squared() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn zf_rejects_rank_deficient_channels() {
        // duplicated column: Gram matrix singular
        let mut h = rand_channel(6, 2, 9);
        let col = h.column(0).into_owned();
        h.set_column(1, &col);
        assert!(matches!(zf_beamformer(&h, 1.0), Err(Error::Singular(_))));
        // more users than antennas
        let h = rand_channel(2, 3, 10);
        assert!(zf_beamformer(&h, 1.0).is_err());
    }

    #[test]
    fn mmse_identity_channel_is_half_identity_before_scaling() {
        let h = CMatrix::identity(3, 3);
        let out = mmse_beamformer(&h, 1.0, 1.0).unwrap();
        // W0 = (I + I)^{-1} = I/2, direction preserved by scaling
        let unit = &out.w / Cx::new(out.w.norm(), 0.0);
        let expected = CMatrix::identity(3, 3) / Cx::new(3.0f64.sqrt(), 0.0);
        assert!((unit - expected).norm() <= 1e-12);
    }

    #[test]
    fn mmse_direction_converges_to_zf_as_noise_vanishes() {
        let h = rand_channel(6, 2, 12);
        let zf = zf_beamformer(&h, 1.0).unwrap();
        let mmse = mmse_beamformer(&h, 1e-12, 1.0).unwrap();
        let zf_dir = &zf.w / Cx::new(zf.w.norm(), 0.0);
        let mmse_dir = &mmse.w / Cx::new(mmse.w.norm(), 0.0);
        assert!((zf_dir - mmse_dir).norm() <= 1e-6);
    }

    #[test]
    fn both_baselines_exhaust_the_power_budget() {
        let h = rand_channel(8, 2, 13);
        for p_max in [0.5, 1.0, 4.0] {
            let zf = zf_beamformer(&h, p_max).unwrap();
            let mmse = mmse_beamformer(&h, 0.01, p_max).unwrap();
            assert!((zf.w.norm_squared() - p_max).abs() <= 1e-12 * p_max);
            assert!((mmse.w.norm_squared() - p_max).abs() <= 1e-12 * p_max);
        }
    }

    #[test]
    fn sensing_assessment_flags_each_target() {
        let mut rng = SplitMix64::new(14);
        let m = 8;
        let a = CMatrix::from_fn(m, 2, |r, c| {
            crate::scenario::steering([-0.6f64, 0.4][c], m)[r]
        });
        let h = CMatrix::from_fn(m, 2, |_, _| rng.standard_complex());
        let out = zf_beamformer(&h, 1.0)
            .unwrap()
            .with_sensing_assessment(&a, &[1e-9, 1e9]);
        assert_eq!(out.feasible_sensing.len(), 2);
        assert!(out.feasible_sensing[0], "near-zero floor must be met");
        assert!(!out.feasible_sensing[1], "absurd floor cannot be met");
        assert!(!out.meets_all_sensing_floors());
    }
}
