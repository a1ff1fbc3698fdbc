//! Deterministic pseudo-random generation.
//!
//! Everything stochastic in this crate flows through [`SplitMix64`] so that a
//! `(config, master_seed)` pair reproduces output files byte for byte, on any
//! platform and with any worker-pool size. Per-trial generators are derived
//! with [`derive_seed`] so trials are independent yet reproducible.

use crate::Cx;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One splitmix64 output step (Steele, Lea, Flood mixing constants).
#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of one Monte Carlo trial from the experiment master seed.
///
/// The mixing is fixed so runs are reproducible: each index is folded into the
/// splitmix64 stream, which decorrelates trials even for adjacent indices.
pub fn derive_seed(master_seed: u64, trial_index: u64, sweep_index: u64) -> u64 {
    let mut state = master_seed;
    let a = splitmix64(&mut state);
    let mut state = a ^ trial_index.wrapping_mul(GOLDEN_GAMMA);
    let b = splitmix64(&mut state);
    let mut state = b ^ sweep_index.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    splitmix64(&mut state)
}

/// Small, fast, fully deterministic PRNG (splitmix64 stream).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
    spare_normal: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed,
            spare_normal: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        splitmix64(&mut self.state)
    }

    /// Uniform in the open interval (0, 1).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        // 53 high bits, offset by half an ulp so 0.0 is never returned.
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal N(0, 1) via the Box-Muller transform.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Circularly symmetric complex normal CN(0, 1): unit total variance.
    pub fn standard_complex(&mut self) -> Cx {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        Cx::new(
            self.standard_normal() * scale,
            self.standard_normal() * scale,
        )
    }

    /// Uniform point inside the disk of given center and radius.
    pub fn uniform_in_disk(&mut self, center: [f64; 2], radius: f64) -> [f64; 2] {
        let r = radius * self.next_f64().sqrt();
        let phi = std::f64::consts::TAU * self.next_f64();
        [center[0] + r * phi.cos(), center[1] + r * phi.sin()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn derive_seed_decorrelates_adjacent_indices() {
        let s0 = derive_seed(7, 0, 0);
        let s1 = derive_seed(7, 1, 0);
        let s2 = derive_seed(7, 0, 1);
        assert_ne!(s0, s1);
        assert_ne!(s0, s2);
        assert_ne!(s1, s2);
    }

    #[test]
    fn normal_moments_are_sane() {
        let mut rng = SplitMix64::new(1);
        let n = 200_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let z = rng.standard_normal();
            sum += z;
            sum_sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn complex_normal_has_unit_variance() {
        let mut rng = SplitMix64::new(3);
        let n = 200_000;
        let mut power = 0.0;
        for _ in 0..n {
            power += rng.standard_complex().norm_sqr();
        }
        assert!((power / n as f64 - 1.0).abs() < 0.02);
    }

    #[test]
    fn disk_samples_stay_inside() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..1000 {
            let [x, y] = rng.uniform_in_disk([50.0, 30.0], 20.0);
            let d = ((x - 50.0).powi(2) + (y - 30.0).powi(2)).sqrt();
            assert!(d <= 20.0 + 1e-12);
        }
    }
}
