//! Transmit-beamforming design for integrated sensing and communication (ISAC).
//!
//! A base station with an `M`-antenna uniform linear array serves `K` downlink
//! users while illuminating `N` radar targets with the same waveform. The
//! beamformer is optimized to maximize the communication sum rate subject to a
//! per-target beampattern-gain floor and a total transmit-power budget.
//!
//! The solver stack factors the problem as:
//!
//! * [`manifold`] — geometry of the unit-trace complex sphere that carries the
//!   power-normalized beamforming matrix,
//! * [`scenario`] — channel, steering-vector, and pathloss generation,
//! * [`problem`] — SINR/rate/beampattern evaluators, the fractional-programming
//!   surrogate, and the augmented Lagrangian cost with its Euclidean gradient,
//! * [`solver`] — Riemannian conjugate gradient inside an augmented-Lagrangian
//!   outer loop, alternated with the fractional-programming update (IMBO),
//! * [`baselines`] — closed-form ZF and MMSE beamformers for comparison,
//! * [`harness`] — configuration, seeded Monte Carlo runner, and CSV/JSON export.

pub mod baselines;
pub mod error;
pub mod harness;
pub mod manifold;
pub mod problem;
pub mod rng;
pub mod scenario;
pub mod solver;
pub mod units;

pub use error::{Error, Result};

use num_complex::Complex;

/// Complex scalar used throughout.
pub type Cx = Complex<f64>;
/// Dynamically sized complex matrix.
pub type CMatrix = nalgebra::DMatrix<Cx>;
/// Dynamically sized complex column vector.
pub type CVector = nalgebra::DVector<Cx>;
