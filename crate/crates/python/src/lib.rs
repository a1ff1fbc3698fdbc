//! Python bindings for the beamforming library.
//!
//! Exposes scenario sampling, the manifold solver, the ZF/MMSE baselines,
//! and the beampattern/steering/pathloss evaluators. Complex matrices cross
//! the boundary as row-major lists of lists of Python complex numbers.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use isacbeam::baselines::{mmse_beamformer, zf_beamformer};
use isacbeam::harness::ExperimentConfig;
use isacbeam::problem::{beampattern_gain, embed_beamformer, sum_rate_entries, ProblemSpec};
use isacbeam::rng::SplitMix64;
use isacbeam::scenario::sample_channels;
use isacbeam::solver::{imbo, FEASIBILITY_SLACK};
use isacbeam::units::dbm_to_watts;
use isacbeam::CMatrix;

fn to_py_err(err: isacbeam::Error) -> PyErr {
    match err {
        isacbeam::Error::Numeric { .. } | isacbeam::Error::Singular(_) => {
            PyRuntimeError::new_err(err.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn rows_to_matrix(rows: &[Vec<Complex64>]) -> PyResult<CMatrix> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(PyValueError::new_err("matrix must have at least one row"));
    }
    let ncols = rows[0].len();
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err(
            "matrix rows must be non-empty and of equal length",
        ));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

fn parse_config(config_json: Option<&str>) -> PyResult<ExperimentConfig> {
    match config_json {
        Some(text) => ExperimentConfig::from_json(text).map_err(to_py_err),
        None => Ok(ExperimentConfig::default()),
    }
}

/// One channel realization plus its link-level scalars.
#[pyclass(name = "Scenario", skip_from_py_object)]
#[derive(Clone)]
struct PyScenario {
    inner: isacbeam::scenario::Scenario,
}

#[pymethods]
impl PyScenario {
    /// User channels as an M x K list of lists.
    #[getter]
    fn h(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.inner.h)
    }

    /// Unit-norm steering columns toward the sensing directions, M x N.
    #[getter]
    fn a(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.inner.a)
    }

    #[getter]
    fn sigma2(&self) -> f64 {
        self.inner.sigma2
    }

    #[getter]
    fn p_max(&self) -> f64 {
        self.inner.p_max
    }

    #[getter]
    fn gamma_th(&self) -> Vec<f64> {
        self.inner.gamma_th.clone()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!(
            "Scenario(m={}, k={}, n={}, p_max={:.3e} W)",
            self.inner.m(),
            self.inner.k(),
            self.inner.n(),
            self.inner.p_max
        )
    }
}

/// A solved beamformer with its headline metrics.
#[pyclass(name = "Beamformer")]
struct PyBeamformer {
    #[pyo3(get)]
    method: String,
    w_inner: CMatrix,
    #[pyo3(get)]
    sum_rate_bps_hz: f64,
    #[pyo3(get)]
    sensing_feasible: bool,
    /// `max_n max(0, Gamma_n - gain_n)` in watts.
    #[pyo3(get)]
    max_constraint_violation: f64,
    #[pyo3(get)]
    fp_iterations: usize,
    #[pyo3(get)]
    converged: bool,
}

#[pymethods]
impl PyBeamformer {
    /// Physical beamformer, M x K list of lists, Tr(WW^H) <= p_max.
    #[getter]
    fn w(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.w_inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Beamformer(method={}, sum_rate={:.3}, sensing_feasible={})",
            self.method, self.sum_rate_bps_hz, self.sensing_feasible
        )
    }
}

fn assess(
    scenario: &PyScenario,
    method: &str,
    w: CMatrix,
    fp_iterations: usize,
    converged: bool,
) -> PyResult<PyBeamformer> {
    let spec = ProblemSpec::from_scenario(&scenario.inner).map_err(to_py_err)?;
    let rate =
        sum_rate_entries(&spec, &embed_beamformer(&w, scenario.inner.p_max)).map_err(to_py_err)?;
    // per-target gains straight from the steering columns
    let response = scenario.inner.a.adjoint() * &w;
    let mut violation = 0.0f64;
    let mut feasible = true;
    for n in 0..scenario.inner.n() {
        let gain = response.row(n).norm_squared();
        let floor = scenario.inner.gamma_th[n];
        violation = violation.max(floor - gain);
        feasible &= gain >= floor * (1.0 - FEASIBILITY_SLACK);
    }
    Ok(PyBeamformer {
        method: method.to_string(),
        w_inner: w,
        sum_rate_bps_hz: rate,
        sensing_feasible: feasible,
        max_constraint_violation: violation.max(0.0),
        fp_iterations,
        converged,
    })
}

/// Default experiment configuration as pretty JSON.
#[pyfunction]
fn default_config() -> PyResult<String> {
    serde_json::to_string_pretty(&ExperimentConfig::default())
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Draw one channel realization from the configuration and seed.
#[pyfunction]
#[pyo3(signature = (config_json=None, seed=0))]
fn sample_scenario(config_json: Option<&str>, seed: u64) -> PyResult<PyScenario> {
    let cfg = parse_config(config_json)?;
    let link = cfg.link_params(cfg.p_max_dbm);
    let mut rng = SplitMix64::new(seed);
    let inner = sample_channels(&cfg.geometry, &link, cfg.m, cfg.k, &mut rng).map_err(to_py_err)?;
    Ok(PyScenario { inner })
}

/// Solve the constrained design by manifold optimization.
#[pyfunction]
#[pyo3(signature = (scenario, config_json=None, seed=0))]
fn solve(scenario: &PyScenario, config_json: Option<&str>, seed: u64) -> PyResult<PyBeamformer> {
    let cfg = parse_config(config_json)?;
    let spec = ProblemSpec::from_scenario(&scenario.inner).map_err(to_py_err)?;
    let mut rng = SplitMix64::new(seed);
    let (w, report) = imbo(&spec, &cfg.solver, &mut rng).map_err(to_py_err)?;
    assess(
        scenario,
        "IMBO",
        w,
        report.fp_iterations(),
        report.converged,
    )
}

/// Zero-forcing baseline at full power.
#[pyfunction]
fn zf(scenario: &PyScenario) -> PyResult<PyBeamformer> {
    let out = zf_beamformer(&scenario.inner.h, scenario.inner.p_max).map_err(to_py_err)?;
    assess(scenario, "ZF", out.w, 0, true)
}

/// MMSE baseline at full power.
#[pyfunction]
fn mmse(scenario: &PyScenario) -> PyResult<PyBeamformer> {
    let out = mmse_beamformer(
        &scenario.inner.h,
        scenario.inner.sigma2,
        scenario.inner.p_max,
    )
    .map_err(to_py_err)?;
    assess(scenario, "MMSE", out.w, 0, true)
}

/// Beampattern gains (linear watts) of a physical beamformer per angle.
#[pyfunction]
fn beampattern(
    scenario: &PyScenario,
    w: Vec<Vec<Complex64>>,
    theta_deg: Vec<f64>,
) -> PyResult<Vec<f64>> {
    let spec = ProblemSpec::from_scenario(&scenario.inner).map_err(to_py_err)?;
    let w = rows_to_matrix(&w)?;
    theta_deg
        .iter()
        .map(|deg| beampattern_gain(&spec, &w, deg.to_radians()).map_err(to_py_err))
        .collect()
}

/// Half-wavelength uniform-linear-array steering vector.
#[pyfunction]
fn steering(theta_deg: f64, m: usize) -> Vec<Complex64> {
    isacbeam::scenario::steering(theta_deg.to_radians(), m)
        .iter()
        .copied()
        .collect()
}

/// Large-scale pathloss in linear power gain.
#[pyfunction]
#[pyo3(signature = (distance_m, c0_db=-30.0, d0_m=1.0, nu=2.0))]
fn pathloss(distance_m: f64, c0_db: f64, d0_m: f64, nu: f64) -> PyResult<f64> {
    let geo = isacbeam::scenario::GeometryConfig {
        c0_db,
        d0_m,
        nu,
        ..Default::default()
    };
    isacbeam::scenario::pathloss(distance_m, &geo).map_err(to_py_err)
}

/// dBm to linear watts.
#[pyfunction]
fn dbm_to_w(dbm: f64) -> f64 {
    dbm_to_watts(dbm)
}

#[pymodule]
fn isacbeam_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScenario>()?;
    m.add_class::<PyBeamformer>()?;
    m.add_function(wrap_pyfunction!(default_config, m)?)?;
    m.add_function(wrap_pyfunction!(sample_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(zf, m)?)?;
    m.add_function(wrap_pyfunction!(mmse, m)?)?;
    m.add_function(wrap_pyfunction!(beampattern, m)?)?;
    m.add_function(wrap_pyfunction!(steering, m)?)?;
    m.add_function(wrap_pyfunction!(pathloss, m)?)?;
    m.add_function(wrap_pyfunction!(dbm_to_w, m)?)?;
    Ok(())
}
