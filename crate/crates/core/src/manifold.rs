//! Geometry of the unit-trace complex sphere.
//!
//! The optimization variable is an `(M+1) x K` complex matrix `W` constrained
//! to `Tr(W W^H) = 1`, i.e. the unit sphere of the Frobenius norm in
//! `C^{(M+1) x K}`. The Riemannian metric is the real part of the Frobenius
//! inner product, the standard embedded-submanifold metric. Tangent vectors at
//! a point are the matrices whose Frobenius inner product with the base point
//! has zero real part.
//!
//! All operations here are pure functions on immutable values.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::{CMatrix, Cx};

/// Absolute tolerance on `|Tr(W W^H) - 1|` for points of the manifold.
pub const FEASIBILITY_TOL: f64 = 1e-12;
/// Tolerance on `Re Tr(base^H xi)`, relative to `max(1, ||xi||_F)`.
pub const TANGENCY_TOL: f64 = 1e-10;

/// Real part of the Frobenius inner product `Re Tr(a^H b)`.
pub(crate) fn frobenius_inner_re(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

fn check_shapes(context: &'static str, a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a != b {
        return Err(Error::Dimension {
            context,
            expected: a,
            got: b,
        });
    }
    Ok(())
}

/// A point on the manifold: unit Frobenius norm, finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedPoint {
    entries: CMatrix,
}

impl LiftedPoint {
    /// Wrap a matrix that is already on the manifold.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain(
                "manifold point has non-finite entries".into(),
            ));
        }
        let residual = (entries.norm_squared() - 1.0).abs();
        if residual > FEASIBILITY_TOL {
            return Err(Error::Domain(format!(
                "matrix is off the unit-trace sphere: |Tr(WW^H) - 1| = {residual:.3e}"
            )));
        }
        Ok(Self { entries })
    }

    /// Normalize an arbitrary nonzero matrix onto the manifold.
    pub fn from_unnormalized(entries: CMatrix) -> Result<Self> {
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("cannot normalize non-finite matrix".into()));
        }
        let norm = entries.norm();
        if norm < 1e-300 {
            return Err(Error::Domain(
                "cannot normalize a (near-)zero matrix onto the sphere".into(),
            ));
        }
        Ok(Self {
            entries: entries / Cx::new(norm, 0.0),
        })
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.entries.shape()
    }

    /// `|Tr(W W^H) - 1|`, zero on the manifold.
    pub fn feasibility_residual(&self) -> f64 {
        (self.entries.norm_squared() - 1.0).abs()
    }
}

/// A tangent vector, stored with the point it is tangent at.
#[derive(Clone, Debug)]
pub struct TangentVector {
    entries: CMatrix,
    base: LiftedPoint,
}

impl TangentVector {
    /// Wrap a matrix after checking the tangency invariant
    /// `|Re Tr(base^H xi)| <= TANGENCY_TOL * max(1, ||xi||_F)`.
    pub fn new(base: LiftedPoint, entries: CMatrix) -> Result<Self> {
        check_shapes("tangent vector", base.shape(), entries.shape())?;
        let residual = frobenius_inner_re(base.entries(), &entries).abs();
        let scale = entries.norm().max(1.0);
        if residual > TANGENCY_TOL * scale {
            return Err(Error::Domain(format!(
                "matrix is not tangent at the base point: |Re Tr(base^H xi)| = {residual:.3e}"
            )));
        }
        Ok(Self { entries, base })
    }

    /// Internal constructor for vectors tangent by construction.
    pub(crate) fn from_projected(base: LiftedPoint, entries: CMatrix) -> Self {
        Self { entries, base }
    }

    pub fn zero_at(base: &LiftedPoint) -> Self {
        Self {
            entries: CMatrix::zeros(base.rows(), base.cols()),
            base: base.clone(),
        }
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn base(&self) -> &LiftedPoint {
        &self.base
    }

    /// Metric norm (Frobenius norm of the embedded representation).
    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    /// `|Re Tr(base^H xi)|`, zero for an exact tangent vector.
    pub fn tangency_residual(&self) -> f64 {
        frobenius_inner_re(self.base.entries(), &self.entries).abs()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            entries: &self.entries * Cx::new(factor, 0.0),
            base: self.base.clone(),
        }
    }

    /// `self + factor * other`, both tangent at the same base.
    pub fn axpy(&self, factor: f64, other: &TangentVector) -> Result<Self> {
        check_shapes(
            "tangent combination",
            self.entries.shape(),
            other.entries.shape(),
        )?;
        Ok(Self {
            entries: &self.entries + &other.entries * Cx::new(factor, 0.0),
            base: self.base.clone(),
        })
    }
}

/// Riemannian metric: `Re Tr(xi^H zeta)`.
///
/// Both arguments must be tangent at the same base point.
pub fn metric_inner(xi: &TangentVector, zeta: &TangentVector) -> Result<f64> {
    check_shapes("metric_inner", xi.entries.shape(), zeta.entries.shape())?;
    Ok(frobenius_inner_re(&xi.entries, &zeta.entries))
}

/// Orthogonal projection of an ambient matrix onto the tangent space at `base`:
/// `G - Re(Tr(base^H G)) base`.
///
/// The subtraction is applied twice: when `G` is dominated by its normal
/// component the first pass leaves a rounding residual of order
/// `eps * ||G||`, and the second pass removes it so the tangency invariant
/// holds relative to the projected vector, not the input.
pub fn project(base: &LiftedPoint, ambient: &CMatrix) -> Result<TangentVector> {
    check_shapes("project", base.shape(), ambient.shape())?;
    let coeff = frobenius_inner_re(base.entries(), ambient);
    let mut entries = ambient - base.entries() * Cx::new(coeff, 0.0);
    let refine = frobenius_inner_re(base.entries(), &entries);
    if refine != 0.0 {
        entries -= base.entries() * Cx::new(refine, 0.0);
    }
    Ok(TangentVector::from_projected(base.clone(), entries))
}

/// Sphere retraction: `(base + alpha xi) / ||base + alpha xi||_F`.
///
/// For `alpha = 0` the base point is returned bit for bit. For a tangent `xi`
/// the argument norm is `sqrt(1 + alpha^2 ||xi||^2) >= 1`, so the map cannot
/// degenerate; the check is kept as an internal guard.
pub fn retract(base: &LiftedPoint, xi: &TangentVector, alpha: f64) -> Result<LiftedPoint> {
    check_shapes("retract", base.shape(), xi.entries.shape())?;
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!(
            "retraction step must be finite and >= 0, got {alpha}"
        )));
    }
    if alpha == 0.0 {
        return Ok(base.clone());
    }
    let moved = base.entries() + &xi.entries * Cx::new(alpha, 0.0);
    let norm = moved.norm();
    if norm < 1e-300 {
        return Err(Error::Numeric {
            context: "degenerate retraction".into(),
            iteration: 0,
        });
    }
    Ok(LiftedPoint {
        entries: moved / Cx::new(norm, 0.0),
    })
}

/// Vector transport: project `xi` onto the tangent space at `to`.
pub fn transport(to: &LiftedPoint, xi: &TangentVector) -> Result<TangentVector> {
    project(to, &xi.entries)
}

/// Random point: i.i.d. CN(0,1) entries, normalized to unit Frobenius norm.
pub fn random_point(rows: usize, cols: usize, rng: &mut SplitMix64) -> LiftedPoint {
    assert!(
        rows >= 1 && cols >= 1,
        "manifold dimensions must be positive"
    );
    let entries = CMatrix::from_fn(rows, cols, |_, _| rng.standard_complex());
    LiftedPoint::from_unnormalized(entries).expect("Gaussian draw is nonzero almost surely")
}

/// Chordal distance `||a - b||_F`.
pub fn distance(a: &LiftedPoint, b: &LiftedPoint) -> Result<f64> {
    check_shapes("distance", a.shape(), b.shape())?;
    Ok((a.entries() - b.entries()).norm())
}
