//! Energy, metric tensor, spray, connections and curvatures of a Finsler
//! function (or a bare spray) at a tangent sample.
//!
//! The free functions below each evaluate one quantity at one sample. Code
//! that needs several quantities at the same sample should build a
//! [`SampleGeometry`] once and query it.

mod model;
mod pipeline;
mod tensor;

use nalgebra::DMatrix;
use serde::Serialize;

pub use model::{Domain, MetricModel, SprayField, BALL_SAMPLING_FRACTION};
pub use pipeline::{SampleGeometry, DEGENERACY_FACTOR};
pub use tensor::{IndexKind, IndexRole, LoweringConvention, SymmetryTag, TensorValue, Variance};

use crate::calculus::{ScalarField, TangentSample, HOMOGENEITY_FACTORS};
use crate::error::{Error, Result};

/// Tolerance for the Euler identities checked inside the accessors.
const EULER_TOL: f64 = 1e-8;

/// `E = ½F²`.
pub fn energy(m: &MetricModel, at: &TangentSample) -> Result<f64> {
    m.check_sample(at)?;
    let f = m.require_finsler()?.at(at);
    if !f.is_finite() {
        return Err(Error::non_finite(format!("F at {at}")));
    }
    Ok(0.5 * f * f)
}

/// `g_ij = ∂̇_i ∂̇_j E`.
pub fn metric_tensor(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    m.check_sample(at)?;
    let n = m.dim;
    let e = m.energy_field()?.expand_fiber(at, 2);
    if !e.is_finite() {
        return Err(Error::non_finite(format!("energy at {at}")));
    }
    let g = DMatrix::from_fn(n, n, |i, j| e.partial_along(&[i, j]));
    pipeline::degeneracy_check(&g)?;
    Ok(
        TensorValue::from_fn("g", vec![n, n], vec![IndexRole::DOWN_FIBER; 2], |i| {
            g[(i[0], i[1])]
        })
        .with_symmetry(SymmetryTag::Symmetric(vec![0, 1])),
    )
}

/// Fiber Hessian data of `F` at a sample, used by the Hilbert form checks.
struct FiberJet {
    f: f64,
    grad: Vec<f64>,
    hess: DMatrix<f64>,
}

fn fiber_jet(m: &MetricModel, at: &TangentSample) -> Result<FiberJet> {
    m.check_sample(at)?;
    let n = m.dim;
    let fj = m.require_finsler()?.expand_fiber(at, 2);
    if !fj.is_finite() {
        return Err(Error::non_finite(format!("F at {at}")));
    }
    Ok(FiberJet {
        f: fj.value(),
        grad: (0..n).map(|i| fj.partial_along(&[i])).collect(),
        hess: DMatrix::from_fn(n, n, |i, j| fj.partial_along(&[i, j])),
    })
}

/// `ℓ_i = ∂̇_i F`.
pub fn hilbert_form(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let fj = fiber_jet(m, at)?;
    Ok(TensorValue::from_fn(
        "l",
        vec![m.dim],
        vec![IndexRole::DOWN_FIBER],
        |i| fj.grad[i[0]],
    ))
}

/// `h_ij = g_ij − ℓ_i ℓ_j`, verified against `F ∂̇_i ∂̇_j F` and `h_ij y^j = 0`.
pub fn angular_metric(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let fj = fiber_jet(m, at)?;
    let g = metric_tensor(m, at)?;
    let n = m.dim;
    let h = TensorValue::from_fn("h", vec![n, n], vec![IndexRole::DOWN_FIBER; 2], |i| {
        g.get(i) - fj.grad[i[0]] * fj.grad[i[1]]
    })
    .with_symmetry(SymmetryTag::Symmetric(vec![0, 1]));
    let scale = h.max_abs().max(1.0);
    let mut via_hessian: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            via_hessian = via_hessian.max((h.get(&[i, j]) - fj.f * fj.hess[(i, j)]).abs());
        }
    }
    if via_hessian > 1e-8 * scale {
        return Err(Error::Inconsistent {
            check: "h_ij = F ∂̇_i∂̇_j F".into(),
            residual: via_hessian,
        });
    }
    let hy = h.contract(1, at.y()).max_abs();
    if hy > 1e-10 * scale * norm(at.y()).max(1.0) {
        return Err(Error::Inconsistent {
            check: "h_ij y^j = 0".into(),
            residual: hy,
        });
    }
    Ok(h)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn euler_check(check: &str, residual: f64, scale: f64) -> Result<()> {
    if residual > EULER_TOL * scale.max(1.0) {
        return Err(Error::Inconsistent {
            check: check.into(),
            residual,
        });
    }
    Ok(())
}

/// Spray coefficients `G^i`; 2-homogeneity is verified through the Euler
/// identity `N^i_j y^j = 2G^i` and, for closed-form sprays, along the ray.
pub fn spray_coefficients(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let sg = SampleGeometry::new(m, at)?;
    let g = sg.spray();
    let ny = sg.nonlinear_connection().contract(1, at.y());
    let res = ny
        .components
        .iter()
        .zip(&g.components)
        .fold(0.0f64, |a, (u, v)| a.max((u - 2.0 * v).abs()));
    euler_check("N^i_j y^j = 2G^i", res, g.max_abs())?;
    if let Some(spray) = &m.spray_override {
        let base = spray.at(at);
        for &lambda in &HOMOGENEITY_FACTORS {
            let scaled = spray.at(&at.scaled_y(lambda)?);
            let dev = scaled
                .iter()
                .zip(&base)
                .fold(0.0f64, |a, (s, b)| a.max((s - lambda * lambda * b).abs()));
            euler_check(
                "closed-form spray 2-homogeneity",
                dev,
                lambda * lambda * g.max_abs(),
            )?;
        }
    }
    Ok(g)
}

pub fn nonlinear_connection(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let sg = SampleGeometry::new(m, at)?;
    let nl = sg.nonlinear_connection();
    let res = euler_residuals(&sg)?;
    euler_check("N^i_j y^j = 2G^i", res.connection, nl.max_abs())?;
    Ok(nl)
}

pub fn berwald_connection(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let sg = SampleGeometry::new(m, at)?;
    let b = sg.berwald_connection();
    b.check_symmetries(1e-10)?;
    euler_check(
        "G^h_ij y^j = N^h_i",
        euler_residuals(&sg)?.berwald_connection,
        b.max_abs(),
    )?;
    Ok(b)
}

pub fn berwald_curvature(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let sg = SampleGeometry::new(m, at)?;
    let b = sg.berwald_curvature();
    b.check_symmetries(1e-10)?;
    euler_check(
        "G^h_ijk y^k = 0",
        euler_residuals(&sg)?.berwald_curvature,
        b.max_abs(),
    )?;
    Ok(b)
}

pub fn mean_berwald(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let sg = SampleGeometry::new(m, at)?;
    let e = sg.mean_berwald();
    e.check_symmetries(1e-10)?;
    Ok(e)
}

pub fn landsberg_tensor(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    let sg = SampleGeometry::new(m, at)?;
    let l = sg.landsberg()?;
    l.check_symmetries(1e-10)?;
    Ok(l)
}

pub fn jacobi_endomorphism(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    Ok(SampleGeometry::new(m, at)?.jacobi())
}

/// `R^h_jk`, antisymmetric in `(j, k)` and normalised so that `R^h_ij y^j = Φ^h_i`.
pub fn curvature_r(m: &MetricModel, at: &TangentSample) -> Result<TensorValue> {
    SampleGeometry::new(m, at)?.curvature()
}

/// `δ_i f = ∂_i f − N^j_i ∂̇_j f`.
pub fn delta_derivative(
    m: &MetricModel,
    f: &ScalarField,
    at: &TangentSample,
) -> Result<TensorValue> {
    SampleGeometry::new(m, at)?.delta_derivative(f)
}

/// Residuals of the Euler identities along the pipeline, each in absolute terms.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct EulerResiduals {
    /// `N^i_j y^j − 2G^i`
    pub connection: f64,
    /// `G^h_ij y^j − N^h_i`
    pub berwald_connection: f64,
    /// `G^h_ijk y^k`
    pub berwald_curvature: f64,
    /// `E_jk y^k`
    pub mean_berwald: f64,
    /// `L_ijk y^k` (zero for spray-only models)
    pub landsberg: f64,
    /// `Φ^i_j y^j`
    pub jacobi: f64,
}

impl EulerResiduals {
    pub fn max(&self) -> f64 {
        [
            self.connection,
            self.berwald_connection,
            self.berwald_curvature,
            self.mean_berwald,
            self.landsberg,
            self.jacobi,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn euler_residuals(sg: &SampleGeometry) -> Result<EulerResiduals> {
    let y = sg.sample().y();
    let g = sg.spray();
    let nl = sg.nonlinear_connection();
    let b2 = sg.berwald_connection();
    let b3 = sg.berwald_curvature();
    let e = sg.mean_berwald();
    let phi = sg.jacobi();
    let diff = |a: &TensorValue, b: &TensorValue, k: f64| {
        a.components
            .iter()
            .zip(&b.components)
            .fold(0.0f64, |m, (u, v)| m.max((u - k * v).abs()))
    };
    let landsberg = if sg.has_finsler() {
        sg.landsberg()?.contract(2, y).max_abs()
    } else {
        0.0
    };
    Ok(EulerResiduals {
        connection: diff(&nl.contract(1, y), &g, 2.0),
        berwald_connection: diff(&b2.contract(2, y), &nl, 1.0),
        berwald_curvature: b3.contract(3, y).max_abs(),
        mean_berwald: e.contract(1, y).max_abs(),
        landsberg,
        jacobi: phi.contract(1, y).max_abs(),
    })
}

/// `g^ij h_ij`, equal to `n − 1` for a Finsler metric.
pub fn angular_trace(sg: &SampleGeometry) -> Result<f64> {
    let ginv = sg.inverse_metric()?;
    let h = sg.angular_metric()?;
    Ok(ginv
        .components
        .iter()
        .zip(&h.components)
        .map(|(a, b)| a * b)
        .sum())
}
