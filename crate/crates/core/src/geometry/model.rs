use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calculus::{Jet, ScalarField, TangentSample};
use crate::error::{Error, Result};

/// Where a metric is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Open ball `|x| < radius`.
    Ball {
        radius: f64,
    },
    Whole,
}

/// Fraction of a ball's radius used for default sampling.
pub const BALL_SAMPLING_FRACTION: f64 = 0.6;

impl Domain {
    pub fn unit_ball() -> Self {
        Domain::Ball { radius: 1.0 }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Domain::Ball { radius } => x.iter().map(|v| v * v).sum::<f64>().sqrt() < *radius,
            Domain::Whole => true,
        }
    }

    /// Default radius for sampled base points, inside the safety margin.
    pub fn sampling_radius(&self) -> f64 {
        match self {
            Domain::Ball { radius } => BALL_SAMPLING_FRACTION * radius,
            Domain::Whole => BALL_SAMPLING_FRACTION,
        }
    }

    pub fn check_radius(&self, r: f64) -> Result<()> {
        match self {
            Domain::Ball { radius } if r >= *radius => Err(Error::ConfigError(format!(
                "sampling radius {r} must be smaller than the domain radius {radius}"
            ))),
            _ if r.is_nan() || r <= 0.0 => Err(Error::ConfigError(format!(
                "sampling radius {r} must be positive"
            ))),
            _ => Ok(()),
        }
    }
}

type SprayFn = dyn Fn(&[Jet], &[Jet]) -> Vec<Jet> + Send + Sync;

/// Spray coefficients `G^i(x, y)` given in closed form.
#[derive(Clone)]
pub struct SprayField {
    f: Arc<SprayFn>,
}

impl fmt::Debug for SprayField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SprayField")
    }
}

impl SprayField {
    pub fn new(f: impl Fn(&[Jet], &[Jet]) -> Vec<Jet> + Send + Sync + 'static) -> Self {
        SprayField { f: Arc::new(f) }
    }

    pub fn eval(&self, x: &[Jet], y: &[Jet]) -> Vec<Jet> {
        (self.f)(x, y)
    }

    pub fn at(&self, at: &TangentSample) -> Vec<f64> {
        let s = crate::calculus::JetSpace::get(0, 0);
        let xs: Vec<Jet> = at.x().iter().map(|&v| Jet::constant(&s, v)).collect();
        let ys: Vec<Jet> = at.y().iter().map(|&v| Jet::constant(&s, v)).collect();
        self.eval(&xs, &ys).iter().map(Jet::value).collect()
    }

    /// The `i`-th coefficient as a scalar field.
    pub fn component(&self, i: usize) -> ScalarField {
        let f = self.f.clone();
        ScalarField::new(move |x, y| f(x, y).swap_remove(i))
    }
}

/// A Finsler function, a spray, or both, on a domain of `R^n`.
#[derive(Debug, Clone)]
pub struct MetricModel {
    pub name: String,
    pub dim: usize,
    pub domain: Domain,
    pub finsler: Option<ScalarField>,
    pub spray_override: Option<SprayField>,
}

impl MetricModel {
    pub fn from_finsler(
        name: impl Into<String>,
        dim: usize,
        domain: Domain,
        f: ScalarField,
    ) -> Result<Self> {
        check_dim(dim)?;
        Ok(MetricModel {
            name: name.into(),
            dim,
            domain,
            finsler: Some(f),
            spray_override: None,
        })
    }

    pub fn spray_only(
        name: impl Into<String>,
        dim: usize,
        domain: Domain,
        spray: SprayField,
    ) -> Result<Self> {
        check_dim(dim)?;
        Ok(MetricModel {
            name: name.into(),
            dim,
            domain,
            finsler: None,
            spray_override: Some(spray),
        })
    }

    pub fn with_spray_override(mut self, spray: SprayField) -> Self {
        self.spray_override = Some(spray);
        self
    }

    pub fn has_finsler(&self) -> bool {
        self.finsler.is_some()
    }

    pub(crate) fn require_finsler(&self) -> Result<&ScalarField> {
        self.finsler.as_ref().ok_or_else(|| {
            Error::BadParameter(format!(
                "metric `{}` is spray-only; a Finsler function is required",
                self.name
            ))
        })
    }

    /// `E = F²/2` as a scalar field.
    pub fn energy_field(&self) -> Result<ScalarField> {
        let f = self.require_finsler()?.clone();
        Ok(ScalarField::new(move |x, y| {
            let v = f.eval(x, y);
            &v * &v * 0.5
        }))
    }

    pub(crate) fn check_sample(&self, at: &TangentSample) -> Result<()> {
        if at.dim() != self.dim {
            return Err(Error::InvalidSample(format!(
                "sample has dimension {}, metric `{}` has {}",
                at.dim(),
                self.name,
                self.dim
            )));
        }
        if !self.domain.contains(at.x()) {
            return Err(Error::non_finite(format!(
                "{at} lies outside the domain of `{}`",
                self.name
            )));
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::BadParameter(format!(
            "dimension must be at least 2, got {dim}"
        )));
    }
    Ok(())
}
