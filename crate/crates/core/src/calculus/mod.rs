//! Point-wise differentiation of scalar fields on the slit tangent bundle.
//!
//! The default scheme is forward-mode truncated Taylor arithmetic ([`Jet`]);
//! a Richardson-extrapolated central-difference scheme is kept as an
//! independent cross-check.

mod fd;
pub mod jet;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use fd::fd_partial;
pub use jet::{dot, dot_const, norm_sq, Jet, JetSpace};

use crate::error::{Error, Result};

/// Largest x-derivative order the pipeline ever requests.
pub const MAX_X_ORDER: usize = 2;
/// Largest y-derivative order the pipeline ever requests (third fiber
/// derivatives of the spray contain fifth fiber derivatives of the energy).
pub const MAX_Y_ORDER: usize = 5;

/// A point `(x, y)` of the slit tangent bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl TangentSample {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidSample(format!(
                "x has {} coordinates, y has {}",
                x.len(),
                y.len()
            )));
        }
        if x.is_empty() {
            return Err(Error::InvalidSample("empty coordinates".into()));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSample("non-finite coordinate".into()));
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(Error::InvalidSample(
                "fiber vector y must be nonzero".into(),
            ));
        }
        Ok(TangentSample { x, y })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// The same base point with a different fiber vector.
    pub fn with_y(&self, y: Vec<f64>) -> Result<Self> {
        TangentSample::new(self.x.clone(), y)
    }

    pub fn scaled_y(&self, lambda: f64) -> Result<Self> {
        self.with_y(self.y.iter().map(|v| v * lambda).collect())
    }

    /// Concatenated `(x, y)` coordinates.
    pub fn coords(&self) -> Vec<f64> {
        self.x.iter().chain(&self.y).copied().collect()
    }
}

impl fmt::Display for TangentSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={:?} y={:?}", self.x, self.y)
    }
}

type FieldFn = dyn Fn(&[Jet], &[Jet]) -> Jet + Send + Sync;

/// A scalar function of `(x, y)`, evaluable on jets.
#[derive(Clone)]
pub struct ScalarField {
    f: Arc<FieldFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField")
    }
}

impl ScalarField {
    pub fn new(f: impl Fn(&[Jet], &[Jet]) -> Jet + Send + Sync + 'static) -> Self {
        ScalarField { f: Arc::new(f) }
    }

    pub fn eval(&self, x: &[Jet], y: &[Jet]) -> Jet {
        (self.f)(x, y)
    }

    pub fn eval_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        let s = JetSpace::get(0, 0);
        let xs: Vec<Jet> = x.iter().map(|&v| Jet::constant(&s, v)).collect();
        let ys: Vec<Jet> = y.iter().map(|&v| Jet::constant(&s, v)).collect();
        self.eval(&xs, &ys).value()
    }

    pub fn at(&self, at: &TangentSample) -> f64 {
        self.eval_f64(at.x(), at.y())
    }

    /// Taylor expansion about `at` in the variables `(x, y)` (x first),
    /// truncated at total degree `degree`.
    pub fn expand(&self, at: &TangentSample, degree: usize) -> Jet {
        let n = at.dim();
        let space = JetSpace::get(2 * n, degree);
        let xs = Jet::variables(&space, at.x(), 0);
        let ys = Jet::variables(&space, at.y(), n);
        self.eval(&xs, &ys)
    }

    /// Taylor expansion in `y` only, with `x` frozen.
    pub fn expand_fiber(&self, at: &TangentSample, degree: usize) -> Jet {
        let n = at.dim();
        let space = JetSpace::get(n, degree);
        let xs: Vec<Jet> = at.x().iter().map(|&v| Jet::constant(&space, v)).collect();
        let ys = Jet::variables(&space, at.y(), 0);
        self.eval(&xs, &ys)
    }
}

/// Maximum derivative orders requested from [`eval_jet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetOrder {
    pub kx: usize,
    pub ky: usize,
}

impl JetOrder {
    pub fn new(kx: usize, ky: usize) -> Result<Self> {
        if kx > MAX_X_ORDER || ky > MAX_Y_ORDER {
            return Err(Error::BadParameter(format!(
                "jet order ({kx}, {ky}) exceeds caps ({MAX_X_ORDER}, {MAX_Y_ORDER})"
            )));
        }
        Ok(JetOrder { kx, ky })
    }
}

/// Differentiation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    #[default]
    Ad,
    Fd,
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ad" => Ok(Scheme::Ad),
            "fd" => Ok(Scheme::Fd),
            other => Err(Error::ConfigError(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Value and all mixed partials `∂^a_x ∂^b_y f` with `a ≤ kx`, `b ≤ ky`.
///
/// Partials are stored once per multiset of indices; lookups canonicalise
/// the index order, so same-block permutations are symmetric by construction.
#[derive(Debug, Clone)]
pub struct ScalarJet {
    n: usize,
    order: JetOrder,
    exps: Vec<Vec<u8>>,
    values: Vec<f64>,
}

impl ScalarJet {
    pub fn value(&self) -> f64 {
        self.values[0]
    }

    pub fn order(&self) -> JetOrder {
        self.order
    }

    /// `∂_{xi...} ∂̇_{yi...} f`.
    pub fn partial(&self, xi: &[usize], yi: &[usize]) -> Option<f64> {
        let mut e = vec![0u8; 2 * self.n];
        for &i in xi {
            e[i] += 1;
        }
        for &i in yi {
            e[self.n + i] += 1;
        }
        self.exps
            .iter()
            .position(|c| *c == e)
            .map(|k| self.values[k])
    }

    /// Fiber gradient `∂̇_i f`.
    pub fn fiber_gradient(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.partial(&[], &[i]).unwrap_or(f64::NAN))
            .collect()
    }

    /// Iterate `(exponents, value)` in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.exps
            .iter()
            .map(|e| e.as_slice())
            .zip(self.values.iter().copied())
    }
}

fn wanted(e: &[u8], n: usize, order: JetOrder) -> bool {
    let ax: usize = e[..n].iter().map(|&v| v as usize).sum();
    let by: usize = e[n..].iter().map(|&v| v as usize).sum();
    ax <= order.kx && by <= order.ky
}

/// Value and mixed partials of `f` at `at` up to `order`.
pub fn eval_jet(
    f: &ScalarField,
    at: &TangentSample,
    order: JetOrder,
    scheme: Scheme,
) -> Result<ScalarJet> {
    let n = at.dim();
    let degree = order.kx + order.ky;
    let space = JetSpace::get(2 * n, degree);
    let mut exps = Vec::new();
    for k in 0..space.len() {
        let e = space.exponents(k);
        if wanted(e, n, order) {
            exps.push(e.to_vec());
        }
    }
    let values: Vec<f64> = match scheme {
        Scheme::Ad => {
            let jet = f.expand(at, degree);
            exps.iter().map(|e| jet.partial(e)).collect()
        }
        Scheme::Fd => {
            let point = at.coords();
            let eval = |p: &[f64]| f.eval_f64(&p[..n], &p[n..]);
            exps.iter().map(|e| fd_partial(&eval, &point, e)).collect()
        }
    };
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::non_finite(format!(
            "jet component {:?} at {at}",
            exps[k]
        )));
    }
    Ok(ScalarJet {
        n,
        order,
        exps,
        values,
    })
}

/// Scale factors probed by [`homogeneity_check`].
pub const HOMOGENEITY_FACTORS: [f64; 3] = [0.5, 2.0, 3.7];

/// `max_λ |f(x, λy) − λ^degree f(x, y)| / (1 + |f(x, y)|)`.
pub fn homogeneity_check(f: &ScalarField, at: &TangentSample, degree: i32) -> Result<f64> {
    let base = f.at(at);
    if !base.is_finite() {
        return Err(Error::non_finite(format!("field value at {at}")));
    }
    let mut worst: f64 = 0.0;
    for &lambda in &HOMOGENEITY_FACTORS {
        let scaled = f.eval_f64(
            at.x(),
            &at.y().iter().map(|v| v * lambda).collect::<Vec<_>>(),
        );
        if !scaled.is_finite() {
            return Err(Error::non_finite(format!(
                "field value on the ray through {at}"
            )));
        }
        worst = worst.max((scaled - lambda.powi(degree) * base).abs() / (1.0 + base.abs()));
    }
    Ok(worst)
}

/// `∂^orders f` evaluated at the jets `args`: the derivative field is
/// expanded about the base point of `args` and composed with their
/// increments, so the result carries all derivatives up to the degree of
/// `args`.
pub fn derivative_at(f: &dyn Fn(&[Jet]) -> Jet, args: &[Jet], orders: &[u8]) -> Jet {
    let target = args[0].space().clone();
    let extra: usize = orders.iter().map(|&o| o as usize).sum();
    let local_space = JetSpace::get(args.len(), target.degree() + extra);
    let base: Vec<f64> = args.iter().map(Jet::value).collect();
    let local = Jet::variables(&local_space, &base, 0);
    let mut d = f(&local);
    for (v, &o) in orders.iter().enumerate() {
        for _ in 0..o {
            d = d.derivative(v);
        }
    }
    let reduced = d.reduce(&JetSpace::get(args.len(), target.degree()));
    reduced.compose(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn norm_field() -> ScalarField {
        ScalarField::new(|_x, y| norm_sq(y).sqrt())
    }

    #[test]
    fn tangent_sample_rejects_zero_fiber() {
        assert!(TangentSample::new(vec![0.0; 3], vec![0.0; 3]).is_err());
        assert!(TangentSample::new(vec![0.0; 3], vec![1.0; 2]).is_err());
        assert!(TangentSample::new(vec![0.0; 2], vec![1.0, 0.0]).is_ok());
    }

    #[test]
    fn jet_order_caps() {
        assert!(JetOrder::new(2, 5).is_ok());
        assert!(JetOrder::new(3, 0).is_err());
        assert!(JetOrder::new(0, 6).is_err());
    }

    #[test]
    fn norm_gradient_and_hessian() {
        let at = TangentSample::new(vec![0.3, -0.1, 0.2], vec![1.0, 0.0, 0.0]).unwrap();
        let j = eval_jet(&norm_field(), &at, JetOrder::new(0, 1).unwrap(), Scheme::Ad).unwrap();
        assert_eq!(j.value(), 1.0);
        assert_eq!(j.fiber_gradient(), vec![1.0, 0.0, 0.0]);
        let j = eval_jet(&norm_field(), &at, JetOrder::new(0, 2).unwrap(), Scheme::Ad).unwrap();
        let expected = [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for k in 0..3 {
                assert_relative_eq!(
                    j.partial(&[], &[i, k]).unwrap(),
                    expected[i][k],
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn partial_lookup_is_order_independent() {
        let f = ScalarField::new(|x, y| (&x[0] * &y[1]).sin() * y[2].exp() + &x[1] * &y[0].powi(3));
        let at = TangentSample::new(vec![0.2, 0.4, -0.3], vec![0.5, -1.0, 0.7]).unwrap();
        let j = eval_jet(&f, &at, JetOrder::new(1, 3).unwrap(), Scheme::Ad).unwrap();
        let a = j.partial(&[0], &[1, 2, 1]).unwrap();
        let b = j.partial(&[0], &[2, 1, 1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_finite_is_reported() {
        let f = ScalarField::new(|x, y| norm_sq(y).sqrt() / (1.0 - norm_sq(x)));
        let at = TangentSample::new(vec![1.0, 0.0], vec![1.0, 0.0]).unwrap();
        let err = eval_jet(&f, &at, JetOrder::new(0, 1).unwrap(), Scheme::Ad).unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { .. }));
    }

    #[test]
    fn homogeneity_of_norm_and_linear_form() {
        let at = TangentSample::new(vec![0.1, 0.2, 0.3], vec![0.3, -0.4, 1.2]).unwrap();
        assert!(homogeneity_check(&norm_field(), &at, 1).unwrap() < 1e-15);
        let beta = ScalarField::new(|x, y| dot(x, y) + &y[0] * 2.0);
        assert_eq!(homogeneity_check(&beta, &at, 1).unwrap(), 0.0);
        assert!(homogeneity_check(&norm_field(), &at, 2).unwrap() > 0.1);
    }

    #[test]
    fn derivative_at_composes() {
        // f(r, s) = r^2 s^3; ∂_s f = 3 r^2 s^2, evaluated on jets of degree 1
        let f = |a: &[Jet]| a[0].powi(2) * a[1].powi(3);
        let space = JetSpace::get(2, 1);
        let args = Jet::variables(&space, &[0.5, 2.0], 0);
        let fs = derivative_at(&f, &args, &[0, 1]);
        assert_relative_eq!(fs.value(), 3.0, epsilon = 1e-14);
        // ∂_r ∂_s f = 6 r s^2 = 12; ∂_s ∂_s f = 6 r^2 s = 3
        assert_relative_eq!(fs.partial(&[1, 0]), 12.0, epsilon = 1e-13);
        assert_relative_eq!(fs.partial(&[0, 1]), 3.0, epsilon = 1e-13);
    }
}
