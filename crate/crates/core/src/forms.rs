//! 1-forms `β = b_i(x) y^i` and the parallelness machinery: Berwald
//! horizontal covariant derivatives, `d_h β`, `d_R β`, the covector `m_j`,
//! Randers lifts and functional independence.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::calculus::{dot, Jet, JetSpace, ScalarField, Scheme, TangentSample};
use crate::error::{Error, Result};
use crate::geometry::{IndexRole, MetricModel, SampleGeometry, SymmetryTag, TensorValue};
use crate::sampling::Sampler;

type CoeffFn = dyn Fn(&[Jet]) -> Vec<Jet> + Send + Sync;

/// Coefficient field `b_i(x)` of a 1-form. The coefficients are evaluated
/// on jets, so `∂_j b_i` comes from the same closure.
#[derive(Clone)]
pub struct OneForm {
    pub name: String,
    dim: usize,
    b: Arc<CoeffFn>,
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneForm({}, n={})", self.name, self.dim)
    }
}

impl OneForm {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        b: impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static,
    ) -> Self {
        OneForm {
            name: name.into(),
            dim,
            b: Arc::new(b),
        }
    }

    pub fn constant(b: Vec<f64>) -> Self {
        let n = b.len();
        OneForm::new(format!("constant{b:?}"), n, move |x| {
            b.iter().map(|&v| x[0].lift(v)).collect()
        })
    }

    /// `b_i = x_i`.
    pub fn position(n: usize) -> Self {
        OneForm::new("position", n, |x| x.to_vec())
    }

    /// The parallel family of the Funk-type example metric:
    /// `b_1 = (c + c_μ x^μ)/w²`, `b_μ = a_μ b_1/a_1 − c_μ/(a_1 w)`, `w = 1 + ⟨a,x⟩`.
    pub fn example1_family(a: &[f64], c: f64, c_mu: &[f64]) -> Result<Self> {
        let n = a.len();
        if n < 2 {
            return Err(Error::BadParameter(
                "parameter vector a needs at least 2 entries".into(),
            ));
        }
        // c_mu is indexed by μ = 2..n; a full-length vector must have c_1 = 0.
        let c_mu = match c_mu.len() {
            l if l == n - 1 => c_mu,
            l if l == n && c_mu[0] == 0.0 => &c_mu[1..],
            l if l == n => {
                return Err(Error::BadParameter(format!(
                    "c_mu is indexed from 2; a full-length vector needs c_mu[0] = 0, got {}",
                    c_mu[0]
                )))
            }
            l => {
                return Err(Error::BadParameter(format!(
                    "c_mu has {l} entries, expected {} or {n}",
                    n - 1
                )))
            }
        };
        if a[0] == 0.0 {
            return Err(Error::BadParameter(
                "the family divides by a_1; a_1 must be nonzero".into(),
            ));
        }
        let a = a.to_vec();
        let c_mu = c_mu.to_vec();
        Ok(OneForm::new("example1_family", n, move |x| {
            let w = x[0].lift(1.0) + crate::calculus::dot_const(x, &a);
            let mut num = x[0].lift(c);
            for (m, cm) in c_mu.iter().enumerate() {
                num += &x[m + 1] * *cm;
            }
            let b1 = &num / &(&w * &w);
            let mut out = vec![b1.clone()];
            for (m, cm) in c_mu.iter().enumerate() {
                out.push(&b1 * (a[m + 1] / a[0]) - &w.recip() * (cm / a[0]));
            }
            out
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let b = self.b.clone();
        OneForm {
            name: format!("{}*{lambda}", self.name),
            dim: self.dim,
            b: Arc::new(move |x| b(x).into_iter().map(|v| v * lambda).collect()),
        }
    }

    pub fn eval(&self, x: &[Jet]) -> Vec<Jet> {
        (self.b)(x)
    }

    pub fn coeffs(&self, x: &[f64]) -> Vec<f64> {
        let s = JetSpace::get(0, 0);
        let xs: Vec<Jet> = x.iter().map(|&v| Jet::constant(&s, v)).collect();
        self.eval(&xs).iter().map(Jet::value).collect()
    }

    /// `db[i][j] = ∂_j b_i`.
    pub fn derivative(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let n = self.dim;
        let s = JetSpace::get(n, 1);
        let xs = Jet::variables(&s, x, 0);
        self.eval(&xs)
            .iter()
            .map(|bi| (0..n).map(|j| bi.partial_along(&[j])).collect())
            .collect()
    }

    /// `β(x, y) = b_i(x) y^i` as a field on the tangent bundle.
    pub fn beta_field(&self) -> ScalarField {
        let b = self.b.clone();
        ScalarField::new(move |x, y| dot(&b(x), y))
    }

    fn check_dim(&self, m: &MetricModel) -> Result<()> {
        if self.dim != m.dim {
            return Err(Error::BadParameter(format!(
                "form `{}` has dimension {}, metric `{}` has {}",
                self.name, self.dim, m.name, m.dim
            )));
        }
        Ok(())
    }
}

/// Tolerances for [`is_parallel`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelTolerances {
    pub covariant: f64,
    pub delta: f64,
    pub curvature: f64,
    pub scheme: Scheme,
}

impl ParallelTolerances {
    pub fn for_scheme(scheme: Scheme) -> Self {
        let t = match scheme {
            Scheme::Ad => 1e-7,
            Scheme::Fd => 1e-4,
        };
        ParallelTolerances {
            covariant: t,
            delta: t,
            curvature: t,
            scheme,
        }
    }

    pub fn uniform(tol: f64, scheme: Scheme) -> Self {
        ParallelTolerances {
            covariant: tol,
            delta: tol,
            curvature: tol,
            scheme,
        }
    }
}

impl Default for ParallelTolerances {
    fn default() -> Self {
        Self::for_scheme(Scheme::Ad)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParallelVerdict {
    ParallelWithinTol,
    NotParallel,
}

/// Sample where a residual reached its maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Offender {
    pub quantity: String,
    pub sample_index: usize,
    pub sample: TangentSample,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParallelReport {
    pub form: String,
    pub metric: String,
    pub sample_count: usize,
    pub max_covariant: f64,
    pub max_delta: f64,
    pub max_curvature: f64,
    /// `max |y^i ∂̇_i β − β|`
    pub max_homogeneity: f64,
    pub tolerances: ParallelTolerances,
    pub worst: Vec<Offender>,
    pub verdict: ParallelVerdict,
}

impl ParallelReport {
    pub fn passed(&self) -> bool {
        self.verdict == ParallelVerdict::ParallelWithinTol
    }

    pub fn max_residual(&self) -> f64 {
        self.max_covariant
            .max(self.max_delta)
            .max(self.max_curvature)
    }
}

/// `b_ij = ∂_j b_i − G^k_ji b_k` from a prepared sample geometry.
pub fn covariant_derivative_at(sg: &SampleGeometry, w: &OneForm) -> Result<TensorValue> {
    let n = sg.dim();
    let at = sg.sample();
    let b = w.coeffs(at.x());
    let db = w.derivative(at.x());
    let gc = sg.berwald_connection();
    let cov = TensorValue::from_fn("b_i|j", vec![n, n], vec![IndexRole::DOWN; 2], |ix| {
        let (i, j) = (ix[0], ix[1]);
        db[i][j] - (0..n).map(|k| gc.get(&[k, j, i]) * b[k]).sum::<f64>()
    });
    if !cov.is_finite() {
        return Err(Error::non_finite(format!(
            "covariant derivative of `{}` at {at}",
            w.name
        )));
    }

    let delta = sg.delta_derivative(&w.beta_field())?;
    let contracted = cov.contract(0, at.y());
    let scale = 1.0 + cov.max_abs() * at.y().iter().map(|v| v.abs()).sum::<f64>();
    let tol = match sg.scheme() {
        Scheme::Ad => 1e-10,
        Scheme::Fd => 1e-4,
    };
    let res = contracted.max_abs_diff(&delta);
    if res > tol * scale {
        return Err(Error::Inconsistent {
            check: "y^i b_i|j = δ_j β".into(),
            residual: res,
        });
    }
    Ok(cov)
}

/// Berwald horizontal covariant derivative `b_i|j`.
pub fn covariant_derivative(
    m: &MetricModel,
    w: &OneForm,
    at: &TangentSample,
) -> Result<TensorValue> {
    w.check_dim(m)?;
    covariant_derivative_at(&SampleGeometry::new(m, at)?, w)
}

/// `d_R β`: the 2-form `R^h_jk b_h` and its contraction `R^h_j b_h`.
pub fn d_r_beta_at(sg: &SampleGeometry, w: &OneForm) -> Result<(TensorValue, TensorValue)> {
    let n = sg.dim();
    let at = sg.sample();
    let b = w.coeffs(at.x());
    let r = sg.curvature()?;
    let two = TensorValue::from_fn("R^h_jk b_h", vec![n, n], vec![IndexRole::DOWN; 2], |ix| {
        (0..n).map(|h| r.get(&[h, ix[0], ix[1]]) * b[h]).sum()
    })
    .with_symmetry(SymmetryTag::Antisymmetric(0, 1));
    let mut one = two.contract(1, at.y());
    one.name = "R^h_j b_h".into();
    Ok((two, one))
}

pub fn d_r_beta(
    m: &MetricModel,
    w: &OneForm,
    at: &TangentSample,
) -> Result<(TensorValue, TensorValue)> {
    w.check_dim(m)?;
    d_r_beta_at(&SampleGeometry::new(m, at)?, w)
}

/// `m_j = b_j − (β/F) ℓ_j`, with `|m|` recorded in the notes.
pub fn m_covector_at(sg: &SampleGeometry, w: &OneForm) -> Result<TensorValue> {
    let n = sg.dim();
    let at = sg.sample();
    let b = w.coeffs(at.x());
    let f = sg.finsler_value()?;
    let l = sg.hilbert_form()?;
    let beta: f64 = b.iter().zip(at.y()).map(|(u, v)| u * v).sum();
    let mv = TensorValue::from_fn("m", vec![n], vec![IndexRole::DOWN_FIBER], |i| {
        b[i[0]] - beta / f * l.components[i[0]]
    });
    let norm = mv.components.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(mv.with_note(format!("|m| = {norm:e}")))
}

pub fn m_covector(m: &MetricModel, w: &OneForm, at: &TangentSample) -> Result<TensorValue> {
    w.check_dim(m)?;
    m_covector_at(&SampleGeometry::new(m, at)?, w)
}

/// Largest `|m|` over `count` seeded fiber directions at the base point `x`.
pub fn m_covector_sweep(
    m: &MetricModel,
    w: &OneForm,
    x: &[f64],
    count: usize,
    seed: u64,
) -> Result<f64> {
    w.check_dim(m)?;
    let mut sampler = Sampler::new(seed);
    let mut best: f64 = 0.0;
    for _ in 0..count {
        let at = TangentSample::new(x.to_vec(), sampler.unit_vector(m.dim))?;
        let mv = m_covector(m, w, &at)?;
        best = best.max(mv.components.iter().map(|v| v * v).sum::<f64>().sqrt());
    }
    Ok(best)
}

/// Minimum number of samples accepted by [`is_parallel`].
pub const MIN_PARALLEL_SAMPLES: usize = 10;

struct Worst {
    value: f64,
    index: usize,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            index: 0,
        }
    }

    fn update(&mut self, value: f64, index: usize) {
        if value > self.value || value.is_nan() {
            self.value = value;
            self.index = index;
        }
    }
}

/// Checks `d_h β = 0` (as `b_i|j = 0` and `δ_j β = 0`), `d_𝒞 β = β` and
/// `d_R β = 0` at every sample.
pub fn is_parallel(
    m: &MetricModel,
    w: &OneForm,
    samples: &[TangentSample],
    tol: ParallelTolerances,
) -> Result<ParallelReport> {
    w.check_dim(m)?;
    if samples.len() < MIN_PARALLEL_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_PARALLEL_SAMPLES,
            got: samples.len(),
        });
    }
    let beta = w.beta_field();
    let mut cov_w = Worst::new();
    let mut delta_w = Worst::new();
    let mut curv_w = Worst::new();
    let mut homog: f64 = 0.0;
    for (k, at) in samples.iter().enumerate() {
        let sg = SampleGeometry::with_scheme(m, at, tol.scheme)?;
        cov_w.update(covariant_derivative_at(&sg, w)?.max_abs(), k);
        delta_w.update(sg.delta_derivative(&beta)?.max_abs(), k);
        let (two, _) = d_r_beta_at(&sg, w)?;
        curv_w.update(two.max_abs(), k);

        let bj = beta.expand_fiber(at, 1);
        let euler: f64 = (0..m.dim).map(|i| at.y()[i] * bj.partial_along(&[i])).sum();
        let r = (euler - bj.value()).abs();
        homog = homog.max(r);
        if r > 1e-14 * (1.0 + bj.value().abs()) {
            return Err(Error::Inconsistent {
                check: "d_C β = β".into(),
                residual: r,
            });
        }
    }
    let offender = |q: &str, wst: &Worst| Offender {
        quantity: q.into(),
        sample_index: wst.index,
        sample: samples[wst.index].clone(),
        value: wst.value,
    };
    let pass =
        cov_w.value <= tol.covariant && delta_w.value <= tol.delta && curv_w.value <= tol.curvature;
    Ok(ParallelReport {
        form: w.name.clone(),
        metric: m.name.clone(),
        sample_count: samples.len(),
        max_covariant: cov_w.value,
        max_delta: delta_w.value,
        max_curvature: curv_w.value,
        max_homogeneity: homog,
        tolerances: tol,
        worst: vec![
            offender("b_i|j", &cov_w),
            offender("delta_j beta", &delta_w),
            offender("R^h_jk b_h", &curv_w),
        ],
        verdict: if pass {
            ParallelVerdict::ParallelWithinTol
        } else {
            ParallelVerdict::NotParallel
        },
    })
}

/// Seed and count of the positivity probe used by [`randers_lift`].
pub const LIFT_PROBE_SEED: u64 = 0x5eed;
pub const LIFT_PROBE_COUNT: usize = 256;

/// `F̄ = F + β`, after checking positivity on seeded samples and along
/// `y = −b(x)` at each sampled base point.
pub fn randers_lift(m: &MetricModel, w: &OneForm) -> Result<MetricModel> {
    w.check_dim(m)?;
    let f = m.require_finsler()?.clone();
    let beta = w.beta_field();
    let lifted = {
        let (f, beta) = (f.clone(), beta.clone());
        ScalarField::new(move |x, y| f.eval(x, y) + beta.eval(x, y))
    };
    let mut sampler = Sampler::new(LIFT_PROBE_SEED);
    let radius = m.domain.sampling_radius();
    let mut min = f64::INFINITY;
    for _ in 0..LIFT_PROBE_COUNT {
        let at = sampler.tangent(m.dim, radius);
        min = min.min(lifted.at(&at));
        let b = w.coeffs(at.x());
        if b.iter().any(|v| *v != 0.0) {
            let against = at.with_y(b.iter().map(|v| -v).collect())?;
            let fv = lifted.at(&against);
            let norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
            min = min.min(fv / norm);
        }
    }
    if !(min > 0.0) {
        return Err(Error::NotPositive { min });
    }
    MetricModel::from_finsler(format!("{}+{}", m.name, w.name), m.dim, m.domain, lifted)
}

/// Deformation `φ` in `F̄ = F φ(β/F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiChoice {
    /// `φ(s) = 1 + s`, the Randers case.
    OnePlusS,
    /// `φ(s) = e^s`.
    Exp,
}

impl PhiChoice {
    pub fn apply(&self, s: &Jet) -> Jet {
        match self {
            PhiChoice::OnePlusS => s + 1.0,
            PhiChoice::Exp => s.exp(),
        }
    }
}

impl std::str::FromStr for PhiChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1+s" | "one_plus_s" | "randers" => Ok(PhiChoice::OnePlusS),
            "exp" | "e^s" => Ok(PhiChoice::Exp),
            other => Err(Error::ConfigError(format!("unknown deformation `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceReport {
    pub max_rank: usize,
    pub ranks: Vec<usize>,
}

/// Relative threshold on `σ_2/σ_1` for the 2×2n Jacobian.
pub const INDEPENDENCE_THRESHOLD: f64 = 1e-8;

/// Numerical rank of the Jacobian of `(F, F̄)` in `(x, y)` at each sample.
pub fn functional_independence(
    m: &MetricModel,
    w: &OneForm,
    phi: PhiChoice,
    samples: &[TangentSample],
) -> Result<IndependenceReport> {
    w.check_dim(m)?;
    let f = m.require_finsler()?;
    let beta = w.beta_field();
    let mut ranks = Vec::with_capacity(samples.len());
    for at in samples {
        m.check_sample(at)?;
        let fj = f.expand(at, 1);
        let bj = beta.expand(at, 1);
        let fbar = &fj * &phi.apply(&(&bj / &fj));
        if !fj.is_finite() || !fbar.is_finite() {
            return Err(Error::non_finite(format!("Jacobian of (F, F̄) at {at}")));
        }
        let cols = 2 * m.dim;
        let jac = DMatrix::from_fn(2, cols, |r, c| {
            if r == 0 {
                fj.partial_along(&[c])
            } else {
                fbar.partial_along(&[c])
            }
        });
        let sv = jac.singular_values();
        let (s1, s2) = (sv.max(), sv.min());
        let rank = if s1 == 0.0 {
            0
        } else if s2 > INDEPENDENCE_THRESHOLD * s1 {
            2
        } else {
            1
        };
        ranks.push(rank);
    }
    Ok(IndependenceReport {
        max_rank: ranks.iter().copied().max().unwrap_or(0),
        ranks,
    })
}

/// `(max |ℓ_h G^h_ijk|, max |b_h G^h_ijk|)`.
pub fn annihilation_check_at(sg: &SampleGeometry, w: &OneForm) -> Result<(f64, f64)> {
    let l = sg.hilbert_form()?;
    let b = w.coeffs(sg.sample().x());
    let gc = sg.berwald_curvature();
    Ok((
        gc.contract(0, &l.components).max_abs(),
        gc.contract(0, &b).max_abs(),
    ))
}

pub fn annihilation_check(m: &MetricModel, w: &OneForm, at: &TangentSample) -> Result<(f64, f64)> {
    w.check_dim(m)?;
    annihilation_check_at(&SampleGeometry::new(m, at)?, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::norm_sq;
    use crate::geometry::Domain;
    use crate::sampling::tangent_samples;

    fn euclid(n: usize) -> MetricModel {
        MetricModel::from_finsler(
            "euclidean",
            n,
            Domain::Whole,
            ScalarField::new(|_x, y| norm_sq(y).sqrt()),
        )
        .unwrap()
    }

    #[test]
    fn euclidean_covariant_derivatives() {
        let at = TangentSample::new(vec![0.1, 0.2, -0.3], vec![0.0, 1.0, 0.0]).unwrap();
        let c =
            covariant_derivative(&euclid(3), &OneForm::constant(vec![1.0, 2.0, 3.0]), &at).unwrap();
        assert_eq!(c.max_abs(), 0.0);
        let p = covariant_derivative(&euclid(3), &OneForm::position(3), &at).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.get(&[i, j]), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn euclidean_m_covector() {
        let b = OneForm::constant(vec![1.0, 0.0, 0.0]);
        let along = TangentSample::new(vec![0.0; 3], vec![1.0, 0.0, 0.0]).unwrap();
        assert!(m_covector(&euclid(3), &b, &along).unwrap().max_abs() < 1e-15);
        let across = TangentSample::new(vec![0.0; 3], vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(
            m_covector(&euclid(3), &b, &across).unwrap().components,
            vec![1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn euclidean_parallel_verdicts() {
        let samples = tangent_samples(3, 3, 0.6, 12);
        let tol = ParallelTolerances::default();
        let r = is_parallel(
            &euclid(3),
            &OneForm::constant(vec![0.3, -1.0, 2.0]),
            &samples,
            tol,
        )
        .unwrap();
        assert!(r.passed());
        let r = is_parallel(&euclid(3), &OneForm::position(3), &samples, tol).unwrap();
        assert_eq!(r.verdict, ParallelVerdict::NotParallel);
        assert!((r.max_covariant - 1.0).abs() < 1e-15);
        let few = &samples[..5];
        assert!(matches!(
            is_parallel(&euclid(3), &OneForm::position(3), few, tol),
            Err(Error::InsufficientSamples { needed: 10, got: 5 })
        ));
    }

    #[test]
    fn randers_lift_positivity() {
        let ok = randers_lift(&euclid(3), &OneForm::constant(vec![0.5, 0.0, 0.0])).unwrap();
        let at = TangentSample::new(vec![0.0; 3], vec![-1.0, 0.0, 0.0]).unwrap();
        assert!((ok.finsler.as_ref().unwrap().at(&at) - 0.5).abs() < 1e-15);
        let err = randers_lift(&euclid(3), &OneForm::constant(vec![2.0, 0.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
    }

    #[test]
    fn independence_ranks() {
        let b = OneForm::constant(vec![1.0, 0.0, 0.0]);
        let across = TangentSample::new(vec![0.0; 3], vec![0.0, 1.0, 0.0]).unwrap();
        let along = TangentSample::new(vec![0.0; 3], vec![1.0, 0.0, 0.0]).unwrap();
        let r = functional_independence(
            &euclid(3),
            &b,
            PhiChoice::OnePlusS,
            std::slice::from_ref(&across),
        )
        .unwrap();
        assert_eq!(r.ranks, vec![2]);
        let r =
            functional_independence(&euclid(3), &b, PhiChoice::OnePlusS, &[along, across]).unwrap();
        assert_eq!(r.ranks, vec![1, 2]);
        assert_eq!(r.max_rank, 2);
    }

    #[test]
    fn example1_family_rejects_zero_a1() {
        assert!(OneForm::example1_family(&[0.0, 0.5, 0.0], 1.0, &[0.0, 0.0]).is_err());
        assert!(OneForm::example1_family(&[0.5, 0.0, 0.0], 1.0, &[0.0]).is_err());
        assert!(OneForm::example1_family(&[0.5, 0.0, 0.0], 1.0, &[0.1, 0.2, 0.0]).is_err());
        let short = OneForm::example1_family(&[0.5, 0.1, 0.0], 1.0, &[0.2, 0.0]).unwrap();
        let full = OneForm::example1_family(&[0.5, 0.1, 0.0], 1.0, &[0.0, 0.2, 0.0]).unwrap();
        assert_eq!(
            short.coeffs(&[0.1, 0.2, 0.3]),
            full.coeffs(&[0.1, 0.2, 0.3])
        );
        let w = OneForm::example1_family(&[0.5, 0.0, 0.0], 1.0, &[0.0, 0.0]).unwrap();
        assert_eq!(w.coeffs(&[0.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0]);
    }
}
