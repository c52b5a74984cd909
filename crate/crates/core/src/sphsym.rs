//! Spherically symmetric metrics `F = u φ(r, s)` with `r = |x|`, `u = |y|`,
//! `s = ⟨x,y⟩/u`: the functions `P`, `Q` of the spray
//! `G^i = u P y^i + u² Q x^i`, the metrizability conditions, and the
//! characterisation of sprays carrying a parallel form `β = f(r)⟨x,y⟩`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::calculus::{dot, norm_sq, Jet, JetSpace, ScalarField, TangentSample};
use crate::error::{Error, Result};
use crate::forms::{is_parallel, OneForm, ParallelReport, ParallelTolerances};
use crate::geometry::{Domain, IndexRole, MetricModel, SampleGeometry, SprayField, TensorValue};

type Fn2 = dyn Fn(&Jet, &Jet) -> Jet + Send + Sync;
type Fn1 = dyn Fn(&Jet) -> Jet + Send + Sync;

/// `|Q denominator|` at or below this is singular.
pub const Q_DENOMINATOR_EPS: f64 = 1e-12;

/// Evaluate `local` as a Taylor polynomial about the values of `args` and
/// substitute the increments of `args`. `local` receives the base point and
/// the required degree.
fn compose_local(args: &[&Jet], local: impl Fn(&[f64], usize) -> Result<Jet>) -> Jet {
    let d = args[0].space().degree();
    let base: Vec<f64> = args.iter().map(|a| a.value()).collect();
    match local(&base, d) {
        Ok(l) => {
            let owned: Vec<Jet> = args.iter().map(|a| (*a).clone()).collect();
            l.compose(&owned)
        }
        Err(_) => args[0].lift(f64::NAN),
    }
}

/// Profile `φ(r, s)`.
#[derive(Clone)]
pub struct SphSymProfile {
    pub name: String,
    phi: Arc<Fn2>,
}

impl fmt::Debug for SphSymProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SphSymProfile({})", self.name)
    }
}

impl SphSymProfile {
    pub fn new(
        name: impl Into<String>,
        phi: impl Fn(&Jet, &Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        SphSymProfile {
            name: name.into(),
            phi: Arc::new(phi),
        }
    }

    /// `φ ≡ 1`.
    pub fn euclidean() -> Self {
        SphSymProfile::new("euclidean", |r, _s| r.lift(1.0))
    }

    /// `φ = (√(1−r²+s²)+s)² / ((1−r²)² √(1−r²+s²))`.
    pub fn berwald_classic() -> Self {
        SphSymProfile::new("berwald_classic", |r, s| {
            let a = r.lift(1.0) - r * r;
            let root = (&a + &(s * s)).sqrt();
            let p = &root + s;
            &(&p * &p) / &(&(&a * &a) * &root)
        })
    }

    pub fn eval(&self, r: &Jet, s: &Jet) -> Jet {
        (self.phi)(r, s)
    }

    pub fn value(&self, r: f64, s: f64) -> f64 {
        let sp = JetSpace::get(0, 0);
        self.eval(&Jet::constant(&sp, r), &Jet::constant(&sp, s))
            .value()
    }

    /// Taylor jet of `φ` about `(r, s)` in the variables `(r, s)`.
    pub fn local_jet(&self, r: f64, s: f64, degree: usize) -> Jet {
        let sp = JetSpace::get(2, degree);
        self.eval(&Jet::variable(&sp, r, 0), &Jet::variable(&sp, s, 1))
    }

    /// `F = u φ(|x|, ⟨x,y⟩/u)` on the ball of radius `r0`.
    pub fn model(&self, dim: usize, r0: f64) -> Result<MetricModel> {
        let phi = self.phi.clone();
        MetricModel::from_finsler(
            format!("sphsym:{}", self.name),
            dim,
            Domain::Ball { radius: r0 },
            ScalarField::new(move |x, y| {
                let r = norm_sq(x).sqrt();
                let u = norm_sq(y).sqrt();
                let s = &dot(x, y) / &u;
                &u * &phi(&r, &s)
            }),
        )
    }
}

/// Largest `|coefficient|` among the monomials free of variable `var`.
fn free_of(j: &Jet, var: usize) -> f64 {
    let sp = j.space();
    (0..sp.len())
        .filter(|&k| sp.exponents(k)[var] == 0)
        .map(|k| j.coeffs()[k].abs())
        .fold(0.0, f64::max)
}

/// `num / r` where `r` is variable 0 with base value `r0`; at `r0 = 0` the
/// quotient is taken as a removable singularity.
fn over_r(num: &Jet, r: &Jet, context: &str) -> Result<Jet> {
    if r.value() != 0.0 {
        return Ok(num / r);
    }
    let scale = 1.0 + num.coeffs().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rest = free_of(num, 0);
    if rest > 1e-10 * scale {
        return Err(Error::DivisionByZero(format!(
            "{context}: 1/r at r = 0 is not removable"
        )));
    }
    Ok(num.shift_divide(0))
}

/// Local `(P, Q)` jets of a profile about `(r0, s0)` in `(r, s)`, degree `d`.
fn pq_local(phi: &Fn2, r0: f64, s0: f64, d: usize) -> Result<(Jet, Jet)> {
    let extra = if r0 == 0.0 { 3 } else { 2 };
    let sp = JetSpace::get(2, d + extra);
    let r = Jet::variable(&sp, r0, 0);
    let s = Jet::variable(&sp, s0, 1);
    let f = phi(&r, &s);
    if !f.is_finite() {
        return Err(Error::non_finite(format!(
            "profile at (r, s) = ({r0}, {s0})"
        )));
    }
    let fr = f.derivative(0);
    let fs = f.derivative(1);
    let frs = fr.derivative(1);
    let fss = fs.derivative(1);
    let cone = &(&r * &r) - &(&s * &s);
    let num = &(&(&s * &frs) + &(&r * &fss)) - &fr;
    let den = &(&f - &(&s * &fs)) + &(&cone * &fss);
    if den.value().abs() <= Q_DENOMINATOR_EPS {
        return Err(Error::SingularDenominator {
            context: format!("Q at (r, s) = ({r0}, {s0})"),
            value: den.value().abs(),
        });
    }
    let q = &over_r(&num, &r, "Q")? / &(&den * 2.0);
    let lead = &(&q / &f) * &(&(&s * &f) + &(&cone * &fs));
    let tail = &(&over_r(&(&s * &fr), &r, "P")? + &fs) / &(&f * 2.0);
    let p = &tail - &lead;
    let target = JetSpace::get(2, d);
    let (p, q) = (p.reduce(&target), q.reduce(&target));
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::non_finite(format!("P, Q at (r, s) = ({r0}, {s0})")));
    }
    Ok((p, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PQValues {
    pub p: f64,
    pub q: f64,
}

/// `P` and `Q` of the profile at `(r, s)`.
pub fn pq_from_profile(profile: &SphSymProfile, r: f64, s: f64) -> Result<PQValues> {
    check_rs(r, s)?;
    let (p, q) = pq_local(profile.phi.as_ref(), r, s, 0)?;
    Ok(PQValues {
        p: p.value(),
        q: q.value(),
    })
}

fn check_rs(r: f64, s: f64) -> Result<()> {
    if !(r >= 0.0) || !s.is_finite() || !r.is_finite() {
        return Err(Error::InvalidSample(format!(
            "(r, s) = ({r}, {s}) is not a valid point"
        )));
    }
    Ok(())
}

/// Pair of functions `P(r, s)`, `Q(r, s)`, evaluable on jets.
#[derive(Clone)]
pub struct PQPair {
    pub name: String,
    p: Arc<Fn2>,
    q: Arc<Fn2>,
}

impl fmt::Debug for PQPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PQPair({})", self.name)
    }
}

/// `P, P_s, Q, Q_s` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PQDerivs {
    pub p: f64,
    pub p_s: f64,
    pub q: f64,
    pub q_s: f64,
}

impl PQPair {
    pub fn new(
        name: impl Into<String>,
        p: impl Fn(&Jet, &Jet) -> Jet + Send + Sync + 'static,
        q: impl Fn(&Jet, &Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        PQPair {
            name: name.into(),
            p: Arc::new(p),
            q: Arc::new(q),
        }
    }

    pub fn zero() -> Self {
        PQPair::new("zero", |r, _| r.lift(0.0), |r, _| r.lift(0.0))
    }

    /// The `P`, `Q` of a profile, as jet-valued functions.
    pub fn from_profile(profile: &SphSymProfile) -> Self {
        let (f1, f2) = (profile.phi.clone(), profile.phi.clone());
        PQPair::new(
            format!("pq:{}", profile.name),
            move |r, s| compose_local(&[r, s], |b, d| Ok(pq_local(f1.as_ref(), b[0], b[1], d)?.0)),
            move |r, s| compose_local(&[r, s], |b, d| Ok(pq_local(f2.as_ref(), b[0], b[1], d)?.1)),
        )
    }

    /// `P` given, `Q = s² f'/(2r³ f) − sP/r² + 1/(2r²)`.
    pub fn parallel(
        f: &RadialFactor,
        p: impl Fn(&Jet, &Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        let p: Arc<Fn2> = Arc::new(p);
        let pc = p.clone();
        let fc = f.clone();
        PQPair {
            name: format!("parallel:{}", f.name),
            p,
            q: Arc::new(move |r, s| {
                let fv = fc.eval(r);
                let fp = fc.derivative_jet(r);
                let r2 = r * r;
                &(&(&(s * s) * &fp) / &(&(&r2 * r) * &fv * 2.0)) - &(&(s * &pc(r, s)) / &r2)
                    + &(&r2 * 2.0).recip()
            }),
        }
    }

    pub fn eval(&self, r: &Jet, s: &Jet) -> (Jet, Jet) {
        ((self.p)(r, s), (self.q)(r, s))
    }

    pub fn values(&self, r: f64, s: f64) -> PQValues {
        let sp = JetSpace::get(0, 0);
        let (p, q) = self.eval(&Jet::constant(&sp, r), &Jet::constant(&sp, s));
        PQValues {
            p: p.value(),
            q: q.value(),
        }
    }

    pub fn derivs(&self, r: f64, s: f64) -> Result<PQDerivs> {
        let sp = JetSpace::get(2, 1);
        let (p, q) = self.eval(&Jet::variable(&sp, r, 0), &Jet::variable(&sp, s, 1));
        let out = PQDerivs {
            p: p.value(),
            p_s: p.partial_along(&[1]),
            q: q.value(),
            q_s: q.partial_along(&[1]),
        };
        if ![out.p, out.p_s, out.q, out.q_s]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::non_finite(format!(
                "{} at (r, s) = ({r}, {s})",
                self.name
            )));
        }
        Ok(out)
    }

    /// `G^i = u P y^i + u² Q x^i` as a spray field.
    pub fn spray_field(&self) -> SprayField {
        let (p, q) = (self.p.clone(), self.q.clone());
        SprayField::new(move |x, y| {
            let r = norm_sq(x).sqrt();
            let u2 = norm_sq(y);
            let u = u2.sqrt();
            let s = &dot(x, y) / &u;
            let up = &u * &p(&r, &s);
            let u2q = &u2 * &q(&r, &s);
            y.iter()
                .zip(x)
                .map(|(yi, xi)| &(&up * yi) + &(&u2q * xi))
                .collect()
        })
    }

    /// Spray-only model of this pair, on all of `R^n`.
    pub fn model(&self, dim: usize) -> Result<MetricModel> {
        MetricModel::spray_only(
            format!("spray:{}", self.name),
            dim,
            Domain::Whole,
            self.spray_field(),
        )
    }
}

/// `(r, s, u)` of a tangent sample.
pub fn rsu(at: &TangentSample) -> (f64, f64, f64) {
    let r = at.x().iter().map(|v| v * v).sum::<f64>().sqrt();
    let u = at.y().iter().map(|v| v * v).sum::<f64>().sqrt();
    let s = at.x().iter().zip(at.y()).map(|(a, b)| a * b).sum::<f64>() / u;
    (r, s, u)
}

/// `G^i = u P y^i + u² Q x^i`.
pub fn spray_from_pq(pq: &PQPair, at: &TangentSample) -> Result<TensorValue> {
    let (r, s, u) = rsu(at);
    let v = pq.values(r, s);
    let t = TensorValue::from_fn("G", vec![at.dim()], vec![IndexRole::UP_FIBER], |i| {
        u * v.p * at.y()[i[0]] + u * u * v.q * at.x()[i[0]]
    });
    if !t.is_finite() {
        return Err(Error::non_finite(format!("spray of {} at {at}", pq.name)));
    }
    Ok(t)
}

/// `G^i_j = uPδ^i_j + P_s x_j y^i + (P − sP_s) y_j y^i/u + u Q_s x^i x_j + (2Q − sQ_s) x^i y_j`.
pub fn connection_from_pq(pq: &PQPair, at: &TangentSample) -> Result<TensorValue> {
    let (r, s, u) = rsu(at);
    let d = pq.derivs(r, s)?;
    let (x, y) = (at.x(), at.y());
    Ok(TensorValue::from_fn(
        "N",
        vec![at.dim(), at.dim()],
        vec![IndexRole::UP_FIBER, IndexRole::DOWN],
        |ix| {
            let (i, j) = (ix[0], ix[1]);
            let delta = if i == j { 1.0 } else { 0.0 };
            u * d.p * delta
                + d.p_s * x[j] * y[i]
                + (d.p - s * d.p_s) * y[j] * y[i] / u
                + u * d.q_s * x[i] * x[j]
                + (2.0 * d.q - s * d.q_s) * x[i] * y[j]
        },
    ))
}

/// Absolute residuals of the two metrizability conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetrizabilityResiduals {
    pub res1: f64,
    pub res2: f64,
}

pub fn metrizability_residuals(
    profile: &SphSymProfile,
    pq: &PQPair,
    r: f64,
    s: f64,
) -> Result<MetrizabilityResiduals> {
    check_rs(r, s)?;
    if r == 0.0 {
        return Err(Error::SingularDenominator {
            context: "second metrizability condition (1/r)".into(),
            value: 0.0,
        });
    }
    let f = profile.local_jet(r, s, 1);
    let (phi, phi_r, phi_s) = (f.value(), f.partial_along(&[0]), f.partial_along(&[1]));
    let d = pq.derivs(r, s)?;
    let cone = r * r - s * s;
    let two_q = 2.0 * d.q - s * d.q_s;
    let res1 =
        ((1.0 + s * d.p - cone * two_q) * phi_s + (s * d.p_s - 2.0 * d.p - s * two_q) * phi).abs();
    let res2 = (phi_r / r - (d.p + d.q_s * cone) * phi_s - (d.p_s + s * d.q_s) * phi).abs();
    if !res1.is_finite() || !res2.is_finite() {
        return Err(Error::non_finite(format!(
            "metrizability residuals at (r, s) = ({r}, {s})"
        )));
    }
    Ok(MetrizabilityResiduals { res1, res2 })
}

/// Radial factor `f(r)` of `b_i = f(r) x_i`.
#[derive(Clone)]
pub struct RadialFactor {
    pub name: String,
    f: Arc<Fn1>,
}

impl fmt::Debug for RadialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialFactor({})", self.name)
    }
}

impl RadialFactor {
    pub fn new(name: impl Into<String>, f: impl Fn(&Jet) -> Jet + Send + Sync + 'static) -> Self {
        RadialFactor {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn constant(c: f64) -> Self {
        RadialFactor::new(format!("{c}"), move |r| r.lift(c))
    }

    pub fn eval(&self, r: &Jet) -> Jet {
        (self.f)(r)
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval(&Jet::scalar(r)).value()
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.eval(&Jet::variable(&JetSpace::get(1, 1), r, 0))
            .partial_along(&[0])
    }

    /// `f'(r)` on a jet argument.
    pub fn derivative_jet(&self, r: &Jet) -> Jet {
        let f = self.f.clone();
        compose_local(&[r], move |b, d| {
            let sp = JetSpace::get(1, d + 1);
            let local = f(&Jet::variable(&sp, b[0], 0)).derivative(0);
            Ok(local.reduce(&JetSpace::get(1, d)))
        })
    }

    /// `β = f(r)⟨x,y⟩` as a 1-form.
    pub fn one_form(&self, dim: usize) -> OneForm {
        let f = self.f.clone();
        OneForm::new(format!("radial:{}", self.name), dim, move |x| {
            let fr = f(&norm_sq(x).sqrt());
            x.iter().map(|xi| &fr * xi).collect()
        })
    }
}

/// `Q = s² f'/(2r³ f) − sP/r² + 1/(2r²)` for a given value of `P`.
pub fn parallel_q(f: &RadialFactor, p: f64, r: f64, s: f64) -> Result<f64> {
    if r == 0.0 {
        return Err(Error::DivisionByZero("characterised Q at r = 0".into()));
    }
    let fv = f.value(r);
    if fv == 0.0 {
        return Err(Error::DivisionByZero(format!(
            "characterised Q: f({r}) = 0"
        )));
    }
    let fp = f.derivative(r);
    Ok(s * s * fp / (2.0 * r.powi(3) * fv) - s * p / (r * r) + 0.5 / (r * r))
}

/// Left-hand sides of the three equations characterising `δ_i β = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SssResiduals {
    pub sss1: f64,
    pub sss2: f64,
    pub sss3: f64,
}

pub fn sss_residuals(f: &RadialFactor, pq: &PQPair, r: f64, s: f64) -> Result<SssResiduals> {
    check_rs(r, s)?;
    if r == 0.0 {
        return Err(Error::DivisionByZero("sf'/r at r = 0".into()));
    }
    let d = pq.derivs(r, s)?;
    let (fv, fp) = (f.value(r), f.derivative(r));
    let r2 = r * r;
    Ok(SssResiduals {
        sss1: s * fp / r - s * fv * d.p_s - fv * d.p - fv * r2 * d.q_s,
        sss2: fv - fv * s * d.p + fv * s * s * d.p_s - 2.0 * fv * r2 * d.q + fv * s * r2 * d.q_s,
        sss3: s * s * fp / r + fv - 2.0 * fv * s * d.p - 2.0 * fv * r2 * d.q,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphParallelReport {
    pub parallel: ParallelReport,
    /// `max |u SSS_1|` over samples (the `x_i` coefficient of `δ_i β`).
    pub max_x_coefficient: f64,
    /// `max |SSS_2|` over samples (the `y_i` coefficient of `δ_i β`).
    pub max_y_coefficient: f64,
    /// `max |δ_i β (pipeline) − (u SSS_1 x_i + SSS_2 y_i)|`.
    pub expansion_gap: f64,
}

/// Checks whether `β = f(r)⟨x,y⟩` is parallel for the spray of `pq`, both
/// through the pipeline and through the coefficient expansion of `δ_i β`.
pub fn parallel_form_check(
    pq: &PQPair,
    f: &RadialFactor,
    samples: &[TangentSample],
    tol: ParallelTolerances,
) -> Result<SphParallelReport> {
    let dim = samples.first().map_or(0, |s| s.dim());
    let model = pq.model(dim)?;
    let form = f.one_form(dim);
    let parallel = is_parallel(&model, &form, samples, tol)?;
    let beta = form.beta_field();
    let (mut mx, mut my, mut gap) = (0.0f64, 0.0f64, 0.0f64);
    for at in samples {
        let (r, s, u) = rsu(at);
        let sss = sss_residuals(f, pq, r, s)?;
        mx = mx.max((u * sss.sss1).abs());
        my = my.max(sss.sss2.abs());
        let delta = SampleGeometry::new(&model, at)?.delta_derivative(&beta)?;
        for i in 0..dim {
            let expanded = u * sss.sss1 * at.x()[i] + sss.sss2 * at.y()[i];
            gap = gap.max((delta.components[i] - expanded).abs());
        }
    }
    let scale = 1.0 + mx.max(my);
    if gap > 1e-8 * scale {
        return Err(Error::Inconsistent {
            check: "δ_i β = u SSS_1 x_i + SSS_2 y_i".into(),
            residual: gap,
        });
    }
    Ok(SphParallelReport {
        parallel,
        max_x_coefficient: mx,
        max_y_coefficient: my,
        expansion_gap: gap,
    })
}

/// Branches of the non-existence argument, detected on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileBranch {
    /// `φ_s ≡ 0`: `F = c(r)|y|`, Riemannian.
    Riemannian,
    /// `φ = c(r) s`: the metric tensor is degenerate.
    Degenerate,
    NonRiemannian,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileClassification {
    pub branch: ProfileBranch,
    pub max_phi_s: f64,
    /// `max |s φ_s/φ − 1|`
    pub max_linear_gap: f64,
    pub grid_points: usize,
}

pub fn classify_profile(
    profile: &SphSymProfile,
    grid: &[(f64, f64)],
    tol: f64,
) -> Result<ProfileClassification> {
    let (mut max_phi_s, mut gap) = (0.0f64, 0.0f64);
    for &(r, s) in grid {
        let j = profile.local_jet(r, s, 1);
        let (phi, phi_s) = (j.value(), j.partial_along(&[1]));
        if !phi.is_finite() || !phi_s.is_finite() {
            return Err(Error::non_finite(format!("profile at (r, s) = ({r}, {s})")));
        }
        max_phi_s = max_phi_s.max(phi_s.abs());
        gap = gap.max(if phi == 0.0 {
            f64::INFINITY
        } else {
            (s * phi_s / phi - 1.0).abs()
        });
    }
    let branch = if max_phi_s <= tol {
        ProfileBranch::Riemannian
    } else if gap <= tol {
        ProfileBranch::Degenerate
    } else {
        ProfileBranch::NonRiemannian
    };
    Ok(ProfileClassification {
        branch,
        max_phi_s,
        max_linear_gap: gap,
        grid_points: grid.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_profile_has_zero_pq() {
        let v = pq_from_profile(&SphSymProfile::euclidean(), 0.3, 0.1).unwrap();
        assert_eq!((v.p, v.q), (0.0, 0.0));
    }

    #[test]
    fn berwald_profile_at_origin() {
        let v = pq_from_profile(&SphSymProfile::berwald_classic(), 0.0, 0.0).unwrap();
        assert!((v.p - 1.0).abs() < 1e-14, "{v:?}");
        assert!(v.q.abs() < 1e-14);
    }

    #[test]
    fn parallel_q_substitutions() {
        let one = RadialFactor::constant(1.0);
        assert!((parallel_q(&one, 0.0, 1.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((parallel_q(&one, 0.03, 1.0, 0.3).unwrap() - 0.491).abs() < 1e-15);
        assert!(parallel_q(&one, 0.0, 0.0, 0.0).is_err());
        assert!(parallel_q(&RadialFactor::constant(0.0), 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn euclidean_spray_not_parallel_for_position_form() {
        let r = sss_residuals(&RadialFactor::constant(1.0), &PQPair::zero(), 1.0, 0.0).unwrap();
        assert!((r.sss3.abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn radial_derivative_jet() {
        let f = RadialFactor::new("r^3", |r| r.powi(3));
        let sp = JetSpace::get(1, 2);
        let d = f.derivative_jet(&Jet::variable(&sp, 2.0, 0));
        // f' = 3r², f'' = 6r, f''' = 6
        assert!((d.value() - 12.0).abs() < 1e-12);
        assert!((d.partial_along(&[0]) - 12.0).abs() < 1e-12);
        assert!((d.partial_along(&[0, 0]) - 6.0).abs() < 1e-12);
    }
}
