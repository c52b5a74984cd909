//! Built-in metrics with closed-form sprays, connections and Berwald
//! curvatures. Every entry is projectively flat, `G^i = 𝒫 y^i`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::calculus::{dot, dot_const, norm_sq, Jet, ScalarField, TangentSample};
use crate::error::{Error, Result};
use crate::forms::OneForm;
use crate::geometry::{
    Domain, IndexRole, LoweringConvention, MetricModel, SprayField, SymmetryTag, TensorValue,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogueName {
    Euclidean,
    Klein,
    Example1,
    BerwaldClassic,
    GeneralBerwald,
}

impl CatalogueName {
    pub const ALL: [CatalogueName; 5] = [
        CatalogueName::Euclidean,
        CatalogueName::Klein,
        CatalogueName::Example1,
        CatalogueName::BerwaldClassic,
        CatalogueName::GeneralBerwald,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogueName::Euclidean => "euclidean",
            CatalogueName::Klein => "klein",
            CatalogueName::Example1 => "example1",
            CatalogueName::BerwaldClassic => "berwald_classic",
            CatalogueName::GeneralBerwald => "general_berwald",
        }
    }

    fn takes_a(&self) -> bool {
        matches!(
            self,
            CatalogueName::Example1 | CatalogueName::GeneralBerwald
        )
    }
}

impl fmt::Display for CatalogueName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogueName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogueName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown catalogue metric `{s}`")))
    }
}

/// Known facts about an entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryNotes {
    pub flag_curvature: Option<f64>,
    pub riemannian: bool,
    pub berwald: bool,
    pub landsberg: bool,
    pub text: Vec<String>,
}

type FactorFn = dyn Fn(&[Jet], &[Jet]) -> Jet + Send + Sync;

#[derive(Clone)]
pub struct CatalogueEntry {
    pub name: CatalogueName,
    pub model: MetricModel,
    pub a: Option<Vec<f64>>,
    pub notes: EntryNotes,
    factor: Arc<FactorFn>,
}

impl fmt::Debug for CatalogueEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogueEntry")
            .field("name", &self.name)
            .field("dim", &self.model.dim)
            .field("a", &self.a)
            .finish()
    }
}

fn one(x: &[Jet]) -> Jet {
    x[0].lift(1.0)
}

/// `A = 1 − |x|²`.
fn a_factor(x: &[Jet]) -> Jet {
    one(x) - norm_sq(x)
}

/// `√(|y|² − |x|²|y|² + ⟨x,y⟩²)`.
fn radical(x: &[Jet], y: &[Jet]) -> Jet {
    let xy = dot(x, y);
    (&a_factor(x) * &norm_sq(y) + &xy * &xy).sqrt()
}

fn klein_f(x: &[Jet], y: &[Jet]) -> Jet {
    &radical(x, y) / &a_factor(x)
}

/// `√(1−|a|²)/w² · |w y − ⟨a,y⟩ x|` with `w = 1 + ⟨a,x⟩`: the Euclidean metric
/// pulled back by `x ↦ x/w` and rescaled.
fn example1_f(a: &[f64], x: &[Jet], y: &[Jet]) -> Jet {
    let s = (1.0 - a.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let w = one(x) + dot_const(x, a);
    let ay = dot_const(y, a);
    let q = &(&w * &w) * &norm_sq(y) - &(&w * &ay) * &dot(x, y) * 2.0 + &(&ay * &ay) * &norm_sq(x);
    &q.sqrt() / &(&w * &w) * s
}

fn general_berwald_f(a: &[f64], x: &[Jet], y: &[Jet]) -> Jet {
    let a_x = a_factor(x);
    let rad = radical(x, y);
    let p = &rad + &dot(x, y);
    let ay = dot_const(y, a);
    let lead = one(x) + dot_const(x, a) + &(&ay * &a_x) / &p;
    &lead * &(&p * &p) / &(&(&a_x * &a_x) * &rad)
}

fn berwald_classic_f(x: &[Jet], y: &[Jet]) -> Jet {
    let a_x = a_factor(x);
    let rad = radical(x, y);
    let p = &rad + &dot(x, y);
    &(&p * &p) / &(&(&a_x * &a_x) * &rad)
}

/// `𝒫 = (√(|y|² − |x|²|y|² + ⟨x,y⟩²) + ⟨x,y⟩)/(1 − |x|²)`.
fn berwald_factor(x: &[Jet], y: &[Jet]) -> Jet {
    &(&radical(x, y) + &dot(x, y)) / &a_factor(x)
}

fn check_a(name: CatalogueName, dim: usize, a: Option<&[f64]>) -> Result<Option<Vec<f64>>> {
    if !name.takes_a() {
        if a.is_some() {
            return Err(Error::BadParameter(format!(
                "`{name}` takes no parameter vector a"
            )));
        }
        return Ok(None);
    }
    let a = a.map_or_else(|| vec![0.0; dim], |v| v.to_vec());
    if a.len() != dim {
        return Err(Error::BadParameter(format!(
            "parameter vector a has {} entries, dimension is {dim}",
            a.len()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::BadParameter(
            "parameter vector a must be finite".into(),
        ));
    }
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm >= 1.0 {
        return Err(Error::BadParameter(format!(
            "|a| = {norm} must be smaller than 1"
        )));
    }
    Ok(Some(a))
}

/// Builds a catalogue entry. `a` is required to be absent for entries
/// without a parameter vector and defaults to zero otherwise.
pub fn entry(name: CatalogueName, dim: usize, a: Option<&[f64]>) -> Result<CatalogueEntry> {
    if dim < 2 {
        return Err(Error::BadParameter(format!(
            "dimension must be at least 2, got {dim}"
        )));
    }
    let a = check_a(name, dim, a)?;
    let ball = Domain::unit_ball();
    let notes = |k: f64, riemannian: bool, text: &str| EntryNotes {
        flag_curvature: Some(k),
        riemannian,
        berwald: riemannian || matches!(name, CatalogueName::Example1),
        landsberg: riemannian || matches!(name, CatalogueName::Example1),
        text: vec![text.to_string()],
    };
    let (model, factor, notes): (MetricModel, Arc<FactorFn>, EntryNotes) = match name {
        CatalogueName::Euclidean => (
            MetricModel::from_finsler(
                name.as_str(),
                dim,
                Domain::Whole,
                ScalarField::new(|_x, y| norm_sq(y).sqrt()),
            )?,
            Arc::new(|x, _y| x[0].lift(0.0)),
            notes(0.0, true, "flat"),
        ),
        CatalogueName::Klein => (
            MetricModel::from_finsler(name.as_str(), dim, ball, ScalarField::new(klein_f))?,
            Arc::new(|x, y| &dot(x, y) / &a_factor(x)),
            notes(-1.0, true, "constant curvature -1"),
        ),
        CatalogueName::Example1 => {
            let av = a.clone().expect("example1 carries a");
            let af = av.clone();
            (
                MetricModel::from_finsler(
                    name.as_str(),
                    dim,
                    ball,
                    ScalarField::new(move |x, y| example1_f(&af, x, y)),
                )?,
                Arc::new(move |x, y| -(&dot_const(y, &av) / &(one(x) + dot_const(x, &av)))),
                notes(
                    0.0,
                    true,
                    "flat; quadratic spray; carries a parallel family when a_1 != 0",
                ),
            )
        }
        CatalogueName::BerwaldClassic => (
            MetricModel::from_finsler(
                name.as_str(),
                dim,
                ball,
                ScalarField::new(berwald_classic_f),
            )?,
            Arc::new(berwald_factor),
            EntryNotes {
                flag_curvature: Some(0.0),
                riemannian: false,
                berwald: false,
                landsberg: false,
                text: vec!["zero flag curvature; not Berwald".into()],
            },
        ),
        CatalogueName::GeneralBerwald => {
            let af = a.clone().expect("general_berwald carries a");
            (
                MetricModel::from_finsler(
                    name.as_str(),
                    dim,
                    ball,
                    ScalarField::new(move |x, y| general_berwald_f(&af, x, y)),
                )?,
                Arc::new(berwald_factor),
                EntryNotes {
                    flag_curvature: Some(0.0),
                    riemannian: false,
                    berwald: false,
                    landsberg: false,
                    text: vec!["zero flag curvature; admits no parallel 1-form".into()],
                },
            )
        }
    };
    Ok(CatalogueEntry {
        name,
        model,
        a,
        notes,
        factor,
    })
}

/// Parses the entry name and builds it.
pub fn entry_by_name(name: &str, dim: usize, a: Option<&[f64]>) -> Result<CatalogueEntry> {
    entry(name.parse()?, dim, a)
}

fn check_interior(e: &CatalogueEntry, at: &TangentSample) -> Result<()> {
    if at.dim() != e.model.dim {
        return Err(Error::InvalidSample(format!(
            "sample has dimension {}, entry has {}",
            at.dim(),
            e.model.dim
        )));
    }
    if !e.model.domain.contains(at.x()) {
        return Err(Error::non_finite(format!(
            "{at} lies outside the domain of `{}`",
            e.name
        )));
    }
    Ok(())
}

fn finite(t: TensorValue, what: &str, at: &TangentSample) -> Result<TensorValue> {
    if !t.is_finite() {
        return Err(Error::non_finite(format!("{what} at {at}")));
    }
    Ok(t)
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

fn kron(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

impl CatalogueEntry {
    pub fn dim(&self) -> usize {
        self.model.dim
    }

    /// Projective factor `𝒫` as a jet-valued field.
    pub fn projective_factor(&self) -> ScalarField {
        let p = self.factor.clone();
        ScalarField::new(move |x, y| p(x, y))
    }

    /// Closed-form spray `G^i = 𝒫 y^i`.
    pub fn closed_spray(&self) -> SprayField {
        let p = self.factor.clone();
        SprayField::new(move |x, y| {
            let pv = p(x, y);
            y.iter().map(|yi| &pv * yi).collect()
        })
    }

    /// The model with its closed-form spray attached for comparison.
    pub fn model_with_closed_spray(&self) -> MetricModel {
        self.model.clone().with_spray_override(self.closed_spray())
    }

    /// `(𝒫, 𝒫_j)` in closed form.
    fn factor_and_gradient(&self, at: &TangentSample) -> (f64, Vec<f64>) {
        let (x, y) = (at.x(), at.y());
        let n = x.len();
        let xy = dotf(x, y);
        let big_a = 1.0 - dotf(x, x);
        match self.name {
            CatalogueName::Euclidean => (0.0, vec![0.0; n]),
            CatalogueName::Klein => (xy / big_a, x.iter().map(|v| v / big_a).collect()),
            CatalogueName::Example1 => {
                let a = self.a.as_deref().expect("example1 carries a");
                let w = 1.0 + dotf(a, x);
                (-dotf(a, y) / w, a.iter().map(|v| -v / w).collect())
            }
            CatalogueName::BerwaldClassic | CatalogueName::GeneralBerwald => {
                let l = (big_a * dotf(y, y) + xy * xy).sqrt() / big_a;
                let p = l + xy / big_a;
                let grad = (0..n)
                    .map(|i| (y[i] / big_a + xy * x[i] / (big_a * big_a)) / l + x[i] / big_a)
                    .collect();
                (p, grad)
            }
        }
    }

    /// Closed-form spray coefficients at a sample.
    pub fn closed_spray_at(&self, at: &TangentSample) -> Result<TensorValue> {
        check_interior(self, at)?;
        let (p, _) = self.factor_and_gradient(at);
        let t = TensorValue::from_fn("G", vec![self.dim()], vec![IndexRole::UP_FIBER], |i| {
            p * at.y()[i[0]]
        });
        finite(t, "closed-form spray", at)
    }

    /// Closed-form nonlinear connection `N^i_j = 𝒫_j y^i + 𝒫 δ^i_j`.
    pub fn closed_connection(&self, at: &TangentSample) -> Result<TensorValue> {
        check_interior(self, at)?;
        let (p, grad) = self.factor_and_gradient(at);
        let n = self.dim();
        let t = TensorValue::from_fn(
            "N",
            vec![n, n],
            vec![IndexRole::UP_FIBER, IndexRole::DOWN],
            |ix| grad[ix[1]] * at.y()[ix[0]] + p * kron(ix[0], ix[1]),
        );
        finite(t, "closed-form connection", at)
    }

    /// Closed-form Berwald curvature: the ten-term formula for the general
    /// Berwald family (which carries no `a`), zero for the quadratic sprays.
    pub fn closed_berwald_curvature(&self, at: &TangentSample) -> Result<TensorValue> {
        check_interior(self, at)?;
        let n = self.dim();
        let t = match self.name {
            CatalogueName::BerwaldClassic | CatalogueName::GeneralBerwald => {
                general_berwald_curvature(at.x(), at.y())
            }
            _ => TensorValue::new(
                "G^h_ijk",
                vec![n, n, n, n],
                vec![
                    IndexRole::UP_FIBER,
                    IndexRole::DOWN,
                    IndexRole::DOWN,
                    IndexRole::DOWN,
                ],
            )
            .with_symmetry(SymmetryTag::Symmetric(vec![1, 2, 3]))
            .with_note("spray quadratic in y"),
        };
        finite(t, "closed-form Berwald curvature", at)
    }

    /// The known parallel 1-form, if any: a constant form for the Euclidean
    /// entry, the `c = 1, c_μ = 0` member of the family for `example1`.
    pub fn known_parallel_form(&self) -> Option<OneForm> {
        match self.name {
            CatalogueName::Euclidean => {
                let mut b = vec![0.0; self.dim()];
                b[0] = 1.0;
                Some(OneForm::constant(b))
            }
            CatalogueName::Example1 => self.parallel_family(1.0, &vec![0.0; self.dim() - 1]).ok(),
            _ => None,
        }
    }

    /// Parallel family of `example1`.
    pub fn parallel_family(&self, c: f64, c_mu: &[f64]) -> Result<OneForm> {
        match (self.name, &self.a) {
            (CatalogueName::Example1, Some(a)) => OneForm::example1_family(a, c, c_mu),
            _ => Err(Error::BadParameter(format!(
                "`{}` carries no parallel family",
                self.name
            ))),
        }
    }
}

/// The ten-term Berwald curvature of the general Berwald family, indices
/// lowered with the Kronecker delta. Component order `[h, i, j, k]`.
pub fn general_berwald_curvature(x: &[f64], y: &[f64]) -> TensorValue {
    let n = x.len();
    let a = 1.0 - dotf(x, x);
    let xy = dotf(x, y);
    let l = (a * dotf(y, y) + xy * xy).sqrt() / a;
    let (l3, l5) = (l.powi(3), l.powi(5));
    let c1 = 1.0 / (l * a);
    let c2 = -1.0 / (l3 * a * a);
    let c4 = -xy / (l3 * a.powi(3));
    let c5 = -xy * xy / (l3 * a.powi(4)) + 1.0 / (l * a * a);
    let c7 = -3.0 * xy / (l3 * a.powi(4)) + 3.0 * xy.powi(3) / (l5 * a.powi(6));
    let c8 = 3.0 / (l5 * a.powi(3));
    let c9 = 3.0 * xy / (l5 * a.powi(4));
    let c10 = 3.0 * xy * xy / (l5 * a.powi(5)) - 1.0 / (l3 * a.powi(3));
    let d = kron;
    TensorValue::from_fn(
        "G^h_ijk",
        vec![n, n, n, n],
        vec![
            IndexRole::UP_FIBER,
            IndexRole::DOWN,
            IndexRole::DOWN,
            IndexRole::DOWN,
        ],
        |ix| {
            let (h, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
            let yh = y[h];
            let t1 = c1 * (d(i, j) * d(h, k) + d(j, k) * d(h, i) + d(k, i) * d(h, j));
            let t2 = c2 * (y[i] * d(j, k) + y[j] * d(k, i) + y[k] * d(i, j)) * yh;
            let t3 = c2 * (y[i] * y[j] * d(h, k) + y[j] * y[k] * d(h, i) + y[k] * y[i] * d(h, j));
            let t4 = c4 * (x[i] * d(j, k) + x[j] * d(k, i) + x[k] * d(i, j)) * yh;
            let t5 = c5 * (x[i] * x[j] * d(h, k) + x[j] * x[k] * d(h, i) + x[k] * x[i] * d(h, j));
            let t6 = c4
                * ((x[i] * y[j] + x[j] * y[i]) * d(h, k)
                    + (x[j] * y[k] + x[k] * y[j]) * d(h, i)
                    + (x[k] * y[i] + x[i] * y[k]) * d(h, j));
            let t7 = c7 * x[i] * x[j] * x[k] * yh;
            let t8 = c8 * y[i] * y[j] * y[k] * yh;
            let t9 = c9 * (y[i] * y[j] * x[k] + y[j] * y[k] * x[i] + y[k] * y[i] * x[j]) * yh;
            let t10 = c10 * (y[i] * x[j] * x[k] + y[j] * x[k] * x[i] + y[k] * x[i] * x[j]) * yh;
            t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8 + t9 + t10
        },
    )
    .with_symmetry(SymmetryTag::Symmetric(vec![1, 2, 3]))
    .with_lowering(LoweringConvention::EuclideanLowering)
}

/// `𝒫` and its fiber derivatives for the general Berwald family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectiveFactorJets {
    pub dim: usize,
    pub p: f64,
    pub p_i: Vec<f64>,
    /// Row-major `n × n`.
    pub p_ij: Vec<f64>,
    /// Row-major `n × n × n`.
    pub p_ijk: Vec<f64>,
    pub y: Vec<f64>,
    pub lowering: LoweringConvention,
}

impl ProjectiveFactorJets {
    pub fn pij(&self, i: usize, j: usize) -> f64 {
        self.p_ij[i * self.dim + j]
    }

    pub fn pijk(&self, i: usize, j: usize, k: usize) -> f64 {
        self.p_ijk[(i * self.dim + j) * self.dim + k]
    }

    /// `G^h_ijk = 𝒫_ijk y^h + 𝒫_ij δ^h_k + 𝒫_jk δ^h_i + 𝒫_ki δ^h_j`.
    pub fn assemble_berwald_curvature(&self) -> TensorValue {
        let n = self.dim;
        TensorValue::from_fn(
            "G^h_ijk",
            vec![n, n, n, n],
            vec![
                IndexRole::UP_FIBER,
                IndexRole::DOWN,
                IndexRole::DOWN,
                IndexRole::DOWN,
            ],
            |ix| {
                let (h, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
                self.pijk(i, j, k) * self.y[h]
                    + self.pij(i, j) * kron(h, k)
                    + self.pij(j, k) * kron(h, i)
                    + self.pij(k, i) * kron(h, j)
            },
        )
        .with_symmetry(SymmetryTag::Symmetric(vec![1, 2, 3]))
        .with_lowering(self.lowering)
    }
}

/// Closed forms of `𝒫_i`, `𝒫_ij` and the symmetrised `𝒫_ijk`.
pub fn projective_factor_jets(
    e: &CatalogueEntry,
    at: &TangentSample,
) -> Result<ProjectiveFactorJets> {
    if !matches!(
        e.name,
        CatalogueName::GeneralBerwald | CatalogueName::BerwaldClassic
    ) {
        return Err(Error::BadParameter(format!(
            "projective factor derivatives are tabulated for the general Berwald family, not `{}`",
            e.name
        )));
    }
    check_interior(e, at)?;
    let (x, y) = (at.x(), at.y());
    let n = x.len();
    let a = 1.0 - dotf(x, x);
    let xy = dotf(x, y);
    let l = (a * dotf(y, y) + xy * xy).sqrt() / a;
    let (l3, l5) = (l.powi(3), l.powi(5));
    let p = l + xy / a;
    let p_i: Vec<f64> = (0..n)
        .map(|i| (y[i] / a + xy * x[i] / (a * a)) / l + x[i] / a)
        .collect();
    let mut p_ij = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            p_ij[i * n + j] = -(y[i] * y[j] / (a * a)
                + xy * (x[i] * y[j] + x[j] * y[i]) / a.powi(3)
                + xy * xy * x[i] * x[j] / a.powi(4))
                / l3
                + (kron(i, j) / a + x[i] * x[j] / (a * a)) / l;
        }
    }
    let c_yyx = 3.0 * xy / (l5 * a.powi(4));
    let c_yxx = 3.0 * xy * xy / (l5 * a.powi(5)) - 1.0 / (l3 * a.powi(3));
    let c_yd = -1.0 / (l3 * a * a);
    let c_xd = -xy / (l3 * a.powi(3));
    let c_xxx = -3.0 * xy / (l3 * a.powi(4)) + 3.0 * xy.powi(3) / (l5 * a.powi(6));
    let c_yyy = 3.0 / (l5 * a.powi(3));
    let mut p_ijk = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                p_ijk[(i * n + j) * n + k] = c_yyx
                    * (y[i] * y[j] * x[k] + y[j] * y[k] * x[i] + y[k] * y[i] * x[j])
                    + c_yxx * (y[i] * x[j] * x[k] + y[j] * x[k] * x[i] + y[k] * x[i] * x[j])
                    + c_yd * (y[i] * kron(j, k) + y[j] * kron(k, i) + y[k] * kron(i, j))
                    + c_xd * (x[i] * kron(j, k) + x[j] * kron(k, i) + x[k] * kron(i, j))
                    + c_xxx * x[i] * x[j] * x[k]
                    + c_yyy * y[i] * y[j] * y[k];
            }
        }
    }
    let out = ProjectiveFactorJets {
        dim: n,
        p,
        p_i,
        p_ij,
        p_ijk,
        y: y.to_vec(),
        lowering: LoweringConvention::EuclideanLowering,
    };
    if !(out.p.is_finite()
        && out
            .p_i
            .iter()
            .chain(&out.p_ij)
            .chain(&out.p_ijk)
            .all(|v| v.is_finite()))
    {
        return Err(Error::non_finite(format!(
            "projective factor derivatives at {at}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{energy, SampleGeometry};

    fn sample(x: &[f64], y: &[f64]) -> TangentSample {
        TangentSample::new(x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn example1_spray_and_energy() {
        let e = entry(CatalogueName::Example1, 3, Some(&[0.5, 0.0, 0.0])).unwrap();
        let at = sample(&[0.0; 3], &[1.0, 0.0, 0.0]);
        let sg = SampleGeometry::new(&e.model, &at).unwrap();
        let g = sg.spray_values();
        assert!((g[0] + 0.5).abs() < 1e-12, "{g:?}");
        assert!(g[1].abs() < 1e-12 && g[2].abs() < 1e-12);
        let at = sample(&[0.0; 3], &[0.0, 1.0, 0.0]);
        assert!((energy(&e.model, &at).unwrap() - 0.375).abs() < 1e-14);
    }

    #[test]
    fn klein_is_euclidean_at_origin() {
        let e = entry(CatalogueName::Klein, 3, None).unwrap();
        let at = sample(&[0.0; 3], &[0.3, -0.4, 1.2]);
        let f = e.model.finsler.as_ref().unwrap().at(&at);
        assert!((f - 1.3).abs() < 1e-14);
    }

    #[test]
    fn berwald_factor_at_origin() {
        let e = entry(CatalogueName::GeneralBerwald, 3, None).unwrap();
        let at = sample(&[0.0; 3], &[1.0, 0.0, 0.0]);
        let g = e.closed_spray_at(&at).unwrap();
        assert_eq!(g.components, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn parameter_validation() {
        assert!(entry(CatalogueName::GeneralBerwald, 3, Some(&[0.8, 0.8, 0.0])).is_err());
        assert!(entry(CatalogueName::GeneralBerwald, 3, Some(&[0.1, 0.0])).is_err());
        assert!(entry(CatalogueName::Klein, 3, Some(&[0.1, 0.0, 0.0])).is_err());
        assert!(entry(CatalogueName::Klein, 1, None).is_err());
        assert!("funk".parse::<CatalogueName>().is_err());
        assert_eq!(
            "general_berwald".parse::<CatalogueName>().unwrap(),
            CatalogueName::GeneralBerwald
        );
    }
}
