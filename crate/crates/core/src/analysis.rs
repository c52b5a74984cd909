//! Verifiers: scalar flag curvature fits, numerical rank of
//! the mean Berwald curvature, kernel scans for parallel 1-forms, and the
//! invariant battery over catalogue metrics.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{homogeneity_check, TangentSample};
use crate::catalogue::CatalogueEntry;
use crate::error::{Error, Result};
use crate::forms::{covariant_derivative_at, OneForm};
use crate::geometry::{angular_trace, euler_residuals, MetricModel, SampleGeometry, TensorValue};
use crate::sampling::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureVerdict {
    ScalarCurvature,
    NotScalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarCurvatureFit {
    pub k: Vec<f64>,
    pub k_min: f64,
    pub k_max: f64,
    /// `max |Φ^h_i − K(F²δ^h_i − y_i y^h)|` over samples.
    pub max_residual: f64,
    /// The same residual divided by `F²(1 + |K|)` at each sample.
    pub max_relative_residual: f64,
    pub tolerance: f64,
    pub verdict: CurvatureVerdict,
}

impl ScalarCurvatureFit {
    pub fn spread(&self) -> f64 {
        self.k_max - self.k_min
    }
}

/// Fits `K = tr Φ / ((n−1)F²)` per sample and measures how well
/// `Φ^h_i = K(F²δ^h_i − y_i y^h)` holds, with `y_i` metric-lowered.
pub fn scalar_curvature_fit(
    m: &MetricModel,
    samples: &[TangentSample],
    tol: f64,
) -> Result<ScalarCurvatureFit> {
    if samples.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let n = m.dim;
    let per: Vec<(f64, f64, f64)> = samples
        .par_iter()
        .map(|at| -> Result<(f64, f64, f64)> {
            let sg = SampleGeometry::new(m, at)?;
            let phi = sg.jacobi();
            let f = sg.finsler_value()?;
            let yl = sg.lowered_y()?;
            let f2 = f * f;
            let trace: f64 = (0..n).map(|i| phi.get(&[i, i])).sum();
            let k = trace / ((n as f64 - 1.0) * f2);
            let mut res: f64 = 0.0;
            for h in 0..n {
                for i in 0..n {
                    let delta = if h == i { 1.0 } else { 0.0 };
                    let model = k * (f2 * delta - yl[i] * at.y()[h]);
                    res = res.max((phi.get(&[h, i]) - model).abs());
                }
            }
            Ok((k, res, res / (f2 * (1.0 + k.abs()))))
        })
        .collect::<Result<_>>()?;
    let k: Vec<f64> = per.iter().map(|p| p.0).collect();
    let max_residual = per.iter().map(|p| p.1).fold(0.0, f64::max);
    let max_rel = per.iter().map(|p| p.2).fold(0.0, f64::max);
    Ok(ScalarCurvatureFit {
        k_min: k.iter().copied().fold(f64::INFINITY, f64::min),
        k_max: k.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        k,
        max_residual,
        max_relative_residual: max_rel,
        tolerance: tol,
        verdict: if max_rel <= tol {
            CurvatureVerdict::ScalarCurvature
        } else {
            CurvatureVerdict::NotScalar
        },
    })
}

/// Singular values at or below this are zero regardless of the relative
/// threshold; without it, round-off in an identically vanishing tensor
/// would count toward the rank.
pub const ABSOLUTE_RANK_FLOOR: f64 = 1e-9;

fn numerical_rank(sv: &[f64], threshold: f64, floor: f64) -> usize {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    sv.iter()
        .filter(|&&s| s > threshold * smax && s > floor)
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub max_rank: usize,
    pub ranks: Vec<usize>,
    pub singular_values: Vec<Vec<f64>>,
    pub threshold: f64,
}

/// Numerical rank of `E_jk` at each sample.
pub fn mean_berwald_rank(
    m: &MetricModel,
    samples: &[TangentSample],
    threshold: f64,
) -> Result<RankReport> {
    let n = m.dim;
    let svs: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|at| -> Result<Vec<f64>> {
            let e = SampleGeometry::new(m, at)?.mean_berwald();
            let mat = DMatrix::from_fn(n, n, |i, j| e.get(&[i, j]));
            Ok(sorted(mat.singular_values().as_slice()))
        })
        .collect::<Result<_>>()?;
    let ranks: Vec<usize> = svs
        .iter()
        .map(|sv| numerical_rank(sv, threshold, ABSOLUTE_RANK_FLOOR))
        .collect();
    Ok(RankReport {
        max_rank: ranks.iter().copied().max().unwrap_or(0),
        ranks,
        singular_values: svs,
        threshold,
    })
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Which constraint rows enter a kernel scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanRows {
    /// `b ↦ G^h_ijk b_h`
    Berwald,
    /// `b ↦ R^h_jk b_h`
    Curvature,
    Both,
}

impl std::str::FromStr for ScanRows {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "berwald" => Ok(ScanRows::Berwald),
            "curvature" => Ok(ScanRows::Curvature),
            "both" => Ok(ScanRows::Both),
            other => Err(Error::ConfigError(format!("unknown row set `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanOptions {
    pub rows: ScanRows,
    pub y_per_point: usize,
    /// Relative singular-value threshold.
    pub threshold: f64,
    pub seed: u64,
    /// A form expected to lie in every kernel; its residual is reported.
    #[serde(skip)]
    pub known_form: Option<OneForm>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            rows: ScanRows::Both,
            y_per_point: 20,
            threshold: 1e-7,
            seed: 0,
            known_form: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointScan {
    pub x: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub kernel_dim: usize,
    /// `max |M b| / (1 + max |M|)` for the known form, if given.
    pub known_form_residual: Option<f64>,
}

/// Which criterion settled the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanBranch {
    /// Kernel dimension 0 at every scanned point.
    EveryPoint,
    /// Some point had a kernel, but the intersection over all points is {0}.
    Intersection,
    /// A common nonzero kernel vector survives.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelScanReport {
    pub metric: String,
    pub rows: ScanRows,
    pub threshold: f64,
    pub points: Vec<PointScan>,
    pub max_kernel_dim: usize,
    pub intersection_kernel_dim: usize,
    pub branch: ScanBranch,
}

fn constraint_rows(sg: &SampleGeometry, rows: ScanRows, out: &mut Vec<Vec<f64>>) -> Result<()> {
    let n = sg.dim();
    if matches!(rows, ScanRows::Berwald | ScanRows::Both) {
        let g = sg.berwald_curvature();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    out.push((0..n).map(|h| g.get(&[h, i, j, k])).collect());
                }
            }
        }
    }
    if matches!(rows, ScanRows::Curvature | ScanRows::Both) {
        let r = sg.curvature()?;
        for j in 0..n {
            for k in j + 1..n {
                out.push((0..n).map(|h| r.get(&[h, j, k])).collect());
            }
        }
    }
    Ok(())
}

fn kernel_of(rows: &[Vec<f64>], n: usize, threshold: f64) -> (Vec<f64>, usize) {
    if rows.is_empty() {
        return (vec![0.0; n], 0);
    }
    let mat = DMatrix::from_fn(rows.len(), n, |r, c| rows[r][c]);
    let sv = sorted(mat.singular_values().as_slice());
    let floor = ABSOLUTE_RANK_FLOOR * (rows.len() as f64).sqrt();
    let rank = numerical_rank(&sv, threshold, floor);
    (sv, rank)
}

/// For each base point, stacks the linear constraints a parallel form must
/// satisfy over many fiber directions and reports the kernel dimension.
pub fn parallel_obstruction_scan(
    m: &MetricModel,
    x_points: &[Vec<f64>],
    opts: &ScanOptions,
) -> Result<KernelScanReport> {
    let n = m.dim;
    if opts.y_per_point < n + 2 {
        return Err(Error::InsufficientSamples {
            needed: n + 2,
            got: opts.y_per_point,
        });
    }
    if x_points.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let per: Vec<(PointScan, Vec<Vec<f64>>)> = x_points
        .par_iter()
        .enumerate()
        .map(|(idx, x)| -> Result<(PointScan, Vec<Vec<f64>>)> {
            let mut sampler = Sampler::new(opts.seed.wrapping_add(idx as u64));
            let mut rows = Vec::new();
            for _ in 0..opts.y_per_point {
                let at = TangentSample::new(x.clone(), sampler.unit_vector(n))?;
                let sg = SampleGeometry::new(m, &at)?;
                constraint_rows(&sg, opts.rows, &mut rows)?;
            }
            let (sv, rank) = kernel_of(&rows, n, opts.threshold);
            let known_form_residual = opts.known_form.as_ref().map(|w| {
                let b = w.coeffs(x);
                let scale = rows.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
                let worst = rows
                    .iter()
                    .map(|r| r.iter().zip(&b).map(|(u, v)| u * v).sum::<f64>().abs())
                    .fold(0.0, f64::max);
                worst / (1.0 + scale)
            });
            Ok((
                PointScan {
                    x: x.clone(),
                    rows: rows.len(),
                    cols: n,
                    singular_values: sv,
                    rank,
                    kernel_dim: n - rank,
                    known_form_residual,
                },
                rows,
            ))
        })
        .collect::<Result<_>>()?;
    let max_kernel_dim = per.iter().map(|p| p.0.kernel_dim).max().unwrap_or(n);
    let all: Vec<Vec<f64>> = per.iter().flat_map(|p| p.1.iter().cloned()).collect();
    let (_, global_rank) = kernel_of(&all, n, opts.threshold);
    let intersection_kernel_dim = n - global_rank;
    let branch = if max_kernel_dim == 0 {
        ScanBranch::EveryPoint
    } else if intersection_kernel_dim == 0 {
        ScanBranch::Intersection
    } else {
        ScanBranch::Inconclusive
    };
    Ok(KernelScanReport {
        metric: m.name.clone(),
        rows: opts.rows,
        threshold: opts.threshold,
        points: per.into_iter().map(|p| p.0).collect(),
        max_kernel_dim,
        intersection_kernel_dim,
        branch,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandsbergReport {
    pub max_landsberg: f64,
    pub max_berwald: f64,
}

/// `max |L_ijk|` (and `max |G^h_ijk|` for the Berwald ⇒ Landsberg check).
pub fn landsberg_residual(m: &MetricModel, samples: &[TangentSample]) -> Result<LandsbergReport> {
    let per: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|at| -> Result<(f64, f64)> {
            let sg = SampleGeometry::new(m, at)?;
            Ok((sg.landsberg()?.max_abs(), sg.berwald_curvature().max_abs()))
        })
        .collect::<Result<_>>()?;
    Ok(LandsbergReport {
        max_landsberg: per.iter().map(|p| p.0).fold(0.0, f64::max),
        max_berwald: per.iter().map(|p| p.1).fold(0.0, f64::max),
    })
}

/// Surface-case co-occurrence: Landsberg with a kernel vector at the
/// scanned points must come with vanishing Berwald curvature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CooccurrenceReport {
    pub metric: String,
    pub landsberg: f64,
    pub berwald: f64,
    pub max_kernel_dim: usize,
    pub hypotheses_hold: bool,
    pub consistent: bool,
}

pub fn berwald_cooccurrence(
    m: &MetricModel,
    samples: &[TangentSample],
    x_points: &[Vec<f64>],
    tol: f64,
) -> Result<CooccurrenceReport> {
    let l = landsberg_residual(m, samples)?;
    let scan = parallel_obstruction_scan(m, x_points, &ScanOptions::default())?;
    let hypotheses_hold = l.max_landsberg <= tol && scan.max_kernel_dim > 0;
    Ok(CooccurrenceReport {
        metric: m.name.clone(),
        landsberg: l.max_landsberg,
        berwald: l.max_berwald,
        max_kernel_dim: scan.max_kernel_dim,
        hypotheses_hold,
        consistent: !hypotheses_hold || l.max_berwald <= tol,
    })
}

/// One named check with its worst residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub sample_count: usize,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        max_residual: f64,
        tolerance: f64,
        sample_count: usize,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            sample_count,
        }
    }
}

#[derive(Default)]
struct Acc {
    euler: f64,
    symmetry: f64,
    trace: f64,
    hy: f64,
    homog: f64,
    euler_form: f64,
    spray: f64,
    connection: f64,
    curvature: f64,
    sign: f64,
}

fn rel_diff(a: &TensorValue, b: &TensorValue) -> f64 {
    a.max_abs_diff(b) / (1.0 + b.max_abs())
}

/// Euler chain, symmetry tags, `g^ij h_ij = n − 1`, `d_𝒞β = β`,
/// `y^i b_i|j = δ_j β`, closed forms vs pipeline, and the curvature sign,
/// each as a relative residual `|·| / (1 + scale)`.
pub fn invariant_battery(
    e: &CatalogueEntry,
    samples: &[TangentSample],
    tol: f64,
) -> Result<Vec<CheckRecord>> {
    let m = &e.model;
    let n = m.dim;
    let mut forms = vec![
        OneForm::constant((0..n).map(|i| 1.0 / (i as f64 + 1.0)).collect()),
        OneForm::position(n),
    ];
    forms.extend(e.known_parallel_form());
    let per: Vec<Acc> = samples
        .par_iter()
        .map(|at| -> Result<Acc> {
            let sg = SampleGeometry::new(m, at)?;
            let mut a = Acc::default();
            let scale = 1.0
                + [
                    sg.spray().max_abs(),
                    sg.nonlinear_connection().max_abs(),
                    sg.berwald_connection().max_abs(),
                    sg.berwald_curvature().max_abs(),
                    sg.jacobi().max_abs(),
                ]
                .into_iter()
                .fold(0.0, f64::max);
            a.euler = euler_residuals(&sg)?.max() / scale;
            let tensors = [
                sg.metric_tensor()?,
                sg.angular_metric()?,
                sg.berwald_connection(),
                sg.berwald_curvature(),
                sg.mean_berwald(),
                sg.landsberg()?,
                sg.curvature()?,
            ];
            a.symmetry = tensors
                .iter()
                .map(|t| t.symmetry_residual() / (1.0 + t.max_abs()))
                .fold(0.0, f64::max);
            a.trace = (angular_trace(&sg)? - (n as f64 - 1.0)).abs() / n as f64;
            let h = sg.angular_metric()?;
            a.hy = h.contract(1, at.y()).max_abs() / (1.0 + h.max_abs());
            for w in &forms {
                a.homog = a.homog.max(homogeneity_check(&w.beta_field(), at, 1)?);
                let cov = covariant_derivative_at(&sg, w)?;
                let delta = sg.delta_derivative(&w.beta_field())?;
                a.euler_form = a.euler_form.max(rel_diff(&cov.contract(0, at.y()), &delta));
            }
            a.spray = rel_diff(&sg.spray(), &e.closed_spray_at(at)?);
            a.connection = rel_diff(&sg.nonlinear_connection(), &e.closed_connection(at)?);
            a.curvature = rel_diff(&sg.berwald_curvature(), &e.closed_berwald_curvature(at)?);
            let r = sg.curvature()?;
            a.sign = rel_diff(&r.contract(2, at.y()), &sg.jacobi());
            Ok(a)
        })
        .collect::<Result<_>>()?;
    let max = |f: fn(&Acc) -> f64| per.iter().map(f).fold(0.0, f64::max);
    let count = samples.len();
    let pre = format!("{}[n={n}]", e.name);
    Ok(vec![
        CheckRecord::new(format!("{pre} euler chain"), max(|a| a.euler), tol, count),
        CheckRecord::new(
            format!("{pre} symmetry tags"),
            max(|a| a.symmetry),
            tol,
            count,
        ),
        CheckRecord::new(
            format!("{pre} g^ij h_ij = n-1"),
            max(|a| a.trace),
            tol,
            count,
        ),
        CheckRecord::new(format!("{pre} h_ij y^j = 0"), max(|a| a.hy), tol, count),
        CheckRecord::new(
            format!("{pre} d_C beta = beta"),
            max(|a| a.homog),
            tol,
            count,
        ),
        CheckRecord::new(
            format!("{pre} y^i b_i|j = delta_j beta"),
            max(|a| a.euler_form),
            tol,
            count,
        ),
        CheckRecord::new(format!("{pre} closed spray"), max(|a| a.spray), 1e-6, count),
        CheckRecord::new(
            format!("{pre} closed connection"),
            max(|a| a.connection),
            1e-6,
            count,
        ),
        CheckRecord::new(
            format!("{pre} closed Berwald curvature"),
            max(|a| a.curvature),
            1e-6,
            count,
        ),
        CheckRecord::new(
            format!("{pre} R^h_ij y^j = Phi^h_i"),
            max(|a| a.sign),
            tol,
            count,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_counts_with_floor() {
        assert_eq!(numerical_rank(&[1.0, 1e-3, 1e-9], 1e-7, 0.0), 2);
        assert_eq!(numerical_rank(&[1e-12, 1e-13], 1e-7, 1e-9), 0);
        assert_eq!(numerical_rank(&[0.0, 0.0], 1e-7, 0.0), 0);
    }

    #[test]
    fn empty_rows_have_full_kernel() {
        let (_, rank) = kernel_of(&[vec![0.0, 0.0, 0.0]], 3, 1e-7);
        assert_eq!(rank, 0);
        let (_, rank) = kernel_of(&[vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0]], 3, 1e-7);
        assert_eq!(rank, 2);
    }
}
