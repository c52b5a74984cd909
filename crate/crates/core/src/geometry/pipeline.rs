//! Per-sample tensor pipeline: energy jets, spray jets, and every quantity
//! derived from them.

use nalgebra::DMatrix;

use super::model::MetricModel;
use super::tensor::{IndexRole, LoweringConvention, SymmetryTag, TensorValue};
use crate::calculus::{fd_partial, Jet, JetSpace, ScalarField, Scheme, TangentSample};
use crate::error::{Error, Result};

/// Truncation degree of the energy expansion: the third fiber derivative of
/// the spray reaches fifth-order partials of `E`.
const ENERGY_DEGREE: usize = 5;
/// Truncation degree of the spray expansion.
const SPRAY_DEGREE: usize = 3;
/// `|det g| ≤ DEGENERACY_FACTOR · (mean |g_ii|)^n` declares a degenerate metric.
pub const DEGENERACY_FACTOR: f64 = 1e-10;

/// Geometric data at one tangent sample, shared by all tensor accessors.
#[derive(Debug, Clone)]
pub struct SampleGeometry {
    n: usize,
    at: TangentSample,
    scheme: Scheme,
    finsler: Option<FinslerData>,
    spray_jets: Vec<Jet>,
    spray_deviation: Option<f64>,
    g_vals: Vec<f64>,
    n_vals: Vec<f64>,
    b2: Vec<f64>,
    b3: Vec<f64>,
    dx_g: Vec<f64>,
    dx_n: Vec<f64>,
}

#[derive(Debug, Clone)]
struct FinslerData {
    f: f64,
    energy: f64,
    g: DMatrix<f64>,
    ginv: DMatrix<f64>,
    hilbert: Vec<f64>,
}

/// Taylor expansion of `E = F²/2` about `at` in `(x, y)`, degree 5.
fn energy_expansion(energy: &ScalarField, at: &TangentSample, scheme: Scheme) -> Jet {
    match scheme {
        Scheme::Ad => energy.expand(at, ENERGY_DEGREE),
        Scheme::Fd => {
            let n = at.dim();
            let space = JetSpace::get(2 * n, ENERGY_DEGREE);
            let point = at.coords();
            let eval = |p: &[f64]| energy.eval_f64(&p[..n], &p[n..]);
            let coeffs = (0..space.len())
                .map(|k| {
                    let e = space.exponents(k);
                    let fact: f64 = e
                        .iter()
                        .map(|&v| crate::calculus::jet::factorial(v as usize))
                        .product();
                    fd_partial(&eval, &point, e) / fact
                })
                .collect();
            Jet::from_coeffs(&space, coeffs)
        }
    }
}

pub(crate) fn degeneracy_check(g: &DMatrix<f64>) -> Result<()> {
    let n = g.nrows();
    let det = g.determinant();
    let mean_diag = (0..n).map(|i| g[(i, i)].abs()).sum::<f64>() / n as f64;
    let threshold = DEGENERACY_FACTOR * mean_diag.powi(n as i32);
    if !det.is_finite() {
        return Err(Error::non_finite("metric tensor determinant"));
    }
    if det.abs() <= threshold {
        return Err(Error::DegenerateMetric { det, threshold });
    }
    Ok(())
}

/// Solve `a · x = b` in jet arithmetic (Gaussian elimination, partial
/// pivoting on the constant parts).
fn solve_jets(mut a: Vec<Vec<Jet>>, mut b: Vec<Jet>) -> Result<Vec<Jet>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].value().abs().total_cmp(&a[j][col].value().abs()))
            .expect("non-empty range");
        if a[pivot][col].value() == 0.0 {
            return Err(Error::DegenerateMetric {
                det: 0.0,
                threshold: 0.0,
            });
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for row in col + 1..n {
            let factor = &a[row][col] * &inv;
            for k in col..n {
                let t = &factor * &a[col][k];
                a[row][k] -= t;
            }
            let t = &factor * &b[col];
            b[row] -= t;
        }
    }
    let mut x = vec![b[0].zero_like(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= &a[row][k] * &x[k];
        }
        x[row] = &acc / &a[row][row];
    }
    Ok(x)
}

fn idx2(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}
fn idx3(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}
fn idx4(n: usize, h: usize, i: usize, j: usize, k: usize) -> usize {
    ((h * n + i) * n + j) * n + k
}

impl SampleGeometry {
    pub fn new(m: &MetricModel, at: &TangentSample) -> Result<Self> {
        Self::with_scheme(m, at, Scheme::Ad)
    }

    pub fn with_scheme(m: &MetricModel, at: &TangentSample, scheme: Scheme) -> Result<Self> {
        m.check_sample(at)?;
        let n = m.dim;
        let space3 = JetSpace::get(2 * n, SPRAY_DEGREE);
        let x3 = Jet::variables(&space3, at.x(), 0);
        let y3 = Jet::variables(&space3, at.y(), n);

        let mut finsler = None;
        let mut from_energy = None;
        if m.finsler.is_some() {
            let energy = m.energy_field()?;
            let e = energy_expansion(&energy, at, scheme);
            if !e.is_finite() {
                return Err(Error::non_finite(format!(
                    "energy expansion of `{}` at {at}",
                    m.name
                )));
            }
            let ev = e.value();
            if ev <= 0.0 {
                return Err(Error::NotPositive { min: ev });
            }
            let g = DMatrix::from_fn(n, n, |i, j| e.partial_along(&[n + i, n + j]));
            degeneracy_check(&g)?;
            let ginv = g.clone().try_inverse().ok_or(Error::DegenerateMetric {
                det: 0.0,
                threshold: 0.0,
            })?;
            let f = (2.0 * ev).sqrt();
            // ∂̇_i E = F ℓ_i
            let hilbert = (0..n).map(|i| e.partial_along(&[n + i]) / f).collect();
            finsler = Some(FinslerData {
                f,
                energy: ev,
                g,
                ginv,
                hilbert,
            });

            let gj: Vec<Vec<Jet>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| e.derivative(n + i).derivative(n + j).reduce(&space3))
                        .collect()
                })
                .collect();
            let rhs: Vec<Jet> = (0..n)
                .map(|h| {
                    let dh = e.derivative(n + h);
                    let mut acc = -e.derivative(h).reduce(&space3);
                    for (j, yj) in y3.iter().enumerate() {
                        acc += yj * &dh.derivative(j).reduce(&space3);
                    }
                    acc
                })
                .collect();
            let sol = solve_jets(gj, rhs)?;
            from_energy = Some(sol.into_iter().map(|v| &v * 0.5).collect::<Vec<_>>());
        }

        let from_override = m.spray_override.as_ref().map(|s| s.eval(&x3, &y3));
        let (spray_jets, spray_deviation) = match (from_energy, from_override) {
            (Some(fe), Some(fo)) => {
                let dev = fe
                    .iter()
                    .zip(&fo)
                    .fold(0.0f64, |acc, (a, b)| acc.max((a.value() - b.value()).abs()));
                (fe, Some(dev))
            }
            (Some(fe), None) => (fe, None),
            (None, Some(fo)) => (fo, None),
            (None, None) => {
                return Err(Error::BadParameter(format!(
                    "metric `{}` has neither a Finsler function nor a spray",
                    m.name
                )))
            }
        };
        if spray_jets.len() != n || spray_jets.iter().any(|j| !j.is_finite()) {
            return Err(Error::non_finite(format!("spray of `{}` at {at}", m.name)));
        }

        let d = |i: usize, vars: &[usize]| spray_jets[i].partial_along(vars);
        let g_vals = (0..n).map(|i| d(i, &[])).collect();
        let mut n_vals = vec![0.0; n * n];
        let mut dx_g = vec![0.0; n * n];
        let mut b2 = vec![0.0; n * n * n];
        let mut dx_n = vec![0.0; n * n * n];
        let mut b3 = vec![0.0; n * n * n * n];
        for h in 0..n {
            for i in 0..n {
                n_vals[idx2(n, h, i)] = d(h, &[n + i]);
                dx_g[idx2(n, h, i)] = d(h, &[i]);
                for j in 0..n {
                    b2[idx3(n, h, i, j)] = d(h, &[n + i, n + j]);
                    // ∂_j N^h_i
                    dx_n[idx3(n, h, i, j)] = d(h, &[j, n + i]);
                    for k in 0..n {
                        b3[idx4(n, h, i, j, k)] = d(h, &[n + i, n + j, n + k]);
                    }
                }
            }
        }
        Ok(SampleGeometry {
            n,
            at: at.clone(),
            scheme,
            finsler,
            spray_jets,
            spray_deviation,
            g_vals,
            n_vals,
            b2,
            b3,
            dx_g,
            dx_n,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sample(&self) -> &TangentSample {
        &self.at
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    fn finsler(&self) -> Result<&FinslerData> {
        self.finsler
            .as_ref()
            .ok_or_else(|| Error::BadParameter("spray-only model: Finsler data unavailable".into()))
    }

    pub fn has_finsler(&self) -> bool {
        self.finsler.is_some()
    }

    pub fn finsler_value(&self) -> Result<f64> {
        Ok(self.finsler()?.f)
    }

    pub fn energy(&self) -> Result<f64> {
        Ok(self.finsler()?.energy)
    }

    /// Deviation between the energy-derived spray and the closed-form
    /// override, when both exist.
    pub fn spray_override_deviation(&self) -> Option<f64> {
        self.spray_deviation
    }

    /// Spray coefficients as degree-3 jets in `(x, y)`.
    pub fn spray_jets(&self) -> &[Jet] {
        &self.spray_jets
    }

    pub fn metric_tensor(&self) -> Result<TensorValue> {
        let fd = self.finsler()?;
        Ok(TensorValue::from_fn(
            "g",
            vec![self.n, self.n],
            vec![IndexRole::DOWN_FIBER; 2],
            |i| fd.g[(i[0], i[1])],
        )
        .with_symmetry(SymmetryTag::Symmetric(vec![0, 1])))
    }

    pub fn inverse_metric(&self) -> Result<TensorValue> {
        let fd = self.finsler()?;
        Ok(TensorValue::from_fn(
            "g^-1",
            vec![self.n, self.n],
            vec![IndexRole::UP_FIBER; 2],
            |i| fd.ginv[(i[0], i[1])],
        ))
    }

    /// `ℓ_i = ∂̇_i F`.
    pub fn hilbert_form(&self) -> Result<TensorValue> {
        let fd = self.finsler()?;
        Ok(TensorValue::from_fn(
            "l",
            vec![self.n],
            vec![IndexRole::DOWN_FIBER],
            |i| fd.hilbert[i[0]],
        ))
    }

    /// `y_i = g_ij y^j = F ℓ_i`.
    pub fn lowered_y(&self) -> Result<Vec<f64>> {
        let fd = self.finsler()?;
        Ok(fd.hilbert.iter().map(|l| fd.f * l).collect())
    }

    /// `h_ij = g_ij − ℓ_i ℓ_j`.
    pub fn angular_metric(&self) -> Result<TensorValue> {
        let fd = self.finsler()?;
        Ok(TensorValue::from_fn(
            "h",
            vec![self.n, self.n],
            vec![IndexRole::DOWN_FIBER; 2],
            |i| fd.g[(i[0], i[1])] - fd.hilbert[i[0]] * fd.hilbert[i[1]],
        )
        .with_symmetry(SymmetryTag::Symmetric(vec![0, 1])))
    }

    pub fn spray(&self) -> TensorValue {
        let mut t = TensorValue::from_fn("G", vec![self.n], vec![IndexRole::UP_FIBER], |i| {
            self.g_vals[i[0]]
        });
        if let Some(dev) = self.spray_deviation {
            t = t.with_note(format!("closed-form spray deviation {dev:e}"));
        }
        t
    }

    pub fn spray_values(&self) -> &[f64] {
        &self.g_vals
    }

    /// `N^i_j = ∂̇_j G^i`.
    pub fn nonlinear_connection(&self) -> TensorValue {
        let n = self.n;
        TensorValue::from_fn(
            "N",
            vec![n, n],
            vec![IndexRole::UP_FIBER, IndexRole::DOWN],
            |i| self.n_vals[idx2(n, i[0], i[1])],
        )
    }

    /// `G^h_ij = ∂̇_i N^h_j`.
    pub fn berwald_connection(&self) -> TensorValue {
        let n = self.n;
        TensorValue::from_fn(
            "G^h_ij",
            vec![n, n, n],
            vec![IndexRole::UP_FIBER, IndexRole::DOWN, IndexRole::DOWN],
            |i| self.b2[idx3(n, i[0], i[1], i[2])],
        )
        .with_symmetry(SymmetryTag::Symmetric(vec![1, 2]))
    }

    /// `G^h_ijk = ∂̇_k G^h_ij`.
    pub fn berwald_curvature(&self) -> TensorValue {
        let n = self.n;
        TensorValue::from_fn(
            "G^h_ijk",
            vec![n, n, n, n],
            vec![
                IndexRole::UP_FIBER,
                IndexRole::DOWN,
                IndexRole::DOWN,
                IndexRole::DOWN,
            ],
            |i| self.b3[idx4(n, i[0], i[1], i[2], i[3])],
        )
        .with_symmetry(SymmetryTag::Symmetric(vec![1, 2, 3]))
    }

    /// `E_jk = ½ G^i_ijk`.
    pub fn mean_berwald(&self) -> TensorValue {
        let n = self.n;
        TensorValue::from_fn("E", vec![n, n], vec![IndexRole::DOWN; 2], |i| {
            0.5 * (0..n)
                .map(|h| self.b3[idx4(n, h, h, i[0], i[1])])
                .sum::<f64>()
        })
        .with_symmetry(SymmetryTag::Symmetric(vec![0, 1]))
    }

    /// `L_ijk = −½ F G^h_ijk ℓ_h`.
    pub fn landsberg(&self) -> Result<TensorValue> {
        let n = self.n;
        let fd = self.finsler()?;
        Ok(
            TensorValue::from_fn("L", vec![n, n, n], vec![IndexRole::DOWN; 3], |i| {
                -0.5 * fd.f
                    * (0..n)
                        .map(|h| self.b3[idx4(n, h, i[0], i[1], i[2])] * fd.hilbert[h])
                        .sum::<f64>()
            })
            .with_symmetry(SymmetryTag::Symmetric(vec![0, 1, 2])),
        )
    }

    /// `Φ^i_j = 2∂_j G^i − S(N^i_j) − N^i_k N^k_j`.
    pub fn jacobi(&self) -> TensorValue {
        let n = self.n;
        let y = self.at.y();
        TensorValue::from_fn(
            "Phi",
            vec![n, n],
            vec![IndexRole::UP_FIBER, IndexRole::DOWN],
            |ix| {
                let (i, j) = (ix[0], ix[1]);
                let s_n: f64 = (0..n)
                    .map(|k| {
                        y[k] * self.dx_n[idx3(n, i, j, k)]
                            - 2.0 * self.g_vals[k] * self.b2[idx3(n, i, k, j)]
                    })
                    .sum();
                let nn: f64 = (0..n)
                    .map(|k| self.n_vals[idx2(n, i, k)] * self.n_vals[idx2(n, k, j)])
                    .sum();
                2.0 * self.dx_g[idx2(n, i, j)] - s_n - nn
            },
        )
    }

    /// `δ_k N^h_j = ∂_k N^h_j − N^m_k G^h_mj`.
    fn delta_connection(&self, h: usize, j: usize, k: usize) -> f64 {
        let n = self.n;
        self.dx_n[idx3(n, h, j, k)]
            - (0..n)
                .map(|m| self.n_vals[idx2(n, m, k)] * self.b2[idx3(n, h, m, j)])
                .sum::<f64>()
    }

    /// The δ-difference `δ_k N^h_j − δ_j N^h_k`, before sign normalisation.
    pub fn raw_curvature(&self) -> TensorValue {
        let n = self.n;
        TensorValue::from_fn(
            "R_raw",
            vec![n, n, n],
            vec![IndexRole::UP_FIBER, IndexRole::DOWN, IndexRole::DOWN],
            |i| self.delta_connection(i[0], i[1], i[2]) - self.delta_connection(i[0], i[2], i[1]),
        )
        .with_symmetry(SymmetryTag::Antisymmetric(1, 2))
    }

    /// Curvature `R^h_jk`, sign-normalised so that `R^h_jk y^k = Φ^h_j`.
    pub fn curvature(&self) -> Result<TensorValue> {
        let raw = self.raw_curvature();
        let phi = self.jacobi();
        let contracted = raw.contract(2, self.at.y());
        let scale = phi.max_abs().max(contracted.max_abs()).max(1.0);
        let tol = 1e-6 * scale;
        let plus = contracted.max_abs_diff(&phi);
        let minus = contracted
            .components
            .iter()
            .zip(&phi.components)
            .fold(0.0f64, |m, (c, p)| m.max((c + p).abs()));
        // Expanding δ_k N^h_j y^k shows the δ-difference contracts to −Φ.
        let sign = if minus <= tol {
            -1.0
        } else if plus <= tol {
            1.0
        } else {
            return Err(Error::ConventionMismatch {
                residual: plus.min(minus),
            });
        };
        let mut r = raw;
        r.name = "R".into();
        r.components.iter_mut().for_each(|v| *v *= sign);
        // exact antisymmetry as stored
        let n = self.n;
        for h in 0..n {
            for j in 0..n {
                r.set(&[h, j, j], 0.0);
                for k in j + 1..n {
                    let v = r.get(&[h, j, k]);
                    r.set(&[h, k, j], -v);
                }
            }
        }
        Ok(r.with_note(format!("sign {sign:+} applied to the delta-difference")))
    }

    /// `δ_i f = ∂_i f − N^j_i ∂̇_j f`.
    pub fn delta_derivative(&self, f: &ScalarField) -> Result<TensorValue> {
        let n = self.n;
        let jet = f.expand(&self.at, 1);
        if !jet.is_finite() {
            return Err(Error::non_finite(format!("field expansion at {}", self.at)));
        }
        Ok(TensorValue::from_fn(
            "delta f",
            vec![n],
            vec![IndexRole::DOWN],
            |i| {
                let i = i[0];
                jet.partial_along(&[i])
                    - (0..n)
                        .map(|j| self.n_vals[idx2(n, j, i)] * jet.partial_along(&[n + j]))
                        .sum::<f64>()
            },
        ))
    }

    /// `δ_i f` as degree-2 jets in `(x, y)`, built from the spray jets.
    pub fn delta_jets(&self, f: &ScalarField) -> Vec<Jet> {
        let n = self.n;
        let space = self.spray_jets[0].space().clone();
        let fj = f.expand(&self.at, space.degree());
        (0..n)
            .map(|i| {
                let mut acc = fj.derivative(i);
                for j in 0..n {
                    let nji = self.spray_jets[j].derivative(n + i);
                    acc -= &nji * &fj.derivative(n + j);
                }
                acc
            })
            .collect()
    }

    /// Recorded lowering convention for `y_i` built by this pipeline.
    pub fn lowering(&self) -> LoweringConvention {
        LoweringConvention::MetricLowering
    }
}
