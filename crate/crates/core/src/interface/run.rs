use std::sync::Arc;

use serde::Serialize;

use super::config::RunConfig;
use super::expr::{parse_with_vars, Expr};
use super::report::{Record, Report};
use crate::analysis::{
    invariant_battery, parallel_obstruction_scan, scalar_curvature_fit, ScanOptions, ScanRows,
};
use crate::calculus::{Scheme, TangentSample};
use crate::catalogue::{entry_by_name, CatalogueEntry};
use crate::error::{Error, Result};
use crate::forms::{is_parallel, OneForm, ParallelTolerances};
use crate::geometry::{euler_residuals, MetricModel, SampleGeometry, TensorValue};
use crate::sampling::{rs_grid, tangent_samples, Sampler};
use crate::sphsym::{
    classify_profile, metrizability_residuals, parallel_form_check, spray_from_pq, sss_residuals,
    PQPair, RadialFactor, SphSymProfile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Tensors,
    CheckParallel,
    Scan,
    Sphsym,
    ScalarCurvature,
    Invariants,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Tensors,
        Command::CheckParallel,
        Command::Scan,
        Command::Sphsym,
        Command::ScalarCurvature,
        Command::Invariants,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Tensors => "tensors",
            Command::CheckParallel => "check-parallel",
            Command::Scan => "scan",
            Command::Sphsym => "sphsym",
            Command::ScalarCurvature => "scalar-curvature",
            Command::Invariants => "invariants",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::ConfigError(format!("unknown command `{s}`")))
    }
}

/// Process exit code for an error: 2 for configuration and parse errors,
/// 3 for numeric domain errors, 1 for failed consistency checks.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric_domain() {
        3
    } else if matches!(
        e,
        Error::Inconsistent { .. } | Error::ConventionMismatch { .. }
    ) {
        1
    } else {
        2
    }
}

/// Runs `command` on a pool of `config.threads` worker threads.
pub fn run(command: Command, config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::ConfigError(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(command, config))
}

fn dispatch(command: Command, cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new(command.as_str(), cfg.clone());
    match command {
        Command::Tensors => tensors(cfg, &mut report)?,
        Command::CheckParallel => check_parallel(cfg, &mut report)?,
        Command::Scan => scan(cfg, &mut report)?,
        Command::Sphsym => sphsym(cfg, &mut report)?,
        Command::ScalarCurvature => scalar_curvature(cfg, &mut report)?,
        Command::Invariants => invariants(cfg, &mut report)?,
    }
    report.verdict("overall", if report.passed() { "pass" } else { "fail" });
    Ok(report)
}

/// A parsed expression as a closure over jets; non-finite values propagate
/// and are caught by the pipeline's finiteness checks.
fn compile(src: &str, vars: &'static [&'static str]) -> Result<Arc<Expr>> {
    Ok(Arc::new(parse_with_vars(src, vars)?))
}

const RS: &[&str] = &["r", "s"];
const R: &[&str] = &["r"];

pub fn profile_from_expr(src: &str) -> Result<SphSymProfile> {
    let e = compile(src, RS)?;
    Ok(SphSymProfile::new(src, move |r, s| {
        e.eval_unchecked(RS, &[r.clone(), s.clone()])
    }))
}

pub fn radial_factor_from_expr(src: &str) -> Result<RadialFactor> {
    let e = compile(src, R)?;
    Ok(RadialFactor::new(src, move |r| {
        e.eval_unchecked(R, std::slice::from_ref(r))
    }))
}

/// A 1-form whose coefficients are expressions in `x1..xn`.
pub fn form_from_exprs(srcs: &[String], dim: usize) -> Result<OneForm> {
    if srcs.len() != dim {
        return Err(Error::ConfigError(format!(
            "form needs {dim} coefficient expressions, got {}",
            srcs.len()
        )));
    }
    let names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let exprs: Vec<Expr> = srcs
        .iter()
        .map(|s| parse_with_vars(s, &refs))
        .collect::<Result<_>>()?;
    Ok(OneForm::new(srcs.join(", "), dim, move |x| {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        exprs.iter().map(|e| e.eval_unchecked(&refs, x)).collect()
    }))
}

struct Resolved {
    model: MetricModel,
    entry: Option<CatalogueEntry>,
    radius: f64,
}

fn resolve(cfg: &RunConfig) -> Result<Resolved> {
    let (model, entry) = match (&cfg.metric, &cfg.phi) {
        (Some(name), None) => {
            let e = entry_by_name(name, cfg.dim, cfg.a.as_deref())?;
            (e.model.clone(), Some(e))
        }
        (None, Some(src)) => {
            let p = profile_from_expr(src)?;
            (p.model(cfg.dim, 1.0)?, None)
        }
        _ => {
            return Err(Error::ConfigError(
                "exactly one of `metric` and `phi` is required".into(),
            ))
        }
    };
    let radius = cfg.radius.unwrap_or_else(|| model.domain.sampling_radius());
    model.domain.check_radius(radius)?;
    Ok(Resolved {
        model,
        entry,
        radius,
    })
}

fn samples(cfg: &RunConfig, r: &Resolved) -> Vec<TangentSample> {
    tangent_samples(cfg.seed, cfg.dim, r.radius, cfg.samples)
}

fn default_tol(cfg: &RunConfig, ad: f64, fd: f64) -> f64 {
    cfg.tol.unwrap_or(match cfg.scheme {
        Scheme::Ad => ad,
        Scheme::Fd => fd,
    })
}

fn require_ad(cfg: &RunConfig, command: &str) -> Result<()> {
    if cfg.scheme == Scheme::Fd {
        return Err(Error::ConfigError(format!(
            "`{command}` runs on the AD scheme only; fd is available for tensors and check-parallel"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct TensorDump {
    sample: TangentSample,
    tensors: Vec<TensorValue>,
}

fn tensors(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let r = resolve(cfg)?;
    let samples = samples(cfg, &r);
    let tol = default_tol(cfg, 1e-8, 1e-4);
    let mut dumps = Vec::with_capacity(samples.len());
    let (mut sym, mut euler): (f64, f64) = (0.0, 0.0);
    for at in &samples {
        let sg = SampleGeometry::with_scheme(&r.model, at, cfg.scheme)?;
        let mut ts = Vec::new();
        if sg.has_finsler() {
            ts.extend([
                sg.metric_tensor()?,
                sg.inverse_metric()?,
                sg.hilbert_form()?,
                sg.angular_metric()?,
            ]);
        }
        ts.extend([
            sg.spray(),
            sg.nonlinear_connection(),
            sg.berwald_connection(),
            sg.berwald_curvature(),
            sg.mean_berwald(),
        ]);
        if sg.has_finsler() {
            ts.push(sg.landsberg()?);
        }
        ts.extend([sg.jacobi(), sg.curvature()?]);
        for t in &ts {
            if !t.is_finite() {
                return Err(Error::non_finite(format!("{} at {at}", t.name)));
            }
            sym = sym.max(t.symmetry_residual() / (1.0 + t.max_abs()));
        }
        if sg.has_finsler() {
            let scale = 1.0 + ts.iter().map(|t| t.max_abs()).fold(0.0, f64::max);
            euler = euler.max(euler_residuals(&sg)?.max() / scale);
        }
        dumps.push(TensorDump {
            sample: at.clone(),
            tensors: ts,
        });
    }
    let n = samples.len();
    report.push(Record::new("symmetry tags", sym, tol, n, cfg.seed));
    if r.model.has_finsler() {
        report.push(Record::new("euler chain", euler, tol, n, cfg.seed));
    }
    report.set_details(&dumps)
}

fn check_parallel(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let r = resolve(cfg)?;
    let cp = &cfg.check_parallel;
    let form = match (&cp.form, &r.entry) {
        (Some(srcs), _) => form_from_exprs(srcs, cfg.dim)?,
        (None, Some(e)) => match &cp.c_mu {
            Some(c_mu) => e.parallel_family(cp.c, c_mu)?,
            None => e.known_parallel_form().ok_or_else(|| {
                Error::ConfigError(format!(
                    "`{}` has no built-in parallel form; pass --form",
                    e.name
                ))
            })?,
        },
        (None, None) => {
            return Err(Error::ConfigError(
                "check-parallel needs --form for a profile metric".into(),
            ))
        }
    };
    let samples = samples(cfg, &r);
    let tol = match cfg.tol {
        Some(t) => ParallelTolerances::uniform(t, cfg.scheme),
        None => ParallelTolerances::for_scheme(cfg.scheme),
    };
    let rep = is_parallel(&r.model, &form, &samples, tol)?;
    let n = rep.sample_count;
    report.push(Record::new(
        "b_i|j",
        rep.max_covariant,
        tol.covariant,
        n,
        cfg.seed,
    ));
    report.push(Record::new(
        "delta_j beta",
        rep.max_delta,
        tol.delta,
        n,
        cfg.seed,
    ));
    report.push(Record::new(
        "d_R beta",
        rep.max_curvature,
        tol.curvature,
        n,
        cfg.seed,
    ));
    report.push(Record::new(
        "d_C beta - beta",
        rep.max_homogeneity,
        1e-14,
        n,
        cfg.seed,
    ));
    report.verdict("parallel", format!("{:?}", rep.verdict));
    report.set_details(&rep)
}

fn scan(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    require_ad(cfg, "scan")?;
    let r = resolve(cfg)?;
    let sc = &cfg.scan;
    let mut sampler = Sampler::new(cfg.seed);
    let xs: Vec<Vec<f64>> = (0..sc.x_points)
        .map(|_| sampler.point_in_ball(cfg.dim, r.radius))
        .collect();
    let opts = ScanOptions {
        rows: sc.rows.parse::<ScanRows>()?,
        y_per_point: sc.y_per_point,
        threshold: cfg.tol.unwrap_or(sc.threshold),
        seed: cfg.seed,
        known_form: r.entry.as_ref().and_then(|e| e.known_parallel_form()),
    };
    let rep = parallel_obstruction_scan(&r.model, &xs, &opts)?;
    let count = xs.len() * sc.y_per_point;
    report.push(
        Record::new(
            "kernel intersection dimension",
            rep.intersection_kernel_dim as f64,
            0.0,
            count,
            cfg.seed,
        )
        .with_note(format!("branch {:?}", rep.branch))
        .with_note(format!(
            "max per-point kernel dimension {}",
            rep.max_kernel_dim
        )),
    );
    if let Some(res) = rep
        .points
        .iter()
        .filter_map(|p| p.known_form_residual)
        .reduce(f64::max)
    {
        report.push(Record::new(
            "known parallel form in kernel",
            res,
            1e-7,
            count,
            cfg.seed,
        ));
    }
    report.verdict("branch", format!("{:?}", rep.branch));
    report.set_details(&rep)
}

#[derive(Serialize)]
struct SphsymDetails {
    classification: crate::sphsym::ProfileClassification,
    grid_points: usize,
    parallel: Option<crate::sphsym::SphParallelReport>,
}

fn sphsym(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    require_ad(cfg, "sphsym")?;
    let profile = match (&cfg.phi, cfg.metric.as_deref()) {
        (Some(src), _) => profile_from_expr(src)?,
        (None, Some("euclidean")) => SphSymProfile::euclidean(),
        (None, Some("berwald_classic")) => SphSymProfile::berwald_classic(),
        _ => {
            return Err(Error::ConfigError(
                "sphsym needs --phi or a spherically symmetric catalogue metric".into(),
            ))
        }
    };
    let sc = &cfg.sphsym;
    let grid = rs_grid(sc.grid, sc.r_min, sc.r_max);
    let tol = cfg.tol.unwrap_or(1e-7);
    let seed = cfg.seed;
    let pq = PQPair::from_profile(&profile);
    let (mut res1, mut res2) = (0.0f64, 0.0f64);
    for &(r, s) in &grid {
        let m = metrizability_residuals(&profile, &pq, r, s)?;
        res1 = res1.max(m.res1);
        res2 = res2.max(m.res2);
    }
    report.push(Record::new(
        "metrizability res1",
        res1,
        tol,
        grid.len(),
        seed,
    ));
    report.push(Record::new(
        "metrizability res2",
        res2,
        tol,
        grid.len(),
        seed,
    ));

    let model = profile.model(cfg.dim, 1.0)?;
    let radius = cfg.radius.unwrap_or(sc.r_max);
    model.domain.check_radius(radius)?;
    let samples = Sampler::new(seed).shell_tangents(cfg.dim, sc.r_min, radius, cfg.samples);
    let mut spray_gap: f64 = 0.0;
    for at in &samples {
        let closed = spray_from_pq(&pq, at)?;
        let pipe = SampleGeometry::new(&model, at)?.spray();
        spray_gap = spray_gap.max(pipe.max_abs_diff(&closed) / (1.0 + closed.max_abs()));
    }
    report.push(Record::new(
        "spray from P, Q vs pipeline",
        spray_gap,
        tol,
        samples.len(),
        seed,
    ));

    let classification = classify_profile(&profile, &grid, 1e-10)?;
    report.verdict("profile_branch", format!("{:?}", classification.branch));

    let parallel = match &sc.p {
        None => None,
        Some(p_src) => {
            let f = radial_factor_from_expr(sc.f.as_deref().unwrap_or("1"))?;
            let p = compile(p_src, RS)?;
            let pq = PQPair::parallel(&f, move |r, s| {
                p.eval_unchecked(RS, &[r.clone(), s.clone()])
            });
            let (mut s1, mut s2, mut s3) = (0.0f64, 0.0f64, 0.0f64);
            for &(r, s) in &grid {
                let v = sss_residuals(&f, &pq, r, s)?;
                s1 = s1.max(v.sss1.abs());
                s2 = s2.max(v.sss2.abs());
                s3 = s3.max(v.sss3.abs());
            }
            report.push(Record::new("SSS1", s1, 1e-10, grid.len(), seed));
            report.push(Record::new("SSS2", s2, 1e-10, grid.len(), seed));
            report.push(Record::new("SSS3", s3, 1e-10, grid.len(), seed));
            let rep = parallel_form_check(
                &pq,
                &f,
                &samples,
                ParallelTolerances::uniform(tol, Scheme::Ad),
            )?;
            report.push(Record::new(
                "delta_i beta",
                rep.parallel.max_delta,
                tol,
                samples.len(),
                seed,
            ));
            report.push(Record::new(
                "b_i|j",
                rep.parallel.max_covariant,
                tol,
                samples.len(),
                seed,
            ));
            report.verdict("parallel", format!("{:?}", rep.parallel.verdict));
            Some(rep)
        }
    };
    report.set_details(&SphsymDetails {
        classification,
        grid_points: grid.len(),
        parallel,
    })
}

fn scalar_curvature(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    require_ad(cfg, "scalar-curvature")?;
    let r = resolve(cfg)?;
    let samples = samples(cfg, &r);
    let tol = cfg.tol.unwrap_or(1e-6);
    let fit = scalar_curvature_fit(&r.model, &samples, tol)?;
    report.push(
        Record::new(
            "scalar flag curvature residual",
            fit.max_relative_residual,
            tol,
            samples.len(),
            cfg.seed,
        )
        .with_note(format!("K in [{:.17e}, {:.17e}]", fit.k_min, fit.k_max)),
    );
    report.verdict("curvature", format!("{:?}", fit.verdict));
    report.verdict("k_min", fit.k_min);
    report.verdict("k_max", fit.k_max);
    report.set_details(&fit)
}

fn invariants(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    require_ad(cfg, "invariants")?;
    let r = resolve(cfg)?;
    let e = r
        .entry
        .as_ref()
        .ok_or_else(|| Error::ConfigError("invariants needs a catalogue metric".into()))?;
    let samples = samples(cfg, &r);
    let checks = invariant_battery(e, &samples, cfg.tol.unwrap_or(1e-8))?;
    for c in &checks {
        report.push(Record::from_check(c, cfg.seed));
    }
    report.set_details(&checks)
}
