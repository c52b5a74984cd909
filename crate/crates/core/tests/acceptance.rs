//! Acceptance checks, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::time::Instant;

use finsler_core::analysis::{
    invariant_battery, parallel_obstruction_scan, scalar_curvature_fit, CurvatureVerdict,
    ScanOptions, ScanRows,
};
use finsler_core::calculus::{Scheme, TangentSample};
use finsler_core::catalogue::{entry, CatalogueName};
use finsler_core::forms::{
    annihilation_check_at, functional_independence, is_parallel, randers_lift, ParallelTolerances,
    PhiChoice,
};
use finsler_core::geometry::SampleGeometry;
use finsler_core::interface::{run, Command, RunConfig};
use finsler_core::sampling::{default_rs_grid, tangent_samples, Sampler};
use finsler_core::sphsym::{
    metrizability_residuals, parallel_form_check, pq_from_profile, spray_from_pq, sss_residuals,
    PQPair, RadialFactor, SphSymProfile,
};
use finsler_core::Result;

type Check = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn x_points(seed: u64, n: usize, count: usize, radius: f64) -> Vec<Vec<f64>> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.point_in_ball(n, radius)).collect()
}

fn closed_form_oracle() -> Result<Outcome> {
    let start = Instant::now();
    let e = entry(CatalogueName::GeneralBerwald, 3, Some(&[0.1, 0.05, 0.0]))?;
    let mut worst: f64 = 0.0;
    for at in tangent_samples(1, 3, 0.6, 100) {
        let pipe = SampleGeometry::new(&e.model, &at)?.berwald_curvature();
        let closed = e.closed_berwald_curvature(&at)?;
        worst = worst.max(pipe.max_abs_diff(&closed) / closed.max_abs());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-6 && secs <= 60.0,
        format!("max relative deviation {worst:.3e} over 100 samples in {secs:.2} s"),
    )
}

fn example1_positive_case() -> Result<Outcome> {
    let a = [0.5, 0.1, 0.0];
    let e = entry(CatalogueName::Example1, 3, Some(&a))?;
    let w = e.parallel_family(1.0, &[0.0, 0.2, 0.0])?;
    let samples = tangent_samples(2, 3, 0.6, 100);
    let rep = is_parallel(
        &e.model,
        &w,
        &samples,
        ParallelTolerances::for_scheme(Scheme::Ad),
    )?;
    let mut spray_gap: f64 = 0.0;
    for at in &samples {
        let g = SampleGeometry::new(&e.model, at)?.spray();
        let wx = 1.0 + a.iter().zip(at.x()).map(|(u, v)| u * v).sum::<f64>();
        let ay: f64 = a.iter().zip(at.y()).map(|(u, v)| u * v).sum();
        for i in 0..3 {
            let want = -ay / wx * at.y()[i];
            spray_gap = spray_gap.max((g.get(&[i]) - want).abs() / (1.0 + want.abs()));
        }
    }
    outcome(
        rep.max_covariant <= 1e-7
            && rep.max_delta <= 1e-7
            && rep.max_curvature <= 1e-7
            && spray_gap <= 1e-9,
        format!(
            "|b_i|j| {:.2e}, |delta_j beta| {:.2e}, |d_R beta| {:.2e}, spray gap {spray_gap:.2e}",
            rep.max_covariant, rep.max_delta, rep.max_curvature
        ),
    )
}

fn general_berwald_obstruction() -> Result<Outcome> {
    let e = entry(CatalogueName::GeneralBerwald, 3, Some(&[0.1, 0.05, 0.0]))?;
    let rep =
        parallel_obstruction_scan(&e.model, &x_points(3, 3, 5, 0.6), &ScanOptions::default())?;
    let dims: Vec<usize> = rep.points.iter().map(|p| p.kernel_dim).collect();
    outcome(
        rep.points.len() >= 5 && rep.intersection_kernel_dim == 0,
        format!(
            "kernel dimensions {dims:?}, intersection {}, branch {:?}",
            rep.intersection_kernel_dim, rep.branch
        ),
    )
}

fn klein_constant_curvature() -> Result<Outcome> {
    let e = entry(CatalogueName::Klein, 3, None)?;
    let fit = scalar_curvature_fit(&e.model, &tangent_samples(4, 3, 0.6, 100), 1e-6)?;
    let opts = ScanOptions {
        rows: ScanRows::Curvature,
        ..ScanOptions::default()
    };
    let scan = parallel_obstruction_scan(&e.model, &x_points(4, 3, 5, 0.6), &opts)?;
    let k_ok = (fit.k_min + 1.0).abs() <= 1e-6 && (fit.k_max + 1.0).abs() <= 1e-6;
    outcome(
        k_ok && fit.verdict == CurvatureVerdict::ScalarCurvature && scan.max_kernel_dim == 0,
        format!(
            "K in [{:.9}, {:.9}], relative residual {:.2e}, R-row kernel max {}",
            fit.k_min, fit.k_max, fit.max_relative_residual, scan.max_kernel_dim
        ),
    )
}

fn berwald_classic_flat() -> Result<Outcome> {
    let e = entry(CatalogueName::BerwaldClassic, 3, None)?;
    let mut worst: f64 = 0.0;
    for at in tangent_samples(5, 3, 0.6, 100) {
        let sg = SampleGeometry::new(&e.model, &at)?;
        let f = sg.finsler_value()?;
        worst = worst.max(sg.jacobi().max_abs() / (f * f));
    }
    outcome(
        worst <= 1e-6,
        format!("max |Phi| / F^2 = {worst:.2e} over 100 samples"),
    )
}

fn sphsym_closure() -> Result<Outcome> {
    let profile = SphSymProfile::berwald_classic();
    let pq = PQPair::from_profile(&profile);
    let grid = default_rs_grid();
    let (mut q_max, mut p_gap, mut res): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for &(r, s) in &grid {
        let v = pq_from_profile(&profile, r, s)?;
        let a = 1.0 - r * r;
        let want = ((a + s * s).sqrt() + s) / a;
        q_max = q_max.max(v.q.abs());
        p_gap = p_gap.max((v.p - want).abs());
        let m = metrizability_residuals(&profile, &pq, r, s)?;
        res = res.max(m.res1).max(m.res2);
    }
    let model = profile.model(3, 1.0)?;
    let mut spray_gap: f64 = 0.0;
    for at in Sampler::new(6).shell_tangents(3, 0.05, 0.6, 100) {
        let closed = spray_from_pq(&pq, &at)?;
        let pipe = SampleGeometry::new(&model, &at)?.spray();
        spray_gap = spray_gap.max(pipe.max_abs_diff(&closed) / (1.0 + closed.max_abs()));
    }
    outcome(
        q_max <= 1e-8 && p_gap <= 1e-8 && res <= 1e-7 && spray_gap <= 1e-7,
        format!(
            "{} grid points: |Q| {q_max:.2e}, |P - closed| {p_gap:.2e}, metrizability {res:.2e}, spray {spray_gap:.2e}",
            grid.len()
        ),
    )
}

fn parallel_construction() -> Result<Outcome> {
    let f = RadialFactor::constant(1.0);
    let pq = PQPair::parallel(&f, |r, s| &(r * s) / 10.0);
    let samples: Vec<TangentSample> = Sampler::new(7).shell_tangents(3, 0.05, 0.6, 100);
    let rep = parallel_form_check(
        &pq,
        &f,
        &samples,
        ParallelTolerances::for_scheme(Scheme::Ad),
    )?;
    let (mut s1, mut s2): (f64, f64) = (0.0, 0.0);
    for (r, s) in default_rs_grid() {
        let v = sss_residuals(&f, &pq, r, s)?;
        s1 = s1.max(v.sss1.abs());
        s2 = s2.max(v.sss2.abs());
    }
    outcome(
        rep.parallel.max_delta <= 1e-7 && s1 <= 1e-10 && s2 <= 1e-10,
        format!(
            "|delta_i beta| {:.2e} over 100 samples, SSS1 {s1:.2e}, SSS2 {s2:.2e}",
            rep.parallel.max_delta
        ),
    )
}

fn randers_ingredient() -> Result<Outcome> {
    let e = entry(CatalogueName::Example1, 3, Some(&[0.5, 0.1, 0.0]))?;
    // c = 0.3 keeps F + β positive on the sampled ball.
    let w = e.parallel_family(0.3, &[0.0, 0.0, 0.0])?;
    let lifted = randers_lift(&e.model, &w)?;
    let samples = tangent_samples(8, 3, 0.6, 100);
    let (mut spray_gap, mut annihilation): (f64, f64) = (0.0, 0.0);
    for at in &samples {
        let base = SampleGeometry::new(&e.model, at)?;
        let sg = SampleGeometry::new(&lifted, at)?;
        let (g0, g1) = (base.spray(), sg.spray());
        spray_gap = spray_gap.max(g1.max_abs_diff(&g0) / (1.0 + g0.max_abs()));
        annihilation = annihilation.max(annihilation_check_at(&sg, &w)?.0);
    }
    let ind = functional_independence(&e.model, &w, PhiChoice::OnePlusS, &samples)?;
    outcome(
        spray_gap <= 1e-7 && annihilation <= 1e-7 && ind.max_rank == 2,
        format!(
            "spray gap {spray_gap:.2e}, |l_h G^h_ijk| {annihilation:.2e}, independence rank {}",
            ind.max_rank
        ),
    )
}

fn invariant_suite() -> Result<Outcome> {
    let start = Instant::now();
    let (mut total, mut failed) = (0, Vec::new());
    for n in [2, 3, 4] {
        let samples = tangent_samples(9 + n as u64, n, 0.6, 25);
        for name in CatalogueName::ALL {
            let a: Option<Vec<f64>> = match name {
                CatalogueName::Example1 | CatalogueName::GeneralBerwald => {
                    Some((0..n).map(|i| [0.3, 0.1, -0.05, 0.02][i]).collect())
                }
                _ => None,
            };
            let e = entry(name, n, a.as_deref())?;
            for rec in invariant_battery(&e, &samples, 1e-8)? {
                total += 1;
                if !rec.pass {
                    failed.push(format!("{} ({:.2e})", rec.name, rec.max_residual));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failed.is_empty() && secs <= 300.0,
        format!(
            "{} of {total} checks pass in {secs:.2} s {failed:?}",
            total - failed.len()
        ),
    )
}

fn determinism() -> Result<Outcome> {
    let mut runs = Vec::new();
    let mut cfg = RunConfig {
        metric: Some("general_berwald".into()),
        a: Some(vec![0.1, 0.05, 0.0]),
        seed: 11,
        samples: 20,
        ..RunConfig::default()
    };
    for command in [Command::Invariants, Command::Scan, Command::Tensors] {
        let a = run(command, &cfg)?.canonical_json()?;
        let b = run(command, &cfg)?.canonical_json()?;
        runs.push(a == b);
    }
    cfg.metric = Some("example1".into());
    cfg.a = Some(vec![0.5, 0.1, 0.0]);
    let a = run(Command::CheckParallel, &cfg)?.canonical_json()?;
    let b = run(Command::CheckParallel, &cfg)?.canonical_json()?;
    runs.push(a == b);
    outcome(
        runs.iter().all(|&x| x),
        format!(
            "{} of {} command pairs byte-identical",
            runs.iter().filter(|&&x| x).count(),
            runs.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        (
            "closed-form Berwald curvature of the general Berwald metric",
            closed_form_oracle,
        ),
        (
            "Example 1 parallel family and spray",
            example1_positive_case,
        ),
        (
            "general Berwald admits no parallel 1-form",
            general_berwald_obstruction,
        ),
        (
            "Klein metric has K = -1 and no R-compatible form",
            klein_constant_curvature,
        ),
        (
            "Berwald classic metric has zero flag curvature",
            berwald_classic_flat,
        ),
        (
            "spherically symmetric closure for the Berwald profile",
            sphsym_closure,
        ),
        (
            "constructed parallel form for f = 1, P = rs/10",
            parallel_construction,
        ),
        ("Randers lift keeps the spray", randers_ingredient),
        ("invariant battery across the catalogue", invariant_suite),
        ("reports are deterministic", determinism),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {:>2}: {name}: {detail}",
            if pass { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
