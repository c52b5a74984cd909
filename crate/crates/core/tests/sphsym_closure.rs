use finsler_core::calculus::Jet;
use finsler_core::forms::{ParallelTolerances, ParallelVerdict};
use finsler_core::geometry::SampleGeometry;
use finsler_core::sampling::{default_rs_grid, rs_grid, tangent_samples, Sampler};
use finsler_core::sphsym::*;

fn berwald_p(r: f64, s: f64) -> f64 {
    ((1.0 - r * r + s * s).sqrt() + s) / (1.0 - r * r)
}

#[test]
fn berwald_profile_grid() {
    let prof = SphSymProfile::berwald_classic();
    let pq = PQPair::from_profile(&prof);
    for (r, s) in default_rs_grid() {
        let v = pq_from_profile(&prof, r, s).unwrap();
        assert!(v.q.abs() <= 1e-8, "Q({r},{s}) = {}", v.q);
        assert!((v.p - berwald_p(r, s)).abs() <= 1e-8);
        let m = metrizability_residuals(&prof, &pq, r, s).unwrap();
        assert!(m.res1 <= 1e-7 && m.res2 <= 1e-7, "{m:?}");
    }
}

#[test]
fn spray_from_pq_matches_pipeline() {
    let prof = SphSymProfile::berwald_classic();
    let pq = PQPair::from_profile(&prof);
    let model = prof.model(3, 1.0).unwrap();
    for at in Sampler::new(9).shell_tangents(3, 0.05, 0.6, 25) {
        let sg = SampleGeometry::new(&model, &at).unwrap();
        let g = spray_from_pq(&pq, &at).unwrap();
        assert!(sg.spray().max_abs_diff(&g) <= 1e-7, "{at}");
        let n = connection_from_pq(&pq, &at).unwrap();
        assert!(sg.nonlinear_connection().max_abs_diff(&n) <= 1e-7, "{at}");
        let ny = n.contract(1, at.y());
        for i in 0..3 {
            assert!((ny.components[i] - 2.0 * g.components[i]).abs() <= 1e-9);
        }
    }
}

#[test]
fn connection_is_fiber_derivative_of_spray() {
    let pq = PQPair::parallel(&RadialFactor::new("1+r^2", |r| r * r + 1.0), |r, s| {
        &(r * s) * 0.1
    });
    let model = pq.model(3).unwrap();
    for at in Sampler::new(4).shell_tangents(3, 0.1, 0.9, 20) {
        let sg = SampleGeometry::new(&model, &at).unwrap();
        let n = connection_from_pq(&pq, &at).unwrap();
        assert!(sg.nonlinear_connection().max_abs_diff(&n) <= 1e-8 * n.max_abs().max(1.0));
    }
}

#[test]
fn altered_spray_breaks_euclidean_metrizability() {
    let prof = SphSymProfile::euclidean();
    let pq = PQPair::new(
        "q=1/(2r^2)",
        |r, _| r.lift(0.0),
        |r, _| (&(r * r) * 2.0).recip(),
    );
    let m = metrizability_residuals(&prof, &pq, 0.5, 0.2).unwrap();
    assert!(m.res1 > 1e-3);
    let m = metrizability_residuals(&prof, &PQPair::zero(), 0.5, 0.2).unwrap();
    assert_eq!((m.res1, m.res2), (0.0, 0.0));
}

type PFn = fn(&Jet, &Jet) -> Jet;

#[test]
fn characterised_q_solves_sss_identically() {
    let factors = [
        RadialFactor::constant(1.0),
        RadialFactor::new("1+r^2", |r| r * r + 1.0),
        RadialFactor::new("e^r", |r| r.exp()),
    ];
    let ps: [PFn; 3] = [|r, _| r.lift(0.0), |r, s| &(r * s) * 0.1, |_, s| s * s];
    for f in &factors {
        for p in ps {
            let pq = PQPair::parallel(f, p);
            for (r, s) in rs_grid(8, 0.1, 0.9) {
                let sss = sss_residuals(f, &pq, r, s).unwrap();
                assert!(sss.sss1.abs() <= 1e-10, "{f:?} {r} {s} {sss:?}");
                assert!(sss.sss2.abs() <= 1e-10);
                assert!((sss.sss3 - (s * sss.sss1 + sss.sss2)).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn parallel_form_checks() {
    let one = RadialFactor::constant(1.0);
    let samples = Sampler::new(7).shell_tangents(3, 0.1, 0.9, 100);
    let tol = ParallelTolerances::default();
    let pq = PQPair::parallel(&one, |r, s| &(r * s) * 0.1);
    let rep = parallel_form_check(&pq, &one, &samples, tol).unwrap();
    assert_eq!(
        rep.parallel.verdict,
        ParallelVerdict::ParallelWithinTol,
        "{rep:?}"
    );
    assert!(rep.parallel.max_delta <= 1e-7);

    let unit = Sampler::new(7).shell_tangents(3, 1.0, 1.0, 10);
    let rep = parallel_form_check(&PQPair::zero(), &one, &unit, tol).unwrap();
    assert_eq!(rep.parallel.verdict, ParallelVerdict::NotParallel);
    assert!(rep.max_y_coefficient >= 1.0);

    let prof = SphSymProfile::berwald_classic();
    let own = Sampler::new(7).shell_tangents(3, 0.1, 0.6, 20);
    let rep = parallel_form_check(&PQPair::from_profile(&prof), &one, &own, tol).unwrap();
    assert_eq!(rep.parallel.verdict, ParallelVerdict::NotParallel);
    let c = classify_profile(&prof, &default_rs_grid(), 1e-8).unwrap();
    assert_eq!(c.branch, ProfileBranch::NonRiemannian);
    let c = classify_profile(&SphSymProfile::euclidean(), &default_rs_grid(), 1e-8).unwrap();
    assert_eq!(c.branch, ProfileBranch::Riemannian);
    let lin = SphSymProfile::new("c(r) s", |r, s| &(r * r + 1.0) * s);
    let c = classify_profile(&lin, &default_rs_grid(), 1e-8).unwrap();
    assert_eq!(c.branch, ProfileBranch::Degenerate);
}

#[test]
fn pq_spray_is_two_homogeneous() {
    let pq = PQPair::parallel(&RadialFactor::constant(1.0), |r, s| &(r * s) * 0.1);
    for at in tangent_samples(3, 3, 0.6, 10) {
        let g = spray_from_pq(&pq, &at).unwrap();
        for lambda in [0.5, 2.0, 3.7] {
            let gl = spray_from_pq(&pq, &at.scaled_y(lambda).unwrap()).unwrap();
            for i in 0..3 {
                assert!(
                    (gl.components[i] - lambda * lambda * g.components[i]).abs()
                        <= 1e-10 * (1.0 + g.max_abs())
                );
            }
        }
    }
}
