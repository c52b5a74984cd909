use finsler_core::calculus::{
    eval_jet, homogeneity_check, norm_sq, JetOrder, JetSpace, ScalarField, Scheme, TangentSample,
};
use finsler_core::catalogue::{entry, CatalogueName};
use finsler_core::sampling::tangent_samples;

fn norm() -> ScalarField {
    ScalarField::new(|_, y| norm_sq(y).sqrt())
}

fn a_for(name: CatalogueName, n: usize) -> Option<Vec<f64>> {
    match name {
        CatalogueName::Example1 | CatalogueName::GeneralBerwald => {
            Some((0..n).map(|i| [0.1, 0.05, -0.08, 0.03][i % 4]).collect())
        }
        _ => None,
    }
}

#[test]
fn norm_gradient_and_hessian() {
    let at = TangentSample::new(vec![0.3, -0.1, 0.2], vec![1.0, 0.0, 0.0]).unwrap();
    let j = eval_jet(&norm(), &at, JetOrder::new(0, 2).unwrap(), Scheme::Ad).unwrap();
    assert_eq!(j.value(), 1.0);
    assert_eq!(j.fiber_gradient(), vec![1.0, 0.0, 0.0]);
    for a in 0..3 {
        for b in 0..3 {
            let want = if a == b && a > 0 { 1.0 } else { 0.0 };
            assert!((j.partial(&[], &[a, b]).unwrap() - want).abs() < 1e-15);
        }
    }
}

#[test]
fn general_berwald_ad_and_fd_agree_at_reference_point() {
    let e = entry(CatalogueName::GeneralBerwald, 3, Some(&[0.1, 0.05, 0.0])).unwrap();
    let f = e.model.finsler.clone().unwrap();
    let at = TangentSample::new(vec![0.2, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
    let order = JetOrder::new(1, 3).unwrap();
    let ad = eval_jet(&f, &at, order, Scheme::Ad).unwrap();
    let fd = eval_jet(&f, &at, order, Scheme::Fd).unwrap();
    let scale = ad.entries().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
    for ((e1, a), (e2, b)) in ad.entries().zip(fd.entries()) {
        assert_eq!(e1, e2);
        assert!((a - b).abs() <= 1e-6 * scale, "{e1:?}: {a} vs {b}");
    }
}

#[test]
fn schemes_agree_across_catalogue() {
    let order = JetOrder::new(1, 2).unwrap();
    for name in CatalogueName::ALL {
        let a = a_for(name, 3);
        let e = entry(name, 3, a.as_deref()).unwrap();
        let f = e.model.finsler.clone().unwrap();
        for at in tangent_samples(21, 3, 0.6, 100) {
            let ad = eval_jet(&f, &at, order, Scheme::Ad).unwrap();
            let fd = eval_jet(&f, &at, order, Scheme::Fd).unwrap();
            let scale = ad.entries().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
            for ((ex, a), (_, b)) in ad.entries().zip(fd.entries()) {
                assert!(
                    (a - b).abs() <= 1e-6 * scale,
                    "{name} {at} {ex:?}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn mixed_partials_commute() {
    let e = entry(CatalogueName::BerwaldClassic, 3, None).unwrap();
    let f = e.model.finsler.clone().unwrap();
    for at in tangent_samples(22, 3, 0.6, 20) {
        let jet = f.expand(&at, 4);
        for (p, q, r) in [(0, 3, 4), (1, 5, 2), (3, 4, 5)] {
            let a = jet.derivative(p).derivative(q).derivative(r).value();
            let b = jet.derivative(r).derivative(p).derivative(q).value();
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }
}

#[test]
fn energy_euler_identity() {
    for n in [2, 3, 4] {
        for name in CatalogueName::ALL {
            let a = a_for(name, n);
            let e = entry(name, n, a.as_deref()).unwrap();
            let energy = e.model.energy_field().unwrap();
            for at in tangent_samples(23, n, 0.6, 30) {
                let j = eval_jet(&energy, &at, JetOrder::new(0, 1).unwrap(), Scheme::Ad).unwrap();
                let euler: f64 = j
                    .fiber_gradient()
                    .iter()
                    .zip(at.y())
                    .map(|(g, y)| g * y)
                    .sum();
                let rel = (euler - 2.0 * j.value()).abs() / j.value().abs();
                assert!(rel <= 1e-10, "{name} n={n} {at}: {rel:e}");
            }
        }
    }
}

#[test]
fn homogeneity_degrees() {
    let at = TangentSample::new(vec![0.1, 0.2, 0.0], vec![0.3, -1.0, 0.5]).unwrap();
    assert_eq!(homogeneity_check(&norm(), &at, 1).unwrap(), 0.0);
    let e = entry(CatalogueName::Example1, 3, Some(&[0.5, 0.1, 0.0])).unwrap();
    for i in 0..3 {
        let g = e.closed_spray().component(i);
        assert!(homogeneity_check(&g, &at, 2).unwrap() <= 1e-12);
    }
}

#[test]
fn jets_in_one_space_only() {
    let s = JetSpace::get(2, 3);
    assert_eq!(s.nvars(), 2);
    assert!(JetOrder::new(3, 0).is_err());
    assert!(TangentSample::new(vec![0.0], vec![0.0]).is_err());
}
