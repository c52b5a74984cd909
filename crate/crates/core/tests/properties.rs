use finsler_core::calculus::{homogeneity_check, Jet, JetSpace, TangentSample};
use finsler_core::catalogue::{entry, CatalogueName};
use finsler_core::geometry::SampleGeometry;
use finsler_core::interface::parse_expression;
use proptest::prelude::*;

fn expr_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("r".to_string()),
        Just("s".to_string()),
        Just("pi".to_string()),
        (0.0..100.0f64).prop_map(|v| format!("{v}")),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (
                inner.clone(),
                inner.clone(),
                prop::sample::select(vec!["+", "-", "*", "/", "^"])
            )
                .prop_map(|(a, b, op)| format!("{a}{op}{b}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            inner.clone().prop_map(|a| format!("({a})")),
            (
                inner,
                prop::sample::select(vec!["sqrt", "exp", "log", "sin", "cos", "abs"])
            )
                .prop_map(|(a, f)| format!("{f}({a})")),
        ]
    })
}

fn ball_sample(n: usize) -> impl Strategy<Value = TangentSample> {
    (
        prop::collection::vec(-0.34..0.34f64, n),
        prop::collection::vec(-1.0..1.0f64, n),
    )
        .prop_filter("nonzero y", |(_, y)| {
            y.iter().map(|v| v * v).sum::<f64>() > 1e-2
        })
        .prop_map(|(x, y)| TangentSample::new(x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_expressions_reparse_identically(src in expr_source()) {
        let e = parse_expression(&src).unwrap();
        prop_assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn jet_field_identities(a in 0.1..5.0f64, b in -3.0..3.0f64) {
        let sp = JetSpace::get(2, 4);
        let x = Jet::variable(&sp, a, 0);
        let y = Jet::variable(&sp, b, 1);
        let lhs = &(&x * &y).exp() / &x.sqrt().powi(2);
        let rhs = &(&y * &x).exp() * &x.recip();
        for (u, v) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((u - v).abs() <= 1e-9 * (1.0 + v.abs()));
        }
        let back = x.ln().exp();
        for (u, v) in back.coeffs().iter().zip(x.coeffs()) {
            prop_assert!((u - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn sprays_are_quadratic(at in ball_sample(3)) {
        for name in CatalogueName::ALL {
            let e = entry(name, 3, None).unwrap();
            for i in 0..3 {
                prop_assert!(homogeneity_check(&e.closed_spray().component(i), &at, 2).unwrap() <= 1e-12);
            }
            let energy = e.model.energy_field().unwrap();
            prop_assert!(homogeneity_check(&energy, &at, 2).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn berwald_curvature_annihilates_y(at in ball_sample(3)) {
        let e = entry(CatalogueName::GeneralBerwald, 3, Some(&[0.2, -0.1, 0.05])).unwrap();
        let sg = SampleGeometry::new(&e.model, &at).unwrap();
        let g = sg.berwald_curvature();
        prop_assert!(g.contract(3, at.y()).max_abs() <= 1e-9 * (1.0 + g.max_abs()));
        prop_assert!(g.symmetry_residual() <= 1e-9 * (1.0 + g.max_abs()));
    }
}
