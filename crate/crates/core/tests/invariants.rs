use ffgs::catalog::{self, CatalogParams};
use ffgs::dsl::ast::Expr;
use ffgs::dsl::{parse_expr, printer::print_expr};
use ffgs::BaseRing;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = (u32, u32, u64)> {
    (prop_oneof![Just(2u32), Just(3), Just(5)], 1u32..=2).prop_flat_map(|(p, m)| {
        let pm = (p as u64).pow(m);
        (Just(p), Just(m), 1..pm)
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u64..1000).prop_map(Expr::Int),
        Just(Expr::Pi),
        (prop_oneof![Just("x"), Just("y"), Just("z1")], proptest::option::of(1u64..4))
            .prop_map(|(n, s)| Expr::var(n, s)),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), 0u64..12).prop_map(|(a, k)| Expr::pow(a, k)),
            inner.prop_map(Expr::neg),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_maps_compose((p, m, lambda) in group(), n in 0u64..=8, n2 in 0u64..=8) {
        let g = catalog::g_lambda(CatalogParams::new(BaseRing::prime_field(p).unwrap(), m, lambda).unwrap()).unwrap();
        let composed = g.compose(&g.mult_by_n(n), &g.mult_by_n(n2)).unwrap();
        prop_assert_eq!(composed, g.mult_by_n(n * n2));
    }

    #[test]
    fn g_lambda_axioms_hold((p, m, lambda) in group(), lifted in any::<bool>()) {
        let base = if lifted { BaseRing::fp_pi(p, 2) } else { BaseRing::prime_field(p) }.unwrap();
        let g = catalog::g_lambda(CatalogParams::new(base, m, lambda).unwrap()).unwrap();
        let report = g.check_axioms();
        prop_assert!(report.all_pass(), "{:?}", report);
    }

    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        let text = print_expr(&e);
        let back = parse_expr(&text);
        prop_assert_eq!(back.as_ref().ok(), Some(&e), "{}", text);
    }
}
