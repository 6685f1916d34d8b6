use ffgs::dsl::{self, Code};

const HEAD: &str = "ring R = Fp_pi(p=2, e=2);\nalgebra A over R = gens x^2 -> 0, y^2 -> 0;\n";

fn with_head(body: &str) -> String {
    format!("{HEAD}{body}")
}

fn laws() -> &'static str {
    "comul x = x@1 + x@2 + y@1*x@2;\ncomul y = y@1 + y@2 + y@1*y@2;\n"
}

/// (source, expected code, line, column)
fn malformed() -> Vec<(String, Code, u32, u32)> {
    vec![
        (String::new(), Code::MissingRing, 1, 1),
        ("// only a comment\n".into(), Code::MissingRing, 1, 1),
        ("ring R = Fp(p=2);\nalgebra A over R = gens x^2 -> 0 $;".into(), Code::Lexical, 2, 34),
        ("ring R = Fp(p=2)".into(), Code::Syntax, 1, 17),
        ("ring R = Fp(p=2);\nalgebra A over R = x^2 -> 0;".into(), Code::Syntax, 2, 20),
        (with_head("comul x = x@1 + z@2;\n"), Code::UnknownIdent, 3, 17),
        (with_head("comul x = x@3;\n"), Code::UnknownSlot, 3, 11),
        (with_head("comul x = x@0;\n"), Code::UnknownSlot, 3, 11),
        (with_head(&format!("{}comul x = x@1;\n", laws())), Code::Duplicate, 5, 1),
        ("ring R = Fp_pi(p=4, e=2);\n".into(), Code::InvalidRing, 1, 1),
        ("ring R = Zmod(p=2, e=2);\n".into(), Code::InvalidRing, 1, 1),
        ("ring R = Fp(p=2);\n".into(), Code::MissingAlgebra, 1, 1),
        (with_head("comul x = x@1 + x@2;\n"), Code::MissingComul, 2, 1),
        ("ring R = Fp(p=18446744073709551616);".into(), Code::Overflow, 1, 15),
        (with_head(&format!("{}comodule V = [[1, 0], [0]];\n", laws())), Code::Comodule, 5, 1),
        ("ring R = Fp(p=2);\nalgebra A over R = gens x^2 -> x@1;".into(), Code::SlotOutsideTensor, 2, 32),
        (with_head(&format!("{}antipode x = x@2;\n", laws())), Code::SlotOutsideTensor, 5, 14),
        ("ring R = Fp(p=2);\nalgebra A over R = gens x^2 -> x^2;".into(), Code::Presentation, 2, 1),
        (with_head("comul x = x + x@2;\n"), Code::MissingSlot, 3, 11),
        (with_head(&format!("{}counit x = 1 + y;\n", laws())), Code::NotScalar, 5, 16),
        ("ring R = Fp(p=2);\nalgebra A over S = gens x^2 -> 0;".into(), Code::UnknownIdent, 2, 1),
        ("ring R = Fp(p=2);\nalgebra A over R = gens x^2 -> 0, x^2 -> 0;".into(), Code::Duplicate, 2, 35),
    ]
}

#[test]
fn malformed_corpus() {
    let cases = malformed();
    assert!(cases.len() >= 10);
    for (src, code, line, col) in cases {
        let d = dsl::load(&src).expect_err(&src);
        let first = &d.0[0];
        assert_eq!(first.code, code, "{src:?} gave {d}");
        assert_eq!((first.span.line, first.span.col), (line, col), "{src:?} gave {d}");
        assert!(d.to_string().contains(code.as_str()));
    }
}

#[test]
fn codes_are_distinct_and_stable() {
    let all = [
        Code::MissingRing,
        Code::Lexical,
        Code::Syntax,
        Code::UnknownIdent,
        Code::UnknownSlot,
        Code::Duplicate,
        Code::InvalidRing,
        Code::MissingAlgebra,
        Code::MissingComul,
        Code::Overflow,
        Code::Comodule,
        Code::SlotOutsideTensor,
        Code::Presentation,
        Code::MissingSlot,
        Code::NotScalar,
    ];
    for (i, c) in all.iter().enumerate() {
        assert_eq!(c.as_str(), format!("E{:03}", i + 1));
    }
}

#[test]
fn several_semantic_errors_reported_together() {
    let d = dsl::load(&with_head("comul x = q@1;\ncomul y = y@7;\n")).unwrap_err();
    assert_eq!(d.codes(), vec![Code::UnknownIdent, Code::UnknownSlot]);
}

#[test]
fn well_formed_variants() {
    let ok = with_head(&format!("{}counit x = 0;\n", laws()));
    let prog = dsl::load(&ok).unwrap();
    assert!(prog.hopf.antipode().is_some(), "antipode should be solved for");
    assert!(prog.hopf.check_axioms().all_pass());
}
