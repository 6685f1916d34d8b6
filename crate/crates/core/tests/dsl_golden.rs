//! Golden corpus: one `.ffgs` file per catalog group. Set `FFGS_BLESS=1` to
//! rewrite the generated files.

use std::path::PathBuf;
use std::sync::Arc;

use ffgs::catalog::{self, CatalogParams};
use ffgs::cohomology::{adjoint_rep, vbar_rep, Comodule};
use ffgs::dsl::{self, Code};
use ffgs::{BaseRing, Hopf, Scalar};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn fp2(p: u32) -> BaseRing {
    BaseRing::fp_pi(p, 2).unwrap()
}

fn glam(p: u32, m: u32, l: u64) -> Hopf {
    catalog::g_lambda(CatalogParams::new(fp2(p), m, l).unwrap()).unwrap()
}

fn corpus() -> Vec<(String, Hopf, Vec<Comodule>)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        out.push((format!("alpha_{p}"), catalog::alpha_p(fp2(p)).unwrap(), vec![]));
    }
    for (p, m) in [(2, 1), (2, 2), (3, 1)] {
        out.push((format!("mu_{p}_{m}"), catalog::mu(fp2(p), m).unwrap(), vec![]));
    }
    for (p, m, l) in [(2, 1, 1), (2, 2, 1), (2, 2, 2), (2, 2, 3), (3, 1, 1), (3, 1, 2)] {
        let g = glam(p, m, l);
        let params = CatalogParams::new(fp2(p), m, l).unwrap();
        let vbar = vbar_rep(params).unwrap();
        let comodules = vec![Comodule { name: "Vbar".into(), ..vbar }];
        out.push((format!("g_lambda_{p}_{m}_{l}"), g, comodules));
    }
    // The adjoint coaction is defined over the residue field only.
    for (p, m, l) in [(2, 1, 1), (2, 2, 2), (3, 1, 1)] {
        let k = BaseRing::prime_field(p).unwrap();
        let g = catalog::g_lambda(CatalogParams::new(k, m, l).unwrap()).unwrap();
        let ad = adjoint_rep(Arc::new(g.clone())).unwrap();
        let ad = Comodule { name: "Ad".into(), ..ad };
        out.push((format!("g_lambda_fp_{p}_{m}_{l}"), g, vec![ad]));
    }
    for p in [2, 3] {
        let z = BaseRing::zmod(p, 2).unwrap();
        let (a, b) = (z.from_int(p as i64), z.one());
        out.push((format!("oort_tate_{p}"), catalog::oort_tate(z, a, b).unwrap(), vec![]));
    }
    out.push(("tilde_h_2_2".into(), catalog::tilde_h(fp2(2), 2, Scalar::ONE).unwrap(), vec![]));
    out
}

fn assert_same_hopf(got: &Hopf, want: &Hopf) {
    let (ga, wa) = (got.algebra(), want.algebra());
    assert_eq!(ga.base(), wa.base());
    assert_eq!(ga.names(), wa.names());
    assert_eq!(ga.bounds(), wa.bounds());
    for i in 0..ga.ngens() {
        assert_eq!(ga.tail(i), wa.tail(i), "tail of {}", ga.names()[i]);
    }
    assert_eq!(got.comul(), want.comul());
    assert_eq!(got.counit(), want.counit());
    if let Some(s) = want.antipode() {
        assert_eq!(got.antipode().expect("antipode"), s);
    }
}

#[test]
fn golden_files_match_catalog() {
    let bless = std::env::var("FFGS_BLESS").is_ok();
    for (name, g, comodules) in corpus() {
        let path = golden_dir().join(format!("{name}.ffgs"));
        let text = dsl::print(&dsl::from_hopf(&g, &comodules));
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{name} drifted from its golden file");

        let ast = dsl::parse(&on_disk).unwrap();
        assert_eq!(dsl::print(&ast), on_disk, "{name} is not in canonical form");
        assert_eq!(dsl::parse(&dsl::print(&ast)).unwrap(), ast);

        let prog = dsl::elaborate(&ast).unwrap_or_else(|d| panic!("{name}: {d}"));
        assert_same_hopf(&prog.hopf, &g);
        assert_eq!(prog.comodules.len(), comodules.len());
        for (c, w) in prog.comodules.iter().zip(&comodules) {
            assert_eq!(c.name, w.name);
            assert_eq!(c.matrix, w.matrix);
        }
    }
}

#[test]
fn hand_written_g1_matches_catalog() {
    let src = std::fs::read_to_string(golden_dir().join("g1_hand.ffgs")).unwrap();
    let prog = dsl::load(&src).unwrap();
    assert_same_hopf(&prog.hopf, &glam(2, 1, 1));
    assert!(prog.hopf.check_axioms().all_pass());
    assert!(prog.comodules[0].check().pass());
}

#[test]
fn every_golden_file_reparses_canonically() {
    let mut seen = 0;
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("ffgs") {
            continue;
        }
        let src = std::fs::read_to_string(&path).unwrap();
        let ast = dsl::parse(&src).unwrap();
        let printed = dsl::print(&ast);
        assert_eq!(dsl::parse(&printed).unwrap(), ast, "{}", path.display());
        assert_eq!(dsl::print(&dsl::parse(&printed).unwrap()), printed);
        seen += 1;
    }
    assert!(seen >= 18);
}

#[test]
fn spec_diagnostics() {
    assert_eq!(dsl::load("").unwrap_err().codes(), vec![Code::MissingRing]);
    let d = dsl::load("ring R = Fp(p=2);\nalgebra A over R = gens x^2 -> 0;\ncomul x = x@3;").unwrap_err();
    assert_eq!(d.codes(), vec![Code::UnknownSlot]);
    assert!(d.0[0].message.contains("unknown tensor slot"));
    assert_eq!((d.0[0].span.line, d.0[0].span.col), (3, 11));
}
