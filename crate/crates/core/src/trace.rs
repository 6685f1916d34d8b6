//! The claim matrix: each checked statement about the catalog groups as a
//! timed [`ClaimRecord`], and a driver running all of them over a grid of
//! `(p, m)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::algebra::AlgElem;
use crate::catalog::{self, CatalogParams};
use crate::cohomology::{
    adjoint_rep, character, diagonalizable_invariants, vbar_rep, wp_cochain, Comodule, Complex, DEFAULT_BUDGET,
};
use crate::deformation::{
    char_obstruction, classify, conjugation_factors_through, group_law_difference, infinitesimal_iso,
    mu_deformation_data, mu_rigidity_check, Deviation, Status,
};
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfRef};
use crate::quotient::{is_free_over, quotient_subalgebra, Convention};
use crate::report::{params, run_claim, ClaimRecord, Outcome, Report};
use crate::ring::{BaseRing, Scalar};

/// Grid points run when none are given.
pub const DEFAULT_GRID: [(u32, u32); 3] = [(2, 1), (2, 2), (3, 1)];

/// Random admissible `f` per prime in the characteristic-obstruction claim.
pub const OBSTRUCTION_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub points: Vec<(u32, u32)>,
    /// Matrix-cell budget for cohomology; 0 skips every cohomology claim.
    pub budget: u64,
    /// Worker threads; 1 runs claims in order.
    pub jobs: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { points: DEFAULT_GRID.to_vec(), budget: DEFAULT_BUDGET, jobs: 1 }
    }
}

impl Grid {
    /// Canonical description hashed into the report digest.
    pub fn describe(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|(p, m)| format!("{p}:{m}")).collect();
        format!("grid={};budget={}", pts.join(","), self.budget)
    }
}

/// Which comodule a cohomology claim uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rep {
    Vbar,
    Adjoint,
    Trivial,
}

impl Rep {
    pub fn label(self) -> &'static str {
        match self {
            Rep::Vbar => "vbar",
            Rep::Adjoint => "adjoint",
            Rep::Trivial => "trivial",
        }
    }
}

/// `F_p[π]/(π²)`, the base of every deformation claim.
pub fn dual_numbers(p: u32) -> Result<BaseRing> {
    BaseRing::fp_pi(p, 2)
}

pub fn lambdas(p: u32, m: u32) -> std::ops::Range<u64> {
    1..(p as u64).pow(m)
}

fn g_params(base: BaseRing, m: u32, lambda: u64) -> Result<CatalogParams> {
    CatalogParams::new(base, m, lambda)
}

fn glp(p: u32, m: u32, lambda: u64) -> BTreeMap<String, String> {
    params([("p", p as u64), ("m", m as u64), ("lambda", lambda)])
}

fn with(mut base: BTreeMap<String, String>, k: &str, v: impl ToString) -> BTreeMap<String, String> {
    base.insert(k.into(), v.to_string());
    base
}

fn residue_params(pr: CatalogParams) -> Result<CatalogParams> {
    CatalogParams::new(pr.base.residue_field(), pr.m, pr.lambda)
}

// ---------------------------------------------------------------- axioms

pub fn axioms_outcome(g: &Hopf) -> Outcome {
    let r = g.check_axioms();
    let checks: BTreeMap<&str, bool> = r.checks().iter().map(|(n, c)| (*n, c.pass)).collect();
    Outcome::check(r.all_pass(), json!({ "group": g.name(), "checks": checks, "first_failure": r.first_failure() }))
}

/// First generator whose `[n]` image is not the counit constant.
fn killed_witness(g: &Hopf, n: u64) -> Value {
    let imgs = g.mult_by_n(n);
    let names = g.algebra().names();
    let bad = imgs
        .iter()
        .zip(g.counit())
        .enumerate()
        .find(|(_, (img, c))| **img != AlgElem::constant(g.algebra(), **c))
        .map(|(i, (img, _))| format!("[{n}]({}) = {img}", names[i]));
    json!({ "n": n, "order": g.order(), "nontrivial_image": bad })
}

pub fn killed_by_outcome(g: &Hopf, n: u64) -> Outcome {
    Outcome::check(g.is_killed_by(n), killed_witness(g, n))
}

pub fn mul_by_n_outcome(g: &Hopf, n: u64) -> Outcome {
    let names = g.algebra().names();
    let imgs: BTreeMap<String, String> =
        g.mult_by_n(n).iter().enumerate().map(|(i, e)| (names[i].clone(), e.to_string())).collect();
    let conv = g.convolution_power(n).map(|c| c == g.mult_by_n(n)).unwrap_or(false);
    Outcome::check(conv, json!({ "n": n, "images": imgs, "matches_convolution_power": conv }))
}

pub fn exponent_outcome(g: &Hopf) -> Result<Outcome> {
    let h = g.exponent()?;
    Ok(Outcome::verified(json!({ "exponent": h, "order": g.order() })))
}

/// `[p^m]` kills `G_λ` exactly when `v_p(λ) ≥ 1`.
pub fn lemma_killed_by(pr: CatalogParams) -> Result<Outcome> {
    let g = catalog::g_lambda(pr)?;
    let n = (pr.p() as u64).pow(pr.m);
    let expected = pr.v() >= 1;
    let observed = g.is_killed_by(n);
    Ok(Outcome::check(
        expected == observed,
        json!({ "v": pr.v(), "expected_killed": expected, "killed": observed, "detail": killed_witness(&g, n) }),
    ))
}

/// The closed form of `[p^h]` agrees with the iterated law for `h ≤ m+1`.
pub fn closed_form_outcome(pr: CatalogParams) -> Result<Outcome> {
    let g = catalog::g_lambda(pr)?;
    let mut bad = Vec::new();
    for h in 0..=pr.m + 1 {
        let (cx, cy) = catalog::closed_form_power(pr, h)?;
        let it = g.mult_by_n((pr.p() as u64).pow(h));
        if it[0] != cx || it[1] != cy {
            bad.push(h);
        }
    }
    Ok(Outcome::check(bad.is_empty(), json!({ "max_h": pr.m + 1, "mismatched_h": bad })))
}

pub fn units_iso_outcome(pr: CatalogParams, u: u64) -> Result<Outcome> {
    let iso = catalog::units_iso(pr, u)?;
    let r = iso.check();
    Ok(Outcome::check(
        r.is_isomorphism(),
        json!({
            "source": iso.source.name(),
            "target": iso.target.name(),
            "relations": r.relations.pass,
            "comul": r.comul.pass,
            "counit": r.counit.pass,
            "invertible": r.invertible,
        }),
    ))
}

// ------------------------------------------------------------ cohomology

/// The comodule of `G_λ` over the residue field.
pub fn comodule_for(pr: CatalogParams, rep: Rep) -> Result<Comodule> {
    let pr = residue_params(pr)?;
    match rep {
        Rep::Vbar => vbar_rep(pr),
        Rep::Adjoint => adjoint_rep(Arc::new(catalog::g_lambda(pr)?)),
        Rep::Trivial => Ok(Comodule::trivial(Arc::new(catalog::g_lambda(pr)?), 1)),
    }
}

fn budget_guard(budget: u64) -> Result<()> {
    if budget == 0 {
        Err(Error::Budget { needed: 1, budget: 0 })
    } else {
        Ok(())
    }
}

/// The predicted dimension of `H^n(G_λ, V)`, where one is claimed.
pub fn predicted_dim(pr: CatalogParams, rep: Rep, degree: u32) -> Option<usize> {
    match (rep, degree) {
        (Rep::Vbar, 1) => Some(0),
        (Rep::Adjoint, 2) => Some(pr.is_family_case() as usize),
        _ => None,
    }
}

/// `dim H^n(G_λ, V)`, compared against the prediction when there is one.
/// For the adjoint in degree 2 the representative must span the `W_p` class.
pub fn cohomology_outcome(pr: CatalogParams, rep: Rep, degree: u32, budget: u64) -> Result<Outcome> {
    budget_guard(budget)?;
    let v = comodule_for(pr, rep)?;
    let cx = Complex::new(&v)?;
    let h = cx.cohomology(degree, budget)?;
    let dim = h.report.dim;
    let mut witness = json!({
        "rep": rep.label(),
        "degree": degree,
        "dim": dim,
        "dim_cochains": h.report.dim_cochains,
        "dim_cocycles": h.report.dim_cocycles,
        "dim_coboundaries": h.report.dim_coboundaries,
    });
    let mut ok = true;
    if let Some(want) = predicted_dim(pr, rep, degree) {
        witness["expected_dim"] = json!(want);
        ok &= want == dim;
    }
    if rep == Rep::Adjoint && degree == 2 {
        let w_dy = h.spans_class(&wp_cochain(&v.hopf, 1, 2)?);
        let w_dx = h.spans_class(&wp_cochain(&v.hopf, 0, 2)?);
        witness["representative_is_wp_class"] = json!(w_dy || w_dx);
        witness["wp_class_coordinate"] = json!(if w_dy { Some("y") } else if w_dx { Some("x") } else { None });
        if dim == 1 {
            ok &= w_dy || w_dx;
        }
    }
    Ok(Outcome::check(ok, witness))
}

/// `d^{n+1} ∘ d^n = 0` on every basis cochain of degree `n ≤ 1`.
pub fn d_squared_outcome(v: &Comodule, budget: u64) -> Result<Outcome> {
    budget_guard(budget)?;
    let cx = Complex::new(v)?;
    let mut bad = Vec::new();
    for n in 0..2 {
        // Only the columns of d^n are enumerated; d^{n+1} is applied vector by vector.
        let needed = cx.cells(n);
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        if (0..cx.dim(n)).any(|c| !cx.apply(n + 1, &cx.column(n, c)).is_empty()) {
            bad.push(n);
        }
    }
    Ok(Outcome::check(bad.is_empty(), json!({ "rep": v.name, "failing_degrees": bad })))
}

/// `H¹` and `H²` of every character of `μ_{p^m}` vanish.
pub fn characters_outcome(p: u32, m: u32, budget: u64) -> Result<Outcome> {
    budget_guard(budget)?;
    let mu: HopfRef = Arc::new(catalog::mu(BaseRing::prime_field(p)?, m)?);
    let mut dims = BTreeMap::new();
    for j in 0..(p as u64).pow(m) {
        let v = character(mu.clone(), j);
        let cx = Complex::new(&v)?;
        let d1 = cx.cohomology(1, budget)?.report.dim;
        let d2 = cx.cohomology(2, budget)?.report.dim;
        dims.insert(j.to_string(), [d1, d2]);
    }
    let ok = dims.values().all(|d| *d == [0, 0]);
    Ok(Outcome::check(ok, json!({ "h1_h2_by_character": dims })))
}

/// `H²(α_p, trivial)` is one-dimensional and spanned by `W_p`.
pub fn alpha_trivial_outcome(p: u32, budget: u64) -> Result<Outcome> {
    budget_guard(budget)?;
    let a: HopfRef = Arc::new(catalog::alpha_p(BaseRing::prime_field(p)?)?);
    let v = Comodule::trivial(a.clone(), 1);
    let cx = Complex::new(&v)?;
    let h = cx.cohomology(2, budget)?;
    let w = wp_cochain(&a, 0, 1)?;
    let cocycle = cx.is_cocycle(2, &w);
    let coboundary = cocycle && cx.coboundary_preimage(2, &w, budget)?.is_some();
    let ok = h.report.dim == 1 && cocycle && !coboundary && h.spans_class(&w);
    Ok(Outcome::check(ok, json!({ "dim": h.report.dim, "wp_cocycle": cocycle, "wp_coboundary": coboundary })))
}

/// The direct `dim H^i` equals the count from the invariants of the normal
/// subgroup's cohomology.
pub fn invariants_outcome(pr: CatalogParams, rep: Rep, i: u32, budget: u64) -> Result<Outcome> {
    budget_guard(budget)?;
    let v = comodule_for(pr, rep)?;
    let direct = Complex::new(&v)?.cohomology(i, budget)?.report.dim;
    let via = diagonalizable_invariants(residue_params(pr)?, &v, i)?;
    Ok(Outcome::check(direct == via, json!({ "direct": direct, "invariants": via })))
}

/// The adjoint coaction is `((1+y)^λ, −λx; 0, 1)`.
pub fn adjoint_matrix_outcome(pr: CatalogParams) -> Result<Outcome> {
    let v = comodule_for(pr, Rep::Adjoint)?;
    let alg = v.hopf.algebra().clone();
    let base = alg.base();
    let (x, y) = (AlgElem::gen(&alg, 0), AlgElem::gen(&alg, 1));
    let lam = base.from_int((pr.lambda % base.size() as u64) as i64);
    let want = [
        [(&AlgElem::one(&alg) + &y).pow(pr.lambda), x.scale(base.neg(lam))],
        [AlgElem::zero(&alg), AlgElem::one(&alg)],
    ];
    let ok = (0..2).all(|i| (0..2).all(|j| v.matrix[i][j] == want[i][j]));
    let show: Vec<Vec<String>> = v.matrix.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    Ok(Outcome::check(ok, json!({ "matrix": show })))
}

// ----------------------------------------------------------- deformation

/// `char_obstruction = 1` over `Z/p²` for seeded random `f` with `deg_x f < p`.
pub fn obstruction_outcome(p: u32, m: u32, samples: usize, seed: u64) -> Result<Outcome> {
    let z = BaseRing::zmod(p, 2)?;
    let alg = catalog::g_lambda_algebra(BaseRing::prime_field(p)?, m)?;
    let mut rng = StdRng::seed_from_u64(seed ^ ((p as u64) << 32 | m as u64));
    let mut bad = Vec::new();
    for _ in 0..samples {
        let terms: Vec<(u64, Scalar)> = (1..alg.dim()).map(|i| (i, Scalar(rng.random_range(0..p)))).collect();
        let f = AlgElem::from_index_terms(&alg, terms);
        let c = char_obstruction(z, &f)?;
        if c != Scalar::ONE {
            bad.push(f.to_string());
        }
    }
    Ok(Outcome::check(bad.is_empty(), json!({ "samples": samples, "seed": seed, "failures": bad })))
}

/// Over `Z/p²` no deformation candidate passes the Hopf axioms.
pub fn zmod_outcome(p: u32, m: u32, lambda: u64, budget: u64) -> Result<Outcome> {
    let z = BaseRing::zmod(p, 2)?;
    let c = classify(z, g_params(z, m, lambda)?, budget)?;
    let passing: Vec<String> =
        c.candidates.iter().filter(|v| v.axioms.values().all(|b| *b)).map(|v| v.datum.clone()).collect();
    Ok(Outcome::check(
        passing.is_empty(),
        json!({ "candidates": c.candidates.len(), "axiom_passing": passing }),
    ))
}

fn tilde(p: u32, m: u32, a: u32) -> Result<HopfRef> {
    let r = dual_numbers(p)?;
    Ok(Arc::new(catalog::tilde_h(r, m, r.lift_residue(a))?))
}

/// An identity-lifting isomorphism `H̃_a ≅ H̃_{a'}` exists exactly when `a = a'`.
pub fn tilde_iso_outcome(p: u32, m: u32, a: u32, b: u32) -> Result<Outcome> {
    let found = infinitesimal_iso(&tilde(p, m, a)?, &tilde(p, m, b)?)?;
    let ok = found.is_some() == (a == b);
    Ok(Outcome::check(ok, json!({ "iso_found": found.is_some(), "expected": a == b })))
}

/// The law differences `H̃_a − H̃_0` are cocycles realizing the classes `a·[W_p]`.
pub fn tilde_classes_outcome(p: u32, m: u32, budget: u64) -> Result<Outcome> {
    budget_guard(budget)?;
    let h0 = tilde(p, m, 0)?;
    let mut rows = BTreeMap::new();
    let mut classes = BTreeSet::new();
    let mut ok = true;
    for a in 0..p {
        let (ad, c) = group_law_difference(&*tilde(p, m, a)?, &h0)?;
        let cx = Complex::new(&ad)?;
        let h = cx.cohomology(2, budget)?;
        let cocycle = cx.is_cocycle(2, &c);
        let class = h.class_of(&c);
        let w = h.class_of(&wp_cochain(&ad.hopf, 1, 2)?);
        let expected = w.as_ref().map(|w| w.iter().map(|x| x * a % p).collect::<Vec<_>>());
        ok &= cocycle && class.is_some() && class == expected;
        if let Some(c) = &class {
            classes.insert(c.clone());
        }
        rows.insert(a.to_string(), json!({ "cocycle": cocycle, "class": class, "expected_class": expected }));
    }
    ok &= classes.len() == p as usize;
    Ok(Outcome::check(ok, json!({ "by_a": rows, "distinct_classes": classes.len() })))
}

// ------------------------------------------------------------- quotients

/// `B = A^{N}` for `N = V(y)` is `{y^b}`, a Hopf algebra isomorphic to `O(μ_{p^m})`.
pub fn quotient_outcome(pr: CatalogParams) -> Result<Outcome> {
    let g = catalog::g_lambda(pr)?;
    let q = quotient_subalgebra(&g, &[1], Convention::Left)?;
    let y = g.gen(1);
    let basis: Vec<AlgElem> = (0..pr.order_mu()).map(|b| y.pow(b)).collect();
    let basis_ok = q.generators == basis;
    let iso = match &q.hopf {
        Some(h) => {
            let h: HopfRef = Arc::new(h.clone());
            let target: HopfRef = Arc::new(catalog::mu(pr.base, pr.m)?);
            crate::hopf::HopfMorphism::new(h, target.clone(), vec![target.gen(0)])?.check().is_isomorphism()
        }
        None => false,
    };
    let xs: Vec<AlgElem> = (0..pr.p()).map(|i| g.gen(0).pow(i as u64)).collect();
    let free = is_free_over(&q.generators, &xs)?;
    Ok(Outcome::check(
        basis_ok && iso && free && q.structure.free,
        json!({
            "basis_is_powers_of_y": basis_ok,
            "hopf_iso_to_mu": iso,
            "b_free": q.structure.free,
            "a_free_over_b_rank_p": free,
        }),
    ))
}

pub fn conjugation_outcome(g: &Hopf) -> Result<Outcome> {
    let n = conjugation_factors_through(g, &[0])?;
    Ok(Outcome::check(
        n.holds(),
        json!({ "normal": n.normal, "subgroup_axioms": n.subgroup_axioms, "witness": n.witness }),
    ))
}

pub fn mu_rigidity_outcome(p: u32, m: u32) -> Result<Outcome> {
    let r = dual_numbers(p)?;
    let data = mu_deformation_data(p, m)?;
    let mut bad = Vec::new();
    for (i, (g, h)) in data.iter().enumerate() {
        let v = mu_rigidity_check(r, m, g, h)?;
        if !v.axioms_pass || v.iso.is_none() {
            bad.push(i);
        }
    }
    Ok(Outcome::check(bad.is_empty(), json!({ "data": data.len(), "failing": bad })))
}

// -------------------------------------------------------- classification

fn status_outcome(s: Status, witness: Value) -> Outcome {
    match s {
        Status::MatchesPaper => Outcome::verified(witness),
        Status::Deviates => Outcome::refuted(witness),
        Status::Undecided => Outcome { status: crate::report::ClaimStatus::Skipped, witness },
    }
}

/// The classification verdict for one `G_λ`, plus the killed-by-order check
/// on its axiom-passing candidates and any deviation records.
pub fn classification_claims(p: u32, m: u32, lambda: u64, budget: u64) -> (Vec<ClaimRecord>, Vec<Deviation>) {
    let mut deviations = Vec::new();
    let mut killed = None;
    let verdict = run_claim("classification:G_lambda", glp(p, m, lambda), || {
        let r = dual_numbers(p)?;
        let c = classify(r, g_params(r, m, lambda)?, budget)?;
        deviations = c.deviations.clone();
        let passing: Vec<_> = c.candidates.iter().filter(|v| v.axioms.values().all(|b| *b)).collect();
        killed = Some((
            passing.iter().all(|v| v.killed_by_order == Some(true)),
            passing.iter().map(|v| (v.datum.clone(), v.killed_by_order)).collect::<BTreeMap<_, _>>(),
        ));
        let candidates: Vec<Value> = c
            .candidates
            .iter()
            .map(|v| json!({ "candidate": v.candidate, "status": v.status, "observed": v.observed }))
            .collect();
        // A deviating candidate refutes the case even when the case-level counts agree.
        let worst = c.candidates.iter().map(|v| v.status).chain([c.case.status]).fold(Status::MatchesPaper, |acc, s| {
            match (acc, s) {
                (Status::Deviates, _) | (_, Status::Deviates) => Status::Deviates,
                (Status::Undecided, _) | (_, Status::Undecided) => Status::Undecided,
                _ => Status::MatchesPaper,
            }
        });
        Ok(status_outcome(worst, json!({ "case": c.case, "candidates": candidates })))
    });
    let killed_rec = run_claim("killed-by-order:deformation-candidates", glp(p, m, lambda), || match killed {
        Some((ok, detail)) => Ok(Outcome::check(ok, json!({ "killed_by_order": detail }))),
        None => Ok(Outcome::skipped("classification did not run")),
    });
    (vec![verdict, killed_rec], deviations)
}

// ------------------------------------------------------------ the driver

type Job = Box<dyn FnOnce() -> (Vec<ClaimRecord>, Vec<Deviation>) + Send>;

fn single(id: &'static str, ps: BTreeMap<String, String>, f: impl FnOnce() -> Result<Outcome> + Send + 'static) -> Job {
    Box::new(move || (vec![run_claim(id, ps, f)], Vec::new()))
}

fn axioms_job(id: &'static str, ps: BTreeMap<String, String>, build: impl FnOnce() -> Result<Hopf> + Send + 'static) -> Job {
    single(id, ps, move || Ok(axioms_outcome(&build()?)))
}

fn order_job(id: &'static str, ps: BTreeMap<String, String>, build: impl FnOnce() -> Result<Hopf> + Send + 'static) -> Job {
    single(id, ps, move || {
        let g = build()?;
        Ok(killed_by_outcome(&g, g.order()))
    })
}

/// Every claim for one grid point. Claims that do not depend on `m` are
/// emitted only with the first point of each prime.
fn point_jobs(p: u32, m: u32, budget: u64, first_for_prime: bool) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let pm = params([("p", p), ("m", m)]);
    let pp = params([("p", p)]);

    if first_for_prime {
        jobs.push(axioms_job("hopf-axioms:alpha_p", pp.clone(), move || catalog::alpha_p(dual_numbers(p)?)));
        jobs.push(order_job("killed-by-order:alpha_p", pp.clone(), move || catalog::alpha_p(dual_numbers(p)?)));
        let z = BaseRing::zmod(p, 2).expect("valid prime");
        for a in z.elements() {
            for b in z.elements() {
                if z.mul(a, b) != z.from_int(p as i64) {
                    continue;
                }
                let ps = params([("p", p), ("a", a.0), ("b", b.0)]);
                jobs.push(axioms_job("hopf-axioms:oort_tate", ps.clone(), move || catalog::oort_tate(z, a, b)));
                jobs.push(order_job("killed-by-order:oort_tate", ps, move || catalog::oort_tate(z, a, b)));
            }
        }
        jobs.push(single("h2-trivial-wp:alpha_p", pp.clone(), move || alpha_trivial_outcome(p, budget)));
        jobs.push(single("char-obstruction:zmod", with(pp.clone(), "samples", OBSTRUCTION_SAMPLES), move || {
            obstruction_outcome(p, 1, OBSTRUCTION_SAMPLES, 0x5eed)
        }));
    }

    jobs.push(axioms_job("hopf-axioms:mu", pm.clone(), move || catalog::mu(dual_numbers(p)?, m)));
    jobs.push(order_job("killed-by-order:mu", pm.clone(), move || catalog::mu(dual_numbers(p)?, m)));
    jobs.push(single("h12-vanish:mu", pm.clone(), move || characters_outcome(p, m, budget)));
    jobs.push(single("mu-rigidity:mu", pm.clone(), move || mu_rigidity_outcome(p, m)));

    for a in 0..p {
        let ps = with(pm.clone(), "a", a);
        jobs.push(axioms_job("hopf-axioms:H_tilde", ps.clone(), move || Ok(tilde(p, m, a)?.as_ref().clone())));
        jobs.push(order_job("killed-by-order:H_tilde", ps.clone(), move || Ok(tilde(p, m, a)?.as_ref().clone())));
        jobs.push(single("killed-by-p-m:H_tilde", ps.clone(), move || {
            Ok(killed_by_outcome(&*tilde(p, m, a)?, (p as u64).pow(m)))
        }));
        jobs.push(single("conjugation-factors:H_tilde", ps.clone(), move || conjugation_outcome(&*tilde(p, m, a)?)));
        for b in 0..p {
            jobs.push(single("infinitesimal-iso:H_tilde", with(ps.clone(), "a_prime", b), move || {
                tilde_iso_outcome(p, m, a, b)
            }));
        }
    }
    jobs.push(single("law-classes:H_tilde", pm.clone(), move || tilde_classes_outcome(p, m, budget)));
    jobs.push(single("exponent-by-valuation:G_lambda", pm.clone(), move || valuation_outcome(p, m, None)));
    jobs.push(single("h2-adjoint-by-valuation:G_lambda", pm.clone(), move || valuation_outcome(p, m, Some(budget))));

    for lambda in lambdas(p, m) {
        let ps = glp(p, m, lambda);
        let pr = move || g_params(dual_numbers(p)?, m, lambda);
        jobs.push(axioms_job("hopf-axioms:G_lambda", ps.clone(), move || catalog::g_lambda(pr()?)));
        jobs.push(order_job("killed-by-order:G_lambda", ps.clone(), move || catalog::g_lambda(pr()?)));
        jobs.push(single("lemma-killed-by:G_lambda", ps.clone(), move || lemma_killed_by(pr()?)));
        jobs.push(single("closed-form-power:G_lambda", ps.clone(), move || closed_form_outcome(pr()?)));
        jobs.push(single("adjoint-matrix:G_lambda", ps.clone(), move || adjoint_matrix_outcome(pr()?)));
        jobs.push(single("quotient-is-mu:G_lambda", ps.clone(), move || quotient_outcome(pr()?)));
        jobs.push(single("conjugation-factors:G_lambda", ps.clone(), move || {
            conjugation_outcome(&catalog::g_lambda(pr()?)?)
        }));
        jobs.push(single("no-deformations-over-zmod:G_lambda", ps.clone(), move || zmod_outcome(p, m, lambda, budget)));
        for u in lambdas(p, m).filter(|u| u % p as u64 != 0) {
            jobs.push(single("units-iso:G_lambda", with(ps.clone(), "u", u), move || units_iso_outcome(pr()?, u)));
        }
        jobs.push(single("h1-vanishes:G_lambda", with(ps.clone(), "rep", "vbar"), move || {
            cohomology_outcome(pr()?, Rep::Vbar, 1, budget)
        }));
        jobs.push(single("h2-adjoint:G_lambda", with(ps.clone(), "rep", "adjoint"), move || {
            cohomology_outcome(pr()?, Rep::Adjoint, 2, budget)
        }));
        for rep in [Rep::Vbar, Rep::Adjoint, Rep::Trivial] {
            jobs.push(single("d-squared-zero:G_lambda", with(ps.clone(), "rep", rep.label()), move || {
                d_squared_outcome(&comodule_for(pr()?, rep)?, budget)
            }));
            if p == 2 && m <= 2 {
                for i in 1..=2 {
                    let q = with(with(ps.clone(), "rep", rep.label()), "degree", i);
                    jobs.push(single("diagonalizable-invariants:G_lambda", q, move || {
                        invariants_outcome(pr()?, rep, i, budget)
                    }));
                }
            }
        }
        jobs.push(Box::new(move || classification_claims(p, m, lambda, budget)));
    }
    jobs
}

/// Invariants constant on valuation classes of `λ`: the exponent, or with a
/// budget `dim H²(G_λ, V_ad)`.
pub fn valuation_outcome(p: u32, m: u32, budget: Option<u64>) -> Result<Outcome> {
    if let Some(b) = budget {
        budget_guard(b)?;
    }
    let r = dual_numbers(p)?;
    let mut by_class: BTreeMap<u32, BTreeSet<u64>> = BTreeMap::new();
    let mut values = BTreeMap::new();
    for lambda in lambdas(p, m) {
        let pr = g_params(r, m, lambda)?;
        let value = match budget {
            None => catalog::g_lambda(pr)?.exponent()? as u64,
            Some(b) => {
                let v = comodule_for(pr, Rep::Adjoint)?;
                Complex::new(&v)?.cohomology(2, b)?.report.dim as u64
            }
        };
        by_class.entry(pr.v()).or_default().insert(value);
        values.insert(lambda.to_string(), value);
    }
    let ok = by_class.values().all(|s| s.len() == 1);
    let what = if budget.is_some() { "h2_adjoint_dim" } else { "exponent" };
    Ok(Outcome::check(ok, json!({ "invariant": what, "by_lambda": values })))
}

/// Runs the full claim matrix over the grid.
pub fn reproduce(grid: &Grid) -> Result<Report> {
    for &(p, m) in &grid.points {
        if !crate::ring::is_prime(p) || m == 0 || p.checked_pow(m + 1).is_none_or(|n| n > 1 << 12) {
            return Err(Error::OutOfRange(format!("grid point ({p}, {m}) out of range")));
        }
    }
    let mut seen = BTreeSet::new();
    let mut points = grid.points.clone();
    points.sort();
    points.dedup();
    let jobs: Vec<Job> = points.iter().flat_map(|&(p, m)| point_jobs(p, m, grid.budget, seen.insert(p))).collect();
    let results: Vec<(Vec<ClaimRecord>, Vec<Deviation>)> = if grid.jobs <= 1 {
        jobs.into_iter().map(|j| j()).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(grid.jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| jobs.into_par_iter().map(|j| j()).collect())
    };
    let mut report = Report::new(&grid.describe());
    for (claims, devs) in results {
        report.claims.extend(claims);
        report.deviations.extend(devs);
    }
    report.finalize();
    Ok(report)
}
