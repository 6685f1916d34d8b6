use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::catalog::{self, CatalogParams};
use crate::cohomology::{adjoint_rep, Comodule, Complex, DEFAULT_BUDGET};
use crate::dsl;
use crate::report::{params, run_claim, ClaimRecord, ClaimStatus, Outcome, Report};
use crate::trace::{self, Grid, Rep};
use crate::{BaseRing, Hopf, HopfRef};

#[derive(Parser, Debug)]
#[command(name = "ffgs", version, about = "Check claims about finite flat group schemes of order p^{m+1}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Read the group from a .ffgs source file instead of the catalog.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Catalog group.
    #[arg(long, global = true, value_enum, default_value_t = Group::GLambda)]
    group: Group,
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    #[arg(long, global = true, default_value_t = 1)]
    m: u32,
    #[arg(long, global = true, default_value_t = 1)]
    lambda: u64,
    /// Twist parameter of H_tilde, or `a` of an Oort-Tate group.
    #[arg(long, global = true, default_value_t = 0)]
    a: i64,
    /// `b` of an Oort-Tate group; defaults to p/a when that is defined.
    #[arg(long, global = true)]
    b: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = RingArg::FpPi2)]
    ring: RingArg,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Matrix-cell budget for cohomology; 0 skips cohomology claims.
    #[arg(long, global = true, env = "FFGS_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for the claim matrix.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Hopf axioms (and comodule axioms of declared comodules).
    Verify,
    /// Compute [n] on the generators.
    MulByN {
        #[arg(long)]
        n: u64,
    },
    /// Check that [n] factors through the counit.
    KilledBy {
        #[arg(long)]
        n: u64,
    },
    /// Least h with [p^h] trivial.
    Exponent,
    /// Hochschild cohomology of G_lambda with coefficients in a comodule.
    Cohomology {
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// vbar, adjoint, trivial, or a comodule declared in --input.
        #[arg(long, default_value = "adjoint")]
        rep: String,
    },
    /// The adjoint coaction matrix.
    Adjoint,
    /// The quotient by N = V(y) and normality of N.
    Quotient,
    /// Enumerate deformation candidates of G_lambda and compare with the classification.
    Classify,
    /// Run the full claim matrix over a grid of (p, m).
    Report {
        /// Grid points as p:m, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2:1,2:2,3:1")]
        grid: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Group {
    GLambda,
    Alpha,
    Mu,
    TildeH,
    OortTate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    FpPi2,
    ZmodP2,
    Fp,
}

/// Usage-level failure: exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Target {
    label: String,
    hopf: HopfRef,
    comodules: Vec<Comodule>,
    params: BTreeMap<String, String>,
    source: String,
}

impl Common {
    fn base(&self) -> Result<BaseRing, Usage> {
        Ok(match self.ring {
            RingArg::FpPi2 => BaseRing::fp_pi(self.p, 2)?,
            RingArg::ZmodP2 => BaseRing::zmod(self.p, 2)?,
            RingArg::Fp => BaseRing::prime_field(self.p)?,
        })
    }

    fn ring_label(&self) -> &'static str {
        match self.ring {
            RingArg::FpPi2 => "fp-pi2",
            RingArg::ZmodP2 => "zmod-p2",
            RingArg::Fp => "fp",
        }
    }

    fn catalog_params(&self) -> Result<CatalogParams, Usage> {
        if self.lambda == 0 || self.lambda >= (self.p as u64).saturating_pow(self.m) {
            return Err(Usage(format!("--lambda must lie in 1..p^m-1, got {}", self.lambda)));
        }
        Ok(CatalogParams::new(self.base()?, self.m, self.lambda)?)
    }

    fn target(&self) -> Result<Target, Usage> {
        if let Some(path) = &self.input {
            let src = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            let prog = dsl::load(&src).map_err(|d| Usage(format!("{}:\n{d}", path.display())))?;
            return Ok(Target {
                label: prog.hopf.name().to_string(),
                hopf: prog.hopf,
                comodules: prog.comodules,
                params: params([("input", path.display())]),
                source: src,
            });
        }
        let base = self.base()?;
        let mut ps = params([("p", self.p)]);
        ps.insert("ring".into(), self.ring_label().into());
        let (label, hopf): (&str, Hopf) = match self.group {
            Group::GLambda => {
                let pr = self.catalog_params()?;
                ps.extend(params([("m", self.m as u64), ("lambda", self.lambda)]));
                ("G_lambda", catalog::g_lambda(pr)?)
            }
            Group::Alpha => ("alpha_p", catalog::alpha_p(base)?),
            Group::Mu => {
                ps.insert("m".into(), self.m.to_string());
                ("mu", catalog::mu(base, self.m)?)
            }
            Group::TildeH => {
                ps.extend(params([("m", self.m as i64), ("a", self.a)]));
                ("H_tilde", catalog::tilde_h(base, self.m, base.lift_residue(self.a.rem_euclid(self.p as i64) as u32))?)
            }
            Group::OortTate => {
                let a = base.from_int(self.a);
                let b = match self.b {
                    Some(b) => base.from_int(b),
                    None => {
                        let inv = base.inv(a).ok_or_else(|| Usage("--b is required when --a is not a unit".into()))?;
                        base.mul(inv, base.from_int(self.p as i64))
                    }
                };
                ps.extend(params([("a", a.0), ("b", b.0)]));
                ("oort_tate", catalog::oort_tate(base, a, b)?)
            }
        };
        let source = format!("{label}:{ps:?}");
        Ok(Target { label: label.into(), hopf: Arc::new(hopf), comodules: Vec::new(), params: ps, source })
    }
}

fn with(mut ps: BTreeMap<String, String>, k: &str, v: impl ToString) -> BTreeMap<String, String> {
    ps.insert(k.into(), v.to_string());
    ps
}

fn rep_named(name: &str) -> Option<Rep> {
    match name {
        "vbar" => Some(Rep::Vbar),
        "adjoint" => Some(Rep::Adjoint),
        "trivial" => Some(Rep::Trivial),
        _ => None,
    }
}

fn generic_cohomology(v: &Comodule, degree: u32, budget: u64) -> crate::Result<Outcome> {
    if budget == 0 {
        return Err(crate::Error::Budget { needed: 1, budget: 0 });
    }
    let h = Complex::new(v)?.cohomology(degree, budget)?;
    Ok(Outcome::verified(json!({
        "rep": v.name,
        "degree": degree,
        "dim": h.report.dim,
        "dim_cochains": h.report.dim_cochains,
        "dim_cocycles": h.report.dim_cocycles,
        "dim_coboundaries": h.report.dim_coboundaries,
    })))
}

fn g_lambda_only(c: &Common, what: &str) -> Result<CatalogParams, Usage> {
    if c.input.is_some() || c.group != Group::GLambda {
        return Err(Usage(format!("{what} needs the G_lambda catalog group")));
    }
    c.catalog_params()
}

fn run(cli: &Cli) -> Result<Report, Usage> {
    let c = &cli.common;
    let mut claims: Vec<ClaimRecord> = Vec::new();
    let mut deviations = Vec::new();
    let describe;
    match &cli.command {
        Command::Report { grid } => {
            let mut points = Vec::new();
            for g in grid {
                let (p, m) = g.split_once(':').ok_or_else(|| Usage(format!("grid point `{g}` is not p:m")))?;
                points.push((p.trim().parse()?, m.trim().parse()?));
            }
            let grid = Grid { points, budget: c.budget, jobs: c.jobs };
            return Ok(trace::reproduce(&grid)?);
        }
        Command::Classify => {
            let pr = g_lambda_only(c, "classify")?;
            describe = format!("classify:{}:{pr:?}", c.ring_label());
            match c.ring {
                RingArg::FpPi2 => {
                    let (recs, devs) = trace::classification_claims(c.p, c.m, c.lambda, c.budget);
                    claims.extend(recs);
                    deviations = devs;
                }
                RingArg::ZmodP2 => {
                    let ps = params([("p", c.p as u64), ("m", c.m as u64), ("lambda", c.lambda)]);
                    let (p, m, l, b) = (c.p, c.m, c.lambda, c.budget);
                    claims.push(run_claim("no-deformations-over-zmod:G_lambda", ps, || trace::zmod_outcome(p, m, l, b)));
                }
                RingArg::Fp => return Err(Usage("classify needs a ring with π ≠ 0 (fp-pi2 or zmod-p2)".into())),
            }
        }
        cmd => {
            let t = c.target()?;
            describe = format!("{cmd:?}:{}", t.source);
            let ps = t.params.clone();
            let g = &t.hopf;
            let label = &t.label;
            match cmd {
                Command::Verify => {
                    claims.push(run_claim(format!("hopf-axioms:{label}"), ps.clone(), || Ok(trace::axioms_outcome(g))));
                    for v in &t.comodules {
                        claims.push(run_claim(format!("comodule-axioms:{}", v.name), ps.clone(), || {
                            let r = v.check();
                            Ok(Outcome::check(
                                r.pass(),
                                json!({ "coassociative": r.coassociative.witness, "counit": r.counit.witness }),
                            ))
                        }));
                    }
                }
                Command::MulByN { n } => {
                    claims.push(run_claim(format!("mul-by-n:{label}"), with(ps, "n", n), || Ok(trace::mul_by_n_outcome(g, *n))));
                }
                Command::KilledBy { n } => {
                    claims.push(run_claim(format!("killed-by:{label}"), with(ps, "n", n), || Ok(trace::killed_by_outcome(g, *n))));
                }
                Command::Exponent => {
                    claims.push(run_claim(format!("exponent:{label}"), ps, || trace::exponent_outcome(g)));
                }
                Command::Cohomology { degree, rep } => {
                    let q = with(with(ps, "degree", degree), "rep", rep);
                    let id = format!("cohomology:{label}");
                    if t.comodules.is_empty() && c.input.is_none() {
                        let pr = g_lambda_only(c, "cohomology")?;
                        let r = rep_named(rep).ok_or_else(|| Usage(format!("unknown --rep {rep}")))?;
                        claims.push(run_claim(id, q, || trace::cohomology_outcome(pr, r, *degree, c.budget)));
                    } else {
                        let v = match t.comodules.iter().find(|v| v.name == *rep) {
                            Some(v) => v.clone(),
                            None if rep == "trivial" => Comodule::trivial(g.clone(), 1),
                            None if rep == "adjoint" => adjoint_rep(g.clone())?,
                            None => return Err(Usage(format!("no comodule named {rep} in the input"))),
                        };
                        claims.push(run_claim(id, q, || generic_cohomology(&v, *degree, c.budget)));
                    }
                }
                Command::Adjoint => {
                    if c.input.is_none() && c.group == Group::GLambda {
                        let pr = c.catalog_params()?;
                        claims.push(run_claim(format!("adjoint-matrix:{label}"), ps, || trace::adjoint_matrix_outcome(pr)));
                    } else {
                        claims.push(run_claim(format!("adjoint-matrix:{label}"), ps, || {
                            let v = adjoint_rep(g.clone())?;
                            let show: Vec<Vec<String>> =
                                v.matrix.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                            Ok(Outcome::verified(json!({ "matrix": show })))
                        }));
                    }
                }
                Command::Quotient => {
                    if c.input.is_none() && c.group == Group::GLambda {
                        let pr = c.catalog_params()?;
                        claims.push(run_claim(format!("quotient-is-mu:{label}"), ps.clone(), || trace::quotient_outcome(pr)));
                    }
                    claims.push(run_claim(format!("conjugation-factors:{label}"), ps, || trace::conjugation_outcome(g)));
                }
                Command::Report { .. } | Command::Classify => unreachable!(),
            }
        }
    }
    let mut report = Report::new(&describe);
    report.claims = claims;
    report.deviations = deviations;
    report.finalize();
    Ok(report)
}

fn emit(report: &Report, json: Option<&PathBuf>) -> std::io::Result<()> {
    for c in &report.claims {
        let status = match c.status {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Refuted => "REFUTED",
            ClaimStatus::Skipped => "skipped",
        };
        let ps: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{status:8} {} [{}] {}", c.claim_id, ps.join(" "), c.witness);
    }
    for d in &report.deviations {
        println!("DEVIATION {} {:?}: expected {}; observed {}", d.claim_id, d.parameters, d.expected, d.observed);
    }
    println!(
        "{} verified, {} refuted, {} skipped, {} deviations",
        report.count(ClaimStatus::Verified),
        report.count(ClaimStatus::Refuted),
        report.count(ClaimStatus::Skipped),
        report.deviations.len()
    );
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => std::fs::write(p, report.to_json())?,
        None => {}
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 all verified, 1 refuted or deviating,
/// 2 usage or parse error.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.common.json.as_ref()) {
                eprintln!("error: {e}");
                return 2;
            }
            report.exit_code()
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
