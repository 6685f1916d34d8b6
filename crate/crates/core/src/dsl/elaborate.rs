//! Name resolution and construction of the algebraic objects.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::ast::*;
use super::diag::{Code, Diagnostic, Diagnostics, Span};
use crate::algebra::{AlgElem, Algebra, AlgebraRef, RawPoly};
use crate::cohomology::Comodule;
use crate::hopf::{Hopf, HopfRef};
use crate::ring::{BaseRing, Scalar};

/// A fully resolved source file.
#[derive(Clone, Debug)]
pub struct Program {
    pub ring: BaseRing,
    pub hopf: HopfRef,
    pub comodules: Vec<Comodule>,
}

/// Largest exponent accepted inside a relation tail, where nothing truncates.
const MAX_RAW_POWER: u64 = 256;

trait Domain {
    type V: Clone;
    fn base(&self) -> BaseRing;
    fn constant(&self, c: Scalar) -> Self::V;
    fn var(&self, name: &str, slot: Option<u64>, span: Span) -> Result<Self::V, Diagnostic>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn pow(&self, a: &Self::V, k: u64, span: Span) -> Result<Self::V, Diagnostic>;
}

fn int_scalar(base: BaseRing, n: u64) -> Scalar {
    base.from_int((n % base.size() as u64) as i64)
}

fn first_span(e: &Expr) -> Span {
    match e {
        Expr::Var { span, .. } => *span,
        Expr::Neg(a) | Expr::Pow(a, _) => first_span(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            let s = first_span(a);
            if s.line == 0 {
                first_span(b)
            } else {
                s
            }
        }
        _ => Span::default(),
    }
}

fn eval<D: Domain>(d: &D, e: &Expr) -> Result<D::V, Diagnostic> {
    Ok(match e {
        Expr::Int(n) => d.constant(int_scalar(d.base(), *n)),
        Expr::Pi => d.constant(d.base().uniformizer()),
        Expr::Var { name, slot, span } => d.var(name, *slot, *span)?,
        Expr::Neg(a) => d.neg(&eval(d, a)?),
        Expr::Add(a, b) => d.add(&eval(d, a)?, &eval(d, b)?),
        Expr::Sub(a, b) => d.add(&eval(d, a)?, &d.neg(&eval(d, b)?)),
        Expr::Mul(a, b) => d.mul(&eval(d, a)?, &eval(d, b)?),
        Expr::Pow(a, k) => d.pow(&eval(d, a)?, *k, first_span(a))?,
    })
}

fn unknown(name: &str, span: Span) -> Diagnostic {
    Diagnostic::new(Code::UnknownIdent, span, format!("unknown identifier `{name}`"))
}

/// Unreduced polynomials in the generators, for relation tails.
struct Raw<'a> {
    base: BaseRing,
    gens: &'a [String],
}

type RawV = BTreeMap<Vec<u32>, Scalar>;

impl Raw<'_> {
    fn clean(&self, mut v: RawV) -> RawV {
        v.retain(|_, c| !c.is_zero());
        v
    }
}

impl Domain for Raw<'_> {
    type V = RawV;

    fn base(&self) -> BaseRing {
        self.base
    }

    fn constant(&self, c: Scalar) -> RawV {
        self.clean(BTreeMap::from([(vec![0; self.gens.len()], c)]))
    }

    fn var(&self, name: &str, slot: Option<u64>, span: Span) -> Result<RawV, Diagnostic> {
        if slot.is_some() {
            return Err(Diagnostic::new(
                Code::SlotOutsideTensor,
                span,
                format!("tensor slot on `{name}` outside a comultiplication"),
            ));
        }
        let i = self.gens.iter().position(|g| g == name).ok_or_else(|| unknown(name, span))?;
        let mut exps = vec![0; self.gens.len()];
        exps[i] = 1;
        Ok(BTreeMap::from([(exps, Scalar::ONE)]))
    }

    fn add(&self, a: &RawV, b: &RawV) -> RawV {
        let mut out = a.clone();
        for (k, c) in b {
            let slot = out.entry(k.clone()).or_insert(Scalar::ZERO);
            *slot = self.base.add(*slot, *c);
        }
        self.clean(out)
    }

    fn mul(&self, a: &RawV, b: &RawV) -> RawV {
        let mut out = RawV::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let slot = out.entry(k).or_insert(Scalar::ZERO);
                *slot = self.base.add(*slot, self.base.mul(*ca, *cb));
            }
        }
        self.clean(out)
    }

    fn neg(&self, a: &RawV) -> RawV {
        a.iter().map(|(k, c)| (k.clone(), self.base.neg(*c))).collect()
    }

    fn pow(&self, a: &RawV, k: u64, span: Span) -> Result<RawV, Diagnostic> {
        if k > MAX_RAW_POWER {
            return Err(Diagnostic::new(
                Code::Presentation,
                span,
                format!("exponent {k} in a relation exceeds {MAX_RAW_POWER}"),
            ));
        }
        let mut acc = self.constant(Scalar::ONE);
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Elements of `A`; slots are rejected.
    Plain,
    /// Elements of `A ⊗ A`; every generator needs a slot.
    Tensor,
    /// Scalars; generators are rejected.
    Scalar,
}

struct Elems<'a> {
    target: AlgebraRef,
    gens: &'a [String],
    mode: Mode,
}

impl Domain for Elems<'_> {
    type V = AlgElem;

    fn base(&self) -> BaseRing {
        self.target.base()
    }

    fn constant(&self, c: Scalar) -> AlgElem {
        AlgElem::constant(&self.target, c)
    }

    fn var(&self, name: &str, slot: Option<u64>, span: Span) -> Result<AlgElem, Diagnostic> {
        let i = self.gens.iter().position(|g| g == name).ok_or_else(|| unknown(name, span))?;
        match (self.mode, slot) {
            (Mode::Scalar, _) => Err(Diagnostic::new(Code::NotScalar, span, format!("counit value mentions `{name}`"))),
            (Mode::Plain, Some(_)) => Err(Diagnostic::new(
                Code::SlotOutsideTensor,
                span,
                format!("tensor slot on `{name}` outside a comultiplication"),
            )),
            (Mode::Plain, None) => Ok(AlgElem::gen(&self.target, i)),
            (Mode::Tensor, None) => Err(Diagnostic::new(
                Code::MissingSlot,
                span,
                format!("`{name}` needs a tensor slot, `{name}@1` or `{name}@2`"),
            )),
            (Mode::Tensor, Some(k)) if k == 1 || k == 2 => {
                Ok(AlgElem::gen(&self.target, (k as usize - 1) * self.gens.len() + i))
            }
            (Mode::Tensor, Some(k)) => {
                Err(Diagnostic::new(Code::UnknownSlot, span, format!("unknown tensor slot `@{k}`, expected @1 or @2")))
            }
        }
    }

    fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a + b
    }

    fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a * b
    }

    fn neg(&self, a: &AlgElem) -> AlgElem {
        AlgElem::neg(a)
    }

    fn pow(&self, a: &AlgElem, k: u64, _: Span) -> Result<AlgElem, Diagnostic> {
        Ok(a.pow(k))
    }
}

fn ring(decl: &RingDecl) -> Result<BaseRing, Diagnostic> {
    let bad = |msg: String| Diagnostic::new(Code::InvalidRing, decl.span, msg);
    let wanted: &[&str] = match decl.ctor {
        RingCtor::FpPi => &["p", "e"],
        RingCtor::Zmod => &["p", "s"],
        RingCtor::Fp => &["p"],
    };
    let mut vals = HashMap::new();
    for (k, v) in &decl.params {
        if !wanted.contains(&k.as_str()) {
            return Err(bad(format!("{} takes parameters {}, not `{k}`", decl.ctor.keyword(), wanted.join(", "))));
        }
        if vals.insert(k.as_str(), *v).is_some() {
            return Err(bad(format!("parameter `{k}` given twice")));
        }
    }
    let mut get = |k: &str| -> Result<u32, Diagnostic> {
        let v = vals.remove(k).ok_or_else(|| bad(format!("{} needs parameter `{k}`", decl.ctor.keyword())))?;
        u32::try_from(v).map_err(|_| bad(format!("parameter {k}={v} out of range")))
    };
    let built = match decl.ctor {
        RingCtor::FpPi => BaseRing::fp_pi(get("p")?, get("e")?),
        RingCtor::Zmod => BaseRing::zmod(get("p")?, get("s")?),
        RingCtor::Fp => BaseRing::prime_field(get("p")?),
    };
    built.map_err(|e| bad(e.to_string()))
}

fn file_start() -> Span {
    Span { line: 1, col: 1 }
}

/// Resolves and builds every declaration, reporting all semantic errors
/// found in one pass where later stages do not depend on failed ones.
pub fn elaborate(file: &SourceFile) -> Result<Program, Diagnostics> {
    let mut diags = Vec::new();
    let rings: Vec<&RingDecl> = file.items.iter().filter_map(|i| if let Item::Ring(r) = i { Some(r) } else { None }).collect();
    let algebras: Vec<&AlgebraDecl> =
        file.items.iter().filter_map(|i| if let Item::Algebra(a) = i { Some(a) } else { None }).collect();
    let Some(rdecl) = rings.first() else {
        return Err(Diagnostic::new(Code::MissingRing, file_start(), "missing ring declaration").into());
    };
    for r in &rings[1..] {
        diags.push(Diagnostic::new(Code::Duplicate, r.span, format!("duplicate ring declaration `{}`", r.name)));
    }
    let base = ring(rdecl).map_err(Diagnostics::single)?;
    let Some(adecl) = algebras.first() else {
        return Err(Diagnostic::new(Code::MissingAlgebra, rdecl.span, "missing algebra declaration").into());
    };
    for a in &algebras[1..] {
        diags.push(Diagnostic::new(Code::Duplicate, a.span, format!("duplicate algebra declaration `{}`", a.name)));
    }
    if adecl.ring != rdecl.name {
        diags.push(unknown(&adecl.ring, adecl.span));
    }

    let mut gens: Vec<String> = Vec::new();
    for r in &adecl.relations {
        if gens.contains(&r.gen) {
            diags.push(Diagnostic::new(Code::Duplicate, r.span, format!("generator `{}` declared twice", r.gen)));
        } else {
            gens.push(r.gen.clone());
        }
    }
    if !diags.is_empty() {
        return Err(finish(diags));
    }
    let raw = Raw { base, gens: &gens };
    let mut bounds = Vec::new();
    let mut tails = Vec::new();
    for r in &adecl.relations {
        match u32::try_from(r.bound) {
            Ok(b) if b > 0 => bounds.push(b),
            _ => diags.push(Diagnostic::new(Code::Presentation, r.span, format!("bound {} out of range", r.bound))),
        }
        match eval(&raw, &r.tail) {
            Ok(v) => tails.push(RawPoly::new(v.into_iter().collect())),
            Err(d) => diags.push(d),
        }
    }
    if !diags.is_empty() {
        return Err(finish(diags));
    }
    let alg = Algebra::new(base, gens.clone(), bounds, tails)
        .map_err(|e| Diagnostics::single(Diagnostic::new(Code::Presentation, adecl.span, e.to_string())))?;
    let a2 = Algebra::tensor_power(&alg, 2)
        .map_err(|e| Diagnostics::single(Diagnostic::new(Code::Presentation, adecl.span, e.to_string())))?;

    let n = gens.len();
    let mut comul: Vec<Option<AlgElem>> = vec![None; n];
    let mut counit: Vec<Option<Scalar>> = vec![None; n];
    let mut antipode: Vec<Option<AlgElem>> = vec![None; n];
    let plain = Elems { target: alg.clone(), gens: &gens, mode: Mode::Plain };
    let tensor = Elems { target: a2.clone(), gens: &gens, mode: Mode::Tensor };
    let scalar = Elems { target: alg.clone(), gens: &gens, mode: Mode::Scalar };
    let mut antipode_span = None;
    for item in &file.items {
        let Item::Map(m) = item else { continue };
        let Some(i) = gens.iter().position(|g| *g == m.gen) else {
            diags.push(unknown(&m.gen, m.span));
            continue;
        };
        let dup = || Diagnostic::new(Code::Duplicate, m.span, format!("{} of `{}` declared twice", m.kind.keyword(), m.gen));
        match m.kind {
            MapKind::Comul => match eval(&tensor, &m.value) {
                Ok(_) if comul[i].is_some() => diags.push(dup()),
                Ok(v) => comul[i] = Some(v),
                Err(d) => diags.push(d),
            },
            MapKind::Counit => match eval(&scalar, &m.value) {
                Ok(_) if counit[i].is_some() => diags.push(dup()),
                Ok(v) => counit[i] = Some(v.constant_term()),
                Err(d) => diags.push(d),
            },
            MapKind::Antipode => {
                antipode_span.get_or_insert(m.span);
                match eval(&plain, &m.value) {
                    Ok(_) if antipode[i].is_some() => diags.push(dup()),
                    Ok(v) => antipode[i] = Some(v),
                    Err(d) => diags.push(d),
                }
            }
        }
    }
    let missing: Vec<&str> = gens.iter().zip(&comul).filter(|(_, c)| c.is_none()).map(|(g, _)| g.as_str()).collect();
    if !missing.is_empty() && diags.is_empty() {
        diags.push(Diagnostic::new(
            Code::MissingComul,
            adecl.span,
            format!("missing comultiplication for {}", missing.join(", ")),
        ));
    }
    if let Some(span) = antipode_span {
        if antipode.iter().any(Option::is_none) && diags.is_empty() {
            diags.push(Diagnostic::new(Code::Presentation, span, "antipode must be given for every generator or none"));
        }
    }
    if !diags.is_empty() {
        return Err(finish(diags));
    }
    let comul: Vec<AlgElem> = comul.into_iter().map(Option::unwrap).collect();
    let counit: Vec<Scalar> = counit.into_iter().map(|c| c.unwrap_or(Scalar::ZERO)).collect();
    let antipode: Option<Vec<AlgElem>> = antipode.into_iter().collect();
    let solve = antipode.is_none();
    let mut hopf = Hopf::new(adecl.name.clone(), alg.clone(), comul, counit, antipode)
        .map_err(|e| Diagnostics::single(Diagnostic::new(Code::Presentation, adecl.span, e.to_string())))?;
    if solve {
        // A law without an antipode still elaborates; verification reports it.
        if let Ok(done) = hopf.clone().completed() {
            hopf = done;
        }
    }
    let hopf: HopfRef = Arc::new(hopf);

    let mut comodules = Vec::new();
    let mut names: Vec<&str> = Vec::new();
    for item in &file.items {
        let Item::Comodule(c) = item else { continue };
        if names.contains(&c.name.as_str()) {
            diags.push(Diagnostic::new(Code::Duplicate, c.span, format!("comodule `{}` declared twice", c.name)));
            continue;
        }
        names.push(&c.name);
        let r = c.rows.len();
        if let Some(bad) = c.rows.iter().find(|row| row.len() != r) {
            diags.push(Diagnostic::new(
                Code::Comodule,
                c.span,
                format!("coaction matrix of `{}` is not square: {r} rows but a row of length {}", c.name, bad.len()),
            ));
            continue;
        }
        let mut matrix = Vec::with_capacity(r);
        let mut ok = true;
        for row in &c.rows {
            let mut out = Vec::with_capacity(r);
            for e in row {
                match eval(&plain, e) {
                    Ok(v) => out.push(v),
                    Err(d) => {
                        diags.push(d);
                        ok = false;
                    }
                }
            }
            matrix.push(out);
        }
        if ok {
            match Comodule::new(c.name.clone(), hopf.clone(), matrix) {
                Ok(m) => comodules.push(m),
                Err(e) => diags.push(Diagnostic::new(Code::Comodule, c.span, e.to_string())),
            }
        }
    }
    if !diags.is_empty() {
        return Err(finish(diags));
    }
    Ok(Program { ring: base, hopf, comodules })
}

fn finish(mut diags: Vec<Diagnostic>) -> Diagnostics {
    diags.sort_by_key(|d| (d.span.line, d.span.col));
    Diagnostics(diags)
}
