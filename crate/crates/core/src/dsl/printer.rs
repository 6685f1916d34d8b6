//! Canonical text form. Parsing the output yields an equal tree.

use std::fmt::Write;

use super::ast::*;
use crate::algebra::AlgElem;
use crate::cohomology::Comodule;
use crate::hopf::Hopf;
use crate::ring::{BaseRing, RingKind, Scalar};

const SUM: u8 = 1;
const TERM: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 4;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) => TERM,
        Expr::Neg(_) | Expr::Pow(..) => UNARY,
        Expr::Int(_) | Expr::Pi | Expr::Var { .. } => ATOM,
    }
}

fn write_expr(out: &mut String, e: &Expr, min: u8) {
    let wrap = prec(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Int(n) => write!(out, "{n}").unwrap(),
        Expr::Pi => out.push_str("pi"),
        Expr::Var { name, slot, .. } => {
            out.push_str(name);
            if let Some(k) = slot {
                write!(out, "@{k}").unwrap();
            }
        }
        Expr::Neg(a) => {
            out.push('-');
            write_expr(out, a, UNARY);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_expr(out, a, SUM);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_expr(out, b, TERM);
        }
        Expr::Mul(a, b) => {
            write_expr(out, a, TERM);
            out.push('*');
            write_expr(out, b, UNARY);
        }
        Expr::Pow(a, k) => {
            write_expr(out, a, ATOM);
            write!(out, "^{k}").unwrap();
        }
    }
    if wrap {
        out.push(')');
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, SUM);
    s
}

pub fn print(file: &SourceFile) -> String {
    let mut out = String::new();
    for item in &file.items {
        match item {
            Item::Ring(r) => {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "ring {} = {}({});", r.name, r.ctor.keyword(), params.join(", ")).unwrap();
            }
            Item::Algebra(a) => {
                let rels: Vec<String> =
                    a.relations.iter().map(|r| format!("{}^{} -> {}", r.gen, r.bound, print_expr(&r.tail))).collect();
                writeln!(out, "algebra {} over {} = gens {};", a.name, a.ring, rels.join(", ")).unwrap();
            }
            Item::Map(m) => {
                writeln!(out, "{} {} = {};", m.kind.keyword(), m.gen, print_expr(&m.value)).unwrap();
            }
            Item::Comodule(c) => {
                let rows: Vec<String> = c
                    .rows
                    .iter()
                    .map(|row| format!("[{}]", row.iter().map(print_expr).collect::<Vec<_>>().join(", ")))
                    .collect();
                writeln!(out, "comodule {} = [{}];", c.name, rows.join(", ")).unwrap();
            }
        }
    }
    out
}

fn sum(terms: Vec<Expr>) -> Expr {
    let mut it = terms.into_iter();
    let first = it.next().unwrap_or(Expr::Int(0));
    it.fold(first, Expr::add)
}

fn product(factors: Vec<Expr>) -> Option<Expr> {
    let mut it = factors.into_iter();
    let first = it.next()?;
    Some(it.fold(first, Expr::mul))
}

/// `c_0 + c_1·π + …` in `F_p[π]/(π^e)`, or the integer representative in `Z/p^s`.
pub fn scalar_expr(base: BaseRing, c: Scalar) -> Expr {
    if base.kind() == RingKind::Zmod || base.is_field() {
        return Expr::Int(c.0 as u64);
    }
    let p = base.p();
    let mut v = c.0;
    let mut terms = Vec::new();
    for i in 0..base.length() {
        let d = v % p;
        v /= p;
        if d == 0 {
            continue;
        }
        let power = match i {
            0 => None,
            1 => Some(Expr::Pi),
            _ => Some(Expr::pow(Expr::Pi, i as u64)),
        };
        terms.push(match (d, power) {
            (d, None) => Expr::Int(d as u64),
            (1, Some(pw)) => pw,
            (d, Some(pw)) => Expr::mul(Expr::Int(d as u64), pw),
        });
    }
    sum(terms)
}

/// An element as a sum of `coefficient * monomial` terms, slot names `g@k`
/// split into generator and slot.
pub fn element_expr(e: &AlgElem) -> Expr {
    let alg = e.algebra();
    let base = alg.base();
    let terms = e
        .terms()
        .map(|(mono, c)| {
            let mut factors: Vec<Expr> = if c == Scalar::ONE { vec![] } else { vec![scalar_expr(base, c)] };
            factors.extend(mono
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = &alg.names()[i];
                    let var = match name.split_once('@') {
                        Some((g, slot)) => Expr::var(g, Some(slot.parse().expect("numeric slot"))),
                        None => Expr::var(name.as_str(), None),
                    };
                    if k == 1 {
                        var
                    } else {
                        Expr::pow(var, k as u64)
                    }
                }));
            product(factors).unwrap_or_else(|| scalar_expr(base, c))
        })
        .collect();
    sum(terms)
}

fn ring_decl(base: BaseRing) -> RingDecl {
    let p = base.p() as u64;
    let (ctor, params) = match (base.kind(), base.length()) {
        (RingKind::FpPi, 1) => (RingCtor::Fp, vec![("p".into(), p)]),
        (RingKind::FpPi, e) => (RingCtor::FpPi, vec![("p".into(), p), ("e".into(), e as u64)]),
        (RingKind::Zmod, s) => (RingCtor::Zmod, vec![("p".into(), p), ("s".into(), s as u64)]),
    };
    RingDecl { name: "R".into(), ctor, params, span: Default::default() }
}

/// Source form of a Hopf algebra and optional comodules over it.
pub fn from_hopf(g: &Hopf, comodules: &[Comodule]) -> SourceFile {
    let alg = g.algebra();
    let base = alg.base();
    let mut items = vec![Item::Ring(ring_decl(base))];
    let relations = (0..alg.ngens())
        .map(|i| Relation {
            gen: alg.names()[i].clone(),
            bound: alg.bounds()[i] as u64,
            tail: element_expr(&alg.tail_elem(i)),
            span: Default::default(),
        })
        .collect();
    items.push(Item::Algebra(AlgebraDecl { name: "A".into(), ring: "R".into(), relations, span: Default::default() }));
    let map = |kind, i: usize, value| {
        Item::Map(MapDecl { kind, gen: alg.names()[i].clone(), value, span: Default::default() })
    };
    for (i, d) in g.comul().iter().enumerate() {
        items.push(map(MapKind::Comul, i, element_expr(d)));
    }
    for (i, c) in g.counit().iter().enumerate() {
        items.push(map(MapKind::Counit, i, scalar_expr(base, *c)));
    }
    if let Some(s) = g.antipode() {
        for (i, e) in s.iter().enumerate() {
            items.push(map(MapKind::Antipode, i, element_expr(e)));
        }
    }
    for c in comodules {
        let rows = c.matrix.iter().map(|row| row.iter().map(element_expr).collect()).collect();
        items.push(Item::Comodule(ComoduleDecl { name: c.name.clone(), rows, span: Default::default() }));
    }
    SourceFile { items }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_expr;
    use super::*;

    #[test]
    fn minimal_parentheses() {
        for src in ["(1 + y@1)^3*x@2 + x@1", "a - (b - c)", "-(x + 1)*y", "(x^2)^3", "-x^2", "a*-b", "2*pi^2 + (1 + pi)*x"] {
            let e = parse_expr(src).unwrap();
            let printed = print_expr(&e);
            assert_eq!(printed, src);
            assert_eq!(parse_expr(&printed).unwrap(), e);
        }
    }

    #[test]
    fn scalar_forms() {
        let r = BaseRing::fp_pi(3, 3).unwrap();
        let c = r.add(r.from_int(2), r.mul(r.from_int(2), r.t_pow(2)));
        assert_eq!(print_expr(&scalar_expr(r, c)), "2 + 2*pi^2");
        let z = BaseRing::zmod(3, 2).unwrap();
        assert_eq!(print_expr(&scalar_expr(z, z.from_int(-1))), "8");
    }
}
