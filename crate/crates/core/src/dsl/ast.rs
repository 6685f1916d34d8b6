//! Syntax tree of a `.ffgs` source file.

use super::diag::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Pi,
    /// A generator, optionally pinned to a tensor slot (`x@2`).
    Var { name: String, slot: Option<u64>, span: Span },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

impl Expr {
    pub fn var(name: impl Into<String>, slot: Option<u64>) -> Expr {
        Expr::Var { name: name.into(), slot, span: Span::default() }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, e: u64) -> Expr {
        Expr::Pow(Box::new(a), e)
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingCtor {
    /// `Fp_pi(p, e)`
    FpPi,
    /// `Zmod(p, s)`
    Zmod,
    /// `Fp(p)`
    Fp,
}

impl RingCtor {
    pub fn keyword(self) -> &'static str {
        match self {
            RingCtor::FpPi => "Fp_pi",
            RingCtor::Zmod => "Zmod",
            RingCtor::Fp => "Fp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub ctor: RingCtor,
    pub params: Vec<(String, u64)>,
    pub span: Span,
}

/// `g^bound -> tail`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub gen: String,
    pub bound: u64,
    pub tail: Expr,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: String,
    pub ring: String,
    pub relations: Vec<Relation>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Comul,
    Counit,
    Antipode,
}

impl MapKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MapKind::Comul => "comul",
            MapKind::Counit => "counit",
            MapKind::Antipode => "antipode",
        }
    }
}

/// `comul x = …;`, `counit x = …;` or `antipode x = …;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub kind: MapKind,
    pub gen: String,
    pub value: Expr,
    pub span: Span,
}

/// `comodule V = [[…], …];` with `ρ(e_j) = Σ_i e_i ⊗ rows[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleDecl {
    pub name: String,
    pub rows: Vec<Vec<Expr>>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Ring(RingDecl),
    Algebra(AlgebraDecl),
    Map(MapDecl),
    Comodule(ComoduleDecl),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub items: Vec<Item>,
}
