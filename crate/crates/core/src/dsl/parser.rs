use super::ast::*;
use super::diag::{Code, Diagnostic, Diagnostics, Span};
use super::lexer::{lex, Tok, Token};

const KEYWORDS: &[&str] = &["ring", "algebra", "over", "gens", "comul", "counit", "antipode", "comodule", "pi"];

/// Parses a source file. Syntax errors stop at the first offending token.
pub fn parse(src: &str) -> Result<SourceFile, Diagnostics> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(SourceFile { items })
}

/// Parses a single expression, e.g. for command-line arguments.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostics> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        Diagnostic::new(Code::Syntax, self.span(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.next().span)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.next().span),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn name(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => {
                Err(Diagnostic::new(Code::Syntax, self.span(), format!("`{s}` is reserved and cannot be used as a name")))
            }
            Tok::Ident(s) => Ok((s, self.next().span)),
            _ => Err(self.unexpected("a name")),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let span = self.span();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a declaration")),
        };
        match kw.as_str() {
            "ring" => self.ring(span).map(Item::Ring),
            "algebra" => self.algebra(span).map(Item::Algebra),
            "comul" => self.map(span, MapKind::Comul).map(Item::Map),
            "counit" => self.map(span, MapKind::Counit).map(Item::Map),
            "antipode" => self.map(span, MapKind::Antipode).map(Item::Map),
            "comodule" => self.comodule(span).map(Item::Comodule),
            _ => Err(self.unexpected("a declaration (ring, algebra, comul, counit, antipode, comodule)")),
        }
    }

    fn ring(&mut self, span: Span) -> PResult<RingDecl> {
        self.next();
        let (name, _) = self.name()?;
        self.expect(Tok::Eq)?;
        let ctor = match self.peek() {
            Tok::Ident(s) if s == "Fp_pi" => RingCtor::FpPi,
            Tok::Ident(s) if s == "Zmod" => RingCtor::Zmod,
            Tok::Ident(s) if s == "Fp" => RingCtor::Fp,
            _ => return Err(self.unexpected("a ring constructor (Fp_pi, Zmod, Fp)")),
        };
        self.next();
        self.expect(Tok::LParen)?;
        let mut params = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                let (k, _) = self.name()?;
                self.expect(Tok::Eq)?;
                params.push((k, self.int()?));
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.next();
            }
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(RingDecl { name, ctor, params, span })
    }

    fn algebra(&mut self, span: Span) -> PResult<AlgebraDecl> {
        self.next();
        let (name, _) = self.name()?;
        self.keyword("over")?;
        let (ring, _) = self.name()?;
        self.expect(Tok::Eq)?;
        self.keyword("gens")?;
        let mut relations = Vec::new();
        loop {
            let (gen, rspan) = self.name()?;
            self.expect(Tok::Caret)?;
            let bound = self.int()?;
            self.expect(Tok::Arrow)?;
            let tail = self.expr()?;
            relations.push(Relation { gen, bound, tail, span: rspan });
            if *self.peek() != Tok::Comma {
                break;
            }
            self.next();
        }
        self.expect(Tok::Semi)?;
        Ok(AlgebraDecl { name, ring, relations, span })
    }

    fn map(&mut self, span: Span, kind: MapKind) -> PResult<MapDecl> {
        self.next();
        let (gen, _) = self.name()?;
        self.expect(Tok::Eq)?;
        let value = self.expr()?;
        self.expect(Tok::Semi)?;
        Ok(MapDecl { kind, gen, value, span })
    }

    fn comodule(&mut self, span: Span) -> PResult<ComoduleDecl> {
        self.next();
        let (name, _) = self.name()?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = vec![self.expr()?];
            while *self.peek() == Tok::Comma {
                self.next();
                row.push(self.expr()?);
            }
            self.expect(Tok::RBracket)?;
            rows.push(row);
            if *self.peek() != Tok::Comma {
                break;
            }
            self.next();
        }
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Semi)?;
        Ok(ComoduleDecl { name, rows, span })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = Expr::add(acc, self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = Expr::sub(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.next();
            acc = Expr::mul(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(Expr::neg(self.unary()?));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.next();
            return Ok(Expr::pow(base, self.int()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) if s == "pi" => {
                self.next();
                Ok(Expr::Pi)
            }
            Tok::Ident(_) => {
                let (name, _) = self.name()?;
                let slot = if *self.peek() == Tok::At {
                    self.next();
                    Some(self.int()?)
                } else {
                    None
                };
                Ok(Expr::Var { name, slot, span })
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("-x^2 + 3*y@1*x@2 - 1").unwrap();
        let want = Expr::sub(
            Expr::add(
                Expr::neg(Expr::pow(Expr::var("x", None), 2)),
                Expr::mul(Expr::mul(Expr::Int(3), Expr::var("y", Some(1))), Expr::var("x", Some(2))),
            ),
            Expr::Int(1),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn reserved_names() {
        let d = parse("algebra pi over R = gens x^2 -> 0;").unwrap_err();
        assert_eq!(d.codes(), vec![Code::Syntax]);
    }

    #[test]
    fn error_position() {
        let d = parse("ring R = Fp(p=2);\ncomul x = x@1 +;").unwrap_err();
        assert_eq!(d.0[0].code, Code::Syntax);
        assert_eq!((d.0[0].span.line, d.0[0].span.col), (2, 16));
    }
}
