use std::fmt;

use thiserror::Error;

/// Line and column (both 1-based) of a token start.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

// Positions are bookkeeping: two trees that differ only in layout are equal.
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Stable diagnostic codes. The numbers never change meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    MissingRing,
    Lexical,
    Syntax,
    UnknownIdent,
    UnknownSlot,
    Duplicate,
    InvalidRing,
    MissingAlgebra,
    MissingComul,
    Overflow,
    Comodule,
    SlotOutsideTensor,
    Presentation,
    MissingSlot,
    NotScalar,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::MissingRing => "E001",
            Code::Lexical => "E002",
            Code::Syntax => "E003",
            Code::UnknownIdent => "E004",
            Code::UnknownSlot => "E005",
            Code::Duplicate => "E006",
            Code::InvalidRing => "E007",
            Code::MissingAlgebra => "E008",
            Code::MissingComul => "E009",
            Code::Overflow => "E010",
            Code::Comodule => "E011",
            Code::SlotOutsideTensor => "E012",
            Code::Presentation => "E013",
            Code::MissingSlot => "E014",
            Code::NotScalar => "E015",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("error[{code}] at {span}: {message}")]
pub struct Diagnostic {
    pub code: Code,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { code, span, message: message.into() }
    }
}

/// One or more diagnostics, sorted by position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn single(d: Diagnostic) -> Self {
        Diagnostics(vec![d])
    }

    pub fn codes(&self) -> Vec<Code> {
        self.0.iter().map(|d| d.code).collect()
    }

    pub fn has(&self, code: Code) -> bool {
        self.0.iter().any(|d| d.code == code)
    }
}

impl From<Diagnostic> for Diagnostics {
    fn from(d: Diagnostic) -> Self {
        Diagnostics::single(d)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
