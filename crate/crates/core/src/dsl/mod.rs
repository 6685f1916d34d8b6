//! The `.ffgs` source language.
//!
//! ```text
//! ring R = Fp_pi(p=2, e=2);
//! algebra A over R = gens x^2 -> 0, y^2 -> 0;
//! comul x = (1 + y@1)^1*x@2 + x@1;
//! comul y = y@1 + y@2 + y@1*y@2;
//! counit x = 0;
//! comodule V = [[1 + y, x], [0, 1]];
//! ```
//!
//! `@1` and `@2` name the tensor factors of `A ⊗ A`. `pi` is the uniformizer
//! of the base ring (`p` in `Zmod`, zero in `Fp`). Counits default to zero;
//! an omitted antipode is solved for.

pub mod ast;
pub mod diag;
pub mod elaborate;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use ast::SourceFile;
pub use diag::{Code, Diagnostic, Diagnostics, Span};
pub use elaborate::{elaborate, Program};
pub use parser::{parse, parse_expr};
pub use printer::{from_hopf, print};

/// Parses and elaborates in one step.
pub fn load(src: &str) -> Result<Program, Diagnostics> {
    elaborate(&parse(src)?)
}
