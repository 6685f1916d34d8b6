//! Naive reference arithmetic for cross-checking the `ffgs` kernel.
//!
//! Nothing here calls kernel arithmetic: polynomials are exponent maps,
//! multiplication is schoolbook, ranks come from dense Gaussian elimination.
//! Scalars use the kernel's integer codes so terms compare directly.

pub mod coeffs;
pub mod complex;
pub mod convert;
pub mod fp;
pub mod law;
pub mod poly;

#[cfg(test)]
mod self_tests;

pub use coeffs::Coeffs;
pub use law::Law;
pub use poly::{Poly, Ring};
