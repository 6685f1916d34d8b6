//! Exact computations with finite flat commutative group schemes presented
//! by explicit Hopf algebras over small Artin local rings.

pub mod algebra;
pub mod catalog;
pub mod chain;
pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod dsl;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod quotient;
pub mod report;
pub mod ring;
pub mod trace;

pub use algebra::{AlgElem, Algebra, AlgebraRef, Monomial, RawPoly};
pub use error::{Error, Result};
pub use hopf::{AxiomReport, Check, Hopf, HopfMorphism, HopfRef, MorphismReport};
pub use ring::{BaseRing, RingKind, Scalar};
