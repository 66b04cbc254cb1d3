//! Symbolic engine for finite free Hom-Lie conformal superalgebras.

pub mod algebra;
pub mod catalog;
pub mod cohom;
pub mod deriv;
pub mod error;
pub mod format;
pub mod freemod;
pub mod linsolve;
pub mod poly;
pub mod report;
pub mod rep;
mod system;

pub use algebra::{cur_algebra, from_hom_associative, BracketTable, ConformalAlgebra, FiniteSuperalgebra};
pub use error::{Error, Result};
pub use freemod::{Element, GradedModule, ModuleMap, Parity};
pub use linsolve::RationalMatrix;
pub use poly::{LambdaContext, Poly, Rational};
pub use rep::{adjoint, rep_shift, semidirect, ConformalMap, Representation};
pub use report::{CheckReport, Residual, Status};
pub use cohom::{cocycle2_check, deform, nijenhuis_check, nijenhuis_deformation, psi_from_table, Cochain};
pub use deriv::{Bounds, CenterInteraction, ClassBases, DerClass, DerivationCandidate, SolutionBasis};
pub use format::AlgebraFile;
