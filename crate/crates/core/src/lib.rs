//! Exact computational homological algebra over finite-dimensional
//! commutative local GF(p)-algebras.
//!
//! Everything reduces to dense linear algebra over the prime field: modules
//! are GF(p)-spaces with action matrices, Hom and tensor are solved or
//! presented exactly, and the higher layers build semidualizing
//! verification, C-projective (co)resolutions, mapping cones, complex
//! minimization, and C-perfect width on top.

pub mod algebra;
pub mod complex;
pub mod corpus;
pub mod files;
pub mod cproj;
pub mod gfp;
pub mod module;
pub mod perfect;
pub mod semidual;

pub use algebra::{AlgebraError, AlgebraRef, AlgebraSpec, RingElement, ValidatedAlgebra};
pub use complex::{AugmentedComplex, ChainComplex, ChainMap, ComplexError, QuasiIsoCertificate};
pub use gfp::{Matrix, QuotientSpace};
pub use module::{FinModule, HomModule, IsoVerdict, ModuleError, ModuleMap, Pd, TensorModule};
