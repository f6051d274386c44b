//! 2D bond-based peridynamic finite elements for quasi-static fracture.
//!
//! The solver discretizes a nonlocal bond-based continuum on a standard
//! bilinear quadrilateral mesh. Every pair of mesh elements within horizon
//! reach forms a *peridynamic element* (PE) that carries the nonlocal
//! stiffness integration, so assembly and solution follow the familiar
//! finite-element pipeline: build element matrices, scatter into a sparse
//! symmetric system, apply displacement constraints, solve.
//!
//! Fracture is brittle: a bond breaks irreversibly once its stretch reaches
//! the critical value, and the quasi-static driver walks through progressive
//! displacement increments, re-solving inside each increment until no new
//! bonds break.
//!
//! The crate is `no_std`-compatible (`alloc` required); file IO, run
//! configuration and the CLI live in the companion `perifem-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod assembly;
pub mod fracture;
pub mod material;
pub mod mesh;
pub mod pe;
pub mod quadrature;

mod math;

pub use assembly::{BcComponent, BoundaryCondition, Constraints, DofMap, SparseSym};
pub use fracture::{LoadHistory, RunSpec, StepRecord};
pub use material::{BondFlag, MaterialParams};
pub use mesh::{ContinuousElement, Mesh, Node};
pub use pe::{PeSet, PeriElement};
pub use quadrature::{BondQuadraturePair, QuadratureRule};
