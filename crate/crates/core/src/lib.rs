//! Hybridizable discontinuous Galerkin solver for the 2-D diffusive
//! Peterlin viscoelastic model.
//!
//! The model couples the incompressible Navier-Stokes equations with a
//! transport equation for the symmetric conformation tensor C, whose
//! diffusion coefficient epsilon may be arbitrarily small, including
//! exactly zero. Each time step solves one monolithic semi-implicit linear
//! system for the cell fields (u, p, C), their facet traces (uhat, phat,
//! Chat) and a pressure-mean multiplier. Upwind facet stabilization keeps
//! the conformation transport well behaved in the convection-dominated
//! regime.
//!
//! The crate also ships the verification toolbox used to reproduce the
//! manufactured-solution convergence studies and the positive-definiteness
//! diagnostics: closed-form exact fields with synthesized forcing,
//! mesh-dependent error norms, and experimental order-of-convergence
//! computation.

pub mod basis;
pub mod mesh;
pub mod quadrature;
pub mod spaces;
pub mod tensor;

pub use mesh::{build_structured_mesh, Mesh, Rect};
pub use spaces::{build_layout, project_initial, DofLayout, State};
pub use tensor::{Mat2, SymTensor, Vec2};
