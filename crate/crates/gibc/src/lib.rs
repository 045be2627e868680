//! 2D inverse obstacle scattering with generalized impedance boundary
//! conditions (GIBC).
//!
//! The boundary condition on the obstacle boundary is
//!
//! ```text
//! du/dnu + div_G(mu grad_G u) + lambda u = 0
//! ```
//!
//! with complex surface impedances `lambda`, `mu`. The crate provides
//!
//! * a finite element forward solver on the annulus between the obstacle
//!   and an artificial circle, truncated by a Fourier Dirichlet-to-Neumann
//!   map ([`solver`]),
//! * a semi-analytic series oracle for circular obstacles with constant
//!   impedances ([`oracle`]),
//! * adjoint-based derivatives of the far-field misfit with respect to the
//!   impedance functions and to the obstacle shape, the latter including the
//!   tangential contribution that appears when the impedances live on the
//!   unknown boundary ([`gradients`]),
//! * an H1-regularized steepest descent driver that alternates shape and
//!   impedance updates with remeshing ([`inversion`]),
//! * configuration, synthetic data generation and CSV I/O for the `gibc`
//!   command line tool ([`config`], [`runs`]).

pub mod bessel;
pub mod config;
pub mod farfield;
pub mod fem;
pub mod geometry;
pub mod gradients;
pub mod inversion;
pub mod mesh;
pub mod oracle;
pub mod runs;
pub mod solver;
pub mod surface;
pub mod validate;

mod quad;
mod tridiag;

pub use farfield::FarField;
pub use geometry::{BoundaryCurve, CurveFields, Perturbation, Point};
pub use mesh::AnnulusMesh;
pub use solver::{IncidentField, ScatterConfig, ScatterSolution};
pub use surface::ImpedanceField;
