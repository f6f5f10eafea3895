//! Edge-element machinery for the anisotropic nonlinear time-harmonic Maxwell
//! equation `curl(mu^-1 curl E) - V E = f(x,E)` on bounded cavities with
//! perfect-conductor boundary conditions.
//!
//! The crate is organized around the variational structure of the problem:
//!
//! * [`mesh`] — tetrahedral meshes of the unit cube and of polygonal
//!   cylinders, with full edge/face topology and boundary classification.
//! * [`fem`] — lowest-order edge elements: curl-curl stiffness, weighted
//!   mass, discrete gradient coupling and quadrature evaluation of fields.
//! * [`linalg`] — sparse symmetric operators, a skyline LDL^T factorization
//!   for the saddle-point systems, and small dense helpers.
//! * [`spectrum`] — the constrained Maxwell eigenproblem, the source-problem
//!   solver and the spectral splitting of the divergence-free space.
//! * [`decomposition`] — the discrete Helmholtz splitting into a weighted
//!   divergence-free part and a gradient part.
//! * [`nonlinearity`] — Kerr-type power-sum nonlinearities with optional
//!   low-intensity truncation, their derivatives, and sampled hypothesis
//!   checks.
//! * [`critical`] — the abstract strongly-indefinite critical point engine:
//!   fiber maximization, Nehari minimization and a mountain-pass search.
//! * [`symmetry`] — cylindrically symmetric reductions: frame decomposition
//!   of symmetric fields and the two reduced meridian solvers.

pub mod critical;
pub mod decomposition;
pub mod error;
pub mod fem;
pub mod linalg;
pub mod mesh;
pub mod nonlinearity;
pub mod spectrum;
pub mod symmetry;

pub use error::{Error, Result};
