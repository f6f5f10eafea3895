use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid mesh parameters: {0}")]
    InvalidMesh(String),

    #[error("coefficient field rejected: {0}")]
    InvalidCoefficient(String),

    #[error("invalid nonlinearity model: {0}")]
    InvalidModel(String),

    #[error("non-finite integrand value at quadrature point {point:?} (element {element})")]
    NonFiniteIntegrand { element: usize, point: [f64; 3] },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error(
        "eigensolver did not converge after {iterations} iterations \
         (worst residual {worst_residual:.3e} for pair {worst_index})"
    )]
    EigenNoConvergence {
        iterations: usize,
        worst_residual: f64,
        worst_index: usize,
    },

    #[error("insufficient eigenpairs: raise eigenpair count ({0})")]
    InsufficientEigenpairs(String),

    #[error("non-concave fiber restriction: positive curvature along the fiber space ({0})")]
    FiberNotConcave(String),

    #[error("no positive fiber maximum along the ray: {0}")]
    NoFiberMaximum(String),

    #[error("optimizer did not converge: {0}")]
    NoConvergence(String),

    #[error("field is not symmetric under the discrete rotation: residual {0:.3e}")]
    NotSymmetric(f64),

    #[error("tensor is not of uniaxial form: {0}")]
    NotUniaxial(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
