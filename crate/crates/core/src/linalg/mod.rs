//! Sparse and dense linear algebra used by the assembly and solver layers.

mod dense;
mod skyline;
mod sparse;

pub use dense::{generalized_sym_eigen, kernel_dimension, sym_eigen};
pub use skyline::{SkylineFactor, SkylineProfile};
pub use sparse::{unit_vector, RectOp, SparseSymOp, TripletBuffer};
