//! Exact computer algebra for finite-dimensional Hopf algebras given by structure
//! constants over cyclotomic fields.
//!
//! The crate builds the Radford Hopf algebras `R_mn(q)` (and Taft algebras as a
//! cross-check family), their duals and Drinfeld doubles, and then computes integrals,
//! distinguished grouplike elements, the universal R-matrix, the Drinfeld element `u`,
//! and every quasi-ribbon and ribbon element of the double, verifying each identity by
//! exact arithmetic.

pub mod cyclotomic;
pub mod double;
pub mod hopf;
pub mod qcalc;
pub mod radford;
pub mod ribbon;

pub use cyclotomic::{make_context, Cyc, CycContext, CycError};
pub use hopf::{Element, HopfAlgebra, HopfError, TensorElement};
