//! Finite étale groupoids and their convolution algebras.
//!
//! The crate checks, on finite groupoids with the discrete topology, the
//! equivalence between effectiveness of a groupoid and the requirement that
//! every normaliser of the unit algebra is supported on a bisection:
//!
//! - [`groupoid`]: groupoid tables, validation, bisections and isotropy.
//! - [`algebra`]: the (twisted) convolution algebra, reduced norm,
//!   conditional expectation, normaliser and Cartan checks.
//! - [`cyclotomic`]: exact Gauss-sum normalisers of prime cyclic groups.
//! - [`witness`]: explicit normalisers with non-bisection support for
//!   non-effective groupoids.
//! - [`fourier`]: the integer group, where a unimodular function on the
//!   circle gives such a normaliser while the Laurent algebra admits none.

pub mod algebra;
pub mod cocycle;
pub mod constructions;
pub mod cyclotomic;
pub mod fourier;
pub mod groupoid;
pub mod witness;

pub use algebra::{
    AlgebraElement, AlgebraError, CartanReport, ConvolutionAlgebra, FkSequence, NormaliserCheck,
    RepMatrix,
};
pub use cocycle::{Cocycle, CocycleError, Turns};
pub use groupoid::{
    ArrowId, ArrowSet, FiniteGroupoid, GroupoidData, GroupoidError, ValidationReport, Violation,
};
pub use num_complex::Complex64;
