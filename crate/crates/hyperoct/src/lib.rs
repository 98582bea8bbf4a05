//! Exact-arithmetic computations around the hyperoctahedral category:
//! signed permutations and labelled fiber maps, involutive algebras and
//! their bar construction, degree-zero hyperoctahedral homology with its
//! induced ring structure, reduction certificates for the exactness of the
//! degree-zero resolution, and finite verification of the categorical
//! Barratt-Eccles operad together with its module of under-categories.
//!
//! Everything is computed over exact scalar rings (Z, Q, F_p); no floating
//! point is used anywhere. All values are immutable after construction and
//! all operations are pure functions, so sharing across threads is safe.

pub mod algebra;
pub mod category;
pub mod degree_zero;
pub mod linalg;
pub mod operads;
pub mod reduction;
pub mod scalar;

pub use category::{DeltaHMorphism, Label, LabelledFiberMap, Perm, SignedPermutation};
pub use linalg::{CokernelPresentation, FreeModuleVector, SparseMatrix};
pub use scalar::{Scalar, ScalarRing};
