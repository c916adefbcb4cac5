//! Exact construction, verification and classification of matrix spaces
//! with trivial spectrum over division algebras.

pub mod algebra;
pub mod alternator;
pub mod applications;
pub mod dmat;
pub mod error;
pub mod field;
pub mod fmat;
pub mod fp;
pub mod generic_matrix;
pub mod intransitivity;
pub mod json;
pub mod operator_space;
pub mod oracle;
pub mod poly;
pub mod trivial_spectrum;
pub mod upoly;
pub mod verdict;

pub use algebra::{Algebra, Elem, Family, QuadForm, QuadTag, QuadraticTypeProfile};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use fmat::{FMat, FSubspace};
