pub mod error;
pub mod field;
pub mod matrix;
pub mod modp;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use field::Field;
pub use matrix::Matrix;
pub use modp::Fp;
pub use scalar::Scalar;
pub use subspace::{GradedSubspace, Parity, Span};
pub mod algebra;
pub mod axioms;
pub mod grassmann;
pub mod catalog;
pub mod generation;
pub mod osp;
pub mod families;
pub mod registry;
pub mod io;
