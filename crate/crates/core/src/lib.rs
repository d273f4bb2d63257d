pub mod algebra;
pub mod centralizer;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod oriented;
pub mod render;
pub mod scalar;
pub mod superalgebra;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;
