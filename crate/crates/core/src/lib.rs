pub mod arith;
pub mod binomial;
pub mod cache;
pub mod cli;
pub mod delta;
pub mod error;
pub mod expr;
pub mod finite_algebra;
pub mod finite_field;
pub mod fracture;
pub mod lambda;
pub mod linalg;
pub mod modular;
pub mod pboolean;
pub mod perfection;
pub mod poly;
pub mod ring;
pub mod symfunc;
pub mod witt;

pub use error::{Error, Result};
