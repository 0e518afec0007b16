//! Perfection of `F_p`-algebras: the colimit along Frobenius in staged form, the limit
//! (stable Frobenius image) of finite algebras, and monoid algebras on `Z[1/p]_{>=0}`.

pub mod colimit;
pub mod limit;
pub mod monoid;

pub use colimit::{ColimitPerfection, Staged};
pub use limit::{limit_perfection, LimitPerfection};
pub use monoid::{Exponent, PerfectMonoidAlgebra, PerfectPoly};
