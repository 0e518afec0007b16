//! p-typical Witt vectors: arithmetic, Frobenius and Verschiebung, structure
//! polynomials, and the tilt of finite algebras.

pub mod ptypical;
pub mod tables;
pub mod tilt;

pub use ptypical::{ghost_components, ghost_descend, WittRing};
pub use tables::{compute_structure_polynomials, evaluate_structure, StructureKind, WittTables};
pub use tilt::tilt;
