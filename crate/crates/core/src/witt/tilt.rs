//! The tilt `R ↦ (R/p)^perf` of a finite algebra over `Z/p^N`, via limit perfection.

use crate::error::Result;
use crate::finite_algebra::FiniteAlgebra;
use crate::perfection::{limit_perfection, LimitPerfection};

/// Reduces modulo `p`, then takes the stable Frobenius image up to `stage` (or to
/// stabilization when `stage` is `None`).
pub fn tilt(r: &FiniteAlgebra, stage: Option<usize>) -> Result<LimitPerfection> {
    limit_perfection(&r.mod_p(), stage)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_ring_tilts_to_prime_field() {
        let r = FiniteAlgebra::truncated_polynomial(3, 2, &[0, 1], "x").unwrap();
        assert_eq!(r.dim(), 1);
        let t = tilt(&r, None).unwrap();
        assert_eq!((t.algebra.dim(), t.algebra.precision()), (1, 1));
        assert_eq!(t.stabilization_index, Some(0));
    }

    #[test]
    fn nilpotents_disappear() {
        let r = FiniteAlgebra::truncated_polynomial(2, 3, &[0, 0, 1], "t").unwrap();
        let t = tilt(&r, None).unwrap();
        assert_eq!(t.algebra.dim(), 1);
        assert!(t.exact);
    }
}
