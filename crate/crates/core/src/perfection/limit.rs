//! Limit perfection of finite `F_p`-algebras as the stable image of Frobenius.

use crate::error::{Error, Result};
use crate::finite_algebra::FiniteAlgebra;
use crate::linalg;

/// The perfection of a finite algebra, presented as a subalgebra.
#[derive(Debug, Clone)]
pub struct LimitPerfection {
    /// The subalgebra with its echelon basis.
    pub algebra: FiniteAlgebra,
    /// Basis of `algebra` as vectors in the input algebra.
    pub embedding: Vec<Vec<u64>>,
    /// Least `k` with `φ^k(R) = φ^{k+1}(R)`, if reached within the requested stage.
    pub stabilization_index: Option<usize>,
    /// Stage actually computed: `φ^stage(R)`.
    pub stage: usize,
    /// Whether the result is the perfection (the chain had stabilized).
    pub exact: bool,
    /// Dimensions of `φ^k(R)` for `k = 0..=stage`.
    pub dimensions: Vec<usize>,
}

/// `φ^k(R)` for `k` up to `stage`; exact once the image chain stops shrinking, which
/// happens by `k = dim R`. `stage = None` runs to stabilization.
pub fn limit_perfection(r: &FiniteAlgebra, stage: Option<usize>) -> Result<LimitPerfection> {
    if r.precision() != 1 {
        return Err(Error::Unsupported("limit perfection needs an F_p-algebra; reduce modulo p first".into()));
    }
    let p = r.p();
    let limit = stage.unwrap_or(usize::MAX);
    let mut span: Vec<Vec<u64>> = (0..r.dim()).map(|i| r.basis_vector(i)).collect();
    let mut dimensions = vec![r.dim()];
    let mut stabilization_index = None;
    let mut k = 0;
    while k < limit {
        let image = linalg::span_basis(&span.iter().map(|v| r.frobenius(v)).collect::<Vec<_>>(), p);
        if image.len() == span.len() {
            stabilization_index = Some(k);
            break;
        }
        span = image;
        k += 1;
        dimensions.push(span.len());
    }
    let (algebra, embedding) = r.subalgebra(&span, None)?;
    Ok(LimitPerfection {
        algebra,
        embedding,
        exact: stabilization_index.is_some(),
        stabilization_index,
        stage: k,
        dimensions,
    })
}
