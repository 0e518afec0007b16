//! Homotopy groups of the spherical lift of a perfect ring, as `π_i S ⊗ R` on a window.

use serde::Serialize;

use crate::error::{Error, Result};

use super::desc::{check_perfect, PerfectRingDesc};
use super::stems::StemsTable;

/// One cyclic factor of `π_i S` tensored with the window: `R/q`, or `R` itself in degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopySummand {
    /// `None` for the free summand in degree 0.
    pub modulus: Option<u64>,
    pub label: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyGroup {
    pub degree: usize,
    pub ring: String,
    pub rank: usize,
    /// Invariant factors of the windowed group, one entry per basis element and stem factor.
    pub invariant_factors: Vec<u64>,
    pub summands: Vec<HomotopySummand>,
}

impl HomotopyGroup {
    pub fn render(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(" + ")
    }
}

/// `π_i S_R ≅ π_i S ⊗ R` on the represented window. The ring must pass the perfectness
/// check at every prime occurring in the table.
pub fn spherical_homotopy(desc: &PerfectRingDesc, degree: usize, stems: &StemsTable) -> Result<HomotopyGroup> {
    if degree > stems.max_degree() {
        return Err(Error::InvalidArgument(format!(
            "degree {degree} is beyond the stems table (max {})",
            stems.max_degree()
        )));
    }
    let report = check_perfect(desc, &stems.primes())?;
    if let Some(v) = report.verdicts.iter().find(|v| !v.pass) {
        return Err(Error::Rejected(format!(
            "{} is not perfect at p = {}: {}",
            report.ring,
            v.p,
            v.witness.as_deref().unwrap_or("Frobenius is not bijective")
        )));
    }
    let basis = report.basis;
    if degree == 0 {
        return Ok(HomotopyGroup {
            degree,
            ring: report.ring,
            rank: basis.len(),
            invariant_factors: Vec::new(),
            summands: vec![HomotopySummand { modulus: None, label: "R".into(), basis }],
        });
    }
    let factors = stems.factors(degree)?;
    let summands: Vec<HomotopySummand> = factors
        .iter()
        .map(|&q| HomotopySummand {
            modulus: Some(q),
            label: format!("R/{q}"),
            basis: basis.iter().map(|b| format!("{b} mod {q}")).collect(),
        })
        .collect();
    let mut invariant_factors: Vec<u64> = factors.iter().flat_map(|&q| std::iter::repeat_n(q, basis.len())).collect();
    invariant_factors.sort_unstable();
    Ok(HomotopyGroup { degree, ring: report.ring, rank: 0, invariant_factors, summands })
}
