//! Tables of stable stems `π_i S`, read as data and validated only structurally.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../data/stems.json");

/// `{"max_degree": 20, "groups": {"1": ["2"], "3": ["8", "3"], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemsFile {
    pub max_degree: usize,
    pub groups: BTreeMap<String, Vec<String>>,
}

/// Finite abelian groups `π_i S` for `1 <= i <= max_degree` as lists of prime-power
/// invariant factors; `π_0 S = Z` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemsTable {
    max_degree: usize,
    groups: BTreeMap<usize, Vec<u64>>,
}

impl StemsTable {
    /// The table shipped with the crate (degrees 1 to 20).
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled stems table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StemsFile = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    /// Every degree `1..=max_degree` present, nothing else, every factor a prime power `> 1`.
    pub fn from_file(file: &StemsFile) -> Result<Self> {
        let mut groups = BTreeMap::new();
        for (k, factors) in &file.groups {
            let i: usize = k.trim().parse().map_err(|_| Error::Json(format!("degree `{k}` is not a number")))?;
            if i == 0 || i > file.max_degree {
                return Err(Error::Json(format!("degree {i} outside 1..={}", file.max_degree)));
            }
            let parsed = factors
                .iter()
                .map(|f| {
                    f.trim()
                        .parse::<u64>()
                        .ok()
                        .filter(|&q| prime_power(q).is_some())
                        .ok_or_else(|| Error::Json(format!("π_{i}: `{f}` is not a prime power > 1")))
                })
                .collect::<Result<Vec<_>>>()?;
            groups.insert(i, parsed);
        }
        if let Some(missing) = (1..=file.max_degree).find(|i| !groups.contains_key(i)) {
            return Err(Error::Json(format!("stems table has no entry for degree {missing}")));
        }
        Ok(StemsTable { max_degree: file.max_degree, groups })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Invariant factors of `π_i S` for `i >= 1`.
    pub fn factors(&self, i: usize) -> Result<&[u64]> {
        self.groups.get(&i).map(Vec::as_slice).ok_or_else(|| {
            Error::InvalidArgument(format!("degree {i} is outside the stems table (1..={})", self.max_degree))
        })
    }

    /// Primes dividing some listed group.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.groups.values().flatten().map(|&q| prime_power(q).expect("validated").0).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table() {
        let t = StemsTable::bundled();
        assert_eq!(t.max_degree(), 20);
        assert_eq!(t.factors(3).unwrap(), [8, 3]);
        assert!(t.factors(4).unwrap().is_empty());
        assert!(t.factors(21).is_err());
        assert_eq!(t.primes(), [2, 3, 5, 7, 11]);
    }

    #[test]
    fn structural_validation() {
        assert!(StemsTable::from_json(r#"{"max_degree": 1, "groups": {"1": ["6"]}}"#).is_err());
        assert!(StemsTable::from_json(r#"{"max_degree": 2, "groups": {"1": ["2"]}}"#).is_err());
        assert!(StemsTable::from_json(r#"{"max_degree": 1, "groups": {"1": ["1"]}}"#).is_err());
        assert!(StemsTable::from_json(r#"{"max_degree": 1, "groups": {"1": ["4"]}}"#).is_ok());
    }
}
