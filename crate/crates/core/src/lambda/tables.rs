//! Memo tables for the universal polynomials, kept in memory and optionally on disk
//! as `P_mult_<j>.json` / `P_comp_<j>_<i>.json`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::universal::{
    comp_vars, compute_comp_polynomial, compute_mult_polynomial, mult_vars, LambdaLimits, UniversalCompPoly,
    UniversalMultPoly,
};
use crate::error::Result;
use crate::poly::{MultiPoly, PolyJson};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Mult(usize),
    Comp(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMeta {
    pub j: usize,
    pub i: Option<usize>,
    pub format_version: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub meta: TableMeta,
    #[serde(flatten)]
    pub poly: PolyJson,
}

/// A cache of universal polynomials. Concurrent requests for the same key may both
/// compute it; disk entries are written to a temporary file and renamed into place,
/// so readers never see a partial file.
#[derive(Debug)]
pub struct LambdaTables {
    dir: Option<PathBuf>,
    limits: LambdaLimits,
    memo: Mutex<HashMap<Key, MultiPoly>>,
}

impl LambdaTables {
    pub fn in_memory() -> Self {
        LambdaTables { dir: None, limits: LambdaLimits::default(), memo: Mutex::default() }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        LambdaTables { dir: Some(dir.into()), ..Self::in_memory() }
    }

    /// Disk-backed under `$LAMBDAFORGE_TABLE_DIR/lambda_tables` when the variable is set,
    /// memory-only otherwise.
    pub fn from_env() -> Self {
        match crate::cache::root_from_env() {
            Some(root) => Self::with_dir(root.join("lambda_tables")),
            None => Self::in_memory(),
        }
    }

    /// Process-wide instance configured from the environment on first use.
    pub fn global() -> &'static LambdaTables {
        static GLOBAL: OnceLock<LambdaTables> = OnceLock::new();
        GLOBAL.get_or_init(Self::from_env)
    }

    pub fn with_limits(mut self, limits: LambdaLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> &LambdaLimits {
        &self.limits
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn mult(&self, j: usize) -> Result<UniversalMultPoly> {
        self.limits.check_mult(j)?;
        let poly = self.lookup(Key::Mult(j), || Ok(compute_mult_polynomial(j, &self.limits)?.poly))?;
        Ok(UniversalMultPoly { j, poly })
    }

    pub fn comp(&self, j: usize, i: usize) -> Result<UniversalCompPoly> {
        self.limits.check_comp(j, i)?;
        let poly = self.lookup(Key::Comp(j, i), || Ok(compute_comp_polynomial(j, i, &self.limits)?.poly))?;
        Ok(UniversalCompPoly { j, i, poly })
    }

    fn lookup(&self, key: Key, compute: impl FnOnce() -> Result<MultiPoly>) -> Result<MultiPoly> {
        if let Some(p) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(p.clone());
        }
        let poly = match self.read_disk(key) {
            Some(p) => p,
            None => {
                let p = compute()?;
                self.write_disk(key, &p)?;
                p
            }
        };
        self.memo.lock().expect("memo lock").entry(key).or_insert_with(|| poly.clone());
        Ok(poly)
    }

    fn file_name(key: Key) -> String {
        match key {
            Key::Mult(j) => format!("P_mult_{j}.json"),
            Key::Comp(j, i) => format!("P_comp_{j}_{i}.json"),
        }
    }

    fn meta(key: Key) -> TableMeta {
        match key {
            Key::Mult(j) => TableMeta { j, i: None, format_version: FORMAT_VERSION },
            Key::Comp(j, i) => TableMeta { j, i: Some(i), format_version: FORMAT_VERSION },
        }
    }

    fn expected_vars(key: Key) -> Vec<String> {
        match key {
            Key::Mult(j) => mult_vars(j),
            Key::Comp(j, i) => comp_vars(j, i),
        }
    }

    /// Unreadable, stale or mismatched files count as misses and get recomputed.
    fn read_disk(&self, key: Key) -> Option<MultiPoly> {
        let path = self.dir.as_ref()?.join(Self::file_name(key));
        let text = std::fs::read_to_string(path).ok()?;
        let file: TableFile = serde_json::from_str(&text).ok()?;
        if file.meta != Self::meta(key) || file.poly.vars != Self::expected_vars(key) {
            return None;
        }
        MultiPoly::try_from(&file.poly).ok()
    }

    fn write_disk(&self, key: Key, poly: &MultiPoly) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let file = TableFile { meta: Self::meta(key), poly: PolyJson::from(poly) };
        crate::cache::write_atomic(&dir.join(Self::file_name(key)), &serde_json::to_string(&file)?)
    }
}

/// `P_j` from the process-wide table.
pub fn mult_polynomial(j: usize) -> Result<UniversalMultPoly> {
    LambdaTables::global().mult(j)
}

/// `P_{j,i}` from the process-wide table.
pub fn comp_polynomial(j: usize, i: usize) -> Result<UniversalCompPoly> {
    LambdaTables::global().comp(j, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let tables = LambdaTables::with_dir(dir.path());
        let p = tables.mult(2).unwrap();
        let path = dir.path().join("P_mult_2.json");
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(r#"{"meta":{"j":2,"i":null,"format_version":1},"ring""#));
        let fresh = LambdaTables::with_dir(dir.path());
        assert_eq!(fresh.read_disk(Key::Mult(2)).unwrap(), p.poly);

        tables.comp(2, 2).unwrap();
        assert!(dir.path().join("P_comp_2_2.json").exists());
    }

    #[test]
    fn corrupt_files_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("P_mult_1.json"), "{ not json").unwrap();
        let tables = LambdaTables::with_dir(dir.path());
        assert_eq!(tables.mult(1).unwrap().poly.to_string(), "e1*f1");
        let again = LambdaTables::with_dir(dir.path());
        assert!(again.read_disk(Key::Mult(1)).is_some());
    }
}
