//! The integral Witt structure polynomials `S_i(x, y)` (sum) and `M_i(x, y)` (product),
//! computed symbolically over `Z` and memoized in `S_<p>_<n>.json` / `M_<p>_<n>.json`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::ptypical::{ghost_components, ghost_descend};
use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::poly::{CoefRing, MultiPoly, PolyEvalRing, PolyJson};
use crate::ring::CommRing;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureKind {
    Sum,
    Product,
}

impl StructureKind {
    fn letter(self) -> char {
        match self {
            StructureKind::Sum => 'S',
            StructureKind::Product => 'M',
        }
    }
}

/// Coordinate variables `x0..x{n-1}, y0..y{n-1}`.
pub fn structure_vars(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    v.extend((0..n).map(|i| format!("y{i}")));
    v
}

/// Symbolic computation is refused when the top ghost degree `p^(n-1)` exceeds this.
pub const DEFAULT_MAX_GHOST_DEGREE: u64 = 16;

/// Computes the structure polynomials without caching.
pub fn compute_structure_polynomials(
    p: u64,
    n: usize,
    kind: StructureKind,
    max_ghost_degree: u64,
) -> Result<Vec<MultiPoly>> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("length must be at least 1".into()));
    }
    let top = (p as u128).checked_pow(n as u32 - 1).unwrap_or(u128::MAX);
    if top > u128::from(max_ghost_degree) {
        return Err(Error::ResourceLimit(format!(
            "symbolic Witt polynomials need p^(n-1) <= {max_ghost_degree}, got p={p}, n={n}"
        )));
    }
    let vars = structure_vars(n);
    let ring = PolyEvalRing::new(CoefRing::Integers, &vars)?;
    let x: Vec<MultiPoly> = (0..n).map(|i| ring.var(&format!("x{i}"))).collect::<Result<_>>()?;
    let y: Vec<MultiPoly> = (0..n).map(|i| ring.var(&format!("y{i}"))).collect::<Result<_>>()?;
    let gx = ghost_components(&ring, p, &x);
    let gy = ghost_components(&ring, p, &y);
    let g: Vec<MultiPoly> = gx
        .iter()
        .zip(&gy)
        .map(|(a, b)| match kind {
            StructureKind::Sum => ring.add(a, b),
            StructureKind::Product => ring.mul(a, b),
        })
        .collect();
    ghost_descend(&ring, p, &g).ok_or_else(|| Error::Internal("structure polynomial is not integral".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittTableMeta {
    pub p: u64,
    pub n: usize,
    pub kind: StructureKind,
    pub format_version: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittTableFile {
    pub meta: WittTableMeta,
    pub polys: Vec<PolyJson>,
}

type Key = (u64, usize, StructureKind);

/// Memo of structure polynomials; same write discipline as the λ tables.
#[derive(Debug)]
pub struct WittTables {
    dir: Option<PathBuf>,
    max_ghost_degree: u64,
    memo: Mutex<HashMap<Key, Vec<MultiPoly>>>,
}

impl WittTables {
    pub fn in_memory() -> Self {
        WittTables { dir: None, max_ghost_degree: DEFAULT_MAX_GHOST_DEGREE, memo: Mutex::default() }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        WittTables { dir: Some(dir.into()), ..Self::in_memory() }
    }

    pub fn from_env() -> Self {
        match crate::cache::root_from_env() {
            Some(root) => Self::with_dir(root.join("witt_tables")),
            None => Self::in_memory(),
        }
    }

    pub fn global() -> &'static WittTables {
        static GLOBAL: OnceLock<WittTables> = OnceLock::new();
        GLOBAL.get_or_init(Self::from_env)
    }

    pub fn with_max_ghost_degree(mut self, d: u64) -> Self {
        self.max_ghost_degree = d;
        self
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get(&self, p: u64, n: usize, kind: StructureKind) -> Result<Vec<MultiPoly>> {
        let key = (p, n, kind);
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let polys = match self.read_disk(key) {
            Some(v) => v,
            None => {
                let v = compute_structure_polynomials(p, n, kind, self.max_ghost_degree)?;
                self.write_disk(key, &v)?;
                v
            }
        };
        self.memo.lock().expect("memo lock").entry(key).or_insert_with(|| polys.clone());
        Ok(polys)
    }

    fn file_name((p, n, kind): Key) -> String {
        format!("{}_{p}_{n}.json", kind.letter())
    }

    fn read_disk(&self, key: Key) -> Option<Vec<MultiPoly>> {
        let path = self.dir.as_ref()?.join(Self::file_name(key));
        let file: WittTableFile = serde_json::from_str(&std::fs::read_to_string(path).ok()?).ok()?;
        let (p, n, kind) = key;
        let expected = WittTableMeta { p, n, kind, format_version: FORMAT_VERSION };
        if file.meta != expected || file.polys.len() != n {
            return None;
        }
        let vars = structure_vars(n);
        file.polys.iter().map(|j| if j.vars == vars { MultiPoly::try_from(j).ok() } else { None }).collect()
    }

    fn write_disk(&self, key: Key, polys: &[MultiPoly]) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let (p, n, kind) = key;
        let file = WittTableFile {
            meta: WittTableMeta { p, n, kind, format_version: FORMAT_VERSION },
            polys: polys.iter().map(PolyJson::from).collect(),
        };
        crate::cache::write_atomic(&dir.join(Self::file_name(key)), &serde_json::to_string(&file)?)
    }
}

/// Evaluates structure polynomials at `(u, v)` in any ring: the coefficients are integers.
pub fn evaluate_structure<R: CommRing>(
    polys: &[MultiPoly],
    ring: &R,
    u: &[R::Elem],
    v: &[R::Elem],
) -> Result<Vec<R::Elem>> {
    if u.len() != polys.len() || v.len() != polys.len() {
        return Err(Error::InvalidArgument("Witt vector length differs from the table".into()));
    }
    let mut values: Vec<R::Elem> = u.to_vec();
    values.extend(v.iter().cloned());
    let vars = structure_vars(polys.len());
    let named: std::collections::BTreeMap<String, R::Elem> = vars.into_iter().zip(values).collect();
    polys.iter().map(|f| f.eval_named(ring, &named)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_polynomials() {
        let s = compute_structure_polynomials(2, 2, StructureKind::Sum, 16).unwrap();
        assert_eq!(s[0].trim_vars().to_string(), "x0 + y0");
        assert_eq!(s[1].trim_vars().to_string(), "-x0*y0 + x1 + y1");
        let m = compute_structure_polynomials(3, 2, StructureKind::Product, 16).unwrap();
        assert_eq!(m[0].trim_vars().to_string(), "x0*y0");
        assert_eq!(m[1].trim_vars().to_string(), "x0^3*y1 + x1*y0^3 + 3*x1*y1");
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            compute_structure_polynomials(5, 4, StructureKind::Product, 16),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn disk_cache() {
        let dir = tempfile::tempdir().unwrap();
        let t = WittTables::with_dir(dir.path());
        let s = t.get(2, 3, StructureKind::Sum).unwrap();
        assert!(dir.path().join("S_2_3.json").exists());
        let again = WittTables::with_dir(dir.path());
        assert_eq!(again.read_disk((2, 3, StructureKind::Sum)).unwrap(), s);
    }
}
