//! Finite p-Boolean rings (`x^p = x`) stored as `F_p`-valued functions on their
//! spectrum, with Stone duality and the change of prime.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::finite_algebra::{AlgebraMap, FiniteAlgebra};
use crate::linalg;
use crate::poly::{CoefRing, MultiPoly};
use crate::ring::CommRing;

/// Largest spectrum built by [`free_pboolean`] and [`from_presentation`].
pub const MAX_POINTS: u64 = 100_000;

/// `F_p^S` with pointwise operations; elements are value vectors indexed like `points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePBooleanRing {
    p: u64,
    points: Vec<String>,
    generators: Vec<(String, Vec<u64>)>,
}

impl FinitePBooleanRing {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// Named generators, when the ring came from a presentation.
    pub fn generators(&self) -> &[(String, Vec<u64>)] {
        &self.generators
    }

    /// Dimension over `F_p`, the number of points.
    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// `p^|S|`.
    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.points.len() as u32)
    }

    /// The indicator function of point `i`.
    pub fn indicator(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// The same ring as structure constants on the indicator basis `[s]`.
    pub fn to_algebra(&self) -> FiniteAlgebra {
        let names = self.points.iter().map(|s| format!("[{s}]")).collect();
        let d = self.dim();
        let table =
            (0..d).map(|i| (0..d).map(|j| if i == j { self.indicator(i) } else { vec![0; d] }).collect()).collect();
        FiniteAlgebra::new(self.p, 1, names, table, vec![1; d]).expect("product algebra is valid")
    }

    /// All elements; refuses more than 2^20.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        self.to_algebra().elements()
    }

    pub fn to_json(&self) -> PBooleanJson {
        PBooleanJson { p: self.p, points: self.points.clone() }
    }
}

/// `{"p": p, "points": ["label", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBooleanJson {
    pub p: u64,
    pub points: Vec<String>,
}

impl TryFrom<&PBooleanJson> for FinitePBooleanRing {
    type Error = Error;

    fn try_from(j: &PBooleanJson) -> Result<Self> {
        continuous_functions(&j.points, j.p)
    }
}

impl CommRing for FinitePBooleanRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    fn one(&self) -> Vec<u64> {
        vec![1; self.dim()]
    }

    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let c = n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits");
        vec![c; self.dim()]
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x * y % self.p).collect()
    }

    fn div_int_exact(&self, a: &Vec<u64>, d: &BigInt) -> Option<Vec<u64>> {
        let inv = crate::arith::mod_inverse(d, &BigInt::from(self.p))?.to_u64()?;
        Some(a.iter().map(|x| x * inv % self.p).collect())
    }

    fn is_torsion_free(&self) -> bool {
        false
    }

    /// Values in point order, e.g. `(0, 1, 1)`.
    fn render(&self, a: &Vec<u64>) -> String {
        let vals: Vec<String> = a.iter().map(u64::to_string).collect();
        format!("({})", vals.join(", "))
    }

    fn char_p(&self) -> Option<u64> {
        Some(self.p)
    }
}

fn check_limits(p: u64, n: usize) -> Result<u64> {
    u32::try_from(n)
        .ok()
        .and_then(|n| p.checked_pow(n))
        .filter(|&c| c <= MAX_POINTS)
        .ok_or_else(|| Error::ResourceLimit(format!("{p}^{n} points exceeds the limit {MAX_POINTS}")))
}

fn tuple_label(a: &[u64]) -> String {
    let vals: Vec<String> = a.iter().map(u64::to_string).collect();
    format!("({})", vals.join(","))
}

/// `(k mod p, k/p mod p, …)` with `n` digits.
fn digits(mut k: u64, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = k % p;
            k /= p;
            d
        })
        .collect()
}

/// `C(S, F_p)`.
pub fn continuous_functions<S: AsRef<str>>(points: &[S], p: u64) -> Result<FinitePBooleanRing> {
    require_prime(p)?;
    let points: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = points.iter().find(|s| !seen.insert(s.as_str())) {
        return Err(Error::InvalidArgument(format!("duplicate point `{dup}`")));
    }
    Ok(FinitePBooleanRing { p, points, generators: Vec::new() })
}

/// The free p-Boolean ring on `x1..xn`: functions on `F_p^n`, with `xi` the i-th
/// coordinate function. Points are labelled `(a1,...,an)` in counting order.
pub fn free_pboolean(p: u64, n: usize) -> Result<FinitePBooleanRing> {
    from_presentation(p, &crate::poly::indexed_names("x", n), &[])
}

/// The quotient of the free p-Boolean ring on `generators` by `relations`, solved to
/// the set of points of `F_p^n` where every relation vanishes.
pub fn from_presentation<S: AsRef<str>>(
    p: u64,
    generators: &[S],
    relations: &[MultiPoly],
) -> Result<FinitePBooleanRing> {
    require_prime(p)?;
    let n = generators.len();
    let count = check_limits(p, n)?;
    let names: Vec<String> = generators.iter().map(|g| g.as_ref().to_string()).collect();
    let field = CoefRing::PrimeField(p);
    let rels = relations
        .iter()
        .map(|r| {
            if let Some(v) = r.used_vars().into_iter().find(|v| !names.contains(v)) {
                return Err(Error::MissingVariable(v));
            }
            Ok((
                r.change_ring(field.clone())?,
                r.vars().iter().map(|v| names.iter().position(|g| g == v)).collect::<Vec<_>>(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut points = Vec::new();
    let mut coords: Vec<Vec<u64>> = vec![Vec::new(); n];
    for k in 0..count {
        let a = digits(k, p, n);
        let holds = rels.iter().try_fold(true, |ok, (r, idx)| -> Result<bool> {
            if !ok {
                return Ok(false);
            }
            let vals: Vec<_> = idx.iter().map(|i| field.from_int(&BigInt::from(i.map_or(0, |i| a[i])))).collect();
            Ok(field.is_zero(&r.eval_in(&field, &vals)?))
        })?;
        if holds {
            points.push(tuple_label(&a));
            for (i, c) in a.iter().enumerate() {
                coords[i].push(*c);
            }
        }
    }
    Ok(FinitePBooleanRing { p, points, generators: names.into_iter().zip(coords).collect() })
}

/// A point of the spectrum: a ring map to `F_p`, given by its values on the basis.
pub type Character = Vec<u64>;

/// `Hom(A, F_p)` for a finite p-Boolean algebra, found by splitting `1` into primitive
/// idempotents with the spectral projectors `1 - (b - c)^{p-1}`. Rejects algebras with
/// an element `x^p ≠ x`, naming it.
pub fn spec_of_algebra(a: &FiniteAlgebra) -> Result<Vec<Character>> {
    if a.precision() != 1 {
        return Err(Error::Unsupported("p-Boolean rings are F_p-algebras".into()));
    }
    let p = a.p();
    for i in 0..a.dim() {
        let b = a.basis_vector(i);
        if a.frobenius(&b) != b {
            return Err(Error::Rejected(format!("not p-Boolean: {}^{p} != {}", a.basis()[i], a.basis()[i])));
        }
    }
    let mut idempotents = vec![a.one()];
    for i in 0..a.dim() {
        let b = a.basis_vector(i);
        let mut refined = Vec::new();
        for e in &idempotents {
            for c in 0..p {
                let shifted = a.sub(&b, &a.from_int(&BigInt::from(c)));
                let proj = a.sub(&a.one(), &a.pow(&shifted, p - 1));
                let piece = a.mul(e, &proj);
                if !a.is_zero(&piece) {
                    refined.push(piece);
                }
            }
        }
        idempotents = refined;
    }
    // on a primitive idempotent e, every x acts as the scalar χ(x): x·e = χ(x)·e
    let chars = idempotents
        .iter()
        .map(|e| {
            let k = e.iter().position(|&c| c != 0).expect("nonzero idempotent");
            let inv = linalg::inv_mod(e[k], p);
            (0..a.dim()).map(|i| a.mul(&a.basis_vector(i), e)[k] * inv % p).collect()
        })
        .collect::<Vec<Character>>();
    Ok(chars)
}

/// `Spec R` of a p-Boolean ring in point-set form: the evaluation characters, recomputed
/// from the algebra structure and matched back to point labels.
pub fn spec(r: &FinitePBooleanRing) -> Result<Vec<String>> {
    let chars = spec_of_algebra(&r.to_algebra())?;
    let mut labels: Vec<String> = chars
        .iter()
        .map(|chi| {
            let i = chi.iter().position(|&v| v == 1).expect("character of an indicator basis");
            r.points[i].clone()
        })
        .collect();
    let order: HashMap<&String, usize> = r.points.iter().enumerate().map(|(i, s)| (s, i)).collect();
    labels.sort_by_key(|s| order[s]);
    Ok(labels)
}

/// The canonical map `A → C(Spec A, F_p)`, `x ↦ (χ(x))_χ`, as images of basis vectors,
/// together with the target ring. Labels are `chi1, chi2, …`.
pub fn stone_map(a: &FiniteAlgebra) -> Result<(FinitePBooleanRing, AlgebraMap)> {
    let chars = spec_of_algebra(a)?;
    let labels = crate::poly::indexed_names("chi", chars.len());
    let target = continuous_functions(&labels, a.p())?;
    let images = (0..a.dim()).map(|i| chars.iter().map(|chi| chi[i]).collect()).collect();
    Ok((target, AlgebraMap { images }))
}

/// Whether `A → C(Spec A, F_p)` is a ring isomorphism (checked on basis products and by rank).
pub fn stone_round_trip(a: &FiniteAlgebra) -> Result<bool> {
    let (target, map) = stone_map(a)?;
    let alg = target.to_algebra();
    Ok(target.dim() == a.dim() && map.is_homomorphism(a, &alg) && linalg::rank(&map.images, a.p()) == a.dim())
}

/// The same finite set, functions now valued in `F_p`.
pub fn transport(r: &FinitePBooleanRing, p: u64) -> Result<FinitePBooleanRing> {
    continuous_functions(&spec(r)?, p)
}

/// A ring map `source → target`, stored contravariantly: `point_map[t]` is the point of
/// `Spec source` that point `t` of `Spec target` goes to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBooleanHom {
    pub point_map: Vec<usize>,
}

impl PBooleanHom {
    pub fn identity(r: &FinitePBooleanRing) -> Self {
        PBooleanHom { point_map: (0..r.dim()).collect() }
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.point_map.iter().map(|&s| x[s]).collect()
    }

    /// `other ∘ self` (first `self`, then `other`).
    pub fn then(&self, other: &PBooleanHom) -> PBooleanHom {
        PBooleanHom { point_map: other.point_map.iter().map(|&t| self.point_map[t]).collect() }
    }

    pub fn validate(&self, source: &FinitePBooleanRing, target: &FinitePBooleanRing) -> Result<()> {
        if self.point_map.len() != target.dim() || self.point_map.iter().any(|&s| s >= source.dim()) {
            return Err(Error::InvalidArgument("point map does not match the spectra".into()));
        }
        Ok(())
    }

    /// The transported map between the same point sets at another prime; the point map
    /// is unchanged, which is the functoriality of `C(Spec -, F_p)`.
    pub fn transport(&self) -> PBooleanHom {
        self.clone()
    }

    /// Checks additivity and multiplicativity on all pairs of indicators and the unit.
    pub fn is_ring_map(&self, source: &FinitePBooleanRing, target: &FinitePBooleanRing) -> bool {
        if self.apply(&source.one()) != target.one() {
            return false;
        }
        (0..source.dim()).all(|i| {
            (0..source.dim()).all(|j| {
                let (a, b) = (source.indicator(i), source.indicator(j));
                self.apply(&source.mul(&a, &b)) == target.mul(&self.apply(&a), &self.apply(&b))
                    && self.apply(&source.add(&a, &b)) == target.add(&self.apply(&a), &self.apply(&b))
            })
        })
    }
}

/// Comparison of the free p-Boolean ring on `n` generators with two candidate models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupAlgebraReport {
    pub p: u64,
    pub n: usize,
    /// `F_p[(Z/p)^n]` with basis `g^a`.
    pub group_algebra_isomorphic: bool,
    /// An element `y` of the group algebra with `y^p != y`, which no p-Boolean ring has.
    pub group_algebra_witness: Option<String>,
    /// `F_p`-valued functions on `(Z/p)^n`.
    pub function_algebra_isomorphic: bool,
    /// Images of the free generators `x_i` in the function algebra.
    pub generator_images: BTreeMap<String, String>,
}

/// `F_p[(Z/p)^n]` on the basis of group elements `g1^a1 ⋯ gn^an`.
pub fn group_algebra(p: u64, n: usize) -> Result<FiniteAlgebra> {
    let count = check_limits(p, n)?;
    if count > 729 {
        return Err(Error::ResourceLimit("group algebras are built up to 729 elements in the group".into()));
    }
    let names = (0..count)
        .map(|k| {
            let a = digits(k, p, n);
            let parts: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("g{}", i + 1) } else { format!("g{}^{e}", i + 1) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let index = |a: &[u64]| a.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize;
    let table = (0..count)
        .map(|i| {
            (0..count)
                .map(|j| {
                    let (a, b) = (digits(i, p, n), digits(j, p, n));
                    let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect();
                    let mut v = vec![0; count as usize];
                    v[index(&sum)] = 1;
                    v
                })
                .collect()
        })
        .collect();
    let mut unit = vec![0; count as usize];
    unit[0] = 1;
    FiniteAlgebra::new(p, 1, names, table, unit)
}

/// Tests both readings of "the free p-Boolean ring is the group algebra of `⊕_S F_p`".
/// An isomorphism preserves `x^p = x`, so the group algebra (where `(g - 1)^p = 0`) is
/// ruled out by a single witness; the function algebra on the group is matched to
/// the free ring by sending `x_i` to the i-th coordinate function.
pub fn group_algebra_model(p: u64, n: usize) -> Result<GroupAlgebraReport> {
    let free = free_pboolean(p, n)?;
    let ga = group_algebra(p, n)?;
    let mut witness = None;
    for i in 0..ga.dim() {
        let y = ga.sub(&ga.basis_vector(i), &ga.one());
        if ga.frobenius(&y) != y {
            witness = Some(format!("{} - 1", ga.basis()[i]));
            break;
        }
    }
    // functions on (Z/p)^n, points in the same counting order as the free ring
    let group_points: Vec<String> = (0..check_limits(p, n)?).map(|k| tuple_label(&digits(k, p, n))).collect();
    let functions = continuous_functions(&group_points, p)?;
    let map = PBooleanHom { point_map: (0..free.dim()).collect() };
    let mut images = BTreeMap::new();
    let mut coordinate_ok = true;
    for (i, (name, values)) in free.generators().iter().enumerate() {
        let image = map.apply(values);
        let coordinate: Vec<u64> = (0..functions.dim() as u64).map(|k| digits(k, p, n)[i]).collect();
        coordinate_ok &= image == coordinate;
        images.insert(name.clone(), format!("coordinate {} of (Z/{p})^{n}", i + 1));
    }
    Ok(GroupAlgebraReport {
        p,
        n,
        group_algebra_isomorphic: witness.is_none(),
        group_algebra_witness: witness,
        function_algebra_isomorphic: coordinate_ok && map.is_ring_map(&free, &functions),
        generator_images: images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::{check_tables, find_isomorphism};

    #[test]
    fn free_rings() {
        let r = free_pboolean(2, 2).unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.order(), BigInt::from(16));
        assert_eq!(r.points()[1], "(1,0)");
        let trivial = free_pboolean(5, 0).unwrap();
        assert_eq!(trivial.points(), ["()"]);
    }

    #[test]
    fn free_on_one_generator_matches_quotient() {
        let r = free_pboolean(3, 1).unwrap().to_algebra();
        let q = FiniteAlgebra::truncated_polynomial(3, 1, &[0, -1, 0, 1], "x").unwrap();
        let iso = find_isomorphism(&q, &r, 1 << 20).unwrap().unwrap();
        assert_eq!(check_tables(&q, &r, &iso).unwrap(), None);
    }

    #[test]
    fn presentations() {
        let x = MultiPoly::var(CoefRing::Integers, &["x"], "x").unwrap();
        let one = MultiPoly::int(CoefRing::Integers, &["x"], 1).unwrap();
        let r = from_presentation(2, &["x"], &[x.sub(&one).unwrap()]).unwrap();
        assert_eq!(r.points(), ["(1)"]);
        let idem = x.pow(2).sub(&x).unwrap();
        let r = from_presentation(3, &["x"], &[idem]).unwrap();
        assert_eq!(r.points(), ["(0)", "(1)"]);
    }

    #[test]
    fn stone_duality() {
        let q = FiniteAlgebra::truncated_polynomial(3, 1, &[0, -1, 0, 1], "x").unwrap();
        assert_eq!(spec_of_algebra(&q).unwrap().len(), 3);
        assert!(stone_round_trip(&q).unwrap());
        let r = free_pboolean(2, 3).unwrap();
        assert_eq!(spec(&r).unwrap(), r.points());
        let dual = FiniteAlgebra::truncated_polynomial(2, 1, &[0, 0, 1], "t").unwrap();
        assert!(matches!(spec_of_algebra(&dual), Err(Error::Rejected(_))));
    }

    #[test]
    fn transport_between_primes() {
        let r = continuous_functions(&["a", "b"], 2).unwrap();
        let t = transport(&r, 3).unwrap();
        assert_eq!((t.p(), t.dim()), (3, 2));
        assert_eq!(transport(&t, 2).unwrap(), r);
    }

    #[test]
    fn group_algebra_is_not_the_free_ring() {
        let rep = group_algebra_model(2, 1).unwrap();
        assert!(!rep.group_algebra_isomorphic);
        assert_eq!(rep.group_algebra_witness.as_deref(), Some("g1 - 1"));
        assert!(rep.function_algebra_isomorphic);
        let ga = group_algebra(2, 1).unwrap();
        let free = free_pboolean(2, 1).unwrap().to_algebra();
        assert_eq!(find_isomorphism(&ga, &free, 1 << 20).unwrap(), None);
        let trivial = group_algebra_model(3, 0).unwrap();
        assert!(trivial.group_algebra_isomorphic && trivial.function_algebra_isomorphic);
    }
}
