//! Length-`n` p-typical Witt vectors over any ring that has a torsion-free cover.
//!
//! Sums and products are computed by ghost lift-and-descend in the cover: lift the
//! coordinates, add or multiply ghost components, solve the triangular ghost equations
//! back for coordinates (the divisions are exact), and reduce.

use num_bigint::BigInt;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::ring::{CommRing, IntegralLift};

type CoverElem<R> = <<R as IntegralLift>::Cover as CommRing>::Elem;

/// The ring `W_n(R)` for a fixed prime `p`. Elements are coordinate vectors of length `n`.
#[derive(Debug, Clone)]
pub struct WittRing<R: IntegralLift> {
    base: R,
    p: u64,
    n: usize,
}

/// `w_i = Σ_{j ≤ i} p^j x_j^{p^{i-j}}`.
pub fn ghost_components<T: CommRing>(ring: &T, p: u64, x: &[T::Elem]) -> Vec<T::Elem> {
    ghost_components_with(ring, p, x, &|e: &T::Elem| e.clone())
}

/// [`ghost_components`] with `trunc` applied after every power.
fn ghost_components_with<T: CommRing>(
    ring: &T,
    p: u64,
    x: &[T::Elem],
    trunc: &dyn Fn(&T::Elem) -> T::Elem,
) -> Vec<T::Elem> {
    let mut powered: Vec<T::Elem> = x.to_vec();
    let mut out = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        // powered[j] holds x_j^{p^{i-j}}
        let mut acc = ring.zero();
        let mut pj = BigInt::from(1);
        for item in powered.iter().take(i + 1) {
            acc = ring.add(&acc, &ring.scale_int(item, &pj));
            pj *= p;
        }
        out.push(trunc(&acc));
        for item in powered.iter_mut().take(i + 1) {
            *item = trunc(&ring.pow(item, p));
        }
    }
    out
}

/// Inverse of [`ghost_components`] over a torsion-free ring; `None` if some division by
/// `p^i` is not exact (the ghost vector does not come from Witt coordinates).
pub fn ghost_descend<T: CommRing>(ring: &T, p: u64, w: &[T::Elem]) -> Option<Vec<T::Elem>> {
    ghost_descend_with(ring, p, w, &|e: &T::Elem| e.clone())
}

fn ghost_descend_with<T: CommRing>(
    ring: &T,
    p: u64,
    w: &[T::Elem],
    trunc: &dyn Fn(&T::Elem) -> T::Elem,
) -> Option<Vec<T::Elem>> {
    let mut x: Vec<T::Elem> = Vec::with_capacity(w.len());
    let mut powered: Vec<T::Elem> = Vec::with_capacity(w.len());
    let mut pi = BigInt::from(1);
    for (i, wi) in w.iter().enumerate() {
        let mut rest = wi.clone();
        let mut pj = BigInt::from(1);
        for item in powered.iter().take(i) {
            rest = ring.sub(&rest, &ring.scale_int(item, &pj));
            pj *= p;
        }
        let xi = ring.div_int_exact(&trunc(&rest), &pi)?;
        for item in powered.iter_mut() {
            *item = trunc(&ring.pow(item, p));
        }
        powered.push(trunc(&ring.pow(&xi, p)));
        x.push(xi);
        pi *= p;
    }
    Some(x)
}

impl<R: IntegralLift> WittRing<R> {
    pub fn new(base: R, p: u64, n: usize) -> Result<Self> {
        require_prime(p)?;
        if n == 0 {
            return Err(Error::InvalidArgument("Witt vectors need length n >= 1".into()));
        }
        Ok(WittRing { base, p, n })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same ring with a different length.
    pub fn with_len(&self, n: usize) -> Result<Self> {
        Self::new(self.base.clone(), self.p, n)
    }

    pub fn element(&self, coords: Vec<R::Elem>) -> Result<Vec<R::Elem>> {
        if coords.len() != self.n {
            return Err(Error::InvalidArgument(format!("expected {} Witt coordinates, got {}", self.n, coords.len())));
        }
        Ok(coords)
    }

    fn lift(&self, x: &[R::Elem]) -> Vec<CoverElem<R>> {
        x.iter().map(|c| self.base.lift(c)).collect()
    }

    /// Cover arithmetic only matters modulo `p^(n-1) · ker(reduce)`: a congruence mod `p^s`
    /// with `s >= 1` improves to `p^(s+1)` under `p`-th powers, which pays for each division.
    fn trunc(&self) -> impl Fn(&CoverElem<R>) -> CoverElem<R> + '_ {
        let m = BigInt::from(self.p).pow(self.n as u32 - 1);
        move |e| self.base.truncate_cover(e, &m)
    }

    fn ghosts_in_cover(&self, cover: &R::Cover, x: &[R::Elem]) -> Vec<CoverElem<R>> {
        ghost_components_with(cover, self.p, &self.lift(x), &self.trunc())
    }

    fn descend(&self, cover: &R::Cover, w: &[CoverElem<R>]) -> Result<Vec<R::Elem>> {
        let x = ghost_descend_with(cover, self.p, w, &self.trunc())
            .ok_or_else(|| Error::Internal("ghost descent produced a non-integral coordinate".into()))?;
        Ok(x.iter().map(|c| self.base.reduce(c)).collect())
    }

    /// Applies a ghost-componentwise binary operation.
    fn ghostwise(
        &self,
        u: &[R::Elem],
        v: &[R::Elem],
        op: impl Fn(&R::Cover, &CoverElem<R>, &CoverElem<R>) -> CoverElem<R>,
    ) -> Result<Vec<R::Elem>> {
        self.check(u)?;
        self.check(v)?;
        let cover = self.base.cover();
        let gu = self.ghosts_in_cover(&cover, u);
        let gv = self.ghosts_in_cover(&cover, v);
        let w: Vec<_> = gu.iter().zip(&gv).map(|(a, b)| op(&cover, a, b)).collect();
        self.descend(&cover, &w)
    }

    fn check(&self, x: &[R::Elem]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::InvalidArgument(format!("Witt vector of length {} used in W_{}", x.len(), self.n)));
        }
        Ok(())
    }

    pub fn try_add(&self, u: &[R::Elem], v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.ghostwise(u, v, |c, a, b| c.add(a, b))
    }

    pub fn try_mul(&self, u: &[R::Elem], v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.ghostwise(u, v, |c, a, b| c.mul(a, b))
    }

    pub fn try_neg(&self, u: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check(u)?;
        let cover = self.base.cover();
        let g: Vec<_> = self.ghosts_in_cover(&cover, u).iter().map(|a| cover.neg(a)).collect();
        self.descend(&cover, &g)
    }

    /// Ghost components, defined when the base ring is torsion-free.
    pub fn ghost(&self, u: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check(u)?;
        if !self.base.is_torsion_free() {
            return Err(Error::Unsupported("ghost components over a ring with torsion are not injective".into()));
        }
        Ok(ghost_components(&self.base, self.p, u))
    }

    /// `[a] = (a, 0, ..., 0)`.
    pub fn teichmuller(&self, a: &R::Elem) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n];
        v[0] = a.clone();
        v
    }

    /// `V(x_0, ..., x_{k-1}) = (0, x_0, ..., x_{L-2})` of length `out_len`, which may be at
    /// most one more than the input length.
    pub fn verschiebung(&self, u: &[R::Elem], out_len: usize) -> Result<Vec<R::Elem>> {
        if out_len == 0 || out_len > u.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "Verschiebung of a length-{} vector has length at most {}",
                u.len(),
                u.len() + 1
            )));
        }
        let mut v = vec![self.base.zero()];
        v.extend(u.iter().take(out_len - 1).cloned());
        Ok(v)
    }

    /// Frobenius through ghosts, `gh_i(F w) = gh_{i+1}(w)`; the result has length `n - 1`.
    pub fn frobenius_ghost(&self, u: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check(u)?;
        if self.n < 2 {
            return Err(Error::InvalidArgument(
                "Frobenius through ghosts shortens the vector; length 1 would give length 0".into(),
            ));
        }
        let cover = self.base.cover();
        let g = self.ghosts_in_cover(&cover, u);
        self.descend(&cover, &g[1..])
    }

    /// Frobenius of an `F_p`-algebra: the coordinatewise `p`-th power, length preserved.
    pub fn frobenius_char_p(&self, u: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check(u)?;
        if self.base.char_p() != Some(self.p) {
            return Err(Error::Unsupported(format!("coordinatewise Frobenius needs an F_{}-algebra", self.p)));
        }
        Ok(u.iter().map(|c| self.base.pow(c, self.p)).collect())
    }

    /// Coordinatewise form over `F_p`-algebras, ghost form (length `n - 1`) otherwise.
    pub fn frobenius(&self, u: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if self.base.char_p() == Some(self.p) {
            self.frobenius_char_p(u)
        } else {
            self.frobenius_ghost(u)
        }
    }

    /// `k · 1`.
    pub fn from_int_witt(&self, k: &BigInt) -> Vec<R::Elem> {
        let cover = self.base.cover();
        let g = vec![cover.from_int(k); self.n];
        self.descend(&cover, &g).expect("integers have integral Witt coordinates")
    }

    pub fn render(&self, u: &[R::Elem]) -> String {
        let parts: Vec<String> = u.iter().map(|c| self.base.render(c)).collect();
        format!("[{}]", parts.join(","))
    }
}

impl<R: IntegralLift> CommRing for WittRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n]
    }

    fn one(&self) -> Self::Elem {
        self.teichmuller(&self.base.one())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_int_witt(n)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.try_add(a, b).expect("Witt addition")
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.try_neg(a).expect("Witt negation")
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.try_mul(a, b).expect("Witt multiplication")
    }

    fn div_int_exact(&self, a: &Self::Elem, d: &BigInt) -> Option<Self::Elem> {
        // Division is only attempted through ghosts of a torsion-free base.
        if !self.base.is_torsion_free() {
            return None;
        }
        let g = ghost_components(&self.base, self.p, a);
        let q: Vec<R::Elem> = g.iter().map(|w| self.base.div_int_exact(w, d)).collect::<Option<_>>()?;
        let cover = self.base.cover();
        let lifted: Vec<_> = q.iter().map(|c| self.base.lift(c)).collect();
        self.descend(&cover, &lifted).ok()
    }

    fn is_torsion_free(&self) -> bool {
        self.base.is_torsion_free()
    }

    fn render(&self, a: &Self::Elem) -> String {
        WittRing::render(self, a)
    }

    fn char_p(&self) -> Option<u64> {
        // W_1(R) = R; longer Witt vectors over F_p have characteristic p^n.
        if self.n == 1 {
            self.base.char_p()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FiniteField;
    use crate::poly::{coef_int, CoefRing};

    fn z(v: &[i64]) -> Vec<crate::poly::Coef> {
        v.iter().map(|&n| coef_int(n)).collect()
    }

    #[test]
    fn one_one_plus_one_one() {
        let w = WittRing::new(CoefRing::Integers, 2, 2).unwrap();
        assert_eq!(w.try_add(&z(&[1, 1]), &z(&[1, 1])).unwrap(), z(&[2, 1]));
        assert_eq!(w.ghost(&z(&[1, 1])).unwrap(), z(&[1, 3]));
    }

    #[test]
    fn small_field_witt_is_z_mod_4() {
        let w = WittRing::new(CoefRing::PrimeField(2), 2, 2).unwrap();
        let one = w.one();
        let two = w.add(&one, &one);
        assert_eq!(two, z(&[0, 1]));
        let four = w.add(&two, &two);
        assert_eq!(four, w.zero());
        assert!(w.ghost(&one).is_err());
    }

    #[test]
    fn verschiebung_and_teichmuller() {
        let w = WittRing::new(CoefRing::Integers, 2, 2).unwrap();
        assert_eq!(w.verschiebung(&z(&[1, 1]), 3).unwrap(), z(&[0, 1, 1]));
        assert_eq!(w.teichmuller(&coef_int(5)), z(&[5, 0]));
        assert!(w.verschiebung(&z(&[1, 1]), 4).is_err());
    }

    #[test]
    fn frobenius_of_teichmuller() {
        let w = WittRing::new(CoefRing::Integers, 3, 3).unwrap();
        assert_eq!(w.frobenius(&w.teichmuller(&coef_int(2))).unwrap(), z(&[8, 0]));
        let k = FiniteField::search(2, 2).unwrap();
        let wk = WittRing::new(k.clone(), 2, 2).unwrap();
        let a = k.generator();
        let fa = wk.frobenius(&wk.teichmuller(&a)).unwrap();
        assert_eq!(fa, wk.teichmuller(&k.mul(&a, &a)));
    }

    #[test]
    fn integers_embed() {
        let w = WittRing::new(CoefRing::Integers, 3, 2).unwrap();
        let three = w.from_int(&BigInt::from(3));
        assert_eq!(w.ghost(&three).unwrap(), z(&[3, 3]));
    }
}
