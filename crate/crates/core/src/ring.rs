//! The commutative-ring interface that every element-level algorithm is written against.
//!
//! Rings are values (a ring *handle*) and elements are plain data; all arithmetic goes
//! through the handle so that moduli, variable lists and presentations never have to be
//! threaded through the element type.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait CommRing: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Exact division by a nonzero integer. `None` when the quotient does not exist
    /// (or is not unique because the ring has torsion).
    fn div_int_exact(&self, a: &Self::Elem, d: &BigInt) -> Option<Self::Elem>;

    /// Whether the additive group has no torsion, so ghost-style maps are injective.
    fn is_torsion_free(&self) -> bool;

    fn render(&self, a: &Self::Elem) -> String;

    /// `Some(p)` when the ring is an algebra over `F_p`.
    fn char_p(&self) -> Option<u64> {
        None
    }

    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        if q.denom().is_one() {
            Some(self.from_int(q.numer()))
        } else {
            let num = self.from_int(q.numer());
            self.div_int_exact(&num, q.denom())
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn scale_int(&self, a: &Self::Elem, n: &BigInt) -> Self::Elem {
        if n.is_zero() {
            return self.zero();
        }
        self.mul(&self.from_int(n), a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A ring presented as a quotient of a torsion-free ring, e.g. `F_p` as `Z/p` or
/// `F_{p^m}` as a quotient of `Z[θ]/(f̃)`. Computations that need division by `p`
/// (ghost descent) run upstairs in the cover and are pushed down with `reduce`.
pub trait IntegralLift: CommRing {
    type Cover: CommRing;

    fn cover(&self) -> Self::Cover;
    fn lift(&self, a: &Self::Elem) -> <Self::Cover as CommRing>::Elem;
    fn reduce(&self, a: &<Self::Cover as CommRing>::Elem) -> Self::Elem;

    /// Reduces a cover element modulo `m · K`, where `K` is the kernel of [`reduce`](Self::reduce).
    /// Returning the input unchanged is always correct; a real reduction keeps intermediate
    /// values of long computations small.
    fn truncate_cover(&self, a: &<Self::Cover as CommRing>::Elem, _m: &BigInt) -> <Self::Cover as CommRing>::Elem {
        a.clone()
    }
}
