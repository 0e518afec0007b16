mod common;

use common::strategies::small_ints;
use lambdaforge::lambda::{BigWitt, LambdaTables};
use lambdaforge::modular::{IntegerRing, ZMod};
use lambdaforge::ring::CommRing;
use lambdaforge::witt::WittRing;
use num_bigint::BigInt;
use proptest::prelude::*;

fn prime_and_len() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=4)
}

fn vectors() -> impl Strategy<Value = (u64, usize, Vec<BigInt>, Vec<BigInt>)> {
    prime_and_len().prop_flat_map(|(p, n)| (Just(p), Just(n), small_ints(n..n + 1, -6, 6), small_ints(n..n + 1, -6, 6)))
}

/// `Σ V_{p^i}[a_i]` in the big Witt ring of length `p^{n-1}`.
fn to_big(p: u64, a: &[BigInt]) -> BigWitt<IntegerRing> {
    let len = (p as usize).pow(a.len() as u32 - 1);
    let mut acc = BigWitt::zero(IntegerRing, len).unwrap();
    for (i, ai) in a.iter().enumerate() {
        let m = (p as usize).pow(i as u32);
        if m > len {
            break;
        }
        let mut coeffs = vec![BigInt::from(0); len];
        coeffs[m - 1] = if m % 2 == 1 { ai.clone() } else { -ai.clone() };
        acc = acc.add(&BigWitt::new(IntegerRing, coeffs).unwrap()).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ghost_is_a_ring_map((p, n, u, v) in vectors()) {
        let w = WittRing::new(IntegerRing, p, n).unwrap();
        let (gu, gv) = (common::witt_ghost(p, &u), common::witt_ghost(p, &v));
        let s = w.try_add(&u, &v).unwrap();
        let m = w.try_mul(&u, &v).unwrap();
        prop_assert_eq!(common::witt_ghost(p, &s), gu.iter().zip(&gv).map(|(a, b)| a + b).collect::<Vec<_>>());
        prop_assert_eq!(common::witt_ghost(p, &m), gu.iter().zip(&gv).map(|(a, b)| a * b).collect::<Vec<_>>());
        prop_assert_eq!(w.ghost(&u).unwrap(), gu);
        let neg = w.try_neg(&u).unwrap();
        prop_assert!(w.try_add(&u, &neg).unwrap().iter().all(|c| c == &BigInt::from(0)));
    }

    #[test]
    fn fv_is_multiplication_by_p((p, n, u, _) in vectors()) {
        let big = WittRing::new(IntegerRing, p, n + 1).unwrap();
        let fv = big.frobenius(&big.verschiebung(&u, n + 1).unwrap()).unwrap();
        let w = WittRing::new(IntegerRing, p, n).unwrap();
        prop_assert_eq!(fv, w.try_mul(&w.from_int_witt(&BigInt::from(p)), &u).unwrap());
    }

    #[test]
    fn projection_formula_over_fp((p, n, a, b) in vectors()) {
        let w = WittRing::new(ZMod::new(p).unwrap(), p, n).unwrap();
        let lift = |v: &[BigInt]| w.element(v.iter().map(|c| w.base().from_int(c)).collect()).unwrap();
        let (x, u) = (lift(&a), lift(&b));
        let lhs = w.verschiebung(&w.try_mul(&w.frobenius(&x).unwrap(), &u).unwrap(), n).unwrap();
        let rhs = w.try_mul(&x, &w.verschiebung(&u, n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn teichmuller_ghosts_are_powers((p, n) in prime_and_len(), a in -7i64..8) {
        let w = WittRing::new(IntegerRing, p, n).unwrap();
        let a = BigInt::from(a);
        for (i, g) in w.ghost(&w.teichmuller(&a)).unwrap().into_iter().enumerate() {
            prop_assert_eq!(g, a.pow((p as u32).pow(i as u32)));
        }
    }

    #[test]
    fn p_typical_embeds_in_big_witt(
        (p, n) in prop::sample::select(vec![(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)]),
        a in small_ints(3..4, -3, 3),
        b in small_ints(3..4, -3, 3),
    ) {
        let (u, v) = (a[..n].to_vec(), b[..n].to_vec());
        let w = WittRing::new(IntegerRing, p, n).unwrap();
        let tables = LambdaTables::global();
        let (bu, bv) = (to_big(p, &u), to_big(p, &v));
        let sum = bu.add(&bv).unwrap();
        let prod = bu.mul_with(&bv, tables).unwrap();
        let at_powers = |gh: Vec<BigInt>| -> Vec<BigInt> { (0..n).map(|k| gh[(p as usize).pow(k as u32) - 1].clone()).collect() };
        prop_assert_eq!(at_powers(bu.ghost().unwrap()), common::witt_ghost(p, &u));
        prop_assert_eq!(at_powers(sum.ghost().unwrap()), common::witt_ghost(p, &w.try_add(&u, &v).unwrap()));
        prop_assert_eq!(at_powers(prod.ghost().unwrap()), common::witt_ghost(p, &w.try_mul(&u, &v).unwrap()));
    }
}

#[test]
fn witt_over_fp_is_integers_mod_p_power_for_p_squared() {
    for p in [2u64, 3, 5] {
        let w = WittRing::new(ZMod::new(p).unwrap(), p, 2).unwrap();
        let m = (p * p) as i64;
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (w.from_int_witt(&BigInt::from(a)), w.from_int_witt(&BigInt::from(b)));
                assert_eq!(w.try_mul(&x, &y).unwrap(), w.from_int_witt(&BigInt::from(a * b % m)));
                assert_eq!(w.try_add(&x, &y).unwrap(), w.from_int_witt(&BigInt::from((a + b) % m)));
            }
        }
    }
}

#[test]
fn base_ring_mismatch_is_reported() {
    let w = WittRing::new(IntegerRing, 2, 2).unwrap();
    assert!(w.try_add(&[BigInt::from(1)], &[BigInt::from(1), BigInt::from(0)]).is_err());
    assert!(WittRing::new(IntegerRing, 4, 2).is_err());
    assert_eq!(IntegerRing.render(&BigInt::from(-3)), "-3");
}
