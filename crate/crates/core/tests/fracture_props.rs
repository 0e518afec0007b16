use std::collections::BTreeMap;

use lambdaforge::fracture::{
    check_perfect, fracture_check_square, fracture_reconstruct, verify_certificate, PerfectRingDesc, Reconstruction,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];
const N: u32 = 8;

fn desc() -> impl Strategy<Value = PerfectRingDesc> {
    prop_oneof![
        Just(PerfectRingDesc::Integers),
        (0usize..7).prop_map(|degree| PerfectRingDesc::Binomial { degree }),
        (prop::sample::select(vec![2u64, 3]), 0u32..3)
            .prop_map(|(p, depth)| PerfectRingDesc::MonoidAlgebra { p, depth }),
    ]
}

fn with_coords() -> impl Strategy<Value = (PerfectRingDesc, Vec<BigInt>)> {
    desc().prop_flat_map(|d| {
        let n = d.basis_labels().len();
        (Just(d), prop::collection::vec((-500i64..500).prop_map(BigInt::from), n))
    })
}

fn rational_image(d: &PerfectRingDesc, c: &[BigInt]) -> Vec<BigRational> {
    let w = d.window().unwrap();
    w.to_rational
        .iter()
        .map(|row| row.iter().zip(c).map(|(t, x)| t * BigRational::from_integer(x.clone())).sum())
        .collect()
}

fn padic_image(c: &[BigInt]) -> BTreeMap<u64, Vec<BigInt>> {
    PRIMES
        .iter()
        .map(|&p| {
            let m = BigInt::from(p).pow(N);
            (p, c.iter().map(|x| x.mod_floor(&m)).collect())
        })
        .collect()
}

/// Least prime factor, or `u64::MAX` for 1.
fn smallest_factor(n: &BigInt) -> u64 {
    if *n == BigInt::from(1) {
        return u64::MAX;
    }
    (2u64..).find(|&f| (n % f) == BigInt::from(0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn consistent_data_reconstructs_the_element((d, c) in with_coords()) {
        let r = fracture_reconstruct(&d, &rational_image(&d, &c), &padic_image(&c), N).unwrap();
        prop_assert_eq!(r.coords(), Some(c));
    }

    #[test]
    fn perturbed_residue_is_located(
        (d, c) in with_coords(),
        pick in any::<prop::sample::Index>(),
        slot in any::<prop::sample::Index>(),
        k in 0..N,
        unit in 1u64..7,
    ) {
        let p = PRIMES[pick.index(PRIMES.len())];
        let unit = if unit % p == 0 { 1 } else { unit };
        let i = slot.index(c.len());
        let mut padic = padic_image(&c);
        padic.get_mut(&p).unwrap()[i] += BigInt::from(p).pow(k) * unit;
        match fracture_reconstruct(&d, &rational_image(&d, &c), &padic, N).unwrap() {
            Reconstruction::Obstructed { prime, coordinate, .. } => {
                prop_assert_eq!(prime, p);
                prop_assert_eq!(coordinate, d.basis_labels()[i].clone());
            }
            r => prop_assert!(false, "perturbation went unnoticed: {:?}", r),
        }
    }

    #[test]
    fn unmatched_denominator_is_reported((d, c) in with_coords(), slot in any::<prop::sample::Index>()) {
        let mut rational = rational_image(&d, &c);
        let j = slot.index(rational.len());
        rational[j] += BigRational::new(BigInt::from(1), BigInt::from(11));
        // without p-adic data the smallest prime in any denominator is blamed
        let smallest = rational.iter().map(|q| smallest_factor(q.denom())).min().unwrap();
        match fracture_reconstruct(&d, &rational, &BTreeMap::new(), N).unwrap() {
            Reconstruction::Obstructed { prime, coordinate, .. } => {
                prop_assert_eq!(prime, smallest);
                if smallest == 11 {
                    prop_assert_eq!(coordinate, d.window().unwrap().rational_basis[j].clone());
                }
            }
            r => prop_assert!(false, "1/11 was accepted: {:?}", r),
        }
        // with residues at the small primes the mismatch shows up at 2 first
        let r = fracture_reconstruct(&d, &rational, &padic_image(&c), N).unwrap();
        prop_assert!(matches!(r, Reconstruction::Obstructed { prime: 2, .. }), "{:?}", r);
    }

    #[test]
    fn square_certificates_recheck(d in desc()) {
        let cert = fracture_check_square(&d, &PRIMES, 6).unwrap();
        prop_assert!(cert.pass, "{:?}", cert.witness);
        prop_assert!(verify_certificate(&cert).unwrap());
    }
}

#[test]
fn too_little_precision_is_an_error() {
    let d = PerfectRingDesc::Integers;
    let q = vec![BigRational::new(BigInt::from(1), BigInt::from(256))];
    let padic = BTreeMap::from([(2u64, vec![BigInt::from(0)])]);
    assert!(fracture_reconstruct(&d, &q, &padic, 8).is_err());
    assert!(fracture_reconstruct(&d, &q, &padic, 9).is_ok());
}

#[test]
fn monoid_algebra_is_perfect_only_at_its_prime() {
    for p in [2u64, 3, 5] {
        let d = PerfectRingDesc::MonoidAlgebra { p, depth: 1 };
        let rep = check_perfect(&d, &[2, 3, 5, 7]).unwrap();
        for v in &rep.verdicts {
            assert_eq!(v.pass, v.p == p, "{d} at {}", v.p);
        }
    }
    assert!(check_perfect(&PerfectRingDesc::Binomial { degree: 5 }, &[2, 3, 5, 7, 11]).unwrap().pass);
}
