//! Arithmetic fracture squares for perfect λ-rings, gluing rational and p-adic data.

use std::collections::BTreeMap;

use lambdaforge::fracture::{
    check_perfect, fracture_check_square, fracture_reconstruct, primes_up_to, spherical_homotopy, verify_certificate,
    PerfectRingDesc, StemsTable,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> lambdaforge::Result<()> {
    let ring = PerfectRingDesc::Binomial { degree: 2 };
    println!("{ring}: perfect at 2, 3, 5: {}", check_perfect(&ring, &[2, 3, 5])?.pass);

    let cert = fracture_check_square(&ring, &primes_up_to(7), 8)?;
    println!("fracture square holds: {}, certificate rechecks: {}", cert.pass, verify_certificate(&cert)?);

    // (x^2 - x)/2 = binom(x, 2), given in monomial coordinates 1, x, x^2
    let half = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(2));
    let rational = vec![half(0), half(-1), half(1)];
    let padic: BTreeMap<u64, Vec<BigInt>> = [(2, vec![0, 0, 1]), (3, vec![0, 0, 1])]
        .into_iter()
        .map(|(p, v)| (p, v.into_iter().map(BigInt::from).collect()))
        .collect();
    println!("glued: {:?}", fracture_reconstruct(&ring, &rational, &padic, 8)?);

    let mut wrong = padic.clone();
    wrong.get_mut(&3).unwrap()[1] += 9;
    println!("with a bad 3-adic coordinate: {:?}", fracture_reconstruct(&ring, &rational, &wrong, 8)?);

    let stems = StemsTable::bundled();
    for i in 0..=4 {
        println!("pi_{i} = {}", spherical_homotopy(&PerfectRingDesc::Integers, i, &stems)?.render());
    }
    Ok(())
}
