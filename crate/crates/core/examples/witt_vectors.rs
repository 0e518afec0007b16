//! p-typical Witt vectors over Z and over Z/p^k.

use lambdaforge::modular::{IntegerRing, ZMod};
use lambdaforge::ring::CommRing;
use lambdaforge::witt::WittRing;
use num_bigint::BigInt;

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn main() -> lambdaforge::Result<()> {
    let w = WittRing::new(IntegerRing, 2, 3)?;
    let (u, v) = (ints(&[1, 1, 0]), ints(&[1, 1, 0]));
    let sum = w.try_add(&u, &v)?;
    let prod = w.try_mul(&u, &v)?;
    println!("W_3(Z), p = 2");
    println!("  {} + {} = {}", w.render(&u), w.render(&v), w.render(&sum));
    println!("  {} * {} = {}", w.render(&u), w.render(&v), w.render(&prod));
    println!("  ghost of the sum: {:?}", w.ghost(&sum)?.iter().map(ToString::to_string).collect::<Vec<_>>());

    let a = ints(&[3, -1, 2]);
    let fv = w.frobenius(&w.verschiebung(&a, 3)?)?;
    let twice = w.try_add(&a, &a)?;
    println!("  F(V(a)) = {} and a + a = {} for a = {}", w.render(&fv), w.render(&twice), w.render(&a));
    println!("  Teichmuller lift of 5: {}", w.render(&w.teichmuller(&BigInt::from(5))));

    // W_2(F_3) has 9 elements and is Z/9; the integer 1 + 1 + ... reaches every class
    let f3 = ZMod::new(3)?;
    let w = WittRing::new(f3.clone(), 3, 2)?;
    let one = w.from_int_witt(&BigInt::from(1));
    let mut x = w.from_int_witt(&BigInt::from(0));
    print!("W_2(F_3): ");
    for k in 0..9 {
        print!("{k} -> {}  ", w.render(&x));
        x = w.try_add(&x, &one)?;
    }
    println!();
    assert!(x.iter().all(|c| f3.is_zero(c)));
    Ok(())
}
