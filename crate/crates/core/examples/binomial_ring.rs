//! Integer-valued polynomials in the binomial basis C(x, n).

use lambdaforge::binomial::{adams_trivial_check, IntValuedPoly};
use lambdaforge::expr::parse_poly;
use num_bigint::BigInt;

fn main() -> lambdaforge::Result<()> {
    let x = ["x".to_string()];
    let f = IntValuedPoly::from_monomial(&parse_poly("x^3", &x)?)?;
    println!("x^3 = {f}");
    println!("x^3 at 0..5: {:?}", f.values(6).iter().map(ToString::to_string).collect::<Vec<_>>());

    let half = parse_poly("1/2*x^2 + 1/2*x", &x)?;
    println!("(x^2 + x)/2 = {}", IntValuedPoly::from_monomial(&half)?);
    let bad = parse_poly("1/2*x^2", &x)?;
    println!("x^2/2 is integer-valued: {}", IntValuedPoly::from_monomial(&bad).is_ok());

    let g = IntValuedPoly::basis(2);
    for n in 0..=3 {
        println!("lambda^{n}(binom(x, 2)) = {}", g.lambda(n)?);
    }
    println!("psi^3 is the identity on {g}: {}", adams_trivial_check(3, &g)?.pass);

    println!("binom(x, 2) o (x + 1) = {}", g.compose(&IntValuedPoly::new(vec![BigInt::from(1), BigInt::from(1)]))?);
    println!("binom(x + y, 2) = {}", g.hilbert_comul());
    Ok(())
}
