//! Truncated big Witt vectors: power series 1 + a_1 t + a_2 t^2 + ... with sum the
//! product of series and product induced by (1 + a t)(1 + b t) -> 1 + ab t.

use lambdaforge::lambda::{BigWitt, LambdaTables};
use lambdaforge::modular::IntegerRing;
use num_bigint::BigInt;

fn series(xs: &[i64]) -> lambdaforge::Result<BigWitt<IntegerRing>> {
    BigWitt::new(IntegerRing, xs.iter().map(|&x| BigInt::from(x)).collect())
}

fn main() -> lambdaforge::Result<()> {
    let tables = LambdaTables::in_memory();
    let u = series(&[1, 2, 3, 4])?;
    let v = series(&[2, 0, -1, 1])?;
    println!("u = {}", u.render());
    println!("v = {}", v.render());
    println!("u + v = {}", u.add(&v)?.render());
    println!("u * v = {}", u.mul_with(&v, &tables)?.render());
    println!("lambda^2(u) = {}", u.lambda_with(2, None, &tables)?.render());

    let ghost = |w: &BigWitt<IntegerRing>| -> lambdaforge::Result<Vec<String>> {
        Ok(w.ghost()?.iter().map(ToString::to_string).collect())
    };
    // ghost components are power sums of the formal roots, so they turn products into
    // componentwise products
    println!("ghost(u) = {:?}", ghost(&u)?);
    println!("ghost(v) = {:?}", ghost(&v)?);
    println!("ghost(u * v) = {:?}", ghost(&u.mul_with(&v, &tables)?)?);

    let line = BigWitt::line(IntegerRing, BigInt::from(3), 4)?;
    println!("the line 1 + 3t: lambda^2 = {}", line.lambda_with(2, Some(2), &tables)?.render());
    Ok(())
}
