//! δ-structures from Frobenius lifts: δ(x) = (φ(x) - x^p) / p.

use lambdaforge::binomial::IntValuedPoly;
use lambdaforge::delta::{
    delta_commutation, delta_product_law, delta_sum_law, free_delta_basis, psi_equals_phi, BinomialLift, FrobeniusLift,
    IntegerLift, PolyLift,
};
use lambdaforge::expr::parse_poly;
use num_bigint::BigInt;

fn main() -> lambdaforge::Result<()> {
    let z = IntegerLift::new(3)?;
    for n in [2i64, 5, -4] {
        println!("delta_3({n}) = {}", z.delta(&BigInt::from(n))?);
    }

    let vars = ["x", "y"].map(String::from).to_vec();
    let lift = PolyLift::canonical(2, &vars)?;
    let f = parse_poly("x + y", &vars)?;
    let g = parse_poly("x*y - 1", &vars)?;
    println!("on Z[x, y] with x -> x^2, y -> y^2:");
    println!("  delta_2({f}) = {}", lift.delta(&f)?);
    for rep in [delta_sum_law(&lift, &f, &g)?, delta_product_law(&lift, &f, &g)?, psi_equals_phi(&lift, &g)?] {
        println!("  {} law holds: {}", rep.law, rep.pass);
    }

    let b = BinomialLift::identity(2, 4)?;
    let x = IntValuedPoly::x();
    println!("integer-valued polynomials, phi = id:");
    println!("  delta_2(x) = {}", b.delta(&x)?);
    println!("  delta_2(binom(x, 2)) = {}", b.delta(&IntValuedPoly::basis(2))?);

    let rep = delta_commutation(2, 3, 4)?;
    println!("{}: {} (lhs {}, rhs {})", rep.law, rep.pass, rep.lhs, rep.rhs);

    println!("monomials of degree <= 2 in x, delta x: {}", free_delta_basis(1, 2)?.len());
    Ok(())
}
