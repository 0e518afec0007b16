//! Rewriting symmetric polynomials in elementary symmetric functions.

use lambdaforge::expr::parse_poly;
use lambdaforge::symfunc::{elementary_symmetric, newton_power_sum, power_sum, symmetry_witness, to_elementary};

fn main() -> lambdaforge::Result<()> {
    let vars = ["x", "y", "z"].map(String::from).to_vec();
    println!("e_2(x, y, z) = {}", elementary_symmetric(2, &vars)?);
    println!("p_3(x, y, z) = {}", power_sum(3, &vars)?);

    let f = parse_poly("x^2*y + x^2*z + y^2*x + y^2*z + z^2*x + z^2*y", &vars)?;
    let blocks = vec![vars.clone()];
    let e = to_elementary(&f, &blocks)?;
    println!("{f}\n  = {}", e.poly);
    assert_eq!(e.expand(&blocks)?, f);

    // Newton's identities: p_n in terms of e_1, ..., e_m
    for n in 1..=4 {
        println!("p_{n} = {}", newton_power_sum(n, n)?);
    }

    let g = parse_poly("x^2*y + z", &vars)?;
    if let Some((a, b)) = symmetry_witness(&g, &blocks)? {
        println!("{g} is not symmetric: swapping {a} and {b} changes it");
    }
    Ok(())
}
