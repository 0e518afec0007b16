//! Rings with x^p = x for all x: free ones, presentations, Stone duality.

use lambdaforge::expr::parse_poly;
use lambdaforge::finite_algebra::FiniteAlgebra;
use lambdaforge::pboolean::{free_pboolean, from_presentation, group_algebra_model, spec, stone_round_trip, transport};

fn main() -> lambdaforge::Result<()> {
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let r = free_pboolean(p, n)?;
        println!("free {p}-Boolean ring, {n} generator(s): dimension {}, order {}", r.dim(), r.order());
    }

    let gens = ["x1".to_string(), "x2".to_string()];
    let r = from_presentation(3, &gens, &[parse_poly("x1 - x2^2", &gens)?])?;
    println!("F_3<x1, x2 | x1 = x2^2> has spectrum {:?}", spec(&r)?);
    let moved = transport(&r, 5)?;
    println!("same spectrum at p = 5: {} points, order {}", moved.dim(), moved.order());

    let a = FiniteAlgebra::product(2, 1, 3)?;
    println!("F_2^3 is recovered from its spectrum: {}", stone_round_trip(&a)?);

    let report = group_algebra_model(3, 1)?;
    println!(
        "free 3-Boolean ring on one generator vs F_3[Z/3]: {} (witness {:?}); vs functions on Z/3: {}",
        report.group_algebra_isomorphic, report.group_algebra_witness, report.function_algebra_isomorphic
    );
    Ok(())
}
