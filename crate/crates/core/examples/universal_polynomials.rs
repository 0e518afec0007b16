//! The universal polynomials of a λ-ring: λ^j(xy) = P_j(λx; λy) and
//! λ^j(λ^i x) = P_{j,i}(λx), plus the Adams operations written in λ-operations.
//!
//!     cargo run --example universal_polynomials

use lambdaforge::lambda::{adams_polynomial, LambdaTables};

fn main() -> lambdaforge::Result<()> {
    let tables = LambdaTables::in_memory();

    for j in 1..=3 {
        let p = tables.mult(j)?;
        println!("P_{j} = {}", p.poly);
    }
    println!("P_3 has bidegrees {:?}", tables.mult(3)?.bidegrees());

    for (j, i) in [(1, 2), (2, 1), (2, 2), (3, 2)] {
        let p = tables.comp(j, i)?;
        println!("P_{{{j},{i}}} = {}", p.poly);
    }
    println!("weights of P_{{2,3}}: {:?}", tables.comp(2, 3)?.weights());

    for n in 1..=4 {
        println!("psi^{n} = {}", adams_polynomial(n)?);
    }
    Ok(())
}
