//! Perfections in characteristic p, from both sides: the limit along Frobenius of a
//! finite algebra, and the colimit for F_p[t].

use lambdaforge::finite_algebra::FiniteAlgebra;
use lambdaforge::perfection::{limit_perfection, ColimitPerfection};
use lambdaforge::poly::{CoefRing, MultiPoly};
use lambdaforge::ring::CommRing;
use lambdaforge::witt::tilt;

fn main() -> lambdaforge::Result<()> {
    // F_3[t]/(t^2 (t - 1)) = F_3[t]/(t^2) x F_3: the nilpotent part dies
    let r = FiniteAlgebra::truncated_polynomial(3, 1, &[0, 0, -1, 1], "t")?;
    let lp = limit_perfection(&r, None)?;
    println!("dimensions of phi^k(R): {:?}", lp.dimensions);
    println!("perfection has dimension {} and basis {:?}", lp.algebra.dim(), lp.algebra.basis());
    println!("Frobenius bijective on it: {}", lp.algebra.frobenius_is_bijective()?);

    // the tilt reduces mod p first
    let s = FiniteAlgebra::truncated_polynomial(2, 3, &[1, 1, 1], "t")?;
    println!("tilt of (Z/8)[t]/(t^2 + t + 1) has dimension {}", tilt(&s, None)?.algebra.dim());

    let c = ColimitPerfection::new(5, &["t"])?;
    let t = MultiPoly::var(CoefRing::PrimeField(5), &["t"], "t")?;
    let root = c.root(&t, 2)?;
    let sum = c.add(&root, &c.one());
    println!("in the colimit perfection of F_5[t]:");
    println!("  t^(1/25) + 1 = {}", c.render(&sum));
    println!("  its 5th power = {}", c.render(&c.frobenius(&sum)));
    println!("  as an element of F_5[t^(1/5^inf)]: {}", c.monoid_algebra().render(&c.to_monoid(&sum)?));
    Ok(())
}
