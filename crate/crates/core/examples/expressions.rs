//! The expression language, evaluated directly and through the command line front end.

use lambdaforge::expr::{evaluate, parse};

fn main() -> lambdaforge::Result<()> {
    for src in [
        "lambda(2, x + y + z)",
        "psi(3, x*y) - (x*y)^3",
        "binom(x, 2) * binom(x, 2)",
        "delta(2, x + 1)",
        "[1,1]@2 * [1,1]@2",
        "esym(2; a, b, c)",
    ] {
        let e = parse(src)?;
        let v = evaluate(&e)?;
        println!("{src:28} => {}  [{}]", v.value.render(), v.value.kind());
    }

    let out = lambdaforge::cli::run([
        "lambdaforge",
        "--format",
        "json",
        "witt",
        "mul",
        "-p",
        "3",
        "-n",
        "2",
        "[1,2]",
        "[2,0]",
    ]);
    println!("exit {}\n{}", out.code, out.stdout);
    Ok(())
}
