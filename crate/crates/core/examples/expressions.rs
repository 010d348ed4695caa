//! Parsing and evaluating potential expressions.
//!
//!     cargo run --example expressions

use ptlab::expr::{Expr, ParamEnv};
use ptlab::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Expr::parse("x^2 + i*g*x^3")?;
    println!("parsed:      {v}");
    println!("parameters:  {:?}", v.free_params());

    let env = ParamEnv::new().with("g", Complex64::new(0.5, 0.0));
    for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let z = v.eval(x, &env)?;
        println!("V({x:+.1}) = {:+.3} {:+.3}i", z.re, z.im);
    }

    // Principal branches on the negative real axis.
    for src in ["sqrt(-4)", "log(-1)", "(-8)^(1/3)", "exp(i*pi)"] {
        let z = Expr::parse(src)?.eval(0.0, &ParamEnv::new())?;
        println!("{src:<12} = {:+.6} {:+.6}i", z.re, z.im);
    }

    for bad in ["2x", "sin x", "x +", "abs(x)"] {
        let err = Expr::parse(bad).unwrap_err();
        println!("{bad:<8} -> {err}");
    }
    Ok(())
}
