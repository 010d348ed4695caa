//! Linear and antilinear operators as matrices: composition parity, adjoints,
//! and how time reversal and parity act on multiplication and momentum
//! operators.
//!
//!     cargo run --example operator_algebra

use ptlab::grid::Grid;
use ptlab::model::{build_momentum, build_parity};
use ptlab::opalg::{time_reversal, ComplexMatrix, LinearOp, Operator};
use ptlab::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid::new(2.0, 9)?;
    let n = grid.len();
    let t: Operator = time_reversal(n).into();
    let p: Operator = build_parity(&grid).into();

    let f = grid.sample(|x| Complex64::new(x.sin(), x * x));
    let mult: Operator = LinearOp::diag(&f).into();

    // T f(x) T = f*(x)
    let tft = t.compose(&mult)?.compose(&t)?;
    let conj_f = ComplexMatrix::from_diag(&f.iter().map(|z| z.conj()).collect::<Vec<_>>());
    println!("T f T is {:?}, |T f T - f*| = {:e}", tft.linearity(), (tft.matrix() - &conj_f).max_abs_norm());

    // P f(x) P = f(-x)
    let pfp = p.compose(&mult)?.compose(&p)?;
    let mirrored = ComplexMatrix::from_diag(&(0..n).map(|j| f[grid.mirror(j)]).collect::<Vec<_>>());
    println!("|P f P - f(-x)| = {:e}", (pfp.matrix() - &mirrored).max_abs_norm());

    // T p T = -p for the central-difference momentum.
    let d: Operator = build_momentum(&grid).into();
    let tdt = t.compose(&d)?.compose(&t)?;
    println!("|T p T + p| = {:e}", (tdt.matrix() + d.matrix()).max_abs_norm());

    // PT is antilinear and squares to the identity.
    let pt = p.compose(&t)?;
    let square = pt.compose(&pt)?;
    println!(
        "PT is {:?}; (PT)^2 is {:?}, |(PT)^2 - 1| = {:e}",
        pt.linearity(),
        square.linearity(),
        (square.matrix() - &ComplexMatrix::identity(n)).max_abs_norm()
    );

    // (AB)† = B†A† with an antilinear factor.
    let ab = pt.compose(&d)?;
    let lhs = ab.adjoint();
    let rhs = d.adjoint().compose(&pt.adjoint())?;
    println!("|(PT p)† - p† (PT)†| = {:e}", (lhs.matrix() - rhs.matrix()).max_abs_norm());
    Ok(())
}
