//! For a PT-symmetric Hamiltonian the linear operator η = exp(2i∫A*)·P is
//! Hermitian, coincides with τ∘P∘T, and maps H to its adjoint.
//!
//!     cargo run --example pseudo_hermiticity

use ptlab::grid::Grid;
use ptlab::model::{HamiltonianSystem, PotentialSpec};
use ptlab::verify::{
    corollary1_identity_check, eta_hermiticity_residual, parity_conditions_check, pseudo_residual,
    pt_symmetry_residual, Tolerances,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let grid = Grid::new(5.0, 201)?;
    for (v, a) in [("x^2 + i*x^3", "0"), ("x^2 + i*x^3/10", "i*x"), ("x^2", "x")] {
        let spec = PotentialSpec::parse(v, a, 0.5)?;
        let parity = parity_conditions_check(&spec, &grid, tol.parity)?;
        let sys = HamiltonianSystem::build(&spec, &grid)?;
        println!("V = {v}, A = {a}: parity conditions {}", if parity.pass() { "hold" } else { "fail" });
        for c in parity.conditions.iter().filter(|c| !c.pass) {
            println!("    {} violated by {:.3e}", c.name, c.max_violation);
        }
        let reports = [
            pt_symmetry_residual(&sys, &tol),
            eta_hermiticity_residual(&sys, &tol),
            corollary1_identity_check(&sys, &tol)?,
            pseudo_residual(&sys, &tol)?,
        ];
        for r in reports {
            println!("  {:<26} relative {:.3e}  {}", r.identity.statement(), r.relative, r.classification);
        }
    }
    Ok(())
}
