//! Grid refinement of the approximate identities. The full-matrix residual
//! stays O(1) near the boundary; the probe residual falls off like h².
//!
//!     cargo run --release --example convergence

use ptlab::model::PotentialSpec;
use ptlab::verify::{convergence_study, Identity, Tolerances};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let studies = [
        ("0", "sin(x) + i*x", 5.0, Identity::AntiPseudo),
        ("x^2", "i*x", 5.0, Identity::Pseudo),
        ("x^2", "1", 5.0, Identity::CommutatorTau),
        ("i*x^3", "0", 5.0, Identity::AntiPseudo),
    ];
    for (v, a, l, identity) in studies {
        let spec = PotentialSpec::parse(v, a, 0.5)?;
        let r = convergence_study(&spec, l, &[101, 201, 401], identity, &tol)?;
        println!("{identity} with V = {v}, A = {a}:");
        for s in &r.samples {
            println!(
                "  N = {:>3}  h = {:.4}  matrix {:.3e}  probe {:.3e}",
                s.n,
                s.h,
                s.report.relative,
                s.report.consistency.unwrap_or(0.0)
            );
        }
        let fmt = |s: Option<f64>| s.map_or("n/a".to_owned(), |s| format!("{s:.3}"));
        println!(
            "  slope {} (matrix {}), exact {}, {}",
            fmt(r.slope),
            fmt(r.matrix_slope),
            r.exact,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
