//! Harmonic oscillator H = p² + x² and the free particle against their
//! analytic spectra. The squared central difference couples only every other
//! node, so each level appears twice.
//!
//!     cargo run --release --example oscillator

use std::f64::consts::PI;

use ptlab::eigen::{eigendecompose, DEFAULT_EIGEN_TOL};
use ptlab::grid::Grid;
use ptlab::model::{build_hamiltonian, PotentialSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = PotentialSpec::parse("x^2", "0", 0.5)?;
    let h = build_hamiltonian(&spec, &Grid::new(10.0, 401)?)?;
    let s = eigendecompose(&h.0, DEFAULT_EIGEN_TOL)?;
    println!("oscillator, L = 10, N = 401");
    for (k, pair) in s.pairs.iter().take(10).enumerate() {
        let exact = (2 * (k / 2) + 1) as f64;
        println!("  {k:>2}  {:>12.8}  (continuum {exact}, error {:.2e})", pair.value.re, pair.value.re - exact);
    }

    let grid = Grid::new(1.0, 11)?;
    let free = eigendecompose(&build_hamiltonian(&PotentialSpec::parse("0", "0", 0.5)?, &grid)?.0, 1e-12)?;
    let h2 = grid.spacing().powi(2);
    let n = grid.len();
    let mut analytic: Vec<f64> = (1..=n).map(|k| (k as f64 * PI / (n + 1) as f64).cos().powi(2) / h2).collect();
    analytic.sort_by(f64::total_cmp);
    let worst = free
        .values()
        .iter()
        .zip(&analytic)
        .map(|(z, a)| (z.re - a).abs())
        .fold(0.0, f64::max);
    println!("free particle, N = 11: max deviation from cos²(kπ/(N+1))/h² is {worst:.2e}");
    Ok(())
}
