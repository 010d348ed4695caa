//! Spectrum of the PT-symmetric oscillator H = p² + x² + i·x³. Every
//! eigenvalue is real or has its complex conjugate in the spectrum.
//!
//!     cargo run --release --example pt_spectrum

use ptlab::eigen::{conjugate_pair_matching, eigendecompose, DEFAULT_EIGEN_TOL, DEFAULT_PAIRING_TOL};
use ptlab::grid::Grid;
use ptlab::model::{build_hamiltonian, PotentialSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = PotentialSpec::parse("x^2 + i*x^3", "0", 0.5)?;
    let h = build_hamiltonian(&spec, &Grid::new(8.0, 201)?)?;
    let spectrum = eigendecompose(&h.0, DEFAULT_EIGEN_TOL)?;
    let pairing = conjugate_pair_matching(&spectrum, DEFAULT_PAIRING_TOL);

    println!(
        "{} eigenvalues, max residual {:.2e}, eigenvector basis condition {:.2e}",
        spectrum.len(),
        spectrum.max_residual(),
        spectrum.basis_condition
    );
    println!(
        "{} real, {} conjugate pairs, {} unmatched",
        pairing.real.len(),
        pairing.pairs.len(),
        pairing.unmatched.len()
    );
    println!("lowest eigenvalues:");
    for (k, p) in spectrum.pairs.iter().take(8).enumerate() {
        println!("  {k:>3}  {:>14.8} {:+.2e}i", p.value.re, p.value.im);
    }
    println!("first complex pairs:");
    for &(i, j) in pairing.pairs.iter().take(4) {
        let (a, b) = (spectrum.pairs[i].value, spectrum.pairs[j].value);
        println!("  {:.6} {:+.6}i  <->  {:.6} {:+.6}i", a.re, a.im, b.re, b.im);
    }
    Ok(())
}
