//! Running the check and spectrum commands from code and encoding the
//! reports, as the `ptlab` binary does.
//!
//!     cargo run --release --example reports

use ptlab::cli::{emit_report, run_check, run_spectrum, Config, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = Config::from_json(
        r#"{
            "potential_V": "x^2",
            "potential_A": "g*x",
            "params": {"g": [0, 1]},
            "half_width": 6,
            "grid_points": 301
        }"#,
    )?;
    let setup = config.setup()?;

    let check = run_check(&setup)?;
    print!("{}", String::from_utf8(emit_report(&check, Format::Text)?)?);

    let spectrum = run_spectrum(&setup)?;
    let csv = String::from_utf8(emit_report(&spectrum, Format::Csv)?)?;
    println!("\nfirst rows of the eigenvalue table:");
    for line in csv.lines().take(6) {
        println!("{line}");
    }
    println!("spectrum verdict: {}", spectrum.verdict().as_str());
    Ok(())
}
