use super::config::{check_grid_points, parse_identity, ConfigError, Setup};
use super::report::{Command, Report, Skipped};
use crate::eigen::{conjugate_pair_matching, eigendecompose};
use crate::model::HamiltonianSystem;
use crate::verify::{
    anti_pseudo_residual, convergence_study, corollary1_identity_check, eta_hermiticity_residual,
    parity_conditions_from_samples, pseudo_residual, pt_symmetry_residual, Identity,
};

fn report_for(command: Command, setup: &Setup) -> Report {
    Report::new(command, setup.config.clone(), setup.tolerances)
}

/// Parity conditions, then the PT, anti-pseudo, corollary and η checks on one
/// system; the pseudo-Hermiticity check only if the parity conditions hold.
pub fn run_check(setup: &Setup) -> crate::Result<Report> {
    let tol = &setup.tolerances.verify;
    let sys = HamiltonianSystem::build(&setup.spec, &setup.grid)?;
    let parity = parity_conditions_from_samples(&sys.samples.scalar, &sys.samples.vector, &sys.grid, tol.parity);

    let mut report = report_for(Command::Check, setup);
    report.checks.push(pt_symmetry_residual(&sys, tol));
    report.checks.push(anti_pseudo_residual(&sys, tol)?);
    report.checks.push(corollary1_identity_check(&sys, tol)?);
    report.checks.push(eta_hermiticity_residual(&sys, tol));
    if parity.pass() {
        report.checks.push(pseudo_residual(&sys, tol)?);
    } else {
        let failed: Vec<&str> = parity.conditions.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        report.skipped.push(Skipped {
            identity: Identity::Pseudo,
            reason: format!("parity conditions fail ({})", failed.join(", ")),
        });
    }
    report.parity = Some(parity);
    Ok(report)
}

/// Full spectrum with conjugate-pair matching.
pub fn run_spectrum(setup: &Setup) -> crate::Result<Report> {
    let t = &setup.tolerances;
    let h = crate::model::build_hamiltonian(&setup.spec, &setup.grid)?;
    let spectrum = eigendecompose(&h.0, t.eigen)?;
    let pairing = conjugate_pair_matching(&spectrum, t.pairing);
    let mut report = report_for(Command::Spectrum, setup);
    report.spectrum = Some(spectrum);
    report.pairing = Some(pairing);
    Ok(report)
}

/// Grid-refinement study of one identity. `sizes` and `identity` fall back
/// to the config's `convergence` section.
pub fn run_converge(setup: &Setup, sizes: Option<&[usize]>, identity: Option<&str>) -> crate::Result<Report> {
    let section = setup.config.convergence.as_ref();
    let sizes = sizes
        .or(section.map(|c| c.grid_points.as_slice()))
        .ok_or(ConfigError::Invalid {
            field: "convergence.grid_points",
            message: "no grid sizes given".into(),
        })?;
    for &n in sizes {
        check_grid_points("convergence.grid_points", n)?;
    }
    let identity = identity
        .or(section.map(|c| c.identity.as_str()))
        .ok_or(ConfigError::Invalid {
            field: "convergence.identity",
            message: "no identity given".into(),
        })?;
    let identity = parse_identity(identity)?;
    let study = convergence_study(
        &setup.spec,
        setup.grid.half_width(),
        sizes,
        identity,
        &setup.tolerances.verify,
    )?;
    let mut report = report_for(Command::Converge, setup);
    report.convergence = Some(study);
    Ok(report)
}
