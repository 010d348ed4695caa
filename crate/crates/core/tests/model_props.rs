use num_complex::Complex64;
use proptest::prelude::*;

use ptlab::expr::ParamEnv;
use ptlab::grid::Grid;
use ptlab::model::{HamiltonianSystem, PotentialSpec};
use ptlab::verify::{
    anti_pseudo_residual, corollary1_identity_check, eta_hermiticity_residual, pt_symmetry_residual, Tolerances,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// A polynomial in `x` with coefficients bound as `{prefix}0, {prefix}1, ...`.
fn polynomial(prefix: &'static str, max_degree: usize) -> impl Strategy<Value = (String, ParamEnv)> {
    prop::collection::vec(complex(), 1..=max_degree + 1).prop_map(move |coeffs| {
        let mut env = ParamEnv::new();
        let terms: Vec<String> = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                let name = format!("{prefix}{k}");
                env.insert(name.clone(), c);
                format!("{name}*x^{k}")
            })
            .collect();
        (terms.join(" + "), env)
    })
}

fn merge(a: ParamEnv, b: ParamEnv) -> ParamEnv {
    b.iter().fold(a, |env, (k, v)| env.with(k, v))
}

fn system(v: &str, a: &str, env: ParamEnv, half_width: f64, n: usize) -> HamiltonianSystem {
    let spec = PotentialSpec::parse(v, a, 0.5).unwrap().with_params(env);
    HamiltonianSystem::build(&spec, &Grid::new(half_width, n).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_pt_equals_eta_for_any_vector_potential(
        (a, a_env) in polynomial("a", 3),
        (v, v_env) in polynomial("v", 2),
        half_width in 1.0f64..4.0,
        k in 5usize..40,
    ) {
        let sys = system(&v, &a, merge(a_env, v_env), half_width, 2 * k + 1);
        let r = corollary1_identity_check(&sys, &Tolerances::default()).unwrap();
        prop_assert!(r.relative <= 1e-12, "residual {}", r.relative);
    }

    #[test]
    fn anti_pseudo_is_exact_without_vector_potential(
        (v, env) in polynomial("v", 4),
        half_width in 1.0f64..6.0,
        k in 5usize..60,
    ) {
        let sys = system(&v, "0", env, half_width, 2 * k + 1);
        let r = anti_pseudo_residual(&sys, &Tolerances::default()).unwrap();
        prop_assert!(r.relative <= 1e-12, "residual {}", r.relative);
    }

    #[test]
    fn parity_conditions_give_exact_pt_symmetry(
        even in prop::collection::vec(-1.0f64..1.0, 3),
        odd in prop::collection::vec(-1.0f64..1.0, 2),
        a_odd in -1.0f64..1.0,
        a_even in -1.0f64..1.0,
        k in 5usize..40,
    ) {
        // Re V even, Im V odd, Re A even, Im A odd.
        let v = format!(
            "{} + {}*x^2 + {}*x^4 + i*({}*x + {}*x^3)",
            even[0], even[1], even[2], odd[0], odd[1]
        );
        let a = format!("{a_even}*x^2 + i*{a_odd}*x");
        let sys = system(&v, &a, ParamEnv::new(), 3.0, 2 * k + 1);
        let tol = Tolerances::default();
        prop_assert!(pt_symmetry_residual(&sys, &tol).relative <= 1e-12);
        prop_assert!(eta_hermiticity_residual(&sys, &tol).relative <= 1e-12);
    }
}
