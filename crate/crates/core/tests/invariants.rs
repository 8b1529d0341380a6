//! Structural invariants over random network configurations.

use proptest::prelude::*;

use secrecy_geom::connectivity::{
    eaves_connection, joint_connection, receiver_connection, secure_connectivity, EavesGain,
};
use secrecy_geom::interference::{correlation, eaves_stats_numeric, receiver_stats};
use secrecy_geom::model::{gain_mixture, Geometry, NetworkConfig, RateThresholds};
use secrecy_geom::numerics::QuadratureSpec;

fn geometry() -> impl Strategy<Value = Geometry> {
    prop_oneof![Just(Geometry::Corner), Just(Geometry::Bulk)]
}

fn config() -> impl Strategy<Value = NetworkConfig> {
    (geometry(), 0.01f64..1.0, 2.5f64..6.0, 0.5f64..2.0, 0.0f64..4.0)
        .prop_map(|(g, lambda, eta, d0, u)| NetworkConfig::new(g, lambda, eta, d0, u).unwrap())
}

fn threshold() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn joint_is_bounded_by_both_marginals(cfg in config(), mu in threshold(), sigma in threshold()) {
        let spec = QuadratureSpec::default();
        let rx = receiver_connection(&cfg, mu).unwrap().value;
        let ev = eaves_connection(&cfg, sigma, EavesGain::Averaged, &spec).unwrap().value;
        let joint = joint_connection(&cfg, mu, sigma, &spec).unwrap();
        prop_assert!(joint >= 0.0);
        prop_assert!(joint <= rx + 1e-9, "joint {joint} > receiver {rx}");
        prop_assert!(joint <= ev + 1e-9, "joint {joint} > eaves {ev}");
    }

    #[test]
    fn secure_connectivity_lies_below_connection(cfg in config(), mu in threshold(), sigma in threshold()) {
        let spec = QuadratureSpec::default();
        let rates = RateThresholds::from_sir(mu.max(sigma), sigma.min(mu)).unwrap();
        let s = secure_connectivity(&cfg, &rates, &spec).unwrap();
        prop_assert!(s.p_sc >= 0.0 && s.p_sc <= s.p_conn);
        prop_assert!((s.p_conn - s.joint - s.p_sc).abs() < 1e-12);
    }

    #[test]
    fn correlation_is_a_coefficient(cfg in config()) {
        let rho = correlation(&cfg, &QuadratureSpec::default()).unwrap().rho;
        prop_assert!((0.0..=1.0).contains(&rho), "rho {rho}");
    }

    #[test]
    fn eavesdropper_sees_at_least_the_receiver_interference(cfg in config()) {
        let rx = receiver_stats(&cfg);
        let ev = eaves_stats_numeric(&cfg, &QuadratureSpec::default()).unwrap();
        prop_assert!(ev.mean >= rx.mean * (1.0 - 1e-9));
        prop_assert!(ev.variance >= rx.variance * (1.0 - 1e-9));
    }

    #[test]
    fn gain_law_has_unit_mass(cfg in config()) {
        let spec = QuadratureSpec { abs_tol: 1e-12, rel_tol: 1e-11, max_subdivisions: 5000 };
        let mass = gain_mixture(&cfg).total_mass(&spec).unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
    }

    #[test]
    fn receiver_connection_decreases_with_threshold(cfg in config(), lo in threshold(), hi in threshold()) {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        prop_assert!(receiver_connection(&cfg, lo).unwrap().value >= receiver_connection(&cfg, hi).unwrap().value);
    }
}
