//! Capacity behavior at the extremes of eavesdropper distance.

use secrecy_geom::capacity::{avg_capacity, avg_secrecy_capacity, avg_secrecy_capacity_uncorrelated};
use secrecy_geom::connectivity::{radial_laplace_exponent, secure_connectivity};
use secrecy_geom::model::{Geometry, NetworkConfig, RateThresholds};
use secrecy_geom::numerics::QuadratureSpec;

#[test]
fn correlation_is_irrelevant_for_a_distant_eavesdropper() {
    let spec = QuadratureSpec::default();
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        let cfg = NetworkConfig::new(geometry, 0.2, 4.0, 1.0, 10.0).unwrap();
        let correlated = avg_secrecy_capacity(&cfg, &spec).unwrap().c_secrecy;
        let independent = avg_secrecy_capacity_uncorrelated(&cfg, &spec).unwrap().c_secrecy;
        assert!((correlated - independent).abs() < 1e-4, "{correlated} vs {independent}");
        assert!(correlated < avg_capacity(&cfg, &spec).unwrap());
    }
}

#[test]
fn corner_capacity_exceeds_bulk() {
    let spec = QuadratureSpec::default();
    for u in [0.5, 2.0] {
        let corner = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, u).unwrap();
        let c = avg_secrecy_capacity(&corner, &spec).unwrap();
        let b = avg_secrecy_capacity(&corner.with_geometry(Geometry::Bulk), &spec).unwrap();
        assert!(c.c_secrecy > b.c_secrecy && c.c_plain > b.c_plain);
        assert!((c.c_plain - c.c_secrecy - c.rate_loss).abs() < 1e-12);
    }
}

#[test]
fn co_located_eavesdropper_gains_only_from_fading() {
    let spec = QuadratureSpec::default();
    let cfg = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 0.0).unwrap();
    let laplace = |s: f64| (-cfg.lambda * cfg.sector_angle() * radial_laplace_exponent(cfg.eta, s).unwrap()).exp();
    for gamma in [0.1, 1.0, 10.0] {
        let rates = RateThresholds::equal(gamma).unwrap();
        let p_sc = secure_connectivity(&cfg, &rates, &spec).unwrap().p_sc;
        let want = laplace(gamma) - laplace(2.0 * gamma);
        assert!((p_sc - want).abs() < 1e-12, "gamma {gamma}: {p_sc} vs {want}");
    }
    let at_zero = avg_secrecy_capacity(&cfg, &spec).unwrap().c_secrecy;
    let apart = avg_secrecy_capacity(&cfg.with_u(0.5).unwrap(), &spec)
        .unwrap()
        .c_secrecy;
    assert!(0.0 < at_zero && at_zero < apart);
}
