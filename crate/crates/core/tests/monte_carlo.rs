//! Simulator behavior against the analytic layer at moderate sample sizes.

use secrecy_geom::connectivity::receiver_connection;
use secrecy_geom::model::{Geometry, NetworkConfig, RateThresholds};
use secrecy_geom::simulator::{estimate_connection, SampleSet, SimConfig};

#[test]
fn doubling_the_truncation_radius_moves_estimates_less_than_one_standard_error() {
    let cfg = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 1.0).unwrap();
    let base = SimConfig::new(&cfg, 11, 100_000).unwrap();
    let wide = base.with_truncation_radius(&cfg, 2.0 * base.truncation_radius).unwrap();
    let a = SampleSet::generate(&cfg, &base).unwrap();
    let b = SampleSet::generate(&cfg, &wide).unwrap();
    let rates = RateThresholds::equal(1.0).unwrap();
    for (x, y) in [
        (a.connection(1.0), b.connection(1.0)),
        (a.secure_connectivity(&rates), b.secure_connectivity(&rates)),
        (a.capacity(), b.capacity()),
    ] {
        assert!((x.mean - y.mean).abs() < x.std_error.max(y.std_error), "{x:?} vs {y:?}");
    }
}

#[test]
fn bulk_connection_matches_closed_form() {
    let cfg = NetworkConfig::new(Geometry::Bulk, 0.2, 4.0, 1.0, 1.0).unwrap();
    let est = estimate_connection(&cfg, &SimConfig::new(&cfg, 5, 100_000).unwrap(), 1.0).unwrap();
    let exact = receiver_connection(&cfg, 1.0).unwrap().value;
    assert!((exact - 0.4459).abs() < 1e-4);
    assert!(est.agrees_with(exact, 3.0), "{est:?} vs {exact}");
}

#[test]
fn low_rate_secrecy_is_higher_in_the_bulk() {
    let rates = RateThresholds::equal(1.0).unwrap();
    let interval = |geometry| {
        let cfg = NetworkConfig::new(geometry, 0.2, 4.0, 1.0, 1.0).unwrap();
        let e = SampleSet::generate(&cfg, &SimConfig::new(&cfg, 3, 200_000).unwrap())
            .unwrap()
            .secure_connectivity(&rates);
        (e.mean - 3.0 * e.std_error, e.mean + 3.0 * e.std_error)
    };
    let corner = interval(Geometry::Corner);
    let bulk = interval(Geometry::Bulk);
    assert!(corner.1 < bulk.0, "corner {corner:?}, bulk {bulk:?}");
}
