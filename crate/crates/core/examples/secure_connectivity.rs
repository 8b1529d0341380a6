//! Probability of secure connectivity at the corner and in the bulk for a
//! few rate pairs, with the joint connection probability that couples the
//! receiver and the eavesdropper through shared interferers.

use std::time::Instant;

use secrecy_geom::connectivity::secure_connectivity;
use secrecy_geom::model::{Geometry, NetworkConfig, RateThresholds};
use secrecy_geom::numerics::QuadratureSpec;

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    println!(
        "{:>6} {:>5} {:>6} {:>7} {:>12} {:>12} {:>12} {:>8}",
        "geom", "u", "mu", "sigma", "p_conn", "joint", "p_sc", "ms"
    );
    for (u, mu, sigma) in [
        (1.0, 0.02, 0.02),
        (1.0, 1.0, 1.0),
        (3.0, 10.0, 10.0),
        (3.0, 10.0, 3.0),
        (0.5, 10.0, 1.0),
    ] {
        for geometry in [Geometry::Corner, Geometry::Bulk] {
            let cfg = NetworkConfig::new(geometry, 0.2, 4.0, 1.0, u)?;
            let rates = RateThresholds::from_sir(mu, sigma)?;
            let start = Instant::now();
            let sc = secure_connectivity(&cfg, &rates, &spec)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            println!(
                "{:>6} {u:>5.2} {mu:>6.2} {sigma:>7.3} {:>12.8} {:>12.8} {:>12.8} {ms:>8.1}",
                geometry.name(),
                sc.p_conn,
                sc.joint,
                sc.p_sc
            );
        }
    }
    Ok(())
}
