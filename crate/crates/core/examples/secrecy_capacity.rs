//! Average secrecy capacity with and without accounting for interference
//! correlation, and the rate lost to secrecy.

use secrecy_geom::capacity::{avg_secrecy_capacity, avg_secrecy_capacity_uncorrelated};
use secrecy_geom::model::{Geometry, NetworkConfig};
use secrecy_geom::numerics::QuadratureSpec;

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    println!(
        "{:>6} {:>5} {:>10} {:>12} {:>10} {:>10}",
        "geom", "u", "c_secrecy", "c_uncorrel", "c_plain", "loss"
    );
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        for u in [0.5, 1.0, 2.0, 3.0] {
            let cfg = NetworkConfig::new(geometry, 0.2, 4.0, 1.0, u)?;
            let c = avg_secrecy_capacity(&cfg, &spec)?;
            let indep = avg_secrecy_capacity_uncorrelated(&cfg, &spec)?;
            println!(
                "{:>6} {u:>5.2} {:>10.4} {:>12.4} {:>10.4} {:>10.4}",
                geometry.name(),
                c.c_secrecy,
                indep.c_secrecy,
                c.c_plain,
                c.rate_loss
            );
        }
    }
    Ok(())
}
