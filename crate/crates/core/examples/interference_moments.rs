//! Mean and variance of the aggregate interference at the receiver and at
//! an eavesdropper, with the semi-closed eavesdropper forms next to the
//! numerical moments they approximate.

use secrecy_geom::interference::{eaves_stats_closed, eaves_stats_numeric, receiver_stats};
use secrecy_geom::model::{Geometry, NetworkConfig};
use secrecy_geom::numerics::QuadratureSpec;

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        println!("{} geometry", geometry.name());
        println!(
            "{:>5} {:>10} {:>10} {:>10} {:>10} {:>12} {:>12}",
            "u", "rx_mean", "rx_var", "ev_mean", "ev_var", "ev_mean_cf", "ev_var_cf"
        );
        for u in [0.25, 0.5, 0.9, 1.5, 3.0] {
            let cfg = NetworkConfig::new(geometry, 0.2, 4.0, 1.0, u)?;
            let rx = receiver_stats(&cfg);
            let ev = eaves_stats_numeric(&cfg, &spec)?;
            let cf = eaves_stats_closed(&cfg)?;
            println!(
                "{u:>5.2} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>12.5} {:>12.5}",
                rx.mean, rx.variance, ev.mean, ev.variance, cf.mean, cf.variance
            );
        }
        println!();
    }
    Ok(())
}
