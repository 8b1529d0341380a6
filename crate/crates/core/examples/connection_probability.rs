//! Connection probability of the receiver (closed form) and of an
//! eavesdropper whose transmitter angle is unknown, against the SIR
//! threshold.

use secrecy_geom::connectivity::{eaves_connection, receiver_connection, EavesGain};
use secrecy_geom::model::{Geometry, NetworkConfig};
use secrecy_geom::numerics::QuadratureSpec;

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "gamma", "rx_corner", "rx_bulk", "ev_corner", "ev_bulk"
    );
    for gamma in [0.01, 0.1, 1.0, 10.0, 100.0] {
        let corner = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 1.0)?;
        let bulk = corner.with_geometry(Geometry::Bulk);
        println!(
            "{gamma:>8.2} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            receiver_connection(&corner, gamma)?.value,
            receiver_connection(&bulk, gamma)?.value,
            eaves_connection(&corner, gamma, EavesGain::Averaged, &spec)?.value,
            eaves_connection(&bulk, gamma, EavesGain::Averaged, &spec)?.value,
        );
    }
    Ok(())
}
