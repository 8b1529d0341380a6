//! Low-rate, high-rate and high-secrecy approximations of secure
//! connectivity compared with the exact values.

use secrecy_geom::asymptotics::{eaves_connection_high_secrecy, psc_high_rate_small_u, psc_low_rate};
use secrecy_geom::connectivity::{eaves_connection, secure_connectivity, EavesGain};
use secrecy_geom::model::{Geometry, NetworkConfig, RateThresholds};
use secrecy_geom::numerics::QuadratureSpec;

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    let corner = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 1.0)?;
    let bulk = corner.with_geometry(Geometry::Bulk);

    println!("low rate, mu = sigma = gamma");
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "gamma", "corner", "corner_lr", "bulk", "bulk_lr"
    );
    for gamma in [0.001, 0.01, 0.05] {
        let rates = RateThresholds::equal(gamma)?;
        println!(
            "{gamma:>8.3} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            secure_connectivity(&corner, &rates, &spec)?.p_sc,
            psc_low_rate(&corner, &rates, &spec)?,
            secure_connectivity(&bulk, &rates, &spec)?.p_sc,
            psc_low_rate(&bulk, &rates, &spec)?,
        );
    }

    println!("\nhigh rate, u = 0.5");
    let corner = corner.with_u(0.5)?;
    let bulk = corner.with_geometry(Geometry::Bulk);
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "gamma", "corner", "corner_hr", "bulk", "bulk_hr"
    );
    for gamma in [10.0, 100.0, 1000.0] {
        let rates = RateThresholds::equal(gamma)?;
        let (co, bu) = psc_high_rate_small_u(&corner, gamma)?;
        println!(
            "{gamma:>8.0} {:>12.4e} {co:>12.4e} {:>12.4e} {bu:>12.4e}",
            secure_connectivity(&corner, &rates, &spec)?.p_sc,
            secure_connectivity(&bulk, &rates, &spec)?.p_sc,
        );
    }

    println!("\nhigh secrecy, corner eavesdropper at u = 3");
    let corner = corner.with_u(3.0)?;
    println!("{:>8} {:>12} {:>12}", "sigma", "exact", "expansion");
    for sigma in [1e-4, 1e-3, 1e-2] {
        println!(
            "{sigma:>8.0e} {:>12.6e} {:>12.6e}",
            eaves_connection(&corner, sigma, EavesGain::Averaged, &spec)?.value,
            eaves_connection_high_secrecy(&corner, sigma, &spec)?,
        );
    }
    Ok(())
}
