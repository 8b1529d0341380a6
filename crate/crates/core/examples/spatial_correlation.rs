//! Correlation of interference between the receiver and an eavesdropper at
//! distance u, at the corner of a quadrant and in the bulk.

use secrecy_geom::interference::correlation;
use secrecy_geom::model::{Geometry, NetworkConfig};
use secrecy_geom::numerics::QuadratureSpec;

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:>5} {:>12} {:>12}", "u", "rho_corner", "rho_bulk");
    for u in [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
        let corner = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, u)?;
        let bulk = corner.with_geometry(Geometry::Bulk);
        let rho_co = correlation(&corner, &spec)?.rho;
        let rho_bu = correlation(&bulk, &spec)?.rho;
        println!("{u:>5.2} {rho_co:>12.6} {rho_bu:>12.6}");
    }
    Ok(())
}
