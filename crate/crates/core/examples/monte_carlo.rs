//! Monte Carlo estimates of connection, secure connectivity, capacity and
//! correlation next to the analytic values.

use secrecy_geom::capacity::avg_secrecy_capacity;
use secrecy_geom::connectivity::secure_connectivity;
use secrecy_geom::interference::correlation;
use secrecy_geom::model::{Geometry, NetworkConfig, RateThresholds};
use secrecy_geom::numerics::QuadratureSpec;
use secrecy_geom::simulator::{SampleSet, SimConfig};

fn main() -> secrecy_geom::Result<()> {
    let spec = QuadratureSpec::default();
    let cfg = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 1.0)?;
    let rates = RateThresholds::equal(1.0)?;
    let sim = SimConfig::new(&cfg, 42, 200_000)?;
    let set = SampleSet::generate(&cfg, &sim)?;

    let sc = secure_connectivity(&cfg, &rates, &spec)?;
    let rows = [
        ("p_conn", set.connection(rates.mu), sc.p_conn),
        ("p_sc", set.secure_connectivity(&rates), sc.p_sc),
        ("capacity", set.capacity(), avg_secrecy_capacity(&cfg, &spec)?.c_secrecy),
        ("rho", set.correlation(), correlation(&cfg, &spec)?.rho),
    ];
    println!("{} draws, truncation radius {:.1}", set.len(), sim.truncation_radius);
    println!(
        "{:>9} {:>10} {:>10} {:>10} {:>6}",
        "quantity", "mc", "stderr", "analytic", "3se"
    );
    for (name, est, exact) in rows {
        println!(
            "{name:>9} {:>10.5} {:>10.5} {exact:>10.5} {:>6}",
            est.mean,
            est.std_error,
            if est.agrees_with(exact, 3.0) { "ok" } else { "off" }
        );
    }
    Ok(())
}
