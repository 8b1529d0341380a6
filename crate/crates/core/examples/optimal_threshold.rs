//! SIR threshold that maximizes the high-rate secure connectivity
//! approximation, in closed form and by direct maximization.

use secrecy_geom::asymptotics::{optimal_threshold, optimal_threshold_eta4_rational};
use secrecy_geom::model::{Geometry, NetworkConfig};

fn main() -> secrecy_geom::Result<()> {
    println!(
        "{:>5} {:>6} {:>12} {:>12} {:>12} {:>12}",
        "eta", "lambda", "corner", "corner_num", "bulk", "bulk_num"
    );
    for eta in [3.0, 4.0, 6.0] {
        for lambda in [0.05, 0.2] {
            let cfg = NetworkConfig::new(Geometry::Corner, lambda, eta, 1.0, 0.5)?;
            let opt = optimal_threshold(&cfg)?;
            println!(
                "{eta:>5.1} {lambda:>6.2} {:>12.4} {:>12.4} {:>12.4} {:>12.4}",
                opt.corner, opt.corner_numeric, opt.bulk, opt.bulk_numeric
            );
        }
    }
    println!(
        "\nrational eta = 4 form at lambda = 0.2: {:.4}",
        optimal_threshold_eta4_rational(0.2)
    );
    Ok(())
}
