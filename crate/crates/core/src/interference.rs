//! Mean, variance and spatial correlation of the aggregate interference.

use std::f64::consts::PI;

use crate::error::Result;
use crate::model::{Geometry, NetworkConfig, Pathloss};
use crate::numerics::{gamma_fn, hyp2f1, integrate_1d, integrate_polar_with, QuadratureSpec, Sector};

/// First two moments of the interference power at one location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceStats {
    pub mean: f64,
    pub variance: f64,
}

/// Pearson correlation of the interference at the receiver and the
/// eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub rho: f64,
}

/// Interference moments at the receiver.
///
/// Bulk: mean ληπ/(η−2), variance 2ληπ/(η−1); the corner gets a quarter
/// of each.
pub fn receiver_stats(cfg: &NetworkConfig) -> InterferenceStats {
    let share = cfg.sector_angle() / (2.0 * PI);
    let eta = cfg.eta;
    InterferenceStats {
        mean: share * (cfg.lambda * eta * PI / (eta - 2.0)),
        variance: share * (2.0 * cfg.lambda * eta * PI / (eta - 1.0)),
    }
}

/// Angle subtended by the quadrant at radius `r` around the eavesdropper
/// sitting on its boundary at distance `u` from the corner.
pub fn boundary_angle(u: f64, r: f64) -> f64 {
    if r <= u {
        PI
    } else {
        PI - (u / r).acos()
    }
}

/// Interference moments at the eavesdropper by quadrature in the frame
/// centred on the eavesdropper.
///
/// In the bulk the moments do not depend on location, so this returns
/// [`receiver_stats`].
pub fn eaves_stats_numeric(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<InterferenceStats> {
    if cfg.geometry == Geometry::Bulk {
        return Ok(receiver_stats(cfg));
    }
    let u = cfg.u;
    let g = Pathloss::new(cfg.eta);
    let breaks = [1.0, u];
    let mean = integrate_1d(
        |r| boundary_angle(u, r) * g.at_sq(r * r) * r,
        0.0,
        f64::INFINITY,
        spec,
        &breaks,
    )?;
    let second = integrate_1d(
        |r| {
            let gr = g.at_sq(r * r);
            boundary_angle(u, r) * gr * gr * r
        },
        0.0,
        f64::INFINITY,
        spec,
        &breaks,
    )?;
    Ok(InterferenceStats {
        mean: cfg.lambda * mean,
        variance: 2.0 * cfg.lambda * second,
    })
}

/// Interference moments at the eavesdropper from the semi-closed forms,
/// branch u < 1 or u ≥ 1.
///
/// The u ≥ 1 mean branch is known to be wrong: at u = 1 and η = 4 it gives
/// 0.3927·λ against 7π/8·λ from [`eaves_stats_numeric`], and it tends to
/// λπ/(2(η−2)) instead of λπη/(2(η−2)) for large u. It is kept verbatim so
/// the discrepancy stays measurable; nothing downstream consumes it.
pub fn eaves_stats_closed(cfg: &NetworkConfig) -> Result<InterferenceStats> {
    if cfg.geometry == Geometry::Bulk {
        return Ok(receiver_stats(cfg));
    }
    let (lambda, eta, u) = (cfg.lambda, cfg.eta, cfg.u);
    if u < 1.0 {
        let root = u * (1.0 - u * u).sqrt();
        let angle = PI - u.acos();
        let mean = lambda
            * (((eta - 2.0) * root + eta * angle) / (2.0 * (eta - 2.0))
                - u * hyp2f1(0.5, (eta - 1.0) / 2.0, (eta + 1.0) / 2.0, u * u)? / ((eta - 1.0) * (eta - 2.0)));
        let variance = 2.0
            * lambda
            * (root / 2.0 + eta * angle / (2.0 * (eta - 1.0))
                - u * hyp2f1(eta - 0.5, 0.5, eta + 0.5, u * u)? / (2.0 * (eta - 1.0) * (2.0 * eta - 1.0)));
        Ok(InterferenceStats { mean, variance })
    } else {
        let mean = lambda
            * (PI / (2.0 * (eta - 2.0))
                - PI.sqrt() * u.powf(2.0 - eta) * gamma_fn((eta - 1.0) / 2.0)?
                    / (2.0 * (eta - 2.0) * gamma_fn(eta / 2.0)?));
        let gamma_eta = gamma_fn(eta)?;
        let variance =
            2.0 * lambda * (2.0 * PI * eta * gamma_eta - u.powf(2.0 - 2.0 * eta) * PI.sqrt() * gamma_fn(eta - 0.5)?)
                / (4.0 * gamma_eta * (eta - 1.0));
        Ok(InterferenceStats { mean, variance })
    }
}

/// Sector of the receiver's region and the factor that restores the full
/// integral; the bulk is folded onto the upper half plane by symmetry
/// about the receiver–eavesdropper axis.
pub(crate) fn folded_sector(cfg: &NetworkConfig) -> (f64, f64) {
    match cfg.geometry {
        Geometry::Corner => (cfg.sector_angle(), 1.0),
        Geometry::Bulk => (PI, 2.0),
    }
}

/// Radii at which integrands involving both g(r) and g(d) lose smoothness.
pub(crate) fn radial_breaks(cfg: &NetworkConfig) -> Vec<f64> {
    let u = cfg.u;
    let mut breaks = vec![1.0, u, (u - 1.0).abs(), u + 1.0];
    if cfg.geometry == Geometry::Corner && u < 1.0 {
        breaks.push((1.0 - u * u).sqrt());
    }
    breaks.retain(|b| *b > 0.0);
    breaks
}

/// Angle at which the circle of radius `r` around the receiver crosses the
/// unit circle around the eavesdropper at `(u, 0)`.
pub(crate) fn unit_crossing(u: f64, r: f64, phi_hi: f64, out: &mut Vec<f64>) {
    if u == 0.0 || r == 0.0 {
        return;
    }
    let c = (r * r + u * u - 1.0) / (2.0 * r * u);
    if c > -1.0 && c < 1.0 {
        let phi = c.acos();
        if phi > 0.0 && phi < phi_hi {
            out.push(phi);
        }
    }
}

/// Squared distance from `r·e^{jφ}` to `(u, 0)`.
#[inline]
pub(crate) fn distance_sq(r: f64, phi: f64, u: f64) -> f64 {
    (r * r + u * u - 2.0 * r * u * phi.cos()).max(0.0)
}

/// Covariance λ∫∫ g(r) g(d) dS between the two interference powers.
pub fn covariance(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<f64> {
    let (phi_hi, fold) = folded_sector(cfg);
    let g = Pathloss::new(cfg.eta);
    let u = cfg.u;
    let sector = Sector::new(f64::INFINITY, phi_hi).with_breaks(radial_breaks(cfg));
    let integral = integrate_polar_with(
        |r, phi| g.at_sq(r * r) * g.at_sq(distance_sq(r, phi, u)),
        &sector,
        |r, out| unit_crossing(u, r, phi_hi, out),
        spec,
    )?;
    Ok(cfg.lambda * fold * integral)
}

/// Pearson correlation coefficient ρ of the receiver and eavesdropper
/// interference; exactly one for a co-located eavesdropper.
pub fn correlation(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<CorrelationResult> {
    if cfg.u == 0.0 {
        return Ok(CorrelationResult { rho: 1.0 });
    }
    let var_r = receiver_stats(cfg).variance;
    let var_e = eaves_stats_numeric(cfg, spec)?.variance;
    let rho = covariance(cfg, spec)? / (var_e * var_r).sqrt();
    Ok(CorrelationResult {
        rho: rho.clamp(0.0, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn corner(u: f64) -> NetworkConfig {
        NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, u).unwrap()
    }

    #[test]
    fn receiver_moments() {
        let bulk = receiver_stats(&corner(1.0).with_geometry(Geometry::Bulk));
        assert!((bulk.mean - 0.4 * PI).abs() < 1e-14);
        assert!((bulk.variance - 1.6 * PI / 3.0).abs() < 1e-14);
        let co = receiver_stats(&corner(1.0));
        assert_eq!(co.mean * 4.0, bulk.mean);
        assert_eq!(co.variance * 4.0, bulk.variance);
    }

    #[test]
    fn eavesdropper_at_corner_sees_receiver_moments() {
        let at_corner = eaves_stats_numeric(&corner(0.0), &spec()).unwrap();
        let rx = receiver_stats(&corner(0.0));
        assert!((at_corner.mean - rx.mean).abs() < 1e-9);
        assert!((at_corner.variance - rx.variance).abs() < 1e-9);
    }

    #[test]
    fn eavesdropper_mean_at_unit_distance() {
        let s = eaves_stats_numeric(&corner(1.0), &spec()).unwrap();
        assert!((s.mean - 0.2 * 7.0 * PI / 8.0).abs() < 1e-8);
    }

    #[test]
    fn eavesdropper_mean_far_along_boundary() {
        let s = eaves_stats_numeric(&corner(50.0), &spec()).unwrap();
        assert!((s.mean - 0.2 * PI).abs() < 1e-3);
        assert!(s.mean < 0.2 * PI);
    }

    #[test]
    fn closed_forms_just_below_unit_distance() {
        let s = eaves_stats_closed(&corner(1.0 - 1e-12)).unwrap();
        assert!((s.mean - 0.2 * 7.0 * PI / 8.0).abs() < 1e-6);
        let near_zero = eaves_stats_closed(&corner(1e-9)).unwrap();
        assert!((near_zero.mean - 0.2 * PI / 2.0).abs() < 1e-8);
    }

    #[test]
    fn closed_variance_far_limit() {
        let s = eaves_stats_closed(&corner(1e3)).unwrap();
        assert!((s.variance - 0.2 * PI * 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn colocated_correlation_is_one() {
        assert_eq!(correlation(&corner(0.0), &spec()).unwrap().rho, 1.0);
    }

    #[test]
    fn unit_crossing_angle() {
        let mut out = Vec::new();
        unit_crossing(1.0, 1.0, PI, &mut out);
        assert_eq!(out.len(), 1);
        assert!((out[0] - PI / 3.0).abs() < 1e-15);
        out.clear();
        unit_crossing(3.0, 0.5, PI, &mut out);
        assert!(out.is_empty());
    }
}
