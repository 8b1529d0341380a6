//! Connection probabilities of the receiver and the eavesdropper, their
//! joint probability under correlated interference, and secure connectivity.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::interference::{boundary_angle, distance_sq, folded_sector, radial_breaks, unit_crossing};
use crate::model::{Geometry, NetworkConfig, Pathloss, RateThresholds};
use crate::numerics::{hyp2f1, integrate_1d, integrate_polar_with, sinc_fn, QuadratureSpec, Sector};

/// A connection probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionProb {
    pub value: f64,
}

impl ConnectionProb {
    fn new(value: f64) -> Self {
        Self {
            value: value.clamp(0.0, 1.0),
        }
    }
}

/// Receiver connection probability, joint connection probability and their
/// difference, the probability of secure connectivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyProb {
    pub p_conn: f64,
    pub joint: f64,
    pub p_sc: f64,
}

/// Signal level on the eavesdropper channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EavesGain {
    /// Transmitter at a known location, gain `z` in (0, 1].
    Fixed(f64),
    /// Transmitter angle uniform on `[0, π/2]`; the result is averaged.
    Averaged,
}

fn check_threshold(name: &str, value: f64) -> Result<()> {
    if value >= 0.0 && !value.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be non-negative, got {value}")))
    }
}

fn check_gain(z: f64) -> Result<()> {
    if z > 0.0 && z <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("channel gain must lie in (0, 1], got {z}")))
    }
}

/// `∫_a^∞ s r^{−η} / (1 + s r^{−η}) r dr` for `a ≥ 1`.
pub fn tail_laplace_exponent(eta: f64, s: f64, a: f64) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    let b = (eta - 2.0) / eta;
    let c = (2.0 * eta - 2.0) / eta;
    Ok(s * a.powf(2.0 - eta) * hyp2f1(1.0, b, c, -s / a.powf(eta))? / (eta - 2.0))
}

/// `∫_0^∞ s g(r) / (1 + s g(r)) r dr`, the per-radian exponent of the
/// Laplace transform of the interference.
pub fn radial_laplace_exponent(eta: f64, s: f64) -> Result<f64> {
    Ok(s / (2.0 * (1.0 + s)) + tail_laplace_exponent(eta, s, 1.0)?)
}

/// Probability that the receiver SIR exceeds μ.
pub fn receiver_connection(cfg: &NetworkConfig, mu: f64) -> Result<ConnectionProb> {
    check_threshold("mu", mu)?;
    let s = mu / cfg.link_gain();
    let exponent = cfg.lambda * cfg.sector_angle() * radial_laplace_exponent(cfg.eta, s)?;
    Ok(ConnectionProb::new((-exponent - s * cfg.noise).exp()))
}

/// [`receiver_connection`] by direct quadrature of the probability
/// generating functional, without the hypergeometric closed form.
pub fn receiver_connection_quadrature(cfg: &NetworkConfig, mu: f64, spec: &QuadratureSpec) -> Result<ConnectionProb> {
    check_threshold("mu", mu)?;
    let s = mu / cfg.link_gain();
    let g = Pathloss::new(cfg.eta);
    let knee = s.powf(1.0 / cfg.eta).max(1.0);
    let integrand = |r: f64| {
        let sg = s * g.at_sq(r * r);
        sg / (1.0 + sg) * r
    };
    let near = integrate_1d(integrand, 0.0, knee, spec, &[1.0])?;
    let tail = integrate_1d(
        |t| {
            let r = knee * t.exp();
            integrand(r) * r
        },
        0.0,
        f64::INFINITY,
        spec,
        &[],
    )?;
    let radial = near + tail;
    let exponent = cfg.lambda * cfg.sector_angle() * radial;
    Ok(ConnectionProb::new((-exponent - s * cfg.noise).exp()))
}

/// Averages `f(z(θ))` over the transmitter angle, evaluating the saturated
/// part `z = 1` once.
pub(crate) fn average_over_gain<F>(cfg: &NetworkConfig, spec: &QuadratureSpec, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let kink = match cfg.theta_kink() {
        Some(theta) => theta,
        None if cfg.eaves_gain(FRAC_PI_2) >= 1.0 => FRAC_PI_2,
        None => 0.0,
    };
    let saturated = if kink > 0.0 { f(1.0)? * kink } else { 0.0 };
    if kink >= FRAC_PI_2 {
        return Ok(saturated * 2.0 / PI);
    }
    let mut failure = None;
    let varying = integrate_1d(
        |theta| match f(cfg.eaves_gain(theta)) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        kink,
        FRAC_PI_2,
        spec,
        &[],
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((saturated + varying?) * 2.0 / PI)
}

fn with_gain<F>(cfg: &NetworkConfig, gain: EavesGain, spec: &QuadratureSpec, f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f = f;
    match gain {
        EavesGain::Fixed(z) => {
            check_gain(z)?;
            f(z)
        }
        EavesGain::Averaged => average_over_gain(cfg, spec, f),
    }
}

/// Eavesdropper connection probability in the bulk.
pub fn eaves_connection_bulk(
    cfg: &NetworkConfig,
    sigma: f64,
    gain: EavesGain,
    spec: &QuadratureSpec,
) -> Result<ConnectionProb> {
    check_threshold("sigma", sigma)?;
    if sigma == 0.0 {
        return Ok(ConnectionProb::new(1.0));
    }
    let value = with_gain(cfg, gain, spec, |z| {
        let se = sigma / z;
        let exponent = cfg.lambda * 2.0 * PI * radial_laplace_exponent(cfg.eta, se)?;
        Ok((-exponent - se * cfg.noise).exp())
    })?;
    Ok(ConnectionProb::new(value))
}

/// Angular measure of the quadrant within the unit disk around the
/// eavesdropper, times one half: `∫_0^1 φ_co(u, r) r dr` for `u < 1`.
fn near_field_area(u: f64) -> f64 {
    if u >= 1.0 {
        PI / 2.0
    } else {
        0.5 * (PI + u * (1.0 - u * u).sqrt() - u.acos())
    }
}

/// `∫_a^∞ (π − arccos(u/r)) s_e r / (s_e + r^η) dr`, the integrals I_1
/// (`a = 1`, `u < 1`) and I_u (`a = u ≥ 1`).
pub fn boundary_tail_integral(eta: f64, se: f64, u: f64, spec: &QuadratureSpec) -> Result<f64> {
    let a = u.max(1.0);
    let knee = se.powf(1.0 / eta);
    integrate_1d(
        |r| boundary_angle(u, r) * se * r / (se + r.powf(eta)),
        a,
        f64::INFINITY,
        spec,
        &[knee, 2.0 * a],
    )
}

fn corner_exponent_fixed(cfg: &NetworkConfig, se: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (eta, u) = (cfg.eta, cfg.u);
    if u < 1.0 {
        let near = se / (1.0 + se) * near_field_area(u);
        Ok(cfg.lambda * (near + boundary_tail_integral(eta, se, u, spec)?))
    } else {
        let inner = se / (2.0 * (1.0 + se)) + tail_laplace_exponent(eta, se, 1.0)? - tail_laplace_exponent(eta, se, u)?;
        Ok(cfg.lambda * (PI * inner + boundary_tail_integral(eta, se, u, spec)?))
    }
}

/// Eavesdropper connection probability on the boundary of the quadrant,
/// at `(u, 0)`, with I_1 and I_u by quadrature.
pub fn eaves_connection_corner(
    cfg: &NetworkConfig,
    sigma: f64,
    gain: EavesGain,
    spec: &QuadratureSpec,
) -> Result<ConnectionProb> {
    check_threshold("sigma", sigma)?;
    if sigma == 0.0 {
        return Ok(ConnectionProb::new(1.0));
    }
    let value = with_gain(cfg, gain, spec, |z| {
        let se = sigma / z;
        Ok((-corner_exponent_fixed(cfg, se, spec)? - se * cfg.noise).exp())
    })?;
    Ok(ConnectionProb::new(value))
}

/// Eavesdropper connection probability for either geometry.
pub fn eaves_connection(
    cfg: &NetworkConfig,
    sigma: f64,
    gain: EavesGain,
    spec: &QuadratureSpec,
) -> Result<ConnectionProb> {
    match cfg.geometry {
        Geometry::Corner => eaves_connection_corner(cfg, sigma, gain, spec),
        Geometry::Bulk => eaves_connection_bulk(cfg, sigma, gain, spec),
    }
}

/// Closed-form lower bound on I_1 (`u < 1`) or I_u (`u ≥ 1`) from
/// `π − arccos(u/r) > π/2 + u/r`.
pub fn boundary_tail_lower_bound(eta: f64, se: f64, u: f64) -> Result<f64> {
    if se == 0.0 {
        return Ok(0.0);
    }
    let a = u.max(1.0);
    let spread = u * se.powf(1.0 / eta) / sinc_fn(PI / eta);
    let near = u * a * hyp2f1(1.0, 1.0 / eta, (eta + 1.0) / eta, -a.powf(eta) / se)?;
    let far = PI / 2.0 * tail_laplace_exponent(eta, se, a)?;
    Ok(spread - near + far)
}

/// Upper bound on [`eaves_connection_corner`] for a fixed gain `z`,
/// substituting the closed-form lower bounds on I_1 and I_u.
pub fn eaves_connection_corner_bound(cfg: &NetworkConfig, sigma: f64, z: f64) -> Result<ConnectionProb> {
    check_threshold("sigma", sigma)?;
    check_gain(z)?;
    if sigma == 0.0 {
        return Ok(ConnectionProb::new(1.0));
    }
    let (eta, u) = (cfg.eta, cfg.u);
    let se = sigma / z;
    let bound = boundary_tail_lower_bound(eta, se, u)?;
    let exponent = if u < 1.0 {
        cfg.lambda * (se / (1.0 + se) * near_field_area(u) + bound)
    } else {
        let inner = se / (2.0 * (1.0 + se)) + tail_laplace_exponent(eta, se, 1.0)? - tail_laplace_exponent(eta, se, u)?;
        cfg.lambda * (PI * inner + bound)
    };
    Ok(ConnectionProb::new((-exponent - se * cfg.noise).exp()))
}

/// `∫_S A(r)(1 − B(d)) dS` with `A = 1/(1 + s g(r))`, `B = 1/(1 + s_e g(d))`.
fn cross_exponent(cfg: &NetworkConfig, s: f64, se: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (phi_hi, fold) = folded_sector(cfg);
    let g = Pathloss::new(cfg.eta);
    let u = cfg.u;
    let mut breaks = radial_breaks(cfg);
    let knee = se.powf(1.0 / cfg.eta);
    if knee > 1.0 {
        breaks.extend([knee, u + knee]);
        if knee > u {
            breaks.push(knee - u);
        }
    }
    let sector = Sector::new(f64::INFINITY, phi_hi).with_breaks(breaks);
    let integral = integrate_polar_with(
        |r, phi| {
            let a = 1.0 / (1.0 + s * g.at_sq(r * r));
            let sgd = se * g.at_sq(distance_sq(r, phi, u));
            a * sgd / (1.0 + sgd)
        },
        &sector,
        |r, out| unit_crossing(u, r, phi_hi, out),
        spec,
    )?;
    Ok(fold * integral)
}

/// Joint probability that both the receiver and the eavesdropper connect,
/// for a transmitter at a known location with eavesdropper gain `z`.
pub fn joint_connection_fixed(cfg: &NetworkConfig, mu: f64, sigma: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_threshold("mu", mu)?;
    check_threshold("sigma", sigma)?;
    check_gain(z)?;
    let s = mu / cfg.link_gain();
    let se = sigma / z;
    let phi = cfg.sector_angle();
    let noise = (-(s + se) * cfg.noise).exp();
    if cfg.u == 0.0 {
        let exponent = cfg.lambda * phi * radial_laplace_exponent(cfg.eta, s + se)?;
        return Ok((-exponent).exp() * noise);
    }
    let receiver = phi * radial_laplace_exponent(cfg.eta, s)?;
    let cross = if se == 0.0 {
        0.0
    } else {
        cross_exponent(cfg, s, se, &spec.scaled(0.1))?
    };
    Ok((-cfg.lambda * (receiver + cross)).exp() * noise)
}

/// Joint connection probability 𝒥 averaged over the transmitter angle.
///
/// A co-located eavesdropper (u = 0) observes the very same interference
/// as the receiver, so 𝒥 reduces to the Laplace transform at `s + s_e`.
pub fn joint_connection(cfg: &NetworkConfig, mu: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_threshold("mu", mu)?;
    check_threshold("sigma", sigma)?;
    if sigma == 0.0 {
        return Ok(receiver_connection(cfg, mu)?.value);
    }
    if mu == 0.0 {
        return Ok(eaves_connection(cfg, sigma, EavesGain::Averaged, spec)?.value);
    }
    average_over_gain(cfg, spec, |z| joint_connection_fixed(cfg, mu, sigma, z, spec))
}

/// Product of the marginal connection probabilities averaged over the
/// transmitter angle, i.e. 𝒥 with the interference correlation removed.
pub fn joint_connection_uncorrelated(cfg: &NetworkConfig, mu: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    let receiver = receiver_connection(cfg, mu)?.value;
    let eaves = eaves_connection(cfg, sigma, EavesGain::Averaged, spec)?.value;
    Ok(receiver * eaves)
}

/// Probability of secure connectivity: the receiver decodes and the
/// eavesdropper does not.
pub fn secure_connectivity(cfg: &NetworkConfig, rates: &RateThresholds, spec: &QuadratureSpec) -> Result<SecrecyProb> {
    let p_conn = receiver_connection(cfg, rates.mu)?.value;
    let joint = joint_connection(cfg, rates.mu, rates.sigma, spec)?.clamp(0.0, p_conn);
    Ok(SecrecyProb {
        p_conn,
        joint,
        p_sc: p_conn - joint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn cfg(geometry: Geometry, u: f64) -> NetworkConfig {
        NetworkConfig::new(geometry, 0.2, 4.0, 1.0, u).unwrap()
    }

    #[test]
    fn receiver_reference_values() {
        let bulk = receiver_connection(&cfg(Geometry::Bulk, 1.0), 1.0).unwrap().value;
        let want = (-0.2 * 2.0 * PI * (0.25 + PI / 8.0)).exp();
        assert!((bulk - want).abs() < 1e-13);
        let corner = receiver_connection(&cfg(Geometry::Corner, 1.0), 1.0).unwrap().value;
        assert!((corner - want.powf(0.25)).abs() < 1e-13);
        assert_eq!(receiver_connection(&cfg(Geometry::Bulk, 1.0), 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn eavesdropper_with_unit_gain_matches_receiver() {
        let c = cfg(Geometry::Bulk, 1.0);
        let e = eaves_connection_bulk(&c, 1.0, EavesGain::Fixed(1.0), &spec())
            .unwrap()
            .value;
        let r = receiver_connection(&c, 1.0).unwrap().value;
        assert!((e - r).abs() < 1e-15);
    }

    #[test]
    fn zero_sigma_gives_certain_eavesdropper_connection() {
        for g in [Geometry::Corner, Geometry::Bulk] {
            let c = cfg(g, 2.0);
            assert_eq!(
                eaves_connection(&c, 0.0, EavesGain::Averaged, &spec()).unwrap().value,
                1.0
            );
        }
        let c = cfg(Geometry::Corner, 2.0);
        assert_eq!(eaves_connection_corner_bound(&c, 0.0, 0.1).unwrap().value, 1.0);
    }

    #[test]
    fn corner_eavesdropper_at_corner_matches_receiver() {
        let c = cfg(Geometry::Corner, 0.0);
        let e = eaves_connection_corner(&c, 1.0, EavesGain::Fixed(1.0), &spec())
            .unwrap()
            .value;
        let r = receiver_connection(&c, 1.0).unwrap().value;
        assert!((e - r).abs() < 1e-9);
    }

    #[test]
    fn invalid_gain_rejected() {
        let c = cfg(Geometry::Corner, 1.0);
        assert!(eaves_connection_corner(&c, 1.0, EavesGain::Fixed(1.5), &spec()).is_err());
        assert!(eaves_connection_corner_bound(&c, 1.0, 0.0).is_err());
        assert!(receiver_connection(&c, -1.0).is_err());
    }

    #[test]
    fn joint_limits() {
        let c = cfg(Geometry::Corner, 1.0);
        let j = joint_connection(&c, 1.0, 0.0, &spec()).unwrap();
        assert_eq!(j, receiver_connection(&c, 1.0).unwrap().value);
        let j = joint_connection(&c, 0.0, 1.0, &spec()).unwrap();
        let e = eaves_connection(&c, 1.0, EavesGain::Averaged, &spec()).unwrap().value;
        assert_eq!(j, e);
    }

    #[test]
    fn joint_fixed_with_zero_receiver_threshold_matches_eavesdropper() {
        for g in [Geometry::Corner, Geometry::Bulk] {
            let c = cfg(g, 1.5);
            let z = 0.2;
            let j = joint_connection_fixed(&c, 0.0, 1.0, z, &spec()).unwrap();
            let e = eaves_connection(&c, 1.0, EavesGain::Fixed(z), &spec()).unwrap().value;
            assert!((j - e).abs() < 1e-8, "{g}: {j} vs {e}");
        }
    }

    #[test]
    fn noise_scales_receiver_probability() {
        let c = cfg(Geometry::Bulk, 1.0);
        let quiet = receiver_connection(&c, 2.0).unwrap().value;
        let noisy = receiver_connection(&c.with_noise(0.1).unwrap(), 2.0).unwrap().value;
        assert!((noisy - quiet * (-0.2f64).exp()).abs() < 1e-15);
    }
}
