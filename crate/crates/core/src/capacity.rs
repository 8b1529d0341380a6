//! Average capacity with and without secrecy under rate adaptation.

use std::f64::consts::LN_2;

use crate::connectivity::{joint_connection_uncorrelated, receiver_connection, secure_connectivity};
use crate::error::{Error, Result};
use crate::model::{NetworkConfig, RateThresholds};
use crate::numerics::{integrate_1d, park, with_inner_errors, QuadratureSpec};

/// Average capacities in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    pub c_secrecy: f64,
    pub c_plain: f64,
    /// `c_plain − c_secrecy`, the rate given up for secrecy.
    pub rate_loss: f64,
}

impl CapacityResult {
    fn new(c_secrecy: f64, c_plain: f64) -> Self {
        let c_secrecy = c_secrecy.clamp(0.0, c_plain);
        Self {
            c_secrecy,
            c_plain,
            rate_loss: c_plain - c_secrecy,
        }
    }
}

/// Capacity integrand p_sc(γ)/(1 + γ) at μ = σ = γ.
pub fn integrand_psc_at(cfg: &NetworkConfig, gamma: f64, spec: &QuadratureSpec) -> Result<f64> {
    let rates = RateThresholds::equal(gamma)?;
    Ok(secure_connectivity(cfg, &rates, spec)?.p_sc / (1.0 + gamma))
}

fn plain_integrand(cfg: &NetworkConfig, gamma: f64) -> Result<f64> {
    Ok(receiver_connection(cfg, gamma)?.value / (1.0 + gamma))
}

/// `∫_G^∞ ℙ^c_r(γ)/(1+γ) dγ`, which bounds the neglected tail of both
/// capacity integrals.
fn plain_tail(cfg: &NetworkConfig, from: f64, spec: &QuadratureSpec) -> Result<f64> {
    with_inner_errors(|slot| {
        integrate_1d(
            |g| plain_integrand(cfg, g).unwrap_or_else(|e| park(slot, e)),
            from,
            f64::INFINITY,
            spec,
            &[],
        )
    })
}

/// Smallest power-of-two cut-off beyond which the receiver tail is below
/// `abs_tol`.
fn cutoff(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<f64> {
    let mut g = 16.0;
    while g < 1e12 {
        if plain_integrand(cfg, g)? < spec.abs_tol && plain_tail(cfg, g, spec)? < spec.abs_tol {
            return Ok(g);
        }
        g *= 2.0;
    }
    Err(Error::NonConvergence(
        "capacity integrand does not decay below abs_tol by gamma = 1e12".into(),
    ))
}

/// `(1/ln 2)∫₀^G f(γ)/(1+γ)·(1+γ) dγ` with `f` already divided by `1+γ`:
/// linear on `[0, 1]`, logarithmic on `[1, G]`.
fn integrate_rate<F>(f: F, upper: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    with_inner_errors(|slot| {
        let low = integrate_1d(|g| f(g).unwrap_or_else(|e| park(slot, e)), 0.0, 1.0, spec, &[])?;
        let high = integrate_1d(
            |t| {
                let g = t.exp();
                g * f(g).unwrap_or_else(|e| park(slot, e))
            },
            0.0,
            upper.ln(),
            spec,
            &[],
        )?;
        Ok((low + high) / LN_2)
    })
}

/// Average capacity without secrecy, `(1/ln 2)∫ ℙ^c_r(γ)/(1+γ) dγ`.
pub fn avg_capacity(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<f64> {
    let upper = cutoff(cfg, spec)?;
    integrate_rate(|g| plain_integrand(cfg, g), upper, spec)
}

/// Average secrecy capacity with known CSI, integrating secure connectivity
/// at μ = σ = γ against the derivative of the rate function.
pub fn avg_secrecy_capacity(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<CapacityResult> {
    let upper = cutoff(cfg, spec)?;
    let plain = integrate_rate(|g| plain_integrand(cfg, g), upper, spec)?;
    let secrecy = integrate_rate(|g| integrand_psc_at(cfg, g, spec), upper, spec)?;
    Ok(CapacityResult::new(secrecy, plain))
}

/// As [`avg_secrecy_capacity`] with the joint connection probability
/// replaced by the product of the marginals, i.e. ignoring the correlation
/// of the interference at the two locations.
pub fn avg_secrecy_capacity_uncorrelated(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<CapacityResult> {
    let upper = cutoff(cfg, spec)?;
    let plain = integrate_rate(|g| plain_integrand(cfg, g), upper, spec)?;
    let secrecy = integrate_rate(
        |g| {
            let p = receiver_connection(cfg, g)?.value;
            let joint = joint_connection_uncorrelated(cfg, g, g, spec)?;
            Ok((p - joint).max(0.0) / (1.0 + g))
        },
        upper,
        spec,
    )?;
    Ok(CapacityResult::new(secrecy, plain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Geometry;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn integrand_vanishes_at_zero_threshold() {
        let c = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 1.0).unwrap();
        assert_eq!(integrand_psc_at(&c, 0.0, &spec()).unwrap(), 0.0);
    }

    #[test]
    fn integrand_is_psc_over_one_plus_gamma() {
        let c = NetworkConfig::new(Geometry::Bulk, 0.2, 4.0, 1.0, 1.0).unwrap();
        let gamma = 3.0;
        let psc = secure_connectivity(&c, &RateThresholds::equal(gamma).unwrap(), &spec())
            .unwrap()
            .p_sc;
        assert_eq!(integrand_psc_at(&c, gamma, &spec()).unwrap(), psc / (1.0 + gamma));
    }

    #[test]
    fn plain_capacity_reference() {
        let corner = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 1.0).unwrap();
        let bulk = corner.with_geometry(Geometry::Bulk).with_lambda(0.05).unwrap();
        let a = avg_capacity(&corner, &spec()).unwrap();
        let b = avg_capacity(&bulk, &spec()).unwrap();
        assert!((a - 3.3629).abs() < 1e-4);
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn secrecy_capacity_grows_with_separation() {
        let base = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 0.5).unwrap();
        let values: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&u| {
                avg_secrecy_capacity(&base.with_u(u).unwrap(), &spec())
                    .unwrap()
                    .c_secrecy
            })
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]), "{values:?}");
    }

    #[test]
    fn far_eavesdropper_leaves_capacity_intact() {
        let c = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 20.0).unwrap();
        let r = avg_secrecy_capacity(&c, &spec()).unwrap();
        assert!(r.rate_loss >= 0.0 && r.rate_loss < 1e-2, "{r:?}");
    }
}
