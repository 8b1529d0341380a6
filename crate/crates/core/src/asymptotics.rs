//! Low-rate and high-rate approximations of secure connectivity and the
//! threshold that maximises it.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::interference::{correlation, eaves_stats_numeric, receiver_stats, InterferenceStats};
use crate::model::{expect_over_theta_for, Geometry, NetworkConfig, RateThresholds};
use crate::numerics::{maximize_unimodal, sinc_fn, QuadratureSpec};

/// Constants of the high-rate expansions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    /// Coefficient of λγ^{2/η} in the receiver connection exponent at the corner.
    pub c1: f64,
    /// Coefficient of λγ^{2/η} in the joint connection exponent at the corner.
    pub c2: f64,
    /// Coefficient of λuγ^{1/η} in the joint connection exponent at the corner.
    pub c3: f64,
    /// λπ / (4 sinc(2π/η)).
    pub x: f64,
    /// λu(u − d0) / sinc(π/η).
    pub y: f64,
    /// Expansion radius (γ/g(d0))^{1/η}.
    pub r0: f64,
    /// r0 + u.
    pub r1: f64,
}

impl AsymptoticCoefficients {
    /// Two-exponential approximation of secure connectivity at the corner
    /// and in the bulk for zero secrecy rate.
    pub fn small_u_psc(&self, lambda: f64, eta: f64, u: f64, gamma: f64) -> (f64, f64) {
        let t2 = gamma.powf(2.0 / eta);
        let t1 = gamma.powf(1.0 / eta);
        let corner = (-lambda * self.c1 * t2).exp() - (-lambda * (self.c2 * t2 + self.c3 * u * t1)).exp();
        let bulk = (-4.0 * lambda * self.c1 * t2).exp() - (-4.0 * lambda * self.c2 * t2).exp();
        (corner, bulk)
    }
}

fn leading_constants(eta: f64) -> (f64, f64, f64) {
    let c1 = PI / 4.0 * (eta / (eta + 2.0) + eta / ((eta - 1.0) * (eta - 2.0)));
    let c2 = PI / 4.0
        * (eta / (eta + 1.0)
            + (eta + 2.0) / ((eta - 1.0) * (eta - 2.0))
            + (5.0 * eta - 2.0) / (2.0 + eta * (6.0 * eta - 7.0)));
    let c3 = FRAC_PI_2 + 3.0 * eta / ((4.0 * eta * eta - 1.0) * (eta - 1.0))
        - (2.0 * eta + 12.0 * eta * eta * (PI - 1.0) - PI * (7.0 * eta - 1.0)) / (2.0 + 2.0 * eta * (12.0 * eta - 7.0));
    (c1, c2, c3)
}

/// High-rate coefficients for pathloss exponent `eta`; `x`, `y`, `r0` and
/// `r1` use the density, distances and link gain of `cfg` and the SIR
/// threshold `gamma`.
pub fn high_rate_coefficients(eta: f64, cfg: &NetworkConfig, gamma: f64) -> Result<AsymptoticCoefficients> {
    if !(eta > 2.0 && eta.is_finite()) {
        return Err(Error::Domain(format!("eta must exceed 2, got {eta}")));
    }
    if !(gamma >= 0.0) {
        return Err(Error::Domain(format!("gamma must be non-negative, got {gamma}")));
    }
    let (c1, c2, c3) = leading_constants(eta);
    let r0 = (gamma / crate::model::pathloss(cfg.d0, eta)).powf(1.0 / eta);
    Ok(AsymptoticCoefficients {
        c1,
        c2,
        c3,
        x: cfg.lambda * PI / (4.0 * sinc_fn(2.0 * PI / eta)),
        y: cfg.lambda * cfg.u * (cfg.u - cfg.d0) / sinc_fn(PI / eta),
        r0,
        r1: r0 + cfg.u,
    })
}

/// Everything the low-rate expansion needs besides the thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowRateInputs {
    /// E{Z⁻¹} over the transmitter angle.
    pub inv_gain: f64,
    /// E{Z⁻²} over the transmitter angle.
    pub inv_gain_sq: f64,
    pub receiver: InterferenceStats,
    /// Eavesdropper moments, always taken from quadrature.
    pub eaves: InterferenceStats,
    pub rho: f64,
}

/// Gathers the moments and the correlation coefficient for [`psc_low_rate`].
pub fn low_rate_inputs(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<LowRateInputs> {
    let inv_gain = expect_over_theta_for(cfg, |t| 1.0 / cfg.eaves_gain(t), spec)?;
    let inv_gain_sq = expect_over_theta_for(cfg, |t| cfg.eaves_gain(t).powi(-2), spec)?;
    Ok(LowRateInputs {
        inv_gain,
        inv_gain_sq,
        receiver: receiver_stats(cfg),
        eaves: eaves_stats_numeric(cfg, spec)?,
        rho: correlation(cfg, spec)?.rho,
    })
}

/// Second-order expansion of secure connectivity around μ = σ = 0, from
/// precomputed inputs.
pub fn psc_low_rate_with(cfg: &NetworkConfig, inputs: &LowRateInputs, rates: &RateThresholds) -> f64 {
    let s = rates.mu / cfg.link_gain();
    let sigma = rates.sigma;
    let LowRateInputs {
        inv_gain,
        inv_gain_sq,
        receiver,
        eaves,
        rho,
    } = *inputs;
    sigma * inv_gain * eaves.mean
        - sigma * sigma / 2.0 * (inv_gain_sq * eaves.variance + (inv_gain * eaves.mean).powi(2))
        - 2.0 * rho * s * sigma * inv_gain * (receiver.variance * eaves.variance).sqrt()
}

/// Second-order expansion of secure connectivity around μ = σ = 0.
pub fn psc_low_rate(cfg: &NetworkConfig, rates: &RateThresholds, spec: &QuadratureSpec) -> Result<f64> {
    Ok(psc_low_rate_with(cfg, &low_rate_inputs(cfg, spec)?, rates))
}

/// The low-rate expansion specialised to μ = σ = γ.
pub fn psc_low_rate_zero_secrecy_with(cfg: &NetworkConfig, inputs: &LowRateInputs, gamma: f64) -> f64 {
    let LowRateInputs {
        inv_gain,
        inv_gain_sq,
        receiver,
        eaves,
        rho,
    } = *inputs;
    gamma * inv_gain * eaves.mean
        - gamma * gamma / 2.0
            * (inv_gain_sq * eaves.variance
                + (inv_gain * eaves.mean).powi(2)
                + 4.0 * rho / cfg.link_gain() * inv_gain * (receiver.variance * eaves.variance).sqrt())
}

pub fn psc_low_rate_zero_secrecy(cfg: &NetworkConfig, gamma: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(psc_low_rate_zero_secrecy_with(cfg, &low_rate_inputs(cfg, spec)?, gamma))
}

/// Bounds for a distant eavesdropper at high rate: a lower bound at the
/// corner with the eavesdropper gain fixed at its maximum |u − d0|^{−η},
/// and an upper bound in the bulk with the gain fixed at its minimum
/// (d0² + u²)^{−η/2}. Returns `(corner, bulk)`; `cfg.geometry` is ignored.
pub fn psc_high_rate_large_u(cfg: &NetworkConfig, rates: &RateThresholds) -> Result<(f64, f64)> {
    if cfg.u <= cfg.d0 {
        return Err(Error::Regime(format!(
            "large-separation bounds need u > d0, got u = {}, d0 = {}",
            cfg.u, cfg.d0
        )));
    }
    let eta = cfg.eta;
    let k = high_rate_coefficients(eta, cfg, rates.mu)?;
    let s = rates.mu / cfg.link_gain();
    let (s2, sig2, sig1) = (
        s.powf(2.0 / eta),
        rates.sigma.powf(2.0 / eta),
        rates.sigma.powf(1.0 / eta),
    );
    let gap = cfg.u - cfg.d0;
    let corner = (-k.x * s2).exp() * (1.0 - (-k.x * sig2 * gap * gap - k.y * sig1).exp());
    let far_sq = cfg.d0 * cfg.d0 + cfg.u * cfg.u;
    let bulk = (-4.0 * k.x * s2).exp() * (1.0 - (-4.0 * k.x * sig2 * far_sq).exp());
    Ok((corner, bulk))
}

fn check_small_u_regime(cfg: &NetworkConfig, gamma: f64) -> Result<()> {
    if cfg.u > 1.0 || gamma < 1.0 || cfg.d0 != 1.0 {
        return Err(Error::Regime(format!(
            "small-separation approximation needs u <= 1, gamma >= 1, d0 = 1; got u = {}, gamma = {gamma}, d0 = {}",
            cfg.u, cfg.d0
        )));
    }
    Ok(())
}

/// Two-exponential high-rate approximation for a nearby eavesdropper at zero
/// secrecy rate. Returns `(corner, bulk)`; `cfg.geometry` is ignored.
pub fn psc_high_rate_small_u(cfg: &NetworkConfig, gamma: f64) -> Result<(f64, f64)> {
    check_small_u_regime(cfg, gamma)?;
    let k = high_rate_coefficients(cfg.eta, cfg, gamma)?;
    Ok(k.small_u_psc(cfg.lambda, cfg.eta, cfg.u, gamma))
}

/// High-rate approximation of the receiver connection probability,
/// e^{−λc1γ^{2/η}} at the corner and e^{−4λc1γ^{2/η}} in the bulk.
pub fn receiver_connection_high_rate(cfg: &NetworkConfig, gamma: f64) -> Result<f64> {
    check_small_u_regime(cfg, gamma)?;
    let (c1, _, _) = leading_constants(cfg.eta);
    let scale = sector_scale(cfg.geometry);
    Ok((-scale * cfg.lambda * c1 * gamma.powf(2.0 / cfg.eta)).exp())
}

/// High-rate approximation of the joint connection probability at zero
/// secrecy rate. The bulk form carries no distance correction.
pub fn joint_connection_high_rate(cfg: &NetworkConfig, gamma: f64) -> Result<f64> {
    check_small_u_regime(cfg, gamma)?;
    let (_, c2, c3) = leading_constants(cfg.eta);
    let t2 = gamma.powf(2.0 / cfg.eta);
    let exponent = match cfg.geometry {
        Geometry::Corner => cfg.lambda * (c2 * t2 + c3 * cfg.u * gamma.powf(1.0 / cfg.eta)),
        Geometry::Bulk => 4.0 * cfg.lambda * c2 * t2,
    };
    Ok((-exponent).exp())
}

fn sector_scale(geometry: Geometry) -> f64 {
    match geometry {
        Geometry::Corner => 1.0,
        Geometry::Bulk => 4.0,
    }
}

/// SIR thresholds maximising the two-exponential approximation at the
/// corner and in the bulk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalThreshold {
    /// (log(c2/c1) / (λ(c2 − c1)))^{η/2}.
    pub corner: f64,
    /// 2^{−η} times the corner optimum.
    pub bulk: f64,
    /// Numerical argmax of e^{−λc1γ^{2/η}} − e^{−λc2γ^{2/η}}.
    pub corner_numeric: f64,
    /// Numerical argmax of e^{−4λc1γ^{2/η}} − e^{−4λc2γ^{2/η}}.
    pub bulk_numeric: f64,
}

pub fn optimal_threshold(cfg: &NetworkConfig) -> Result<OptimalThreshold> {
    let eta = cfg.eta;
    let (c1, c2, _) = leading_constants(eta);
    let corner = ((c2 / c1).ln() / (cfg.lambda * (c2 - c1))).powf(eta / 2.0);
    let bulk = 2f64.powf(-eta) * corner;
    let argmax = |scale: f64| -> Result<f64> {
        let a = scale * cfg.lambda * c1;
        let b = scale * cfg.lambda * c2;
        let t = maximize_unimodal(|t| (-a * t).exp() - (-b * t).exp(), 0.0, 50.0 / a, 1e-12)?;
        Ok(t.powf(eta / 2.0))
    };
    Ok(OptimalThreshold {
        corner,
        bulk,
        corner_numeric: argmax(1.0)?,
        bulk_numeric: argmax(4.0)?,
    })
}

/// The η = 4 corner optimum in the rational form 11025·log(54/35)/(361λ²π²).
/// It lacks the square on the logarithm and therefore disagrees with
/// [`optimal_threshold`]; it is provided for comparison only.
pub fn optimal_threshold_eta4_rational(lambda: f64) -> f64 {
    11025.0 * (54.0f64 / 35.0).ln() / (361.0 * lambda * lambda * PI * PI)
}

/// Expansion of the corner eavesdropper's connection probability around
/// σ = 0.
pub fn eaves_connection_high_secrecy(cfg: &NetworkConfig, sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    if cfg.geometry != Geometry::Corner {
        return Err(Error::Regime(
            "high-secrecy expansion is defined at the corner only".into(),
        ));
    }
    if !(sigma >= 0.0) {
        return Err(Error::Domain(format!("sigma must be non-negative, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(1.0);
    }
    let eta = cfg.eta;
    let weight = ((eta - 1.0) * eta * PI - (4.0 - PI + (PI - 2.0) * eta) * cfg.u.powf(2.0 - eta))
        / (2.0 * (eta - 1.0) * (eta - 2.0));
    let moment = expect_over_theta_for(cfg, |t| cfg.eaves_gain(t).powf(-2.0 / eta), spec)?;
    Ok(1.0 - cfg.lambda * sigma.powf(2.0 / eta) * weight * moment)
}

/// Region-by-region oracles for the corner cross integral.
#[cfg(test)]
mod regions {
    use std::f64::consts::{FRAC_PI_2, PI};

    use crate::error::Result;
    use crate::model::Pathloss;
    use crate::numerics::{integrate_1d, integrate_polar_with, QuadratureSpec, Sector};

    /// Leading-order pieces of the corner cross integral, each as the pair of
    /// coefficients of (γ^{2/η}, uγ^{1/η}).
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub(crate) struct RegionTerms {
        pub near: (f64, f64),
        pub far_receiver: (f64, f64),
        pub far_eaves: (f64, f64),
        pub far_cross: (f64, f64),
        pub far_higher: (f64, f64),
    }

    impl RegionTerms {
        pub(crate) fn new(eta: f64) -> Self {
            let base = eta * PI / (4.0 * (eta - 1.0) * (eta - 2.0));
            Self {
                near: (eta * PI / (4.0 * (1.0 + eta)), eta / (2.0 * eta + 1.0)),
                far_receiver: (base, 0.0),
                far_eaves: (base, eta / ((2.0 * eta - 1.0) * (eta - 1.0))),
                far_cross: (
                    PI / (4.0 * (eta - 1.0)),
                    -(2.0 * eta * (PI - 1.0) - PI) / (4.0 * eta - 2.0),
                ),
                far_higher: (
                    (5.0 * eta - 2.0) * PI / (4.0 * (2.0 + eta * (6.0 * eta - 7.0))),
                    -(2.0 * eta + 12.0 * eta * eta * (PI - 1.0) - PI * (7.0 * eta - 1.0))
                        / (2.0 + 2.0 * eta * (12.0 * eta - 7.0)),
                ),
            }
        }

        /// Leading coefficients of the far region r > r1.
        pub(crate) fn far(&self) -> (f64, f64) {
            (
                self.far_receiver.0 + self.far_eaves.0 - self.far_cross.0 + self.far_higher.0,
                self.far_receiver.1 + self.far_eaves.1 - self.far_cross.1 + self.far_higher.1,
            )
        }

        /// Leading coefficients of near plus far regions, i.e. (c2, c3).
        pub(crate) fn total(&self) -> (f64, f64) {
            let far = self.far();
            (self.near.0 + far.0, self.near.1 + far.1)
        }
    }

    fn quadrant_breaks(u: f64, r: f64, out: &mut Vec<f64>) {
        crate::interference::unit_crossing(u, r, FRAC_PI_2, out);
    }

    /// ∫∫_{r<r0} (1 − 1/(γ²g(r)g(d))) dS over the quadrant, r0 = γ^{1/η}.
    pub(crate) fn near_region_integral(eta: f64, u: f64, gamma: f64, spec: &QuadratureSpec) -> Result<f64> {
        let g = Pathloss::new(eta);
        let r0 = gamma.powf(1.0 / eta);
        let mut breaks = vec![u, (u - 1.0).abs(), u + 1.0];
        breaks.retain(|b| *b > 0.0 && *b < r0);
        let sector = Sector::new(r0, FRAC_PI_2).with_breaks(breaks);
        integrate_polar_with(
            |r, phi| {
                let d2 = crate::interference::distance_sq(r, phi, u);
                1.0 - 1.0 / (gamma * gamma * g.at_sq(r * r) * g.at_sq(d2))
            },
            &sector,
            |r, out| quadrant_breaks(u, r, out),
            spec,
        )
    }

    /// ∫∫_{r>r1} (1 − (1 − γg(r) + γ²g²(r))(1 − γg(d) + γ²g²(d))) dS over the
    /// quadrant, r1 = γ^{1/η} + u.
    pub(crate) fn far_region_integral(eta: f64, u: f64, gamma: f64, spec: &QuadratureSpec) -> Result<f64> {
        let g = Pathloss::new(eta);
        let r1 = gamma.powf(1.0 / eta) + u;
        crate::numerics::with_inner_errors(|slot| {
            let inner_spec = spec.scaled(0.1);
            integrate_1d(
                |r| {
                    let a = gamma * g.at_sq(r * r);
                    let ra = 1.0 - a + a * a;
                    let inner = integrate_1d(
                        |phi| {
                            let b = gamma * g.at_sq(crate::interference::distance_sq(r, phi, u));
                            1.0 - ra * (1.0 - b + b * b)
                        },
                        0.0,
                        FRAC_PI_2,
                        &inner_spec,
                        &[],
                    );
                    r * inner.unwrap_or_else(|e| crate::numerics::park(slot, e))
                },
                r1,
                f64::INFINITY,
                spec,
                &[],
            )
        })
    }
}
