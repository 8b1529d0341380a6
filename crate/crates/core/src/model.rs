//! Network configuration, pathloss, Wyner thresholds and the eavesdropper
//! channel-gain distribution.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{integrate_1d, QuadratureSpec};

/// Where the legitimate receiver sits relative to the deployment boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// Vertex of a quadrant-shaped region.
    Corner,
    /// Deep inside an effectively infinite region.
    Bulk,
}

impl Geometry {
    /// Angular measure of the region around the receiver.
    pub fn sector_angle(self) -> f64 {
        match self {
            Geometry::Corner => FRAC_PI_2,
            Geometry::Bulk => 2.0 * PI,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Corner => "corner",
            Geometry::Bulk => "bulk",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "corner" | "co" => Ok(Geometry::Corner),
            "bulk" | "bu" => Ok(Geometry::Bulk),
            other => Err(Error::InvalidConfig(format!(
                "unknown geometry '{other}', expected 'corner' or 'bulk'"
            ))),
        }
    }
}

/// Physical parameters of the network.
///
/// `lambda` is the effective intensity of interferers after thinning by the
/// medium-access probability. The eavesdropper sits at `(u, 0)` and the
/// transmitter at `d0·e^{jθ}` with θ uniform on `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    pub geometry: Geometry,
    pub lambda: f64,
    pub eta: f64,
    pub d0: f64,
    pub u: f64,
    /// Noise power relative to the transmit power; zero gives the
    /// interference-limited model.
    pub noise: f64,
}

impl NetworkConfig {
    pub fn new(geometry: Geometry, lambda: f64, eta: f64, d0: f64, u: f64) -> Result<Self> {
        let cfg = Self {
            geometry,
            lambda,
            eta,
            d0,
            u,
            noise: 0.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::InvalidConfig(msg)) };
        check(
            self.lambda > 0.0 && self.lambda.is_finite(),
            format!("lambda must be positive and finite, got {}", self.lambda),
        )?;
        check(
            self.eta > 2.0 && self.eta.is_finite(),
            format!("eta must exceed 2, got {}", self.eta),
        )?;
        check(
            self.d0 > 0.0 && self.d0.is_finite(),
            format!("d0 must be positive and finite, got {}", self.d0),
        )?;
        check(
            self.u >= 0.0 && self.u.is_finite(),
            format!("u must be non-negative and finite, got {}", self.u),
        )?;
        check(
            self.noise >= 0.0 && self.noise.is_finite(),
            format!("noise must be non-negative and finite, got {}", self.noise),
        )
    }

    pub fn with_geometry(self, geometry: Geometry) -> Self {
        Self { geometry, ..self }
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        let cfg = Self { lambda, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_u(self, u: f64) -> Result<Self> {
        let cfg = Self { u, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_noise(self, noise: f64) -> Result<Self> {
        let cfg = Self { noise, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn sector_angle(&self) -> f64 {
        self.geometry.sector_angle()
    }

    /// Pathloss of the legitimate link, g(d0).
    pub fn link_gain(&self) -> f64 {
        pathloss(self.d0, self.eta)
    }

    /// Transmitter–eavesdropper distance for transmitter angle θ.
    pub fn eaves_distance(&self, theta: f64) -> f64 {
        eaves_distance_sq(self.d0, self.u, theta).sqrt()
    }

    /// Eavesdropper channel gain z(θ) = g(‖d0·e^{jθ} − u‖).
    pub fn eaves_gain(&self, theta: f64) -> f64 {
        Pathloss::new(self.eta).at_sq(eaves_distance_sq(self.d0, self.u, theta))
    }

    /// Angle below which the eavesdropper gain saturates at one, if any
    /// such angle lies strictly inside `(0, π/2)`.
    pub fn theta_kink(&self) -> Option<f64> {
        if self.u == 0.0 {
            return None;
        }
        let c = (self.d0 * self.d0 + self.u * self.u - 1.0) / (2.0 * self.d0 * self.u);
        if c > 0.0 && c < 1.0 {
            Some(c.acos())
        } else {
            None
        }
    }
}

fn eaves_distance_sq(d0: f64, u: f64, theta: f64) -> f64 {
    (d0 * d0 + u * u - 2.0 * d0 * u * theta.cos()).max(0.0)
}

/// Distance-based pathloss g(r) = min(1, r^−η).
pub fn pathloss(r: f64, eta: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else {
        r.powf(-eta)
    }
}

/// Pathloss evaluated from squared distances, with an integer-power fast
/// path when η/2 is a small integer.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pathloss {
    half_eta: f64,
    half_int: Option<i32>,
}

impl Pathloss {
    pub(crate) fn new(eta: f64) -> Self {
        let half_eta = 0.5 * eta;
        let half_int = (half_eta == half_eta.round() && half_eta <= 16.0).then_some(half_eta as i32);
        Self { half_eta, half_int }
    }

    #[inline]
    pub(crate) fn at_sq(&self, r2: f64) -> f64 {
        if r2 <= 1.0 {
            1.0
        } else {
            match self.half_int {
                Some(k) => 1.0 / r2.powi(k),
                None => r2.powf(-self.half_eta),
            }
        }
    }
}

/// Wyner-code rates and the SIR thresholds they induce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateThresholds {
    /// Codeword rate R_t in bits.
    pub rt: f64,
    /// Secrecy rate R_s in bits.
    pub rs: f64,
    /// Receiver threshold μ = 2^{R_t} − 1.
    pub mu: f64,
    /// Eavesdropper threshold σ = 2^{R_t − R_s} − 1.
    pub sigma: f64,
}

/// Thresholds μ = 2^{R_t} − 1 and σ = 2^{R_t − R_s} − 1.
pub fn thresholds_from_rates(rt: f64, rs: f64) -> Result<RateThresholds> {
    if !(rt.is_finite() && rs.is_finite()) {
        return Err(Error::InvalidRates(format!(
            "rates must be finite, got rt = {rt}, rs = {rs}"
        )));
    }
    if rs < 0.0 || rs > rt {
        return Err(Error::InvalidRates(format!(
            "need 0 <= rs <= rt, got rt = {rt}, rs = {rs}"
        )));
    }
    Ok(RateThresholds {
        rt,
        rs,
        mu: rt.exp2() - 1.0,
        sigma: (rt - rs).exp2() - 1.0,
    })
}

impl RateThresholds {
    /// Thresholds given directly as SIR levels with μ ≥ σ ≥ 0.
    pub fn from_sir(mu: f64, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0 && mu >= sigma) || !mu.is_finite() {
            return Err(Error::InvalidRates(format!(
                "need mu >= sigma >= 0, got mu = {mu}, sigma = {sigma}"
            )));
        }
        let rt = mu.ln_1p() / std::f64::consts::LN_2;
        let re = sigma.ln_1p() / std::f64::consts::LN_2;
        Ok(Self {
            rt,
            rs: rt - re,
            mu,
            sigma,
        })
    }

    /// Zero secrecy rate, μ = σ = γ.
    pub fn equal(gamma: f64) -> Result<Self> {
        Self::from_sir(gamma, gamma)
    }
}

/// Density of the transmitter–eavesdropper distance X = ‖d0·e^{jΘ} − u‖.
pub fn distance_pdf(x: f64, d0: f64, u: f64) -> Result<f64> {
    let lo = (u - d0).abs();
    let hi = (d0 * d0 + u * u).sqrt();
    if !(x >= lo && x <= hi) || d0 <= 0.0 || u <= 0.0 {
        return Err(Error::Domain(format!(
            "distance {x} outside the support [{lo}, {hi}] for d0 = {d0}, u = {u}"
        )));
    }
    let a = x * x - lo * lo;
    let b = (d0 + u) * (d0 + u) - x * x;
    Ok(4.0 * x / (PI * a.sqrt() * b.sqrt()))
}

/// Probability that the transmitter–eavesdropper distance is at most one.
pub fn point_mass(d0: f64, u: f64) -> f64 {
    if d0 <= 1.0 && u <= (1.0 - d0 * d0).sqrt() {
        return 1.0;
    }
    if (u - d0).abs() < 1.0 {
        let alpha = u / d0;
        let a = d0 * d0 * (1.0 + alpha * alpha) - 1.0;
        let b = 2.0 * alpha * d0 * d0;
        let ratio = (a * a / (b * b - a * a)).sqrt();
        return 1.0 - 2.0 / PI * ratio.atan();
    }
    0.0
}

/// Mixture law of the eavesdropper gain: an atom of mass `p` at z = 1 plus
/// a continuous part on `[z1, z2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainMixture {
    pub p: f64,
    pub z1: f64,
    pub z2: f64,
    pub eta: f64,
    pub d0: f64,
    pub u: f64,
}

/// The gain law for a given configuration.
pub fn gain_mixture(cfg: &NetworkConfig) -> GainMixture {
    let p = point_mass(cfg.d0, cfg.u);
    let z1 = (cfg.d0 * cfg.d0 + cfg.u * cfg.u).powf(-0.5 * cfg.eta).min(1.0);
    let z2 = if p > 0.0 {
        1.0
    } else {
        (cfg.u - cfg.d0).abs().powf(-cfg.eta)
    };
    GainMixture {
        p,
        z1,
        z2,
        eta: cfg.eta,
        d0: cfg.d0,
        u: cfg.u,
    }
}

impl GainMixture {
    pub fn has_continuous_part(&self) -> bool {
        self.p < 1.0 && self.z1 < self.z2
    }

    /// Density f_Zc of the continuous part, zero off its support.
    pub fn density(&self, z: f64) -> f64 {
        if !self.has_continuous_part() || !(z >= self.z1 && z < self.z2) {
            return 0.0;
        }
        let w = z.powf(-2.0 / self.eta);
        let a = w - (self.u - self.d0).powi(2);
        let b = (self.d0 + self.u).powi(2) - w;
        if a <= 0.0 || b <= 0.0 {
            return 0.0;
        }
        let core = 4.0 * z.powf(-1.0 - 2.0 / self.eta) / (PI * self.eta) / (a.sqrt() * b.sqrt());
        core / (1.0 - self.p)
    }

    /// `E{f(Z)} = p·f(1) + (1 − p)·∫ f(z) f_Zc(z) dz` in the z domain.
    pub fn expectation<F: Fn(f64) -> f64>(&self, f: F, spec: &QuadratureSpec) -> Result<f64> {
        let atom = if self.p > 0.0 { self.p * f(1.0) } else { 0.0 };
        if !self.has_continuous_part() {
            return Ok(atom);
        }
        let continuous = integrate_1d(|z| f(z) * self.density(z), self.z1, self.z2, spec, &[])?;
        Ok(atom + (1.0 - self.p) * continuous)
    }

    /// Total mass `p + (1 − p)∫f_Zc`, which should be one.
    pub fn total_mass(&self, spec: &QuadratureSpec) -> Result<f64> {
        self.expectation(|_| 1.0, spec)
    }
}

/// Mean eavesdropper gain and mean of its continuous part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanGain {
    /// E{Z}.
    pub total: f64,
    /// E{Z_c}; absent when the law is a pure atom.
    pub continuous: Option<f64>,
}

/// Closed-form mean gains for d0 = 1 and η = 4, on each branch the formulas
/// cover. Returns `None` outside that regime and for u = 0.
pub fn mean_gain_closed_form(u: f64) -> Option<MeanGain> {
    if !(u > 0.0 && u.is_finite()) {
        return None;
    }
    let u2 = u * u;
    if u >= 2.0 {
        let num = 4.0 * u * (u2 - 1.0) + (1.0 + u2).powi(2) * (PI + 4.0 * (1.0 / u).atan());
        let den = PI * (u2 - 1.0).powi(3) * (1.0 + u2);
        let mean = num / den;
        return Some(MeanGain {
            total: mean,
            continuous: Some(mean),
        });
    }
    let p = point_mass(1.0, u);
    let continuous = if u == 1.0 {
        (3.0 * 3f64.sqrt() - 2.0) / (2.0 * PI)
    } else {
        let asin = ((3.0 * u - u2 * u) / 2.0).asin();
        let angular = if u > 1.0 {
            2.0 * (1.0 / u).atan() - asin
        } else {
            2.0 * (1.0 / u).atan() + asin - PI
        };
        let first = 2.0 * (1.0 + u2) * angular / ((1.0 - p) * PI * (u2 - 1.0).powi(3));
        let second = 2.0 * u * (2.0 - (1.0 + u2) * (4.0 - u2).sqrt()) / ((1.0 - p) * PI * (u2 - 1.0) * (u2 * u2 - 1.0));
        first + second
    };
    Some(MeanGain {
        total: p + (1.0 - p) * continuous,
        continuous: Some(continuous),
    })
}

/// Half-width of the band around u = 1 in which the closed forms lose too
/// many digits to cancellation between their terms.
const CLOSED_FORM_EXCLUSION: f64 = 0.02;

/// Mean gains E{Z} and E{Z_c}.
///
/// Uses the closed forms when d0 = 1 and η = 4 away from the
/// ill-conditioned band around u = 1, and θ-domain quadrature otherwise.
pub fn mean_gain(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<MeanGain> {
    let closed_form_ok =
        cfg.d0 == 1.0 && cfg.eta == 4.0 && (cfg.u == 1.0 || (cfg.u - 1.0).abs() >= CLOSED_FORM_EXCLUSION);
    if closed_form_ok {
        if let Some(mg) = mean_gain_closed_form(cfg.u) {
            return Ok(mg);
        }
    }
    mean_gain_quadrature(cfg, spec)
}

/// Mean gains by quadrature over the transmitter angle.
pub fn mean_gain_quadrature(cfg: &NetworkConfig, spec: &QuadratureSpec) -> Result<MeanGain> {
    let p = point_mass(cfg.d0, cfg.u);
    if p == 1.0 {
        return Ok(MeanGain {
            total: 1.0,
            continuous: None,
        });
    }
    let total = expect_over_theta_for(cfg, |theta| cfg.eaves_gain(theta), spec)?;
    let continuous = (p < 1.0).then(|| (total - p) / (1.0 - p));
    Ok(MeanGain { total, continuous })
}

/// `(2/π)∫₀^{π/2} f(θ) dθ`, the expectation over a uniform transmitter angle.
pub fn expect_over_theta<F: FnMut(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    Ok(integrate_1d(f, 0.0, FRAC_PI_2, spec, &[])? * 2.0 / PI)
}

/// As [`expect_over_theta`], splitting at the angle where the eavesdropper
/// gain leaves its saturated value.
pub fn expect_over_theta_for<F: FnMut(f64) -> f64>(cfg: &NetworkConfig, f: F, spec: &QuadratureSpec) -> Result<f64> {
    let breaks: Vec<f64> = cfg.theta_kink().into_iter().collect();
    Ok(integrate_1d(f, 0.0, FRAC_PI_2, spec, &breaks)? * 2.0 / PI)
}
