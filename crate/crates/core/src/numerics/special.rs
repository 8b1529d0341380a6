//! Gamma, sinc and the Gauss hypergeometric function.

use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_1d, QuadratureSpec};

const SERIES_MAX_TERMS: usize = 200_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for real `x` away from the poles at the non-positive integers.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// 1/Γ(x), which is entire: zero at the poles of Γ.
fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / statrs::function::gamma::gamma(x)
    }
}

/// sin(x)/x with the removable singularity at the origin filled in.
pub fn sinc_fn(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Direct Maclaurin series of ₂F₁, valid for |x| < 1.
fn series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small_run = 0;
    for n in 0..SERIES_MAX_TERMS {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= 1e-17 * sum.abs() {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "2F1({a}, {b}; {c}; {x}) series after {SERIES_MAX_TERMS} terms"
    )))
}

/// Gauss summation at x = 1, valid for c - a - b > 0.
fn gauss_sum(a: f64, b: f64, c: f64) -> Result<f64> {
    let d = c - a - b;
    if d <= 0.0 {
        return Err(Error::Domain(format!(
            "2F1({a}, {b}; {c}; 1) diverges since c - a - b = {d} <= 0"
        )));
    }
    Ok(gamma_fn(c)? * gamma_fn(d)? * rgamma(c - a) * rgamma(c - b))
}

/// Euler integral representation, usable when c > b > 0.
fn euler_integral(a: f64, b: f64, c: f64, w: f64, v: f64) -> Result<f64> {
    let spec = QuadratureSpec::new(1e-15, 1e-13, 5000)?;
    let integral = integrate_1d(
        |t| t.powf(b - 1.0) * (1.0 - t).powf(c - b - 1.0) * (v + w * (1.0 - t)).powf(-a),
        0.0,
        1.0,
        &spec,
        &[0.5],
    )?;
    Ok(gamma_fn(c)? * rgamma(b) * rgamma(c - b) * integral)
}

/// ₂F₁ on 0 < w < 1 through the series or the 1 - w connection formula;
/// `v` is 1 - w supplied separately to avoid cancellation near w = 1.
fn unit_interval(a: f64, b: f64, c: f64, w: f64, v: f64) -> Result<f64> {
    if w <= 0.5 {
        return series(a, b, c, w);
    }
    let d = c - a - b;
    if (d - d.round()).abs() < 1e-6 {
        if w < 0.95 {
            return series(a, b, c, w);
        }
        if c > b && b > 0.0 {
            return euler_integral(a, b, c, w, v);
        }
        if c > a && a > 0.0 {
            return euler_integral(b, a, c, w, v);
        }
        return series(a, b, c, w);
    }
    let gc = gamma_fn(c)?;
    let first = gc * gamma_fn(d)? * rgamma(c - a) * rgamma(c - b);
    let second = gc * gamma_fn(-d)? * rgamma(a) * rgamma(b);
    let mut value = 0.0;
    if first != 0.0 {
        value += first * series(a, b, 1.0 - d, v)?;
    }
    if second != 0.0 {
        value += second * v.powf(d) * series(c - a, c - b, 1.0 + d, v)?;
    }
    Ok(value)
}

/// Gauss hypergeometric function ₂F₁(a, b; c; x) for x ≤ 1.
///
/// Negative arguments go through the Pfaff transformation
/// `(1 - x)^(-a) ₂F₁(a, c - b; c; x / (x - 1))`, which lands in (0, 1), and
/// arguments above one half use the connection formula around 1.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if [a, b, c, x].iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument to 2F1({a}, {b}; {c}; {x})")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("2F1 undefined for non-positive integer c = {c}")));
    }
    if x > 1.0 {
        return Err(Error::Domain(format!("2F1 argument {x} exceeds 1")));
    }
    if x == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if x == 1.0 {
        return gauss_sum(a, b, c);
    }
    if x.abs() <= 0.5 {
        return series(a, b, c, x);
    }
    if x < 0.0 {
        let w = x / (x - 1.0);
        let prefactor = (1.0 - x).powf(-a);
        return Ok(prefactor * unit_interval(a, c - b, c, w, 1.0 / (1.0 - x))?);
    }
    unit_interval(a, b, c, x, 1.0 - x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma_fn(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-13);
        assert!(rel(gamma_fn(2.5).unwrap(), 0.75 * PI.sqrt()) < 1e-13);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-12);
        assert!(rel(gamma_fn(7.0).unwrap(), 720.0) < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        assert_eq!(gamma_fn(0.0), Err(Error::Pole(0.0)));
        assert_eq!(gamma_fn(-3.0), Err(Error::Pole(-3.0)));
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc_fn(0.0), 1.0);
        assert!((sinc_fn(PI / 2.0) - 2.0 / PI).abs() < 1e-15);
        assert!((sinc_fn(PI / 4.0) - 0.900_316_316_157_106_1).abs() < 1e-12);
        assert!((sinc_fn(1e-5) - (1e-5f64).sin() / 1e-5).abs() < 1e-15);
    }

    #[test]
    fn hyp2f1_trivial_and_identities() {
        assert_eq!(hyp2f1(0.7, 1.3, 2.1, 0.0).unwrap(), 1.0);
        let log_identity = -(0.5f64).ln() / 0.5;
        assert!(rel(hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap(), log_identity) < 1e-13);
        assert!(rel(hyp2f1(0.5, 1.5, 2.5, 1.0).unwrap(), 0.75 * PI) < 1e-13);
    }

    #[test]
    fn hyp2f1_rejects_bad_arguments() {
        assert!(matches!(hyp2f1(1.0, 1.0, 2.0, 1.5), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(1.0, 1.0, -2.0, 0.3), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(1.0, 1.0, 1.5, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn hyp2f1_arctangent_identity_for_large_negative_arguments() {
        for t in [0.9f64, 1.0, 3.0, 30.0, 1e3, 1e6] {
            let got = hyp2f1(1.0, 0.5, 1.5, -t * t).unwrap();
            assert!(rel(got, t.atan() / t) < 1e-12, "t = {t}: {got} vs {}", t.atan() / t);
        }
    }

    #[test]
    fn hyp2f1_logarithm_identity_across_branches() {
        for x in [-1e4, -50.0, -2.0, -0.7, 0.3, 0.6, 0.95, 0.9999] {
            let got = hyp2f1(1.0, 1.0, 2.0, x).unwrap();
            let want = -(1.0 - x).ln() / x;
            assert!(rel(got, want) < 1e-10, "x = {x}: {got} vs {want}");
        }
    }

    #[test]
    fn hyp2f1_arcsine_identity_near_one() {
        for s in [0.75f64, 0.9, 0.99, 0.999_999] {
            let got = hyp2f1(0.5, 0.5, 1.5, s * s).unwrap();
            assert!(rel(got, s.asin() / s) < 1e-11, "s = {s}");
        }
    }

    #[test]
    fn sinc_symmetric() {
        for x in [0.3, 1.7, 12.0] {
            assert_eq!(sinc_fn(x), sinc_fn(-x));
        }
    }
}
