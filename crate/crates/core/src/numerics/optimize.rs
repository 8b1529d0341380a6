use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximiser of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `x_tol` relative to its midpoint.
pub fn maximize_unimodal<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> Result<f64> {
    if !(lo < hi) || !(x_tol > 0.0) {
        return Err(Error::Domain(format!(
            "need lo < hi and x_tol > 0, got [{lo}, {hi}], x_tol = {x_tol}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..500 {
        if (b - a).abs() <= x_tol * (0.5 * (a + b)).abs().max(f64::MIN_POSITIVE) {
            return Ok(0.5 * (a + b));
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    Err(Error::NonConvergence(format!(
        "golden-section search did not reach x_tol = {x_tol}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_vertex() {
        let x = maximize_unimodal(|x| -(x - 2.5) * (x - 2.5), 0.0, 10.0, 1e-12).unwrap();
        assert!((x - 2.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_empty_bracket() {
        assert!(maximize_unimodal(|x| x, 1.0, 1.0, 1e-6).is_err());
    }
}
