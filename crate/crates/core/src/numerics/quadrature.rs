//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals,
//! plus a nested polar rule for integrals over circular sectors.

use std::cell::RefCell;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidConfig("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Both tolerances multiplied by `factor`, with the relative tolerance
    /// floored near machine precision so it stays attainable.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: (self.abs_tol * factor).max(1e-300),
            rel_tol: (self.rel_tol * factor).max(1e-13),
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Kronrod abscissae on [-1, 1], positive half, descending; the last is 0.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_413_566,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_146,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let abs_sum = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * abs_sum;
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(roundoff);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Segment { lo, hi, value, error }
}

/// Globally adaptive bisection over a list of finite panels.
fn adaptive<F: FnMut(f64) -> f64>(f: &mut F, panels: &[(f64, f64)], spec: &QuadratureSpec) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    for &(lo, hi) in panels {
        if hi > lo {
            heap.push(gk21(f, lo, hi));
        }
    }
    let mut subdivisions = heap.len();
    loop {
        let (value, error) = heap.iter().fold((frozen_value, frozen_error), |acc, s| {
            (acc.0 + s.value, acc.1 + s.error)
        });
        if error <= spec.target(value) {
            return Ok(value);
        }
        let worst = match heap.pop() {
            Some(seg) => seg,
            None => {
                return Err(Error::ToleranceNotMet {
                    estimate: value,
                    error_bound: error,
                    subdivisions,
                })
            }
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        let too_narrow = (worst.hi - worst.lo).abs() <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE);
        if subdivisions >= spec.max_subdivisions || too_narrow {
            if too_narrow && subdivisions < spec.max_subdivisions {
                frozen_value += worst.value;
                frozen_error += worst.error;
                continue;
            }
            heap.push(worst);
            let (value, error) = heap.iter().fold((frozen_value, frozen_error), |acc, s| {
                (acc.0 + s.value, acc.1 + s.error)
            });
            return Err(Error::ToleranceNotMet {
                estimate: value,
                error_bound: error,
                subdivisions,
            });
        }
        heap.push(gk21(f, worst.lo, mid));
        heap.push(gk21(f, mid, worst.hi));
        subdivisions += 1;
    }
}

/// Adaptive integral of `f` over `[lo, hi]`, split at `breakpoints`.
///
/// `hi` may be `f64::INFINITY`; the tail beyond the last finite point is
/// mapped onto `[0, 1)` through `r = a + t / (1 - t)` after the cubic
/// below, so that slow algebraic decay stays integrable. Integrable endpoint
/// singularities are handled by repeated bisection because the Kronrod rule
/// never samples the endpoints.
pub fn integrate_1d<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
    breakpoints: &[f64],
) -> Result<f64> {
    spec.validate()?;
    if lo.is_nan() || hi.is_nan() || !lo.is_finite() {
        return Err(Error::Domain(format!(
            "integration limits must be finite below, got [{lo}, {hi}]"
        )));
    }
    if hi < lo {
        return Err(Error::Domain(format!("reversed integration limits [{lo}, {hi}]")));
    }
    if hi == lo {
        return Ok(0.0);
    }
    let mut points = vec![lo];
    let mut sorted: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|b| b.is_finite() && *b > lo && *b < hi)
        .collect();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    points.extend(sorted);
    if hi.is_finite() {
        points.push(hi);
        return finite_panels(&mut f, &points, spec);
    }

    let start = *points.last().expect("points is non-empty");
    let mut total = 0.0;
    let mut tail_spec = *spec;
    if points.len() > 1 {
        tail_spec = spec.scaled(0.5);
        total += finite_panels(&mut f, &points, &spec.scaled(0.5))?;
    }
    let mut g = |s: f64| {
        let t = s * s * (3.0 - 2.0 * s);
        let one_minus = 1.0 - t;
        let x = start + t / one_minus;
        let v = f(x) * 6.0 * s * (1.0 - s) / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let tail = adaptive(&mut g, &[(0.0, 1.0)], &tail_spec).map_err(|e| match e {
        Error::ToleranceNotMet {
            estimate,
            error_bound,
            subdivisions,
        } => Error::ToleranceNotMet {
            estimate: estimate + total,
            error_bound,
            subdivisions,
        },
        other => other,
    })?;
    Ok(total + tail)
}

/// Integrates over consecutive finite panels, each mapped from `[0, 1]`
/// through the cubic `x = a + (b − a)·t²(3 − 2t)`. The map's derivative
/// vanishes at both ends, which regularizes inverse-square-root endpoint
/// singularities wherever they sit, not only at the origin.
fn finite_panels<F: FnMut(f64) -> f64>(f: &mut F, points: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    let panels: Vec<(f64, f64)> = points.windows(2).map(|w| (w[0], w[1])).collect();
    let index_of = |t: f64| (t.floor() as usize).min(panels.len() - 1);
    let mut g = |t: f64| {
        let k = index_of(t);
        let (a, b) = panels[k];
        let s = t - k as f64;
        let width = b - a;
        let x = a + width * s * s * (3.0 - 2.0 * s);
        let jac = 6.0 * width * s * (1.0 - s);
        if jac == 0.0 {
            0.0
        } else {
            f(x) * jac
        }
    };
    let unit: Vec<(f64, f64)> = (0..panels.len()).map(|k| (k as f64, k as f64 + 1.0)).collect();
    adaptive(&mut g, &unit, spec)
}

/// Runs `body` with a slot in which nested integrands can park the first
/// failure of an inner quadrature, then surfaces that failure.
pub(crate) fn with_inner_errors<T>(body: impl FnOnce(&RefCell<Option<Error>>) -> Result<T>) -> Result<T> {
    let slot = RefCell::new(None);
    let outcome = body(&slot);
    if let Some(err) = slot.into_inner() {
        return Err(err);
    }
    outcome
}

/// Stores `err` in `slot` unless an earlier failure is already recorded.
pub(crate) fn park(slot: &RefCell<Option<Error>>, err: Error) -> f64 {
    let mut guard = slot.borrow_mut();
    let estimate = match &err {
        Error::ToleranceNotMet { estimate, .. } => *estimate,
        _ => 0.0,
    };
    if guard.is_none() {
        *guard = Some(err);
    }
    estimate
}

/// A circular sector `0 <= r < r_hi`, `0 <= phi <= phi_hi` with extra
/// radial breakpoints beyond the pathloss kink at `r = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub r_hi: f64,
    pub phi_hi: f64,
    pub radial_breaks: Vec<f64>,
}

impl Sector {
    pub fn new(r_hi: f64, phi_hi: f64) -> Self {
        Self {
            r_hi,
            phi_hi,
            radial_breaks: Vec::new(),
        }
    }

    pub fn with_breaks(mut self, breaks: impl IntoIterator<Item = f64>) -> Self {
        self.radial_breaks.extend(breaks);
        self
    }
}

/// `∫∫ f(r, φ) r dr dφ` over a sector, radial integral outermost.
///
/// `angular_breaks(r, out)` may push angles at which `f(r, ·)` has kinks.
pub fn integrate_polar_with<F, B>(f: F, sector: &Sector, angular_breaks: B, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    B: Fn(f64, &mut Vec<f64>),
{
    spec.validate()?;
    if !(sector.phi_hi > 0.0 && sector.phi_hi <= 2.0 * std::f64::consts::PI + 1e-12) {
        return Err(Error::Domain(format!(
            "sector angle must lie in (0, 2π], got {}",
            sector.phi_hi
        )));
    }
    let inner_spec = spec.scaled(0.1);
    let mut breaks = sector.radial_breaks.clone();
    breaks.push(1.0);
    with_inner_errors(|slot| {
        let mut angles = Vec::new();
        let radial = |r: f64| {
            angles.clear();
            angular_breaks(r, &mut angles);
            let inner = integrate_1d(|phi| f(r, phi), 0.0, sector.phi_hi, &inner_spec, &angles);
            r * inner.unwrap_or_else(|e| park(slot, e))
        };
        integrate_1d(radial, 0.0, sector.r_hi, spec, &breaks)
    })
}

/// `∫∫ f(r, φ) r dr dφ` over `0 <= r < r_hi`, `0 <= φ <= phi_hi`, split at `r = 1`.
pub fn integrate_polar<F: Fn(f64, f64) -> f64>(f: F, r_hi: f64, phi_hi: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_polar_with(f, &Sector::new(r_hi, phi_hi), |_, _| {}, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn kronrod_rule_is_exact_for_high_degree_polynomials() {
        for degree in [0, 1, 5, 19, 31] {
            let mut f = |x: f64| x.powi(degree);
            let seg = gk21(&mut f, 0.0, 1.0);
            let exact = 1.0 / (degree as f64 + 1.0);
            assert!((seg.value - exact).abs() < 1e-14, "degree {degree}");
        }
    }

    #[test]
    fn gauss_weights_sum_to_interval_length() {
        let kronrod: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let gauss: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((kronrod - 2.0).abs() < 1e-15);
        assert!((gauss - 2.0).abs() < 1e-15);
    }

    #[test]
    fn constant_on_unit_interval() {
        let v = integrate_1d(|_| 1.0, 0.0, 1.0, &spec(), &[]).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pathloss_weighted_radius_on_half_line() {
        let f = |r: f64| r * if r <= 1.0 { 1.0 } else { r.powi(-4) };
        let v = integrate_1d(f, 0.0, f64::INFINITY, &spec(), &[1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn inverse_sqrt_endpoint_singularity() {
        let v = integrate_1d(|r: f64| r.powf(-0.5), 0.0, 1.0, &spec(), &[]).unwrap();
        assert!((v - 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn breakpoints_outside_range_are_ignored() {
        let v = integrate_1d(|x| x, 0.0, 2.0, &spec(), &[-1.0, 1.0, 1.0, 5.0]).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn reversed_limits_are_rejected() {
        assert!(matches!(
            integrate_1d(|x| x, 1.0, 0.0, &spec(), &[]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exhausted_budget_reports_best_estimate() {
        let tight = QuadratureSpec::new(1e-15, 1e-15, 3).unwrap();
        let err = integrate_1d(|x: f64| (50.0 * x).sin().abs(), 0.0, 3.0, &tight, &[]).unwrap_err();
        match err {
            Error::ToleranceNotMet {
                estimate, error_bound, ..
            } => {
                assert!(estimate.is_finite() && estimate > 0.0);
                assert!(error_bound > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(QuadratureSpec::new(0.0, 1e-7, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-7, 0).is_err());
    }

    #[test]
    fn polar_pathloss_full_plane_and_quadrant() {
        let g = |r: f64, _phi: f64| if r <= 1.0 { 1.0 } else { r.powi(-4) };
        let full = integrate_polar(g, f64::INFINITY, 2.0 * PI, &spec()).unwrap();
        let quarter = integrate_polar(g, f64::INFINITY, PI / 2.0, &spec()).unwrap();
        assert!((full - 2.0 * PI).abs() < 1e-8);
        assert!((quarter - PI / 2.0).abs() < 1e-8);
    }

    #[test]
    fn polar_zero_integrand() {
        let v = integrate_polar(|_, _| 0.0, f64::INFINITY, PI, &spec()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn polar_disk_area_with_angular_breaks() {
        let sector = Sector::new(2.0, PI).with_breaks([0.5]);
        let v = integrate_polar_with(|_, _| 1.0, &sector, |r, out| out.push(r / 4.0), &spec()).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-12);
    }
}
