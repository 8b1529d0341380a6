//! Self-check suite: closed forms against quadrature, the orderings of the
//! low- and high-rate lemmas, the optimal threshold, capacity orderings and
//! Monte Carlo agreement.
//!
//! Each check returns a [`CheckReport`]; the command-line `validate`
//! subcommand and the acceptance test print one line per report.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use crate::asymptotics::{
    high_rate_coefficients, low_rate_inputs, optimal_threshold, optimal_threshold_eta4_rational, psc_high_rate_large_u,
};
use crate::capacity::{avg_secrecy_capacity, integrand_psc_at};
use crate::connectivity::{receiver_connection, receiver_connection_quadrature, secure_connectivity};
use crate::error::Result;
use crate::interference::{correlation, eaves_stats_closed, eaves_stats_numeric, receiver_stats};
use crate::model::{
    gain_mixture, mean_gain_closed_form, mean_gain_quadrature, point_mass, Geometry, NetworkConfig, RateThresholds,
};
use crate::numerics::QuadratureSpec;
use crate::simulator::{SampleSet, SimConfig};

/// Names of the checks, in suite order; the index plus one is the check id.
pub const CHECK_NAMES: [&str; 10] = [
    "closed forms vs quadrature",
    "closed-form mean branch",
    "interference moments",
    "spatial correlation",
    "low-rate ordering",
    "high-rate ordering",
    "optimal threshold",
    "capacity ordering",
    "Monte Carlo agreement",
    "gain distribution",
];

/// Knobs of the suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Smaller grids and 10⁵ instead of 10⁶ Monte Carlo samples.
    pub quick: bool,
    /// Negates c3 before the high-rate ordering check; a correct suite must
    /// then report a failure.
    pub flip_c3: bool,
    pub seed: u64,
    pub spec: QuadratureSpec,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            quick: false,
            flip_c3: false,
            seed: 20_190_601,
            spec: QuadratureSpec::default(),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>7.1}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn finish(self) -> (bool, String) {
        if self.failures.is_empty() {
            (true, self.notes.join("; "))
        } else {
            (false, self.failures.join("; "))
        }
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn reference(geometry: Geometry, lambda: f64, u: f64) -> Result<NetworkConfig> {
    NetworkConfig::new(geometry, lambda, 4.0, 1.0, u)
}

fn tight(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: spec.abs_tol.min(1e-11),
        rel_tol: spec.rel_tol.min(1e-10),
        max_subdivisions: spec.max_subdivisions.max(5000),
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi / lo).ln() / (points - 1) as f64;
    (0..points).map(|i| lo * (step * i as f64).exp()).collect()
}

fn closed_forms(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let spec = tight(&o.spec);
    let mut worst_abs: f64 = 0.0;
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        for lambda in [0.05, 0.2, 1.0] {
            for eta in [2.5, 3.0, 4.0, 6.0] {
                let cfg = NetworkConfig::new(geometry, lambda, eta, 1.0, 1.0)?;
                for mu in [0.01, 0.5, 1.0, 10.0, 100.0] {
                    let closed = receiver_connection(&cfg, mu)?.value;
                    let quad = receiver_connection_quadrature(&cfg, mu, &spec)?.value;
                    worst_abs = worst_abs.max((closed - quad).abs());
                }
            }
        }
    }
    t.check(
        worst_abs <= 1e-8,
        format!("receiver connection max abs diff {worst_abs:.1e}"),
    );
    let mut worst_rel: f64 = 0.0;
    for eta in [3.0, 4.0, 5.0] {
        for u in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let cfg = NetworkConfig::new(Geometry::Corner, 0.2, eta, 1.0, u)?;
            let closed = eaves_stats_closed(&cfg)?;
            let quad = eaves_stats_numeric(&cfg, &spec)?;
            worst_rel = worst_rel
                .max(rel_diff(closed.mean, quad.mean))
                .max(rel_diff(closed.variance, quad.variance));
        }
    }
    t.check(worst_rel <= 1e-6, format!("u<1 moments max rel diff {worst_rel:.1e}"));
    Ok(t)
}

fn mean_branch(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let lambda = 0.2;
    let cfg = reference(Geometry::Corner, lambda, 1.0)?;
    let closed = eaves_stats_closed(&cfg)?.mean / lambda;
    let quad = eaves_stats_numeric(&cfg, &o.spec)?.mean / lambda;
    t.check(
        rel_diff(closed, PI / 8.0) < 1e-12,
        format!("closed u>=1 mean {closed:.4}*lambda = pi/8*lambda"),
    );
    t.check(
        rel_diff(quad, 7.0 * PI / 8.0) < 1e-8,
        format!("quadrature mean {quad:.4}*lambda = 7pi/8*lambda"),
    );
    t.check(
        (quad - closed) > 2.0,
        format!("discrepancy {:.4}*lambda", quad - closed),
    );
    let downstream = low_rate_inputs(&cfg, &o.spec)?.eaves;
    t.check(
        downstream == eaves_stats_numeric(&cfg, &o.spec)?,
        "low-rate expansion consumes the quadrature moments",
    );
    Ok(t)
}

fn interference_moments(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let bulk = receiver_stats(&reference(Geometry::Bulk, 0.2, 1.0)?);
    let corner = receiver_stats(&reference(Geometry::Corner, 0.2, 1.0)?);
    t.check(
        (bulk.mean - 0.4 * PI).abs() < 1e-12 && (bulk.variance - 1.6 * PI / 3.0).abs() < 1e-12,
        "bulk moments 0.4pi, 1.6pi/3",
    );
    t.check(
        (4.0 * corner.mean - bulk.mean).abs() < 1e-12 && (4.0 * corner.variance - bulk.variance).abs() < 1e-12,
        "corner moments a quarter of bulk",
    );
    let samples = if o.quick { 100_000 } else { 1_000_000 };
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        let cfg = reference(geometry, 0.2, 1.0)?;
        let exact = receiver_stats(&cfg);
        let set = SampleSet::generate_receiver_only(&cfg, &SimConfig::new(&cfg, o.seed, samples)?)?;
        let mean = set.interference_mean();
        let var = set.interference_variance();
        t.check(
            mean.agrees_with(exact.mean, 3.0) && var.agrees_with(exact.variance, 3.0),
            format!(
                "{geometry} MC mean {:.4}+-{:.4}, var {:.4}+-{:.4}",
                mean.mean, mean.std_error, var.mean, var.std_error
            ),
        );
    }
    Ok(t)
}

fn spatial_correlation(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let rho = |geometry, lambda, u| -> Result<f64> { Ok(correlation(&reference(geometry, lambda, u)?, &o.spec)?.rho) };
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        let r0 = rho(geometry, 0.2, 0.0)?;
        t.check((r0 - 1.0).abs() <= 1e-6, format!("{geometry} rho(0) = {r0}"));
    }
    for u in [0.5, 1.0, 2.0, 3.0] {
        let (co, bu) = (rho(Geometry::Corner, 0.2, u)?, rho(Geometry::Bulk, 0.2, u)?);
        t.check(co > bu, format!("u={u}: rho_co {co:.4} > rho_bu {bu:.4}"));
        if u == 3.0 {
            t.check(co < 0.1 && bu < 0.1, "rho(3) < 0.1");
        }
    }
    let mut worst: f64 = 0.0;
    for geometry in [Geometry::Corner, Geometry::Bulk] {
        worst = worst.max((rho(geometry, 0.2, 1.0)? - rho(geometry, 3.0, 1.0)?).abs());
    }
    t.check(worst <= 1e-9, format!("lambda invariance {worst:.1e}"));
    Ok(t)
}

fn psc(geometry: Geometry, lambda: f64, u: f64, mu: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    let cfg = reference(geometry, lambda, u)?;
    Ok(secure_connectivity(&cfg, &RateThresholds::from_sir(mu, sigma)?, spec)?.p_sc)
}

fn low_rate(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let co = psc(Geometry::Corner, 0.2, 1.0, 0.02, 0.02, &o.spec)?;
    let bu = psc(Geometry::Bulk, 0.2, 1.0, 0.02, 0.02, &o.spec)?;
    t.check(co / bu <= 0.55, format!("corner/bulk at 0.02: {:.4}", co / bu));
    let grid: &[f64] = if o.quick {
        &[0.01, 0.1, 0.3]
    } else {
        &[0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3]
    };
    let mut bad = Vec::new();
    for &g in grid {
        if psc(Geometry::Bulk, 0.2, 1.0, g, g, &o.spec)? <= psc(Geometry::Corner, 0.2, 1.0, g, g, &o.spec)? {
            bad.push(g);
        }
    }
    t.check(
        bad.is_empty(),
        format!(
            "bulk > corner on {} thresholds up to 0.3{}",
            grid.len(),
            exceptions(&bad)
        ),
    );
    Ok(t)
}

fn high_rate(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let sigmas: &[f64] = if o.quick {
        &[0.1, 10.0]
    } else {
        &[0.1, 0.3, 1.0, 3.0, 10.0]
    };
    let mut bad = Vec::new();
    for u in [0.5, 3.0] {
        for &sigma in sigmas {
            let co = psc(Geometry::Corner, 0.2, u, 10.0, sigma, &o.spec)?;
            let bu = psc(Geometry::Bulk, 0.2, u, 10.0, sigma, &o.spec)?;
            if co <= bu {
                bad.push((u, sigma));
            }
        }
    }
    t.check(bad.is_empty(), format!("corner > bulk at mu=10{}", exceptions(&bad)));

    let cfg = reference(Geometry::Corner, 0.2, 3.0)?;
    let mut strict: f64 = f64::INFINITY;
    let mut loose: f64 = f64::INFINITY;
    for (mu, sigma) in [
        (10.0, 3.0),
        (10.0, 10.0),
        (30.0, 10.0),
        (100.0, 10.0),
        (100.0, 100.0),
        (1000.0, 100.0),
    ] {
        let rates = RateThresholds::from_sir(mu, sigma)?;
        let (bound, _) = psc_high_rate_large_u(&cfg, &rates)?;
        let exact = secure_connectivity(&cfg, &rates, &o.spec)?.p_sc;
        if mu == 10.0 {
            strict = strict.min(exact - bound);
        } else {
            loose = loose.min(exact / bound - 1.0);
        }
    }
    t.check(
        strict >= 0.0,
        format!("large-u corner bound below exact at mu=10, min gap {strict:.2e}"),
    );
    t.check(
        loose >= -1e-2,
        format!("large-u corner bound within 1% of exact for mu > 10, worst exact/bound - 1 = {loose:.1e}"),
    );

    let (lambda, eta) = (0.2, 4.0);
    let mut negative = Vec::new();
    let mut inverted = Vec::new();
    for u in [0.25, 0.5, 1.0] {
        let cfg = reference(Geometry::Corner, lambda, u)?;
        for gamma in log_grid(1.0, 1e3, 7) {
            let high_rate = gamma >= 10.0;
            let mut k = high_rate_coefficients(eta, &cfg, gamma)?;
            if o.flip_c3 {
                k.c3 = -k.c3;
            }
            let (co, bu) = k.small_u_psc(lambda, eta, u, gamma);
            if co < 0.0 {
                negative.push((u, gamma));
            }
            if high_rate && co < bu {
                inverted.push((u, gamma));
            }
        }
    }
    t.check(
        negative.is_empty(),
        format!("small-u corner approximation non-negative{}", exceptions(&negative)),
    );
    t.check(
        inverted.is_empty(),
        format!("small-u corner >= bulk from gamma=10{}", exceptions(&inverted)),
    );
    let cfg = reference(Geometry::Corner, lambda, 0.5)?;
    let mut k = high_rate_coefficients(eta, &cfg, 1e3)?;
    if o.flip_c3 {
        k.c3 = -k.c3;
    }
    let (co, bu) = k.small_u_psc(lambda, eta, 0.5, 1e3);
    let ratio = bu / co;
    t.check(co > 0.0 && ratio < 1e-2, format!("bulk/corner at 1e3 = {ratio:.1e}"));
    Ok(t)
}

fn optimum(_o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    for eta in [3.0, 4.0, 6.0] {
        let cfg = NetworkConfig::new(Geometry::Corner, 0.2, eta, 1.0, 0.5)?;
        let opt = optimal_threshold(&cfg)?;
        t.check(
            opt.bulk == 2f64.powf(-eta) * opt.corner,
            format!("eta={eta}: bulk = 2^-eta corner"),
        );
        let err = rel_diff(opt.corner_numeric, opt.corner).max(rel_diff(opt.bulk_numeric, opt.bulk));
        t.check(err <= 1e-6, format!("eta={eta}: argmax rel diff {err:.1e}"));
    }
    let opt = optimal_threshold(&reference(Geometry::Corner, 0.2, 0.5)?)?;
    let printed = optimal_threshold_eta4_rational(0.2);
    t.check(
        (printed - 33.545).abs() < 1e-2 && (opt.corner - 14.547).abs() < 1e-2,
        format!("printed rational form {printed:.3} vs optimum {:.3}", opt.corner),
    );
    Ok(t)
}

fn capacity_ordering(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let us: &[f64] = if o.quick { &[1.0] } else { &[0.5, 1.0, 2.0, 3.0] };
    for &u in us {
        let co = avg_secrecy_capacity(&reference(Geometry::Corner, 0.2, u)?, &o.spec)?.c_secrecy;
        let bu_quarter = avg_secrecy_capacity(&reference(Geometry::Bulk, 0.05, u)?, &o.spec)?.c_secrecy;
        let bu = avg_secrecy_capacity(&reference(Geometry::Bulk, 0.2, u)?, &o.spec)?.c_secrecy;
        t.check(
            co > bu_quarter && co > bu,
            format!("u={u}: {co:.4} > {bu_quarter:.4}, {bu:.4}"),
        );
    }
    let corner = reference(Geometry::Corner, 0.2, 1.0)?;
    let bulk = reference(Geometry::Bulk, 0.05, 1.0)?;
    let mut bad = Vec::new();
    let points = if o.quick { 5 } else { 9 };
    for gamma in log_grid(0.01, 100.0, points) {
        if integrand_psc_at(&corner, gamma, &o.spec)? < integrand_psc_at(&bulk, gamma, &o.spec)? {
            bad.push(gamma);
        }
    }
    t.check(
        bad.is_empty(),
        format!(
            "integrand corner >= bulk(lambda/4) on {points} points{}",
            exceptions(&bad)
        ),
    );
    Ok(t)
}

fn monte_carlo(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let samples = if o.quick { 100_000 } else { 1_000_000 };
    let rates = RateThresholds::equal(1.0)?;
    for u in [1.0, 3.0] {
        let cfg = reference(Geometry::Corner, 0.2, u)?;
        let set = SampleSet::generate(&cfg, &SimConfig::new(&cfg, o.seed, samples)?)?;
        let analytic = secure_connectivity(&cfg, &rates, &o.spec)?;
        let capacity = avg_secrecy_capacity(&cfg, &o.spec)?.c_secrecy;
        for (label, est, exact) in [
            ("p_conn", set.connection(rates.mu), analytic.p_conn),
            ("p_sc", set.secure_connectivity(&rates), analytic.p_sc),
            ("C_sc", set.capacity(), capacity),
        ] {
            t.check(
                est.agrees_with(exact, 3.0),
                format!("u={u} {label} {:.4}+-{:.4} vs {exact:.4}", est.mean, est.std_error),
            );
        }
    }
    Ok(t)
}

fn gain_distribution(o: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let spec = tight(&o.spec);
    let mut worst: f64 = 0.0;
    for d0 in [0.7, 1.0] {
        for u in [0.3, 0.5, 0.8, 1.0, 1.2, 1.5, 2.0, 3.0, 5.0] {
            let cfg = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, d0, u)?;
            worst = worst.max((gain_mixture(&cfg).total_mass(&spec)? - 1.0).abs());
        }
    }
    t.check(worst <= 1e-8, format!("mixture mass error {worst:.1e}"));
    let p = point_mass(1.0, 1.0);
    t.check((p - 2.0 / 3.0).abs() < 1e-12, format!("p(1,1) = {p:.12}"));
    let oracle = mean_gain_quadrature(&reference(Geometry::Corner, 0.2, 1.0)?, &spec)?
        .continuous
        .unwrap_or(f64::NAN);
    let target = (3.0 * 3f64.sqrt() - 2.0) / (2.0 * PI);
    t.check(
        (oracle - target).abs() <= 1e-9,
        format!("E{{Zc}}(1) quadrature {oracle:.12}"),
    );
    let mut worst_rel: f64 = 0.0;
    for u in [0.3, 0.6, 0.9, 1.0, 1.1, 1.5, 1.9, 2.0, 2.5, 3.0, 5.0] {
        let closed = mean_gain_closed_form(u).expect("closed form covers u > 0");
        let quad = mean_gain_quadrature(&reference(Geometry::Corner, 0.2, u)?, &spec)?;
        worst_rel = worst_rel.max(rel_diff(closed.total, quad.total));
        if let (Some(a), Some(b)) = (closed.continuous, quad.continuous) {
            worst_rel = worst_rel.max(rel_diff(a, b));
        }
    }
    t.check(
        worst_rel <= 1e-6,
        format!("closed-form mean gains max rel diff {worst_rel:.1e}"),
    );
    Ok(t)
}

/// Suffix naming the grid points at which a check failed, empty if none.
fn exceptions<T: fmt::Debug>(bad: &[T]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(" except at {bad:?}")
    }
}

/// Runs check `id` (1 to 10).
pub fn run_check(id: usize, options: &SuiteOptions) -> CheckReport {
    let start = Instant::now();
    let outcome = match id {
        1 => closed_forms(options),
        2 => mean_branch(options),
        3 => interference_moments(options),
        4 => spatial_correlation(options),
        5 => low_rate(options),
        6 => high_rate(options),
        7 => optimum(options),
        8 => capacity_ordering(options),
        9 => monte_carlo(options),
        10 => gain_distribution(options),
        _ => panic!("no check with id {id}"),
    };
    let (passed, detail) = match outcome {
        Ok(tally) => tally.finish(),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckReport {
        id,
        name: CHECK_NAMES[id - 1],
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Runs every check in order, handing each report to `sink` as soon as it
/// is available.
pub fn run_suite(options: &SuiteOptions, mut sink: impl FnMut(&CheckReport)) -> Vec<CheckReport> {
    (1..=CHECK_NAMES.len())
        .map(|id| {
            let report = run_check(id, options);
            sink(&report);
            report
        })
        .collect()
}
