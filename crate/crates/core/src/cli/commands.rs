//! Tables produced by the data subcommands for the configured geometry.

use rayon::prelude::*;

use crate::capacity::avg_secrecy_capacity;
use crate::connectivity::{
    eaves_connection, joint_connection_uncorrelated, receiver_connection, secure_connectivity, EavesGain,
};
use crate::interference::{correlation, eaves_stats_closed, eaves_stats_numeric, receiver_stats};
use crate::model::{thresholds_from_rates, NetworkConfig, RateThresholds};
use crate::numerics::QuadratureSpec;
use crate::simulator::SampleSet;

use super::settings::{Settings, SweepSpec, SweepVariable};
use super::table::Table;
use super::CliError;

/// Fully resolved inputs of one invocation.
#[derive(Debug, Clone)]
pub struct Context {
    pub settings: Settings,
    pub cfg: NetworkConfig,
    pub rates: RateThresholds,
    pub spec: QuadratureSpec,
    pub sweep: Option<SweepSpec>,
}

/// One grid point: the sweep value and the configuration it induces.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub x: f64,
    pub cfg: NetworkConfig,
    pub rates: RateThresholds,
}

impl Context {
    pub fn new(settings: Settings) -> Result<Self, CliError> {
        Ok(Self {
            cfg: settings.network()?,
            rates: settings.rates()?,
            spec: settings.quadrature()?,
            sweep: settings.sweep_spec()?,
            settings,
        })
    }

    /// The sweep variable, `u` when no sweep is configured.
    pub fn variable(&self) -> SweepVariable {
        self.sweep.map_or(SweepVariable::U, |s| s.variable)
    }

    /// Grid points of the sweep, or the single configured point.
    pub fn points(&self) -> Result<Vec<Point>, CliError> {
        let Some(sweep) = self.sweep else {
            return Ok(vec![Point {
                x: self.cfg.u,
                cfg: self.cfg,
                rates: self.rates,
            }]);
        };
        sweep
            .values()
            .into_iter()
            .map(|x| self.point(sweep.variable, x))
            .collect()
    }

    fn point(&self, variable: SweepVariable, x: f64) -> Result<Point, CliError> {
        let invalid = |e: crate::Error| CliError::Config(format!("{variable} = {x}: {e}"));
        let (cfg, rates) = match variable {
            SweepVariable::U => (self.cfg.with_u(x).map_err(invalid)?, self.rates),
            SweepVariable::Gamma => (self.cfg, RateThresholds::equal(x).map_err(invalid)?),
            SweepVariable::Mu => (
                self.cfg,
                RateThresholds::from_sir(x, self.rates.sigma).map_err(invalid)?,
            ),
            SweepVariable::Sigma => (self.cfg, RateThresholds::from_sir(self.rates.mu, x).map_err(invalid)?),
            SweepVariable::Rs => (self.cfg, thresholds_from_rates(self.rates.rt, x).map_err(invalid)?),
        };
        Ok(Point { x, cfg, rates })
    }

    pub(crate) fn require_u_sweep(&self, command: &str) -> Result<(), CliError> {
        if self.variable() == SweepVariable::U {
            Ok(())
        } else {
            Err(CliError::Config(format!(
                "{command} can only sweep u, not {}",
                self.variable()
            )))
        }
    }
}

/// Evaluates `row` at every point in parallel and assembles the rows in
/// sweep order, prefixed by the sweep value.
pub(crate) fn tabulate<F>(header: Vec<String>, points: &[Point], row: F) -> Result<Table, CliError>
where
    F: Fn(&Point) -> crate::Result<Vec<f64>> + Sync,
{
    let rows = points
        .par_iter()
        .map(|p| {
            row(p)
                .map(|mut values| {
                    values.insert(0, p.x);
                    values
                })
                .map_err(|e| CliError::AtPoint {
                    x: p.x,
                    source: Box::new(e.into()),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(header);
    for r in rows {
        table.push(r);
    }
    Ok(table)
}

pub(crate) fn header(first: impl ToString, rest: &[&str]) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(rest.iter().map(|s| s.to_string()))
        .collect()
}

/// Interference moments at the receiver and at the eavesdropper, the latter
/// both by quadrature and from the semi-closed forms.
pub fn stats(ctx: &Context) -> Result<Table, CliError> {
    ctx.require_u_sweep("stats")?;
    let spec = ctx.spec;
    tabulate(
        header(
            "u",
            &[
                "receiver_mean",
                "receiver_variance",
                "eaves_mean",
                "eaves_variance",
                "eaves_mean_closed",
                "eaves_variance_closed",
            ],
        ),
        &ctx.points()?,
        |p| {
            let r = receiver_stats(&p.cfg);
            let e = eaves_stats_numeric(&p.cfg, &spec)?;
            let c = eaves_stats_closed(&p.cfg)?;
            Ok(vec![r.mean, r.variance, e.mean, e.variance, c.mean, c.variance])
        },
    )
}

/// Correlation coefficient of the two interference powers.
pub fn rho(ctx: &Context) -> Result<Table, CliError> {
    ctx.require_u_sweep("rho")?;
    let spec = ctx.spec;
    tabulate(header("u", &["rho"]), &ctx.points()?, |p| {
        Ok(vec![correlation(&p.cfg, &spec)?.rho])
    })
}

/// Connection probabilities of the receiver and the eavesdropper.
pub fn pconn(ctx: &Context) -> Result<Table, CliError> {
    let spec = ctx.spec;
    tabulate(header(ctx.variable(), &["receiver", "eaves"]), &ctx.points()?, |p| {
        Ok(vec![
            receiver_connection(&p.cfg, p.rates.mu)?.value,
            eaves_connection(&p.cfg, p.rates.sigma, EavesGain::Averaged, &spec)?.value,
        ])
    })
}

/// Secure connectivity with correlated interference, and the value that
/// ignores the correlation.
pub fn psc(ctx: &Context) -> Result<Table, CliError> {
    let spec = ctx.spec;
    tabulate(
        header(ctx.variable(), &["p_conn", "joint", "p_sc", "p_sc_uncorrelated"]),
        &ctx.points()?,
        |p| {
            let s = secure_connectivity(&p.cfg, &p.rates, &spec)?;
            let independent = joint_connection_uncorrelated(&p.cfg, p.rates.mu, p.rates.sigma, &spec)?;
            Ok(vec![s.p_conn, s.joint, s.p_sc, (s.p_conn - independent).max(0.0)])
        },
    )
}

/// Average capacity with and without secrecy.
pub fn capacity(ctx: &Context) -> Result<Table, CliError> {
    ctx.require_u_sweep("capacity")?;
    let spec = ctx.spec;
    tabulate(
        header("u", &["c_secrecy", "c_plain", "rate_loss"]),
        &ctx.points()?,
        |p| {
            let c = avg_secrecy_capacity(&p.cfg, &spec)?;
            Ok(vec![c.c_secrecy, c.c_plain, c.rate_loss])
        },
    )
}

const MC_COLUMNS: [&str; 8] = [
    "p_conn",
    "p_conn_se",
    "p_sc",
    "p_sc_se",
    "capacity",
    "capacity_se",
    "rho",
    "rho_se",
];

fn mc_row(set: &SampleSet, rates: &RateThresholds) -> Vec<f64> {
    let c = set.connection(rates.mu);
    let s = set.secure_connectivity(rates);
    let cap = set.capacity();
    let rho = set.correlation();
    vec![
        c.mean,
        c.std_error,
        s.mean,
        s.std_error,
        cap.mean,
        cap.std_error,
        rho.mean,
        rho.std_error,
    ]
}

/// Monte Carlo estimates with standard errors. Rate sweeps reuse a single
/// set of draws; a sweep over u draws afresh at every point from the same
/// seed.
pub fn mc(ctx: &Context) -> Result<Table, CliError> {
    let points = ctx.points()?;
    let mut table = Table::new(header(ctx.variable(), &MC_COLUMNS));
    let mut shared: Option<SampleSet> = None;
    for p in &points {
        let fresh;
        let set = if ctx.variable().is_rate() {
            if shared.is_none() {
                shared = Some(SampleSet::generate(&ctx.cfg, &ctx.settings.simulation(&ctx.cfg)?)?);
            }
            shared.as_ref().expect("draws generated above")
        } else {
            fresh = SampleSet::generate(&p.cfg, &ctx.settings.simulation(&p.cfg)?)?;
            &fresh
        };
        let mut row = vec![p.x];
        row.extend(mc_row(set, &p.rates));
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(text: &str) -> Context {
        Context::new(Settings::parse_config(text).unwrap()).unwrap()
    }

    #[test]
    fn single_point_defaults_to_u() {
        let c = ctx("u = 2");
        let pts = c.points().unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].x, 2.0);
        assert_eq!(c.variable(), SweepVariable::U);
    }

    #[test]
    fn rate_sweeps_apply_to_thresholds() {
        let c = ctx("rt = 2\nsweep = rs\nlo = 0\nhi = 2\npoints = 3");
        let pts = c.points().unwrap();
        assert_eq!(pts[2].rates.sigma, 0.0);
        assert_eq!(pts[0].rates.mu, 3.0);
        let c = ctx("mu = 10\nsigma = 1\nsweep = mu\nlo = 0.5\nhi = 10\npoints = 2");
        assert!(matches!(c.points(), Err(CliError::Config(_))));
    }

    #[test]
    fn psc_rows_are_consistent() {
        let t = psc(&ctx(
            "geometry = bulk\nsweep = gamma\nlo = 0.1\nhi = 10\npoints = 3\nscale = log",
        ))
        .unwrap();
        assert_eq!(t.header, vec!["gamma", "p_conn", "joint", "p_sc", "p_sc_uncorrelated"]);
        for row in &t.rows {
            assert!((row[1] - row[2] - row[3]).abs() < 1e-15);
        }
    }

    #[test]
    fn capacity_rejects_rate_sweeps() {
        let c = ctx("sweep = gamma\nlo = 1\nhi = 2");
        assert!(matches!(capacity(&c), Err(CliError::Config(_))));
    }

    #[test]
    fn mc_shares_draws_across_rate_points() {
        let t = mc(&ctx(
            "samples = 2000\nseed = 3\nsweep = sigma\nlo = 0.1\nhi = 1\npoints = 2",
        ))
        .unwrap();
        assert_eq!(t.rows[0][1], t.rows[1][1]);
        assert_eq!(t.rows[0][7], t.rows[1][7]);
        assert!(t.rows[0][3] < t.rows[1][3]);
    }
}
