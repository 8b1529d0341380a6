//! Presets that regenerate each published figure as a table.
//!
//! Every preset fixes the caption parameters (η = 4, λ = 0.2, d0 = 1 and
//! the figure-specific distance, rates and sweep); configuration files and
//! flags override any of them.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{
    joint_connection_high_rate, low_rate_inputs, psc_high_rate_large_u, psc_low_rate_with,
    psc_low_rate_zero_secrecy_with, receiver_connection_high_rate,
};
use crate::capacity::avg_secrecy_capacity;
use crate::connectivity::{
    eaves_connection_bulk, eaves_connection_corner, eaves_connection_corner_bound, joint_connection,
    receiver_connection, secure_connectivity, EavesGain,
};
use crate::interference::correlation;
use crate::model::{Geometry, NetworkConfig};
use crate::simulator::SampleSet;

use super::commands::{header, tabulate, Context};
use super::settings::{Scale, Settings, SweepVariable};
use super::table::Table;
use super::CliError;

/// A figure preset; sub-figures (a) and (b) are separate presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Correlation coefficient against distance, with Monte Carlo at the corner.
    Correlation,
    /// Eavesdropper connection probability against distance, transmitter at (0, d0).
    EavesConnection,
    /// Low-rate expansion against the secrecy rate.
    LowRate,
    /// Low-rate expansion at zero secrecy rate against γ.
    LowRateZeroSecrecy,
    /// Large-separation corner bound against σ at fixed μ.
    LargeSeparation,
    /// Large-separation bounds at zero secrecy rate against γ.
    LargeSeparationZeroSecrecy,
    /// Small-separation high-rate approximation of each term against γ.
    SmallSeparation,
    /// Secure connectivity against the secrecy rate.
    Secrecy,
    /// Secure connectivity at zero secrecy rate against γ.
    SecrecyZeroSecrecy,
    /// Average secrecy capacity against distance, bulk at λ and λ/4.
    Capacity,
    /// Secure connectivity against γ, corner at λ and bulk at λ/4.
    Interplay,
}

/// Preset identifiers as accepted by `--figure`.
pub const FIGURE_IDS: [&str; 11] = ["2", "3", "4a", "4b", "5a", "5b", "6", "7a", "7b", "8", "9"];

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s.trim() {
            "2" => Figure::Correlation,
            "3" => Figure::EavesConnection,
            "4" | "4a" => Figure::LowRate,
            "4b" => Figure::LowRateZeroSecrecy,
            "5" | "5a" => Figure::LargeSeparation,
            "5b" => Figure::LargeSeparationZeroSecrecy,
            "6" => Figure::SmallSeparation,
            "7" | "7a" => Figure::Secrecy,
            "7b" => Figure::SecrecyZeroSecrecy,
            "8" => Figure::Capacity,
            "9" => Figure::Interplay,
            other => {
                return Err(CliError::Config(format!(
                    "unknown figure '{other}', expected one of {}",
                    FIGURE_IDS.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let id = match self {
            Figure::Correlation => "2",
            Figure::EavesConnection => "3",
            Figure::LowRate => "4a",
            Figure::LowRateZeroSecrecy => "4b",
            Figure::LargeSeparation => "5a",
            Figure::LargeSeparationZeroSecrecy => "5b",
            Figure::SmallSeparation => "6",
            Figure::Secrecy => "7a",
            Figure::SecrecyZeroSecrecy => "7b",
            Figure::Capacity => "8",
            Figure::Interplay => "9",
        };
        f.write_str(id)
    }
}

fn sweep(s: &mut Settings, variable: SweepVariable, lo: f64, hi: f64, points: usize, scale: Scale) {
    s.sweep = Some(variable);
    s.lo = Some(lo);
    s.hi = Some(hi);
    s.points = Some(points);
    s.scale = Some(scale);
}

impl Figure {
    /// The caption parameters and sweep of this figure.
    pub fn preset(self) -> Settings {
        let mut s = Settings {
            geometry: Some(Geometry::Corner),
            lambda: Some(0.2),
            eta: Some(4.0),
            d0: Some(1.0),
            u: Some(1.0),
            rt: Some(1.0),
            rs: Some(0.0),
            seed: Some(1),
            samples: Some(20_000),
            ..Settings::default()
        };
        let log2_1p = |x: f64| x.ln_1p() / std::f64::consts::LN_2;
        match self {
            Figure::Correlation => sweep(&mut s, SweepVariable::U, 0.1, 5.0, 25, Scale::Linear),
            Figure::EavesConnection => sweep(&mut s, SweepVariable::U, 0.1, 5.0, 50, Scale::Linear),
            Figure::LowRate => {
                let rt = log2_1p(0.1);
                s.rt = Some(rt);
                sweep(&mut s, SweepVariable::Rs, 0.0, rt, 21, Scale::Linear);
            }
            Figure::LowRateZeroSecrecy => sweep(&mut s, SweepVariable::Gamma, 1e-3, 0.3, 21, Scale::Log),
            Figure::LargeSeparation => {
                s.u = Some(3.0);
                s.rt = Some(log2_1p(10.0));
                sweep(&mut s, SweepVariable::Sigma, 0.1, 10.0, 21, Scale::Log);
            }
            Figure::LargeSeparationZeroSecrecy => {
                s.u = Some(3.0);
                sweep(&mut s, SweepVariable::Gamma, 1.0, 1e3, 21, Scale::Log);
            }
            Figure::SmallSeparation => {
                s.u = Some(0.5);
                sweep(&mut s, SweepVariable::Gamma, 1.0, 1e3, 21, Scale::Log);
            }
            Figure::Secrecy => {
                let rt = log2_1p(10.0);
                s.rt = Some(rt);
                sweep(&mut s, SweepVariable::Rs, 0.0, rt, 21, Scale::Linear);
            }
            Figure::SecrecyZeroSecrecy => sweep(&mut s, SweepVariable::Gamma, 1e-2, 1e3, 31, Scale::Log),
            Figure::Capacity => sweep(&mut s, SweepVariable::U, 0.1, 5.0, 16, Scale::Linear),
            Figure::Interplay => sweep(&mut s, SweepVariable::Gamma, 1e-2, 1e2, 21, Scale::Log),
        }
        s
    }

    /// Builds the table for resolved settings.
    pub fn build(self, ctx: &Context) -> Result<Table, CliError> {
        let spec = ctx.spec;
        let var = ctx.variable();
        let corner = |cfg: &NetworkConfig| cfg.with_geometry(Geometry::Corner);
        let bulk = |cfg: &NetworkConfig| cfg.with_geometry(Geometry::Bulk);
        match self {
            Figure::Correlation => {
                ctx.require_u_sweep("figure 2")?;
                let analytic = tabulate(header(var, &["rho_corner", "rho_bulk"]), &ctx.points()?, |p| {
                    Ok(vec![
                        correlation(&corner(&p.cfg), &spec)?.rho,
                        correlation(&bulk(&p.cfg), &spec)?.rho,
                    ])
                })?;
                let mut table = Table::new(header(var, &["rho_corner", "rho_bulk", "mc_mean", "mc_stderr"]));
                for row in analytic.rows {
                    let cfg = corner(&ctx.cfg.with_u(row[0])?);
                    let set = SampleSet::generate(&cfg, &ctx.settings.simulation(&cfg)?)?;
                    let est = set.correlation();
                    table.push(vec![row[0], row[1], row[2], est.mean, est.std_error]);
                }
                Ok(table)
            }
            Figure::EavesConnection => {
                ctx.require_u_sweep("figure 3")?;
                tabulate(
                    header(var, &["corner_exact", "corner_bound", "bulk_exact"]),
                    &ctx.points()?,
                    |p| {
                        let z = p.cfg.eaves_gain(std::f64::consts::FRAC_PI_2);
                        let sigma = p.rates.sigma;
                        Ok(vec![
                            eaves_connection_corner(&corner(&p.cfg), sigma, EavesGain::Fixed(z), &spec)?.value,
                            eaves_connection_corner_bound(&corner(&p.cfg), sigma, z)?.value,
                            eaves_connection_bulk(&bulk(&p.cfg), sigma, EavesGain::Fixed(z), &spec)?.value,
                        ])
                    },
                )
            }
            Figure::LowRate | Figure::LowRateZeroSecrecy => {
                let co = corner(&ctx.cfg);
                let bu = bulk(&ctx.cfg);
                let inputs_co = low_rate_inputs(&co, &spec)?;
                let inputs_bu = low_rate_inputs(&bu, &spec)?;
                let zero_secrecy = self == Figure::LowRateZeroSecrecy;
                tabulate(
                    header(var, &["corner_exact", "corner_approx", "bulk_exact", "bulk_approx"]),
                    &ctx.points()?,
                    |p| {
                        let approx = |cfg: &NetworkConfig, inputs| {
                            if zero_secrecy {
                                psc_low_rate_zero_secrecy_with(cfg, inputs, p.rates.mu)
                            } else {
                                psc_low_rate_with(cfg, inputs, &p.rates)
                            }
                        };
                        Ok(vec![
                            secure_connectivity(&co, &p.rates, &spec)?.p_sc,
                            approx(&co, &inputs_co),
                            secure_connectivity(&bu, &p.rates, &spec)?.p_sc,
                            approx(&bu, &inputs_bu),
                        ])
                    },
                )
            }
            Figure::LargeSeparation => tabulate(header(var, &["corner_exact", "corner_approx"]), &ctx.points()?, |p| {
                let co = corner(&p.cfg);
                Ok(vec![
                    secure_connectivity(&co, &p.rates, &spec)?.p_sc,
                    psc_high_rate_large_u(&co, &p.rates)?.0,
                ])
            }),
            Figure::LargeSeparationZeroSecrecy => tabulate(
                header(var, &["corner_exact", "corner_approx", "bulk_exact", "bulk_approx"]),
                &ctx.points()?,
                |p| {
                    let (co_approx, bu_approx) = psc_high_rate_large_u(&p.cfg, &p.rates)?;
                    Ok(vec![
                        secure_connectivity(&corner(&p.cfg), &p.rates, &spec)?.p_sc,
                        co_approx,
                        secure_connectivity(&bulk(&p.cfg), &p.rates, &spec)?.p_sc,
                        bu_approx,
                    ])
                },
            ),
            Figure::SmallSeparation => tabulate(
                header(
                    var,
                    &[
                        "receiver_exact",
                        "receiver_approx",
                        "joint_exact",
                        "joint_approx",
                        "psc_exact",
                        "psc_approx",
                    ],
                ),
                &ctx.points()?,
                |p| {
                    let co = corner(&p.cfg);
                    let gamma = p.rates.mu;
                    let receiver = receiver_connection(&co, gamma)?.value;
                    let joint = joint_connection(&co, gamma, p.rates.sigma, &spec)?;
                    let receiver_approx = receiver_connection_high_rate(&co, gamma)?;
                    let joint_approx = joint_connection_high_rate(&co, gamma)?;
                    Ok(vec![
                        receiver,
                        receiver_approx,
                        joint,
                        joint_approx,
                        receiver - joint,
                        receiver_approx - joint_approx,
                    ])
                },
            ),
            Figure::Secrecy | Figure::SecrecyZeroSecrecy => {
                tabulate(header(var, &["corner_exact", "bulk_exact"]), &ctx.points()?, |p| {
                    Ok(vec![
                        secure_connectivity(&corner(&p.cfg), &p.rates, &spec)?.p_sc,
                        secure_connectivity(&bulk(&p.cfg), &p.rates, &spec)?.p_sc,
                    ])
                })
            }
            Figure::Capacity => {
                ctx.require_u_sweep("figure 8")?;
                let analytic = tabulate(header(var, &["corner", "bulk", "bulk_quarter"]), &ctx.points()?, |p| {
                    let quarter = bulk(&p.cfg).with_lambda(p.cfg.lambda / 4.0)?;
                    Ok(vec![
                        avg_secrecy_capacity(&corner(&p.cfg), &spec)?.c_secrecy,
                        avg_secrecy_capacity(&bulk(&p.cfg), &spec)?.c_secrecy,
                        avg_secrecy_capacity(&quarter, &spec)?.c_secrecy,
                    ])
                })?;
                let mut table = Table::new(header(var, &["corner", "bulk", "bulk_quarter", "mc_mean", "mc_stderr"]));
                for row in analytic.rows {
                    let cfg = corner(&ctx.cfg.with_u(row[0])?);
                    let est = SampleSet::generate(&cfg, &ctx.settings.simulation(&cfg)?)?.capacity();
                    table.push(vec![row[0], row[1], row[2], row[3], est.mean, est.std_error]);
                }
                Ok(table)
            }
            Figure::Interplay => tabulate(
                header(var, &["corner_exact", "bulk_quarter_exact"]),
                &ctx.points()?,
                |p| {
                    let quarter = bulk(&p.cfg).with_lambda(p.cfg.lambda / 4.0)?;
                    Ok(vec![
                        secure_connectivity(&corner(&p.cfg), &p.rates, &spec)?.p_sc,
                        secure_connectivity(&quarter, &p.rates, &spec)?.p_sc,
                    ])
                },
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in FIGURE_IDS {
            assert_eq!(id.parse::<Figure>().unwrap().to_string(), id);
        }
        assert_eq!("4".parse::<Figure>().unwrap(), Figure::LowRate);
        assert!("10".parse::<Figure>().is_err());
    }

    #[test]
    fn presets_carry_caption_parameters() {
        for id in FIGURE_IDS {
            let s = id.parse::<Figure>().unwrap().preset();
            assert_eq!((s.eta, s.lambda, s.d0), (Some(4.0), Some(0.2), Some(1.0)));
            assert!(s.sweep_spec().unwrap().is_some());
        }
        assert_eq!(Figure::LargeSeparation.preset().u, Some(3.0));
        assert_eq!(Figure::SmallSeparation.preset().u, Some(0.5));
    }

    #[test]
    fn interplay_rows_have_corner_above_bulk() {
        let mut s = Figure::Interplay.preset();
        s.points = Some(3);
        let t = Figure::Interplay.build(&Context::new(s).unwrap()).unwrap();
        assert_eq!(t.header, vec!["gamma", "corner_exact", "bulk_quarter_exact"]);
        assert!(t.rows.iter().all(|r| r[1] >= r[2]));
    }
}
