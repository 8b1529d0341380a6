//! Secrecy of a link whose receiver sits at the corner of a quadrant of
//! interferers, compared with a receiver in the bulk of the plane.
//!
//! Interferers form a Poisson field with Rayleigh fading and the bounded
//! pathloss `min(1, r^-η)`. An eavesdropper at distance `u` from the
//! receiver shares the interferer positions, which correlates the two
//! interference powers. The crate evaluates:
//!
//! * interference moments and their correlation coefficient ([`interference`]);
//! * connection, joint connection and secure connectivity probabilities
//!   ([`connectivity`]);
//! * low-rate, high-rate and high-secrecy approximations and the optimal
//!   SIR threshold ([`asymptotics`]);
//! * average capacity with and without secrecy ([`capacity`]);
//! * Monte Carlo counterparts of all of the above ([`simulator`]).
//!
//! [`cli`] turns these into CSV tables and figure presets, and [`validate`]
//! bundles the self-checks run by the `validate` subcommand.
//!
//! ```
//! use secrecy_geom::connectivity::secure_connectivity;
//! use secrecy_geom::model::{Geometry, NetworkConfig, RateThresholds};
//! use secrecy_geom::numerics::QuadratureSpec;
//!
//! let corner = NetworkConfig::new(Geometry::Corner, 0.2, 4.0, 1.0, 3.0)?;
//! let rates = RateThresholds::from_sir(10.0, 10.0)?;
//! let p = secure_connectivity(&corner, &rates, &QuadratureSpec::default())?;
//! assert!(p.p_sc > 0.0 && p.p_sc < p.p_conn);
//! # Ok::<(), secrecy_geom::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod capacity;
pub mod cli;
pub mod connectivity;
pub mod error;
pub mod interference;
pub mod model;
pub mod numerics;
pub mod simulator;
pub mod validate;

pub use error::{Error, Result};
