//! Special functions, adaptive quadrature and a one-dimensional maximiser.

mod optimize;
mod quadrature;
mod special;

pub use optimize::maximize_unimodal;
pub use quadrature::{integrate_1d, integrate_polar, integrate_polar_with, QuadratureSpec, Sector};
pub use special::{gamma_fn, hyp2f1, sinc_fn};

pub(crate) use quadrature::{park, with_inner_errors};
