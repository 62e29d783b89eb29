//! Geodesic curvature of logarithmic spirals and loxodromes on surfaces of
//! constant Gaussian curvature.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod closed_form;
pub mod curves;
pub mod error;
pub mod liouville;
pub mod numdiff;
pub mod ode;
pub mod polar;
pub mod quadrature;
pub mod surface;
pub mod vec3;

pub use error::{GeomError, Result};
pub use vec3::Vec3;
