//! Probabilistic properties of random ellipses under the planar elliptic
//! (Cardan) motion.
//!
//! A circle of radius r rolling inside a fixed circle of radius 2r makes
//! every point of the moving plane trace an ellipse. When the generating
//! point is drawn uniformly from a disk of radius R = κr attached to the
//! moving plane, the area and perimeter of its ellipse become random
//! variables. This crate evaluates their moments, distribution functions
//! and densities in closed form where available and by adaptive quadrature
//! otherwise, with a seedable Monte Carlo sampler as an independent check.
//!
//! Elliptic integrals take the modulus k as argument, never the parameter
//! m = k².

pub mod area;
pub mod elliptic;
pub mod error;
pub mod monte_carlo;
pub mod motion;
pub mod perimeter;
pub mod quadrature;
mod rootfind;

pub use area::{AreaLaw, AreaRegime};
pub use error::{Error, Result};
pub use monte_carlo::{Quantity, SampleBatch};
pub use motion::{Circle, EllipseGeometry, MotionConfig, MovingPoint, TracePoint};
pub use perimeter::PerimeterLaw;
pub use quadrature::QuadratureSpec;
