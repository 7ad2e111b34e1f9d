//! Entropic uncertainty for optimal joint measurements of two spin components
//! of a spin-1/2 particle.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: unit vectors, Bloch states and planar state parameterisation.
//! - [`entropy`]: Shannon and binary entropies in bits.
//! - [`measurement`]: the two-axis optimal joint-measurement scheme and its
//!   outcome distributions.
//! - [`bounds`]: closed-form entropic lower bounds and the entropy functionals
//!   they bound.
//! - [`optimizer`]: grid + golden-section minimisers over pure states and the
//!   critical-angle root finder.
//! - [`sampler`]: seeded Monte Carlo simulation of the measurement protocol.
//! - [`report`]: aggregation of every bound with the numerical minima for a
//!   single parameter point.
//!
//! Grid evaluations run on rayon when the `parallel` feature is enabled
//! (default). Every entry point that fans out also accepts an [`Exec`] so the
//! sequential path stays available at runtime.

pub mod bounds;
pub mod entropy;
mod error;
pub mod exec;
pub mod geometry;
pub mod measurement;
pub mod optimizer;
pub mod report;
pub mod sampler;

pub use error::{Error, Result};
pub use exec::Exec;
pub use geometry::{BlochState, PlanarFrame, UnitVector3, Vec3};
pub use measurement::{JointDistribution, JointScheme, PomElement, SharpnessPair};
