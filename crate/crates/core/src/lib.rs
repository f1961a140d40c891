//! Line-bundle representations of massless particles over the forward
//! lightcone, and two independent computations of their first Chern numbers.
//!
//! The photon bundles `gamma_{+1}` and `gamma_{-1}` are spanned by circular
//! polarizations `(e1 +/- i e2)/sqrt(2)`; all other helicities are tensor
//! powers of these. [`topology`] integrates the Berry curvature of a bundle
//! over a sphere mesh and winds its clutching function along the equator,
//! and [`poincare`] checks that the group action on the fibers carries the
//! expected helicity phases.

#![allow(clippy::needless_range_loop)]

pub mod bundles;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod poincare;
pub mod topology;

pub use error::{Error, Result};
