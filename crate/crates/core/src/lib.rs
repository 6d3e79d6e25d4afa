//! Multiphase interface tracking in the plane.
//!
//! The interface between any number of disjoint phases is represented by a
//! constant topology (a planar graph with a smoothness pairing and per-phase
//! oriented cycles) plus evolving geometry (periodic and not-a-knot cubic
//! splines parametrized by cumulative chordal length). Markers are advected
//! by explicit Runge-Kutta flow maps and re-regularized each step so that
//! adjacent-marker distances stay inside a prescribed, optionally
//! curvature-adaptive band.
//!
//! The crate is organized along the pipeline:
//!
//! * [`spline`] — chordal-length cubic splines, moment systems, curvature;
//! * [`topology`] — interface graphs, edge pairings, circuit/trail
//!   partitioning, spline assembly and cutting, built-in scenes;
//! * [`flow`] — analytic velocity fields and Runge-Kutta flow maps;
//! * [`arms`] — per-spline marker add/remove regularization;
//! * [`driver`] — the time loop over a tracked state;
//! * [`metrics`] — cell-wise area errors against analytic references and
//!   convergence rates.

pub mod arms;
pub mod driver;
pub mod flow;
pub mod geom;
pub mod metrics;
pub mod spline;
pub mod topology;

mod error;

pub use error::Error;
pub use geom::Point2;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
