//! Periodic and not-a-knot cubic splines over cumulative chordal lengths.
//!
//! A spline here is a pair of coordinate spline functions sharing one knot
//! sequence. Fitting goes through the moment linear system (unknowns are the
//! second derivatives at the knots), solved by a pivoting-free banded
//! elimination; the assembled system is exposed so tests can probe its
//! norms and conditioning.

mod moment;

pub use moment::MomentSystem;

use crate::geom::Point2;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for the moment-system residual after fitting.
pub const FIT_RESIDUAL_TOL: f64 = 1e-12;

/// Which one-sided limit to take at a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    TwoSided,
    Left,
    Right,
}

/// Spline boundary treatment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplineKind {
    /// Closed curve: value, first and second derivative agree at the ends.
    Periodic,
    /// Open curve: third derivative continuous across the second and
    /// second-to-last knots.
    NotAKnot,
}

/// Cumulative chordal lengths of a marker sequence:
/// `l_0 = 0`, `l_i = l_{i-1} + |X_i - X_{i-1}|`.
pub fn chordal_lengths(points: &[Point2]) -> Result<Vec<f64>> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let mut lengths = Vec::with_capacity(points.len());
    lengths.push(0.0);
    for i in 1..points.len() {
        let chord = points[i].dist(points[i - 1]);
        if chord == 0.0 {
            return Err(Error::DegenerateChord { index: i - 1 });
        }
        lengths.push(lengths[i - 1] + chord);
    }
    Ok(lengths)
}

/// An ordered marker sequence with its cumulative chordal lengths.
///
/// For a closed sequence the first point is repeated at the end, so the
/// final chord closes the loop.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakpointSequence {
    points: Vec<Point2>,
    lengths: Vec<f64>,
    closed: bool,
}

impl BreakpointSequence {
    /// Open sequence (trail geometry).
    pub fn open(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::TooFewPoints {
                needed: 4,
                got: points.len(),
            });
        }
        let lengths = chordal_lengths(&points)?;
        Ok(Self {
            points,
            lengths,
            closed: false,
        })
    }

    /// Closed sequence. The last point must repeat the first; it is snapped
    /// exactly onto it so the loop closes bit-for-bit.
    pub fn closed(mut points: Vec<Point2>) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::TooFewPoints {
                needed: 4,
                got: points.len(),
            });
        }
        let first = points[0];
        let last = *points.last().unwrap();
        let scale = first.norm().max(1.0);
        if first.dist(last) > 1e-9 * scale {
            return Err(Error::NotClosed);
        }
        *points.last_mut().unwrap() = first;
        let lengths = chordal_lengths(&points)?;
        Ok(Self {
            points,
            lengths,
            closed: true,
        })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of intervals N (one less than the number of stored points).
    pub fn n_intervals(&self) -> usize {
        self.points.len() - 1
    }
}

/// A fitted cubic spline: shared knots plus per-coordinate values and
/// moments (second derivatives at the knots).
#[derive(Debug, Clone)]
pub struct CubicSpline {
    kind: SplineKind,
    knots: Vec<f64>,
    x: CoordData,
    y: CoordData,
}

#[derive(Debug, Clone)]
struct CoordData {
    values: Vec<f64>,
    moments: Vec<f64>,
}

impl CubicSpline {
    /// Fit a spline of the given kind through a breakpoint sequence,
    /// parametrized by its cumulative chordal lengths.
    pub fn fit(seq: &BreakpointSequence, kind: SplineKind) -> Result<Self> {
        if kind == SplineKind::Periodic && !seq.is_closed() {
            return Err(Error::NotClosed);
        }
        let xs: Vec<f64> = seq.points().iter().map(|p| p.x).collect();
        let ys: Vec<f64> = seq.points().iter().map(|p| p.y).collect();
        Self::fit_parametric(seq.lengths(), &xs, &ys, kind)
    }

    /// Fit over an explicit knot sequence (strictly increasing). For a
    /// periodic fit the first and last data values must coincide.
    pub fn fit_parametric(knots: &[f64], xs: &[f64], ys: &[f64], kind: SplineKind) -> Result<Self> {
        if knots.len() < 4 {
            return Err(Error::TooFewPoints {
                needed: 4,
                got: knots.len(),
            });
        }
        assert_eq!(knots.len(), xs.len());
        assert_eq!(knots.len(), ys.len());
        let x = fit_coord(knots, kind, xs)?;
        let y = fit_coord(knots, kind, ys)?;
        Ok(Self {
            kind,
            knots: knots.to_vec(),
            x,
            y,
        })
    }

    pub fn kind(&self) -> SplineKind {
        self.kind
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    /// Number of knot intervals.
    pub fn n_intervals(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn breakpoint(&self, i: usize) -> Point2 {
        Point2::new(self.x.values[i], self.y.values[i])
    }

    pub fn breakpoints(&self) -> Vec<Point2> {
        (0..self.knots.len()).map(|i| self.breakpoint(i)).collect()
    }

    /// Moments (second derivatives at the knots) of one coordinate;
    /// `coord` 0 selects x, anything else y.
    pub fn moments(&self, coord: usize) -> &[f64] {
        if coord == 0 {
            &self.x.moments
        } else {
            &self.y.moments
        }
    }

    /// Piecewise-cubic evaluation of the curve or one of its derivatives
    /// (order 0..=3). `l` must lie inside the knot range.
    pub fn eval(&self, l: f64, order: usize) -> Result<Point2> {
        self.eval_side(l, order, Side::TwoSided)
    }

    /// Like [`eval`](Self::eval) but with an explicit one-sided choice at
    /// knots, which matters for order 3 (piecewise constant) and for
    /// curvature at trail ends.
    pub fn eval_side(&self, l: f64, order: usize, side: Side) -> Result<Point2> {
        let i = self.interval_index(l, side)?;
        Ok(Point2::new(
            eval_piece(&self.knots, &self.x, i, l, order),
            eval_piece(&self.knots, &self.y, i, l, order),
        ))
    }

    /// Radius of curvature rho = (x'^2 + y'^2)^{3/2} / |x' y'' - y' x''|.
    ///
    /// Returns `f64::INFINITY` when the denominator falls below 1e-14 of
    /// the numerator scale (straight parts).
    pub fn curvature_radius(&self, l: f64, side: Side) -> Result<f64> {
        let d1 = self.eval_side(l, 1, side)?;
        let d2 = self.eval_side(l, 2, side)?;
        let speed2 = d1.dot(d1);
        if speed2.sqrt() < 1e-12 {
            return Err(Error::DegenerateParametrization { l });
        }
        let numer = speed2 * speed2.sqrt();
        let denom = d1.cross(d2).abs();
        if denom < 1e-14 * numer {
            return Ok(f64::INFINITY);
        }
        Ok(numer / denom)
    }

    /// Largest residual of the two coordinate moment systems, relative to
    /// the right-hand-side scale. The fit keeps this below
    /// [`FIT_RESIDUAL_TOL`].
    pub fn fit_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for coord in [&self.x, &self.y] {
            let sys = match self.kind {
                SplineKind::Periodic => MomentSystem::periodic(&self.knots, &coord.values),
                SplineKind::NotAKnot => MomentSystem::not_a_knot(&self.knots, &coord.values),
            };
            let m = match self.kind {
                SplineKind::Periodic => &coord.moments[..coord.moments.len() - 1],
                SplineKind::NotAKnot => &coord.moments[..],
            };
            worst = worst.max(sys.relative_residual(m));
        }
        worst
    }

    fn interval_index(&self, l: f64, side: Side) -> Result<usize> {
        let (lo, hi) = self.domain();
        let tol = 1e-12 * (hi - lo).max(1.0);
        if l < lo - tol || l > hi + tol {
            return Err(Error::OutOfRange { l, lo, hi });
        }
        let l = l.clamp(lo, hi);
        let n = self.n_intervals();
        // Index of the interval [l_i, l_{i+1}] containing l.
        let mut i = match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&l).unwrap())
        {
            Ok(exact) => {
                // Landed on a knot: pick the side.
                match side {
                    Side::Left => exact.saturating_sub(1),
                    Side::Right | Side::TwoSided => exact.min(n - 1),
                }
            }
            Err(ins) => ins - 1,
        };
        if i >= n {
            i = n - 1;
        }
        Ok(i)
    }
}

/// Assemble the moment linear system `A M = b` for one coordinate.
///
/// Interior rows read `mu_i M_{i-1} + 2 M_i + lambda_i M_{i+1} = 6 f[l_{i-1},
/// l_i, l_{i+1}]` with `mu_i + lambda_i = 1`; not-a-knot corner rows are
/// `(lambda_1, -1, mu_1)` and `(lambda_{N-1}, -1, mu_{N-1})` with zero right
/// hand side, while the periodic system wraps cyclically.
pub fn assemble_moment_system(
    seq: &BreakpointSequence,
    kind: SplineKind,
    data: &[f64],
) -> Result<MomentSystem> {
    if data.len() != seq.points().len() {
        return Err(Error::TooFewPoints {
            needed: seq.points().len(),
            got: data.len(),
        });
    }
    let l = seq.lengths();
    match kind {
        SplineKind::NotAKnot => Ok(MomentSystem::not_a_knot(l, data)),
        SplineKind::Periodic => {
            if !seq.is_closed() {
                return Err(Error::NotClosed);
            }
            Ok(MomentSystem::periodic(l, data))
        }
    }
}

fn fit_coord(knots: &[f64], kind: SplineKind, data: &[f64]) -> Result<CoordData> {
    let sys = match kind {
        SplineKind::Periodic => MomentSystem::periodic(knots, data),
        SplineKind::NotAKnot => MomentSystem::not_a_knot(knots, data),
    };
    let mut moments = sys.solve();
    if kind == SplineKind::Periodic {
        // Unknowns are M_0..M_{N-1}; repeat the first so evaluation can
        // index the closing interval uniformly.
        let m0 = moments[0];
        moments.push(m0);
    }
    for &m in &moments {
        if !m.is_finite() {
            return Err(Error::NonFinite {
                context: "moment solve",
            });
        }
    }
    Ok(CoordData {
        values: data.to_vec(),
        moments,
    })
}

fn eval_piece(knots: &[f64], coord: &CoordData, i: usize, l: f64, order: usize) -> f64 {
    let (l0, l1) = (knots[i], knots[i + 1]);
    let h = l1 - l0;
    let (f0, f1) = (coord.values[i], coord.values[i + 1]);
    let (m0, m1) = (coord.moments[i], coord.moments[i + 1]);
    let a = (l1 - l) / h;
    let b = (l - l0) / h;
    match order {
        0 => a * f0 + b * f1 + h * h / 6.0 * ((a * a * a - a) * m0 + (b * b * b - b) * m1),
        1 => {
            (f1 - f0) / h + h / 6.0 * (-(3.0 * a * a - 1.0) * m0 + (3.0 * b * b - 1.0) * m1)
        }
        2 => a * m0 + b * m1,
        3 => (m1 - m0) / h,
        _ => panic!("derivative order {order} out of range 0..=3"),
    }
}

#[cfg(test)]
mod tests;
