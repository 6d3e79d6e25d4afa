//! Analytic velocity fields and explicit Runge-Kutta flow maps.
//!
//! The two benchmark fields come from stream functions, so they are
//! divergence-free by construction; both reverse at t = T/2 through the
//! cos(pi t / T) factor, making the initial condition the exact solution
//! at t = T.

use crate::geom::Point2;
use crate::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Time-dependent velocity field u(x, t).
#[derive(Clone)]
pub enum VelocityField {
    /// No motion; useful for measuring the metrics pipeline's noise floor.
    Zero,
    /// Single-vortex shear from psi = -(1/pi) sin^2(pi x) sin^2(pi y) cos(pi t/T).
    Vortex { period: f64 },
    /// Grid of n_v x n_v vortices from
    /// psi = -(1/(n_v pi)) sin(n_v pi (x+1/2)) cos(n_v pi (y+1/2)) cos(pi t/T).
    Deformation { period: f64, n_vortices: u32 },
    /// User-supplied velocity.
    Custom(Arc<dyn Fn(Point2, f64) -> Point2 + Send + Sync>),
}

impl fmt::Debug for VelocityField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VelocityField::Zero => write!(f, "Zero"),
            VelocityField::Vortex { period } => write!(f, "Vortex {{ period: {period} }}"),
            VelocityField::Deformation { period, n_vortices } => {
                write!(f, "Deformation {{ period: {period}, n_vortices: {n_vortices} }}")
            }
            VelocityField::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl VelocityField {
    /// Velocity at a point and time.
    pub fn velocity(&self, p: Point2, t: f64) -> Point2 {
        use std::f64::consts::PI;
        match self {
            VelocityField::Zero => Point2::new(0.0, 0.0),
            VelocityField::Vortex { period } => {
                let cos_t = (PI * t / period).cos();
                let sx = (PI * p.x).sin();
                let sy = (PI * p.y).sin();
                Point2::new(
                    -sx * sx * (2.0 * PI * p.y).sin() * cos_t,
                    (2.0 * PI * p.x).sin() * sy * sy * cos_t,
                )
            }
            VelocityField::Deformation { period, n_vortices } => {
                let nv = *n_vortices as f64;
                let cos_t = (PI * t / period).cos();
                let ax = nv * PI * (p.x + 0.5);
                let ay = nv * PI * (p.y + 0.5);
                Point2::new(ax.sin() * ay.sin() * cos_t, ax.cos() * ay.cos() * cos_t)
            }
            VelocityField::Custom(f) => f(p, t),
        }
    }
}

/// An explicit Butcher tableau.
#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau {
    /// Strictly lower-triangular stage matrix, row i holding a_ij for j < i.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub order: usize,
}

const RK4_TAB: &str = include_str!("../data/rk4.tab");
const VERNER6_TAB: &str = include_str!("../data/verner6.tab");
const DOPRI8_TAB: &str = include_str!("../data/dopri8.tab");

impl ButcherTableau {
    /// Classic fourth-order Runge-Kutta method.
    pub fn rk4() -> Self {
        Self::parse(RK4_TAB).expect("embedded rk4 tableau")
    }

    /// Verner's 8-stage sixth-order method.
    pub fn verner6() -> Self {
        Self::parse(VERNER6_TAB).expect("embedded verner6 tableau")
    }

    /// Prince-Dormand 13-stage eighth-order method.
    pub fn dopri8() -> Self {
        Self::parse(DOPRI8_TAB).expect("embedded dopri8 tableau")
    }

    /// Shipped tableau of the given order (4, 6 or 8).
    pub fn of_order(order: usize) -> Result<Self> {
        match order {
            4 => Ok(Self::rk4()),
            6 => Ok(Self::verner6()),
            8 => Ok(Self::dopri8()),
            _ => Err(Error::InvalidConfig {
                field: "order",
                reason: format!("no shipped tableau of order {order} (use 4, 6 or 8)"),
            }),
        }
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// Parse the plain-text tableau format: `order`, `stages`, `c`, rows
    /// `a <i> <j> <value>`, `b`; values are decimals or rationals `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = Error::Tableau;
        let mut order = None;
        let mut stages = None;
        let mut c: Vec<f64> = Vec::new();
        let mut b: Vec<f64> = Vec::new();
        let mut a_entries: Vec<(usize, usize, f64)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut toks = line.split_whitespace();
            let key = toks.next().unwrap();
            let rest: Vec<&str> = toks.collect();
            match key {
                "order" => order = Some(parse_usize(&rest, ln)?),
                "stages" => stages = Some(parse_usize(&rest, ln)?),
                "c" => c = parse_values(&rest)?,
                "b" => b = parse_values(&rest)?,
                "a" => {
                    if rest.len() != 3 {
                        return Err(bad(format!("line {}: a needs i j value", ln + 1)));
                    }
                    let i: usize =
                        rest[0].parse().map_err(|_| bad(format!("line {}", ln + 1)))?;
                    let j: usize =
                        rest[1].parse().map_err(|_| bad(format!("line {}", ln + 1)))?;
                    a_entries.push((i, j, parse_value(rest[2])?));
                }
                other => return Err(bad(format!("line {}: unknown key {other}", ln + 1))),
            }
        }
        let order = order.ok_or_else(|| bad("missing order".into()))?;
        let stages = stages.ok_or_else(|| bad("missing stages".into()))?;
        if c.len() != stages || b.len() != stages {
            return Err(bad(format!(
                "c/b length mismatch: got {}/{} for {} stages",
                c.len(),
                b.len(),
                stages
            )));
        }
        let mut a = vec![Vec::new(); stages];
        for (i, row) in a.iter_mut().enumerate() {
            row.resize(i, 0.0);
        }
        for (i, j, v) in a_entries {
            if i >= stages || j >= i {
                return Err(bad(format!("a[{i}][{j}] outside the strict lower triangle")));
            }
            a[i][j] = v;
        }
        let tab = Self { a, b, c, order };
        tab.validate()?;
        Ok(tab)
    }

    /// Structural sanity: sum(b) = 1 and c_i = sum_j a_ij.
    fn validate(&self) -> Result<()> {
        let sum_b: f64 = self.b.iter().sum();
        if (sum_b - 1.0).abs() > 1e-14 {
            return Err(Error::Tableau(format!("sum(b) = {sum_b} != 1")));
        }
        for (i, row) in self.a.iter().enumerate() {
            let s: f64 = row.iter().sum();
            if (s - self.c[i]).abs() > 1e-14 {
                return Err(Error::Tableau(format!(
                    "row {i}: sum(a) = {s} differs from c = {}",
                    self.c[i]
                )));
            }
        }
        Ok(())
    }
}

fn parse_usize(toks: &[&str], ln: usize) -> Result<usize> {
    toks.first()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Tableau(format!("line {}: expected an integer", ln + 1)))
}

fn parse_values(toks: &[&str]) -> Result<Vec<f64>> {
    toks.iter().map(|t| parse_value(t)).collect()
}

fn parse_value(tok: &str) -> Result<f64> {
    if let Some((p, q)) = tok.split_once('/') {
        let p: f64 = p
            .parse()
            .map_err(|_| Error::Tableau(format!("bad rational {tok}")))?;
        let q: f64 = q
            .parse()
            .map_err(|_| Error::Tableau(format!("bad rational {tok}")))?;
        return Ok(p / q);
    }
    tok.parse()
        .map_err(|_| Error::Tableau(format!("bad value {tok}")))
}

/// One explicit Runge-Kutta step of size k for the marker ODE dx/dt = u(x, t).
#[derive(Debug, Clone)]
pub struct DiscreteFlowMap {
    pub field: VelocityField,
    pub tableau: ButcherTableau,
    pub t0: f64,
    pub k: f64,
}

impl DiscreteFlowMap {
    pub fn new(field: VelocityField, tableau: ButcherTableau, t0: f64, k: f64) -> Self {
        assert!(k > 0.0, "step size must be positive");
        Self {
            field,
            tableau,
            t0,
            k,
        }
    }

    /// Map a single point through one step starting at `self.t0`.
    pub fn map_point(&self, x: Point2) -> Result<Point2> {
        rk_step(self, x, self.t0)
    }

    /// Map every marker; order preserved.
    pub fn advance_markers(&self, points: &[Point2]) -> Result<Vec<Point2>> {
        points.iter().map(|&p| self.map_point(p)).collect()
    }
}

/// The stage recursion `X + k sum_j b_j y_j` with
/// `y_i = u(X + k sum_j a_ij y_j, t + c_i k)`.
pub fn rk_step(map: &DiscreteFlowMap, x: Point2, t: f64) -> Result<Point2> {
    let tab = &map.tableau;
    let k = map.k;
    let mut ys: Vec<Point2> = Vec::with_capacity(tab.stages());
    for i in 0..tab.stages() {
        let mut xi = x;
        for (j, &aij) in tab.a[i].iter().enumerate() {
            if aij != 0.0 {
                xi = xi + ys[j] * (k * aij);
            }
        }
        ys.push(map.field.velocity(xi, t + tab.c[i] * k));
    }
    let mut out = x;
    for (j, &bj) in tab.b.iter().enumerate() {
        if bj != 0.0 {
            out = out + ys[j] * (k * bj);
        }
    }
    if !out.is_finite() {
        return Err(Error::NonFinite { context: "rk_step" });
    }
    Ok(out)
}
