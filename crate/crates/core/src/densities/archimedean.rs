//! The archimedean density: the integral over R^2 of
//! 1 / max(1, r^2, r^3) with r = |(z1, z2)|.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum OmegaMethod {
    /// Polar coordinates: pi from the unit disk plus 2 pi int_1^oo r^-2 dr.
    Closed,
    Quadrature { tol: f64 },
}

pub fn omega_integrand(z1: f64, z2: f64) -> f64 {
    let r2 = z1 * z1 + z2 * z2;
    1.0 / 1f64.max(r2).max(r2 * r2.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated error of the adaptive integration over the truncated box.
    pub error_estimate: f64,
    /// Half side of the square [-L, L]^2 integrated numerically.
    pub half_side: f64,
    /// Mass outside the square, added analytically.
    pub tail: f64,
    /// Elementary bounds on the tail from the inscribed and circumscribed
    /// disks, which the analytic value must lie between.
    pub tail_bounds: [f64; 2],
    pub cells: usize,
}

pub fn omega_infty(method: OmegaMethod) -> Result<f64> {
    match method {
        OmegaMethod::Closed => Ok(3.0 * PI),
        OmegaMethod::Quadrature { tol } => Ok(omega_infty_quadrature(tol)?.value),
    }
}

const HALF_SIDE: f64 = 4.0;
const MAX_CELLS: usize = 2_000_000;

/// Integrates the first quadrant of [-L, L]^2 adaptively and adds the exact
/// mass outside the square. For r >= L the integrand is r^-3, and in the
/// sector 0 <= theta <= pi/4 the square ends at r = L / cos(theta), so the
/// quadrant's tail is 2 int_0^{pi/4} cos(theta) / L = sqrt(2) / L.
pub fn omega_infty_quadrature(tol: f64) -> Result<QuadratureResult> {
    if !(tol >= 1e-10) {
        return Err(Error::Budget(format!(
            "quadrature tolerance {tol:e} is below the supported 1e-10"
        )));
    }
    let l = HALF_SIDE;
    let rule = Rules::new();
    // The four quadrants contribute equally.
    let target = tol / 8.0;

    let mut heap = BinaryHeap::new();
    let root = Cell::new(0.0, 0.0, l, &rule);
    let mut err = root.error;
    heap.push(root);
    let mut cells = 1;
    while err > target {
        if cells >= MAX_CELLS {
            return Err(Error::Budget(format!(
                "quadrature did not reach {tol:e} within {MAX_CELLS} cells"
            )));
        }
        let worst = heap.pop().unwrap();
        err -= worst.error;
        let h = worst.side / 2.0;
        for (dx, dy) in [(0.0, 0.0), (h, 0.0), (0.0, h), (h, h)] {
            let c = Cell::new(worst.x + dx, worst.y + dy, h, &rule);
            err += c.error;
            heap.push(c);
        }
        cells += 3;
        // Resum now and then so cancellation in the running total cannot
        // stall the loop.
        if cells % 4096 == 1 {
            err = heap.iter().map(|c| c.error).sum();
        }
    }
    let total: f64 = heap.iter().map(|c| c.value).sum();
    let err: f64 = heap.iter().map(|c| c.error).sum();

    let tail = 2f64.sqrt() / l;
    let tail_bounds = [PI / 2.0 * FRAC_1_SQRT_2 / l, PI / 2.0 / l];
    Ok(QuadratureResult {
        value: 4.0 * (total + tail),
        error_estimate: 4.0 * err,
        half_side: l,
        tail: 4.0 * tail,
        tail_bounds: [4.0 * tail_bounds[0], 4.0 * tail_bounds[1]],
        cells,
    })
}

/// Gauss-Legendre nodes and weights on [0, 1] for a low and a high order.
struct Rules {
    low: Vec<(f64, f64)>,
    high: Vec<(f64, f64)>,
}

impl Rules {
    fn new() -> Self {
        Self { low: gauss_legendre(7), high: gauss_legendre(11) }
    }
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

struct Cell {
    x: f64,
    y: f64,
    side: f64,
    value: f64,
    error: f64,
}

impl Cell {
    fn new(x: f64, y: f64, side: f64, rule: &Rules) -> Self {
        let apply = |nodes: &[(f64, f64)]| {
            let mut s = 0.0;
            for &(u, wu) in nodes {
                for &(v, wv) in nodes {
                    s += wu * wv * omega_integrand(x + u * side, y + v * side);
                }
            }
            s * side * side
        };
        let high = apply(&rule.high);
        let low = apply(&rule.low);
        Self { x, y, side, value: high, error: (high - low).abs() }
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}
