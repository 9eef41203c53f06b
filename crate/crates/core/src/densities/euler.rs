//! Certified enclosure of the Euler product
//!
//!   tau = prod_p (1 - 1/p)^4 (1 - chi(p)/p)^3 sigma_p.
//!
//! With x = 1/p the logarithm of a factor at an odd prime expands as
//! -27 x^2 + 105 x^3 + ... when chi(p) = 1 and -3 x^2 + O(x^3) when
//! chi(p) = -1; the x terms cancel. For p > 100 (x < 0.01) every factor
//! therefore satisfies |log f_p| <= TAIL_CONSTANT / p^2, and
//! sum_{n > P} 1/n^2 < 1/(P - 1) bounds the tail.

use serde::Serialize;

use super::local::chi4;
use crate::arith::primes_up_to;
use crate::error::{Error, Result};

/// Bound c with |log f_p| <= c / p^2 for all primes p > 100.
pub const TAIL_CONSTANT: f64 = 30.0;

/// Allowance for floating point error in the accumulated logarithm.
const ROUNDING_ALLOWANCE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerProductResult {
    pub partial_product: f64,
    pub cutoff: u64,
    /// Relative half-width: the true value lies in
    /// partial * [exp(-T), exp(T)] and exp(T) - 1 is reported here.
    pub tail_bound: f64,
    pub log_tail_bound: f64,
    pub value_interval: [f64; 2],
    pub tol: f64,
    /// False when the interval is wider than `tol`; the interval is still
    /// a valid enclosure.
    pub tol_met: bool,
}

impl EulerProductResult {
    pub fn width(&self) -> f64 {
        self.value_interval[1] - self.value_interval[0]
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.value_interval[0] + self.value_interval[1])
    }

    pub fn contains(&self, other: &EulerProductResult) -> bool {
        self.value_interval[0] <= other.value_interval[0]
            && other.value_interval[1] <= self.value_interval[1]
    }

    /// An exact value with zero-width interval.
    pub fn exact(value: f64) -> Self {
        Self {
            partial_product: value,
            cutoff: 0,
            tail_bound: 0.0,
            log_tail_bound: 0.0,
            value_interval: [value, value],
            tol: 0.0,
            tol_met: true,
        }
    }
}

/// log of the factor at p, computed as a sum of ln_1p terms.
pub fn euler_factor_ln(p: u64) -> f64 {
    let c = chi4(p as i64) as f64;
    let x = 1.0 / p as f64;
    4.0 * (-x).ln_1p() + 3.0 * (-c * x).ln_1p() + ((2.0 + 3.0 * c + 2.0 * c * c) * x + c * c * x * x).ln_1p()
}

pub fn tau_product(cutoff: u64, tol: f64) -> Result<EulerProductResult> {
    if cutoff < 100 {
        return Err(Error::InvalidInput(format!("cutoff {cutoff} is below 100")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    // Compensated summation of the logarithms in ascending prime order.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for p in primes_up_to(cutoff) {
        let y = euler_factor_ln(p) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let log_tail = TAIL_CONSTANT / (cutoff - 1) as f64 + ROUNDING_ALLOWANCE;
    let partial = sum.exp();
    let lo = (sum - log_tail).exp();
    let hi = (sum + log_tail).exp();
    Ok(EulerProductResult {
        partial_product: partial,
        cutoff,
        tail_bound: log_tail.exp_m1(),
        log_tail_bound: log_tail,
        value_interval: [lo, hi],
        tol,
        tol_met: hi - lo <= tol,
    })
}
