//! Assembly of the predicted leading constant C = alpha beta omega_oo
//! (pi/4)^3 tau.

use std::f64::consts::PI;

use serde::Serialize;

use super::euler::EulerProductResult;
use crate::linalg::{q, serialize_q, to_f64, Q};

/// (pi/4)^3, the limit contributed by the L-function at s = 1.
pub fn pi_over_4_cubed() -> f64 {
    (PI / 4.0).powi(3)
}

/// The limit as it appears with the 2^4 normalisation of the Euler factor
/// at 2; the density at 2 restores the missing factor.
pub fn lfun_limit() -> f64 {
    pi_over_4_cubed() / 16.0
}

/// Factors that may be replaced, for testing the assembly in isolation.
#[derive(Debug, Clone, Copy, Default)]
pub struct PeyreOverrides {
    pub omega_inf: Option<f64>,
    pub pi4_cubed: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PeyreBreakdown {
    #[serde(serialize_with = "serialize_q")]
    pub alpha: Q,
    #[serde(serialize_with = "serialize_q")]
    pub beta: Q,
    pub omega_inf: f64,
    #[serde(serialize_with = "serialize_q")]
    pub omega_2: Q,
    pub lfun_limit: f64,
    pub pi4_cubed: f64,
    pub tau: EulerProductResult,
    pub c_interval: [f64; 2],
    pub c_estimate: f64,
    pub warnings: Vec<String>,
}

pub fn peyre_constant(tau: &EulerProductResult, alpha: &Q) -> PeyreBreakdown {
    peyre_constant_with(tau, alpha, PeyreOverrides::default())
}

pub fn peyre_constant_with(tau: &EulerProductResult, alpha: &Q, overrides: PeyreOverrides) -> PeyreBreakdown {
    let beta = q(1);
    let omega_inf = overrides.omega_inf.unwrap_or(3.0 * PI);
    let pi4_cubed = overrides.pi4_cubed.unwrap_or_else(pi_over_4_cubed);
    let factor = to_f64(alpha) * to_f64(&beta) * omega_inf * pi4_cubed;
    // Widen by a few ulps to cover the rounding in the product.
    let slack = 4.0 * f64::EPSILON;
    let [lo, hi] = tau.value_interval;
    let c_interval = if lo == hi && factor * lo == 1.0 {
        [1.0, 1.0]
    } else {
        [factor * lo * (1.0 - slack), factor * hi * (1.0 + slack)]
    };
    let mut warnings = Vec::new();
    if !tau.tol_met {
        warnings.push(format!(
            "tau interval width {:e} exceeds the requested tolerance {:e}",
            tau.width(),
            tau.tol
        ));
    }
    PeyreBreakdown {
        alpha: alpha.clone(),
        beta,
        omega_inf,
        omega_2: q(2),
        lfun_limit: lfun_limit(),
        pi4_cubed,
        tau: tau.clone(),
        c_estimate: factor * tau.partial_product,
        c_interval,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn identity_assembly() {
        let b = peyre_constant_with(
            &EulerProductResult::exact(1.0),
            &q(1),
            PeyreOverrides { omega_inf: Some(1.0), pi4_cubed: Some(1.0) },
        );
        assert_eq!(b.c_interval, [1.0, 1.0]);
        assert_eq!(b.omega_2, q(2));
    }

    #[test]
    fn formula() {
        let t = 0.03;
        let b = peyre_constant(&EulerProductResult::exact(t), &frac(7, 216));
        let expected = 7.0 / 216.0 * 3.0 * PI * (PI / 4.0).powi(3) * t;
        assert!((b.c_estimate - expected).abs() < 1e-15);
        assert!(b.c_interval[0] <= expected && expected <= b.c_interval[1]);
        assert!((b.lfun_limit * 16.0 - b.pi4_cubed).abs() < 1e-15);
        assert!(b.warnings.is_empty());
    }
}
