use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares fit of N(B)/B by c3 L^3 + c2 L^2 + c1 L + c0 with L = log B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QFit {
    /// `[c3, c2, c1, c0]`.
    pub coefficients: [f64; 4],
    /// Root mean square of the fitted minus observed N(B)/B.
    pub rms_residual: f64,
    /// max |B Q(log B) - N(B)| over the samples, divided by the largest N(B).
    pub relative_residual: f64,
    pub b_min: f64,
    pub b_max: f64,
    /// c3 divided by a supplied prediction of the leading constant.
    pub leading_ratio: Option<f64>,
}

impl QFit {
    pub fn eval(&self, log_b: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, c| acc * log_b + c)
    }
}

pub fn fit_q(samples: &[(u64, u64)], predicted_c: Option<f64>) -> Result<QFit> {
    let real: Vec<(f64, f64)> = samples.iter().map(|&(b, n)| (b as f64, n as f64)).collect();
    fit_q_real(&real, predicted_c)
}

/// `fit_q` on real-valued samples (B, N).
pub fn fit_q_real(samples: &[(f64, f64)], predicted_c: Option<f64>) -> Result<QFit> {
    if samples.len() < 8 {
        return Err(Error::InvalidInput(format!(
            "need at least 8 samples, got {}",
            samples.len()
        )));
    }
    let b_min = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let b_max = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    if !(b_min >= 1.0) {
        return Err(Error::InvalidInput("bounds must be at least 1".into()));
    }
    if b_max < 100.0 * b_min {
        return Err(Error::InvalidInput("samples must span at least two decades of B".into()));
    }

    let n = samples.len();
    let logs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let a = DMatrix::from_fn(n, 4, |i, j| logs[i].powi(3 - j as i32));
    let y = DVector::from_iterator(n, samples.iter().map(|&(b, c)| c / b));

    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > smax * 1e-12) {
        return Err(Error::Degenerate("sample matrix is rank deficient".into()));
    }
    let x = svd
        .solve(&y, smax * 1e-14)
        .map_err(|e| Error::Degenerate(e.to_string()))?;
    let coefficients = [x[0], x[1], x[2], x[3]];

    let fitted = &a * &x;
    let rms_residual = ((&fitted - &y).norm_squared() / n as f64).sqrt();
    let n_max = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max).max(1.0);
    let relative_residual = samples
        .iter()
        .zip(fitted.iter())
        .map(|(&(b, c), f)| (b * f - c).abs())
        .fold(0.0, f64::max)
        / n_max;

    Ok(QFit {
        coefficients,
        rms_residual,
        relative_residual,
        b_min,
        b_max,
        leading_ratio: predicted_c.map(|c| coefficients[0] / c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powers() -> Vec<u64> {
        (10..=20).map(|k| 1u64 << k).collect()
    }

    #[test]
    fn constant_input() {
        let s: Vec<(u64, u64)> = powers().into_iter().map(|b| (b, b)).collect();
        let f = fit_q(&s, None).unwrap();
        for c in &f.coefficients[..3] {
            assert!(c.abs() < 1e-9, "{f:?}");
        }
        assert!((f.coefficients[3] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cubic_input() {
        let s: Vec<(f64, f64)> = powers()
            .into_iter()
            .map(|b| (b as f64, b as f64 * (b as f64).ln().powi(3)))
            .collect();
        let f = fit_q_real(&s, Some(0.5)).unwrap();
        assert!((f.coefficients[0] - 1.0).abs() < 1e-6, "{f:?}");
        assert!((f.leading_ratio.unwrap() - 2.0).abs() < 1e-5);
        let l = ((1u64 << 15) as f64).ln();
        assert!((f.eval(l) - l.powi(3)).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_samples() {
        let few: Vec<(u64, u64)> = powers().into_iter().take(5).map(|b| (b, b)).collect();
        assert!(fit_q(&few, None).is_err());
        let narrow: Vec<(u64, u64)> = (100..110).map(|b| (b, b)).collect();
        assert!(fit_q(&narrow, None).is_err());
        let repeated: Vec<(u64, u64)> =
            [10u64, 10, 10, 10, 10, 10, 10, 5000].iter().map(|&b| (b, b)).collect();
        assert!(matches!(fit_q(&repeated, None), Err(Error::Degenerate(_))));
    }
}
