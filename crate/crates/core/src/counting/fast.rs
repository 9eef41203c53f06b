//! N_U(B) from the arithmetic of sums of two squares.
//!
//! A point of U is determined by x3 = e >= 1, a divisor a = x0 of e^3 and a
//! representation of m = e^3 / a as x1^2 + x2^2 with gcd(a, e, x1, x2) = 1.
//! The number of such representations is multiplicative in the prime
//! factorisation of e: at a prime with p^k || e and p^alpha || a, the exponent
//! of p in m is j = 3k - alpha and the local factor is
//!
//!   f(j) - [alpha >= 1 and j >= 2] f(j - 2),
//!
//! with f(j) = j + 1, [j even] or 1 for p = 1 mod 4, p = 3 mod 4 or p = 2.
//! The subtracted term removes representations with p dividing both x1 and
//! x2, which are imprimitive exactly when p also divides a and e.

use rayon::prelude::*;

use super::factor::FactorTable;
use crate::arith::ceil_sqrt;
use crate::error::{Error, Result};
use crate::surface::{CountRecord, CountingMethod};

fn local_reps(p: u64, j: u32) -> u64 {
    match p % 4 {
        1 => j as u64 + 1,
        3 => u64::from(j.is_multiple_of(2)),
        _ => 1,
    }
}

fn local_primitive(p: u64, k: u32, alpha: u32) -> u64 {
    let j = 3 * k - alpha;
    let full = local_reps(p, j);
    if alpha >= 1 && j >= 2 {
        full - local_reps(p, j - 2)
    } else {
        full
    }
}

/// N_U(B) for every bound in `bounds` from a single pass over x3 up to the
/// largest bound. The outer loop runs on the current rayon pool; the result
/// does not depend on the number of threads.
pub fn fast_counts(bounds: &[u64], ft: &FactorTable) -> Result<Vec<CountRecord>> {
    let start = std::time::Instant::now();
    let mut sorted: Vec<u64> = bounds.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let Some(&b_max) = sorted.last() else {
        return Ok(Vec::new());
    };
    if sorted[0] == 0 {
        return Err(Error::NonPositiveBound(0));
    }
    if ft.limit() < b_max {
        return Err(Error::InvalidInput(format!(
            "factor table limit {} is below the bound {b_max}",
            ft.limit()
        )));
    }

    let buckets = sorted.len();
    let hist = (1..=b_max)
        .into_par_iter()
        .fold(
            || vec![0u128; buckets],
            |mut hist, e| {
                accumulate(e, b_max, &sorted, ft, &mut hist);
                hist
            },
        )
        .reduce(
            || vec![0u128; buckets],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let elapsed = start.elapsed().as_secs_f64();
    let mut acc = 0u128;
    let cumulative: Vec<u64> = hist
        .iter()
        .map(|h| {
            acc += h;
            acc as u64
        })
        .collect();
    Ok(bounds
        .iter()
        .map(|b| CountRecord {
            bound: *b,
            count: cumulative[sorted.binary_search(b).unwrap()],
            method: CountingMethod::Fast,
            elapsed_seconds: elapsed,
        })
        .collect())
}

pub fn fast_count(bound: u64, ft: &FactorTable) -> Result<CountRecord> {
    Ok(fast_counts(&[bound], ft)?.remove(0))
}

struct Search<'a> {
    factors: &'a [(u64, u32)],
    /// `suffix_max[i]`: largest divisor of e^3 supported on factors[i..].
    suffix_max: Vec<u128>,
    lo: u128,
    hi: u128,
    cube: u128,
    e: u128,
    bounds: &'a [u64],
}

fn accumulate(e: u64, b_max: u64, bounds: &[u64], ft: &FactorTable, hist: &mut [u128]) {
    let factors = ft.factorize(e).expect("e is within the table");
    let mut suffix_max = vec![1u128; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        let (p, k) = factors[i];
        suffix_max[i] = suffix_max[i + 1] * (p as u128).pow(3 * k);
    }
    let e = e as u128;
    let cube = e * e * e;
    let b = b_max as u128;
    let search = Search {
        factors: &factors,
        suffix_max,
        // a <= B and e^3 / a <= B^2.
        lo: cube.div_ceil(b * b),
        hi: b,
        cube,
        e,
        bounds,
    };
    search.descend(0, 1, 4, hist);
}

impl Search<'_> {
    fn descend(&self, i: usize, a: u128, weight: u128, hist: &mut [u128]) {
        if a * self.suffix_max[i] < self.lo {
            return;
        }
        if i == self.factors.len() {
            let m = self.cube / a;
            let h = self.e.max(a).max(ceil_sqrt(m));
            let idx = self.bounds.partition_point(|&b| (b as u128) < h);
            if idx < hist.len() {
                hist[idx] += weight;
            }
            return;
        }
        let (p, k) = self.factors[i];
        let mut a_next = a;
        for alpha in 0..=3 * k {
            if a_next > self.hi {
                break;
            }
            let g = local_primitive(p, k, alpha) as u128;
            if g != 0 {
                self.descend(i + 1, a_next, weight * g, hist);
            }
            a_next *= p as u128;
        }
    }
}
