//! Counting through the torsor equation y1^2 + y2^2 = n1 n2^2 n3^3.
//!
//! Write x0 = n0^3 n1^2 n2 with n1, n2 squarefree and coprime (the cube part
//! and the cube-free part of x0). Then n0 n1 n2 divides x3, and with
//! n3 = x3 / (n0 n1 n2) the equation of V becomes x1^2 + x2^2 = n1 n2^2 n3^3.
//! Conversely every such tuple with gcd(x0, x1, x2, x3) = 1 gives a point of
//! U, so the map below is a bijection onto U.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::factor::FactorTable;
use crate::arith::{gcd, isqrt};
use crate::error::{Error, Result};
use crate::surface::{CountRecord, CountingMethod, SurfacePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentTriple {
    pub n0: u64,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub y1: i64,
    pub y2: i64,
}

impl DescentTriple {
    /// The image point, or `None` when the tuple violates the constraints
    /// (non-squarefree or non-coprime n1, n2, wrong equation, imprimitive
    /// image).
    pub fn to_point(&self) -> Option<SurfacePoint> {
        let Self { n0, n1, n2, n3, y1, y2 } = *self;
        if n0 == 0 || n1 == 0 || n2 == 0 || n3 == 0 {
            return None;
        }
        if !squarefree(n1) || !squarefree(n2) || gcd(n1 as u128, n2 as u128) != 1 {
            return None;
        }
        let (n0, n1, n2, n3) = (n0 as i128, n1 as i128, n2 as i128, n3 as i128);
        let (y1, y2) = (y1 as i128, y2 as i128);
        if y1 * y1 + y2 * y2 != n1 * n2 * n2 * n3 * n3 * n3 {
            return None;
        }
        let x0 = n0 * n0 * n0 * n1 * n1 * n2;
        let x3 = n0 * n1 * n2 * n3;
        let g = [x0, y1, y2, x3].iter().fold(0u128, |g, c| gcd(g, c.unsigned_abs()));
        (g == 1).then_some(SurfacePoint { x0, x1: y1, x2: y2, x3 })
    }

    /// The unique preimage of a point of U.
    pub fn from_point(p: &SurfacePoint, ft: &FactorTable) -> Option<Self> {
        if p.x0 <= 0 || p.x3 <= 0 {
            return None;
        }
        let (mut n0, mut n1, mut n2) = (1u64, 1u64, 1u64);
        for (q, k) in ft.factorize(p.x0 as u64).ok()? {
            n0 *= q.pow(k / 3);
            match k % 3 {
                1 => n2 *= q,
                2 => n1 *= q,
                _ => {}
            }
        }
        let base = (n0 * n1 * n2) as i128;
        if p.x3 % base != 0 {
            return None;
        }
        let t = Self {
            n0,
            n1,
            n2,
            n3: (p.x3 / base) as u64,
            y1: p.x1 as i64,
            y2: p.x2 as i64,
        };
        (t.to_point() == Some(*p)).then_some(t)
    }
}

fn squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// All tuples whose image has height at most `bound`, with their images.
pub fn descent_points(bound: u64) -> Result<Vec<(DescentTriple, SurfacePoint)>> {
    if bound == 0 {
        return Err(Error::NonPositiveBound(0));
    }
    let b = bound;
    let mut bases = Vec::new();
    for n0 in (1..).take_while(|n| n * n * n <= b) {
        for n1 in (1..).take_while(|n| n0 * n0 * n0 * n * n <= b) {
            if !squarefree(n1) {
                continue;
            }
            for n2 in (1..).take_while(|n| n0 * n0 * n0 * n1 * n1 * n <= b) {
                if squarefree(n2) && gcd(n1 as u128, n2 as u128) == 1 {
                    bases.push((n0, n1, n2));
                }
            }
        }
    }

    let bb = (b as u128) * (b as u128);
    let mut out: Vec<(DescentTriple, SurfacePoint)> = bases
        .par_iter()
        .flat_map_iter(|&(n0, n1, n2)| {
            let mut local = Vec::new();
            for n3 in (1..).take_while(|n| n0 * n1 * n2 * n <= b) {
                let m = n1 as u128 * (n2 as u128).pow(2) * (n3 as u128).pow(3);
                if m > bb {
                    break;
                }
                let r = isqrt(m) as i64;
                for y1 in -r..=r {
                    let rest = m - (y1 as i128 * y1 as i128) as u128;
                    let s = isqrt(rest) as i64;
                    if (s as u128) * (s as u128) != rest {
                        continue;
                    }
                    for y2 in if s == 0 { vec![0] } else { vec![-s, s] } {
                        let t = DescentTriple { n0, n1, n2, n3, y1, y2 };
                        if let Some(p) = t.to_point() {
                            local.push((t, p));
                        }
                    }
                }
            }
            local
        })
        .collect();
    out.sort_by_key(|(_, p)| (p.x3, p.x0, p.x1, p.x2));
    Ok(out)
}

fn check_injective(pts: &[(DescentTriple, SurfacePoint)]) -> Result<()> {
    let mut seen = HashSet::with_capacity(pts.len());
    for (t, p) in pts {
        if !seen.insert(*p) {
            return Err(Error::Degenerate(format!("descent map collision at {p} from {t:?}")));
        }
    }
    Ok(())
}

/// N_U(B) via the descent. Fails if two tuples map to the same point.
pub fn descent_count(bound: u64) -> Result<CountRecord> {
    let start = std::time::Instant::now();
    let pts = descent_points(bound)?;
    check_injective(&pts)?;
    Ok(CountRecord {
        bound,
        count: pts.len() as u64,
        method: CountingMethod::Descent,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// `counts[b] = N_U(b)` for all b up to `max_height`, from one descent pass.
pub fn descent_counts(max_height: u64) -> Result<Vec<u64>> {
    let pts = descent_points(max_height)?;
    check_injective(&pts)?;
    let mut hist = vec![0u64; max_height as usize + 1];
    for (_, p) in pts {
        hist[p.integer_height() as usize] += 1;
    }
    let mut acc = 0;
    for h in hist.iter_mut() {
        acc += *h;
        *h = acc;
    }
    Ok(hist)
}
