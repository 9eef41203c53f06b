//! Rational points on V: x0 (x1^2 + x2^2) = x3^3, their projective
//! normalisation and anticanonical height, and an exhaustive counter used as
//! the reference for the faster engines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_sqrt, gcd, isqrt};
use crate::error::{Error, Result};

/// A primitive point of V in canonical sign normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub x0: i128,
    pub x1: i128,
    pub x2: i128,
    pub x3: i128,
}

impl SurfacePoint {
    pub fn coords(&self) -> [i128; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Exact integer height max(|x0|, ceil sqrt(x1^2 + x2^2), |x3|): the
    /// least integer B with `height_leq(self, B)`.
    pub fn integer_height(&self) -> u128 {
        let n = (self.x1 * self.x1 + self.x2 * self.x2) as u128;
        self.x0
            .unsigned_abs()
            .max(self.x3.unsigned_abs())
            .max(ceil_sqrt(n))
    }

    /// The real height, for display only.
    pub fn height(&self) -> f64 {
        let n = (self.x1 * self.x1 + self.x2 * self.x2) as f64;
        (self.x0.abs() as f64).max(n.sqrt()).max(self.x3.abs() as f64)
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {} : {}]", self.x0, self.x1, self.x2, self.x3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointClass {
    #[serde(rename = "generic_U")]
    GenericU,
    #[serde(rename = "on_line_l1")]
    OnLineL1,
    #[serde(rename = "on_line_l2")]
    OnLineL2,
    #[serde(rename = "on_line_l3")]
    OnLineL3,
    #[serde(rename = "singular_xi1")]
    SingularXi1,
    #[serde(rename = "singular_xi2_or_xi3")]
    SingularXi2OrXi3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountingMethod {
    Brute,
    Fast,
    Descent,
}

impl CountingMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Brute => "brute",
            Self::Fast => "fast",
            Self::Descent => "descent",
        }
    }
}

impl fmt::Display for CountingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Self::Brute),
            "fast" => Ok(Self::Fast),
            "descent" => Ok(Self::Descent),
            other => Err(Error::InvalidInput(format!("unknown counting method {other:?}"))),
        }
    }
}

/// N_U(B) as produced by one engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub bound: u64,
    pub count: u64,
    pub method: CountingMethod,
    pub elapsed_seconds: f64,
}

fn check_nonzero(x: &[i128; 4]) -> Result<()> {
    if x.iter().all(|&c| c == 0) {
        Err(Error::ZeroTuple)
    } else {
        Ok(())
    }
}

pub fn is_on_surface(x: [i128; 4]) -> Result<bool> {
    check_nonzero(&x)?;
    let [x0, x1, x2, x3] = x;
    Ok(x0 * (x1 * x1 + x2 * x2) == x3 * x3 * x3)
}

/// Divides out the content and fixes the sign: x3 > 0 if x3 != 0, else
/// x0 > 0, else (x1, x2) lexicographically positive.
pub fn normalize(x: [i128; 4]) -> Result<SurfacePoint> {
    if !is_on_surface(x)? {
        return Err(Error::NotOnSurface(x));
    }
    let g = x.iter().fold(0u128, |g, c| gcd(g, c.unsigned_abs())) as i128;
    let [mut x0, mut x1, mut x2, mut x3] = x.map(|c| c / g);
    let lead = [x3, x0, x1, x2].into_iter().find(|&c| c != 0).unwrap();
    if lead < 0 {
        (x0, x1, x2, x3) = (-x0, -x1, -x2, -x3);
    }
    Ok(SurfacePoint { x0, x1, x2, x3 })
}

pub fn classify_point(x: &SurfacePoint) -> Result<PointClass> {
    if !is_on_surface(x.coords())? {
        return Err(Error::NotOnSurface(x.coords()));
    }
    let p = normalize(x.coords())?;
    Ok(if p.x1 == 0 && p.x2 == 0 && p.x3 == 0 {
        PointClass::SingularXi1
    } else if p.x0 == 0 && p.x3 == 0 {
        PointClass::OnLineL3
    } else {
        // x3 = 0 with x0 != 0 would need x1^2 + x2^2 = 0, i.e. the point xi1;
        // rational points of l1, l2 and the conjugate singularities xi2, xi3
        // other than xi1 do not exist.
        PointClass::GenericU
    })
}

pub fn height_leq(x: &SurfacePoint, bound: i128) -> Result<bool> {
    if bound <= 0 {
        return Err(Error::NonPositiveBound(bound));
    }
    let n = x.x1 * x.x1 + x.x2 * x.x2;
    Ok(x.x0.abs() <= bound && x.x3.abs() <= bound && n <= bound * bound)
}

/// Every point of U with height at most `max_height`, in canonical form,
/// sorted by (x3, x0, x1, x2).
pub fn enumerate_points(max_height: u64) -> Vec<SurfacePoint> {
    let b = max_height as i128;
    let mut out = Vec::new();
    for x3 in 1..=b {
        let cube = x3 * x3 * x3;
        for x0 in divisors_of_cube(x3 as u64) {
            let x0 = x0 as i128;
            let m = cube / x0;
            if x0 > b || m > b * b {
                continue;
            }
            let r = isqrt(m as u128) as i128;
            for x1 in -r..=r {
                let rest = m - x1 * x1;
                let s = isqrt(rest as u128) as i128;
                if s * s != rest {
                    continue;
                }
                for x2 in if s == 0 { vec![0] } else { vec![-s, s] } {
                    let g = [x0, x1, x2, x3]
                        .iter()
                        .fold(0u128, |g, c| gcd(g, c.unsigned_abs()));
                    if g == 1 {
                        out.push(SurfacePoint { x0, x1, x2, x3 });
                    }
                }
            }
        }
    }
    out
}

/// Exhaustive N_U(B).
pub fn brute_force_count(bound: u64) -> Result<CountRecord> {
    if bound == 0 {
        return Err(Error::NonPositiveBound(0));
    }
    let start = std::time::Instant::now();
    let count = enumerate_points(bound).len() as u64;
    Ok(CountRecord {
        bound,
        count,
        method: CountingMethod::Brute,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// `counts[b] = N_U(b)` for all b up to `max_height`, from one enumeration.
pub fn brute_force_counts(max_height: u64) -> Vec<u64> {
    let mut hist = vec![0u64; max_height as usize + 1];
    for p in enumerate_points(max_height) {
        hist[p.integer_height() as usize] += 1;
    }
    let mut acc = 0;
    for h in hist.iter_mut() {
        acc += *h;
        *h = acc;
    }
    hist
}

/// Positive divisors of n^3, by trial division of n.
fn divisors_of_cube(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            divs = expand(&divs, p, 3 * k);
        }
        p += 1;
    }
    if m > 1 {
        divs = expand(&divs, m, 3);
    }
    divs.sort_unstable();
    divs
}

fn expand(divs: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(divs.len() * (k as usize + 1));
    for &d in divs {
        let mut q = d;
        for _ in 0..=k {
            out.push(q);
            q *= p;
        }
    }
    out
}
