//! Non-archimedean local factors: the character mod 4, the closed forms of
//! the p-adic densities, and a direct count of solutions mod p^k.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::{frac, q, serialize_q, Q};

/// The non-principal character modulo 4.
pub fn chi4(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// 1 + (2 + 3 chi + 2 chi^2) / p + chi^2 / p^2.
pub fn sigma_local(p: u64) -> Result<Q> {
    require_prime(p)?;
    let c = chi4(p as i64);
    let p = p as i64;
    Ok(q(1) + frac(2 + 3 * c + 2 * c * c, p) + frac(c * c, p * p))
}

/// 1 + (4 + 3 chi) / p + 1 / p^2, the density of the smooth model at an odd
/// prime.
pub fn omega_p_good(p: u64) -> Result<Q> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::BadReduction(2));
    }
    let c = chi4(p as i64);
    let p = p as i64;
    Ok(q(1) + frac(4 + 3 * c, p) + frac(1, p * p))
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients in x = 1/p of (1 - x)^4 (1 - chi x)^3 (1 + (2 + 3 chi +
/// 2 chi^2) x + chi^2 x^2), lowest degree first.
pub fn euler_factor_polynomial(p: u64) -> Result<Vec<Q>> {
    require_prime(p)?;
    let c = chi4(p as i64);
    let mut poly = vec![q(1)];
    for _ in 0..4 {
        poly = poly_mul(&poly, &[q(1), q(-1)]);
    }
    for _ in 0..3 {
        poly = poly_mul(&poly, &[q(1), q(-c)]);
    }
    Ok(poly_mul(&poly, &[q(1), q(2 + 3 * c + 2 * c * c), q(c * c)]))
}

/// The factor of tau at p, exactly.
pub fn tau_factor(p: u64) -> Result<Q> {
    let poly = euler_factor_polynomial(p)?;
    let x = frac(1, p as i64);
    Ok(poly.iter().rev().fold(Q::zero(), |acc, c| acc * &x + c))
}

/// Exponents with p^(2k) above this are refused by the oracle.
pub const ORACLE_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalDensityReport {
    pub p: u64,
    pub k: u32,
    /// N(p^k) = #{x mod p^k : x0 (x1^2 + x2^2) = x3^3}.
    pub count: u64,
    #[serde(serialize_with = "serialize_q")]
    pub oracle_value: Q,
    #[serde(serialize_with = "serialize_q")]
    pub closed_form: Q,
    #[serde(serialize_with = "serialize_q")]
    pub deviation: Q,
    pub oracle_value_f64: f64,
    pub closed_form_f64: f64,
    pub deviation_f64: f64,
}

/// Counts solutions modulo p^k as sum_c R(c) S(c), where R(c) counts
/// (x1, x2) with x1^2 + x2^2 = c and S(c) counts (x0, x3) with x0 c = x3^3.
///
/// R is the self-convolution of the histogram of squares. For S, write
/// gcd(c, p^k) = p^j: the congruence x0 c = t has p^j solutions when p^j | t
/// and none otherwise, and p^j | x3^3 exactly when p^ceil(j/3) | x3, so
/// S(c) = p^j * p^(k - ceil(j/3)).
pub fn local_density_oracle(p: u64, k: u32) -> Result<LocalDensityReport> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidInput("exponent k must be positive".into()));
    }
    let fits = |k: u32| (p as u128).checked_pow(2 * k).is_some_and(|v| v <= ORACLE_BUDGET);
    if !fits(k) {
        let max_k = (1..k).rev().find(|&j| fits(j)).unwrap_or(0);
        return Err(Error::Budget(format!(
            "p^(2k) = {p}^{} exceeds {ORACLE_BUDGET}; largest admissible k is {max_k}",
            2 * k
        )));
    }
    let modulus = p.pow(k) as usize;

    let mut squares = vec![0u64; modulus];
    for x in 0..modulus as u64 {
        squares[(x * x % modulus as u64) as usize] += 1;
    }
    let support: Vec<(usize, u64)> = squares
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, &n)| (c, n))
        .collect();
    let mut r = vec![0u64; modulus];
    for &(a, na) in &support {
        for &(b, nb) in &support {
            let c = (a + b) % modulus;
            r[c] += na * nb;
        }
    }

    let mut count: u128 = 0;
    for (c, &rc) in r.iter().enumerate() {
        if rc == 0 {
            continue;
        }
        let j = if c == 0 { k } else { valuation(c as u64, p).min(k) };
        let s = (p as u128).pow(j) * (p as u128).pow(k - j.div_ceil(3));
        count += rc as u128 * s;
    }

    let denom = BigInt::from(p).pow(3 * k);
    let oracle_value = Q::new(BigInt::from(count), denom);
    let closed_form = sigma_local(p)?;
    let deviation = (&oracle_value - &closed_form).abs();
    Ok(LocalDensityReport {
        p,
        k,
        count: count as u64,
        oracle_value_f64: crate::linalg::to_f64(&oracle_value),
        closed_form_f64: crate::linalg::to_f64(&closed_form),
        deviation_f64: crate::linalg::to_f64(&deviation),
        oracle_value,
        closed_form,
        deviation,
    })
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Direct count of solutions mod m by looping over all m^4 tuples.
pub fn naive_count(m: u64) -> u64 {
    let mut n = 0;
    for x0 in 0..m {
        for x1 in 0..m {
            for x2 in 0..m {
                let lhs = x0 * ((x1 * x1 + x2 * x2) % m) % m;
                for x3 in 0..m {
                    if x3 * x3 % m * x3 % m == lhs {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// True when the x^1 coefficient of the Euler factor vanishes.
pub fn first_order_term_vanishes(p: u64) -> Result<bool> {
    Ok(euler_factor_polynomial(p)?[1].is_zero())
}
