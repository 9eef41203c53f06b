//! Picard ranks, the Frobenius trace on the geometric Picard lattice, and
//! point counts of smooth toric surfaces over F_p.

use serde::{Deserialize, Serialize};

use super::fan::Fan2D;
use super::lattice::{GaloisInvolution, LatticeVector};
use crate::arith::is_prime;
use crate::error::{Error, Result};

fn require_smooth_invariant(f: &Fan2D, g: &GaloisInvolution) -> Result<()> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    if !f.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !f.is_invariant(g) {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

/// `#orbits - rk(M^g)`, the rank of the Picard group of the g-twisted form.
pub fn picard_rank_invariant(f: &Fan2D, g: &GaloisInvolution) -> Result<usize> {
    require_smooth_invariant(f, g)?;
    let orbits = f.ray_orbits(g)?.len();
    Ok(orbits - g.fixed_character_rank())
}

/// Trace of g on Pic = Z^rays / M: fixed rays minus the trace on M.
pub fn frobenius_trace_pic(f: &Fan2D, g: &GaloisInvolution) -> Result<i64> {
    require_smooth_invariant(f, g)?;
    let fixed = f.rays().iter().filter(|r| g.apply(r) == **r).count() as i64;
    Ok(fixed - g.trace())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    /// Sum over Frobenius-stable torus orbits.
    Orbit,
    /// p^2 + Tr(Frob | Pic) p + 1.
    Trace,
}

/// Frobenius at an odd prime: trivial when p = 1 mod 4 (split in Q(i)),
/// the conjugation otherwise.
pub fn frobenius(galois: &GaloisInvolution, p: u64) -> GaloisInvolution {
    if p % 4 == 1 {
        GaloisInvolution::identity()
    } else {
        *galois
    }
}

/// Number of F_p-points of the smooth toric surface with fan `f` and
/// conjugation `galois`.
pub fn point_count_fp(
    f: &Fan2D,
    galois: &GaloisInvolution,
    p: u64,
    method: CountMethod,
) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::BadReduction(p));
    }
    let frob = frobenius(galois, p);
    require_smooth_invariant(f, &frob)?;
    let p = p as i128;
    let count = match method {
        CountMethod::Trace => {
            let t = frobenius_trace_pic(f, &frob)? as i128;
            p * p + t * p + 1
        }
        CountMethod::Orbit => orbit_count(f, &frob, p),
    };
    Ok(count as u64)
}

fn orbit_count(f: &Fan2D, frob: &GaloisInvolution, p: i128) -> i128 {
    // Dense torus: det(p - F) with F the action on M.
    let [[a, b], [c, d]] = frob.matrix();
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let mut total = (p - a) * (p - d) - b * c;

    for r in f.rays() {
        if frob.apply(r) != *r {
            continue;
        }
        // The orbit of r is a one-dimensional torus with characters r^perp.
        let m = (-r.b, r.a);
        let eps = if frob.apply_dual(m) == m { 1 } else { -1 };
        total += p - eps;
    }

    for cone in f.cones() {
        let image = (frob.apply(&cone.u), frob.apply(&cone.v));
        if image == (cone.u, cone.v) || image == (cone.v, cone.u) {
            total += 1;
        }
    }
    total
}

/// For each ray fixed by `frob`, the sign by which it acts on the orbit's
/// character line.
pub fn fixed_ray_twists(f: &Fan2D, frob: &GaloisInvolution) -> Vec<(LatticeVector, i64)> {
    f.rays()
        .iter()
        .filter(|r| frob.apply(r) == **r)
        .map(|r| {
            let m = (-r.b, r.a);
            (*r, if frob.apply_dual(m) == m { 1 } else { -1 })
        })
        .collect()
}
