//! The fans of the singular cubic V and of its minimal resolution.
//!
//! The torus of V is the Weil restriction of G_m from Q(i) to Q, so N = Z^2
//! with complex conjugation swapping e1 and e2. V itself has three rays, each
//! pair spanning an A2 singularity; the resolution adds two rays per cone.

use super::fan::Fan2D;
use super::lattice::{GaloisInvolution, LatticeVector};

pub const RHO_1: LatticeVector = LatticeVector::new(-1, -1);
pub const RHO_2: LatticeVector = LatticeVector::new(-1, 2);
pub const RHO_2_PRIME: LatticeVector = LatticeVector::new(2, -1);

/// Exceptional rays, listed as (rho~1, rho~2, rho~3, rho~1', rho~2', rho~3').
pub const EXCEPTIONAL: [LatticeVector; 6] = [
    LatticeVector::new(-1, 0),
    LatticeVector::new(-1, 1),
    LatticeVector::new(0, 1),
    LatticeVector::new(0, -1),
    LatticeVector::new(1, -1),
    LatticeVector::new(1, 0),
];

/// Names of the nine rays of the resolved fan, in the order used for Cox
/// ring variables: t1, t2, t2', t~1, t~1', t~2, t~2', t~3, t~3'.
pub const RAY_NAMES: [(&str, LatticeVector); 9] = [
    ("rho1", RHO_1),
    ("rho2", RHO_2),
    ("rho2'", RHO_2_PRIME),
    ("rho~1", EXCEPTIONAL[0]),
    ("rho~1'", EXCEPTIONAL[3]),
    ("rho~2", EXCEPTIONAL[1]),
    ("rho~2'", EXCEPTIONAL[4]),
    ("rho~3", EXCEPTIONAL[2]),
    ("rho~3'", EXCEPTIONAL[5]),
];

pub fn conjugation() -> GaloisInvolution {
    GaloisInvolution::swap()
}

/// The fan of V.
pub fn singular_fan() -> Fan2D {
    Fan2D::new([RHO_1, RHO_2, RHO_2_PRIME]).expect("static fan data")
}

/// The fan of the minimal resolution, written out ray by ray.
pub fn resolved_fan() -> Fan2D {
    Fan2D::new([RHO_1, RHO_2, RHO_2_PRIME].into_iter().chain(EXCEPTIONAL)).expect("static fan data")
}

pub fn ray_name(r: &LatticeVector) -> Option<&'static str> {
    RAY_NAMES.iter().find(|(_, v)| v == r).map(|(n, _)| *n)
}

/// Orbit representatives in D-label order such that the computed relation
/// reads D5 = 2D1 + D2 - D4 and the anticanonical class 3D1 + 2D2 + D3:
/// D1 = {rho1}, D2 = {rho~1, rho~1'}, D3 = {rho~2, rho~2'},
/// D4 = {rho2, rho2'}, D5 = {rho~3, rho~3'}.
pub const DIVISOR_LABELS: [LatticeVector; 5] = [
    RHO_1,
    EXCEPTIONAL[0],
    EXCEPTIONAL[1],
    RHO_2,
    EXCEPTIONAL[2],
];

/// The naming D2 = T2 + T2', D3 = T~1 + T~1', D4 = T~2 + T~2', D5 = T~3 + T~3'.
/// With it the principal divisor of the invariant character e1* + e2* gives
/// D5 = 2D1 - D2 + D3 instead; the volume of the nef slice is unchanged.
pub const RAY_ORDER_LABELS: [LatticeVector; 5] = [
    RHO_1,
    RHO_2,
    EXCEPTIONAL[0],
    EXCEPTIONAL[1],
    EXCEPTIONAL[2],
];
