use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of the cocharacter lattice N = Z e1 + Z e2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.a.gcd(&self.b) == 1
    }

    pub fn det(&self, other: &LatticeVector) -> i128 {
        self.a as i128 * other.b as i128 - self.b as i128 * other.a as i128
    }

    /// Pairing with a character `m = (m1, m2)` of the dual lattice M.
    pub fn pair(&self, m: (i64, i64)) -> i64 {
        self.a * m.0 + self.b * m.1
    }

    /// Counterclockwise angular order starting from the positive e1 axis.
    pub fn angle_cmp(&self, other: &LatticeVector) -> Ordering {
        let half = |v: &LatticeVector| u8::from(!(v.b > 0 || (v.b == 0 && v.a > 0)));
        half(self)
            .cmp(&half(other))
            .then_with(|| 0.cmp(&self.det(other)))
    }

    pub fn as_pair(&self) -> (i64, i64) {
        (self.a, self.b)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Divides `(a, b)` by the gcd of its absolute values.
pub fn primitive_vector(a: i64, b: i64) -> Result<LatticeVector> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroVector);
    }
    let g = a.gcd(&b);
    Ok(LatticeVector::new(a / g, b / g))
}

/// An integral involution of N, used both for complex conjugation and for the
/// Frobenius at a prime (identity when p splits in Q(i), the swap otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisInvolution {
    matrix: [[i64; 2]; 2],
}

impl GaloisInvolution {
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self> {
        let [[p, q], [r, s]] = matrix;
        let square = [[p * p + q * r, p * q + q * s], [r * p + s * r, r * q + s * s]];
        if square != [[1, 0], [0, 1]] {
            return Err(Error::NotAnInvolution(matrix));
        }
        Ok(Self { matrix })
    }

    pub const fn identity() -> Self {
        Self { matrix: [[1, 0], [0, 1]] }
    }

    /// e1 <-> e2.
    pub const fn swap() -> Self {
        Self { matrix: [[0, 1], [1, 0]] }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == [[1, 0], [0, 1]]
    }

    pub fn determinant(&self) -> i64 {
        let [[p, q], [r, s]] = self.matrix;
        p * s - q * r
    }

    pub fn trace(&self) -> i64 {
        self.matrix[0][0] + self.matrix[1][1]
    }

    /// `g^k`; only the parity of `k` matters.
    pub fn pow(&self, k: u32) -> Self {
        if k.is_multiple_of(2) {
            Self::identity()
        } else {
            *self
        }
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        let [[p, q], [r, s]] = self.matrix;
        LatticeVector::new(p * v.a + q * v.b, r * v.a + s * v.b)
    }

    /// Induced action on the dual lattice M. For an involution the contragredient
    /// `(g^-1)^T` is just the transpose.
    pub fn apply_dual(&self, m: (i64, i64)) -> (i64, i64) {
        let [[p, q], [r, s]] = self.matrix;
        (p * m.0 + r * m.1, q * m.0 + s * m.1)
    }

    /// Rank of the fixed sublattice M^g, i.e. of `ker(g^T - I)`.
    pub fn fixed_character_rank(&self) -> usize {
        let [[p, q], [r, s]] = self.matrix;
        let d = [[p - 1, r], [q, s - 1]];
        let rank = if d == [[0, 0], [0, 0]] {
            0
        } else if d[0][0] * d[1][1] - d[0][1] * d[1][0] == 0 {
            1
        } else {
            2
        };
        2 - rank
    }
}

/// A strictly convex two-dimensional cone spanned counterclockwise by `u` then `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone2D {
    pub u: LatticeVector,
    pub v: LatticeVector,
}

impl Cone2D {
    pub fn new(u: LatticeVector, v: LatticeVector) -> Result<Self> {
        for w in [u, v] {
            if !w.is_primitive() {
                return Err(Error::InvalidInput(format!("{w} is not primitive")));
            }
        }
        if u.det(&v) == 0 {
            return Err(Error::ParallelRays(u.as_pair(), v.as_pair()));
        }
        Ok(Self { u, v })
    }

    /// `|det(u, v)|`; 1 exactly when the cone is smooth.
    pub fn index(&self) -> u64 {
        self.u.det(&self.v).unsigned_abs() as u64
    }

    pub fn is_smooth(&self) -> bool {
        self.index() == 1
    }
}
