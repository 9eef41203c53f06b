use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::lattice::{Cone2D, GaloisInvolution, LatticeVector};
use crate::error::{Error, Result};

/// A fan in N_R = R^2, stored as its primitive rays in counterclockwise order
/// starting from the positive e1 axis. The two-dimensional cones are the
/// consecutive pairs (wrapping around) that span an angle strictly below pi.
///
/// Two fans compare equal iff their ray lists agree, which is what makes
/// resolutions comparable bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan2D {
    rays: Vec<LatticeVector>,
}

impl Fan2D {
    pub fn new(rays: impl IntoIterator<Item = LatticeVector>) -> Result<Self> {
        let mut rays: Vec<LatticeVector> = rays.into_iter().collect();
        if rays.is_empty() {
            return Err(Error::TooFewRays { needed: 1, got: 0 });
        }
        for r in &rays {
            if !r.is_primitive() {
                return Err(Error::InvalidInput(format!("ray {r} is not primitive")));
            }
        }
        rays.sort_by(|x, y| x.angle_cmp(y));
        if let Some(w) = rays.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateRay(w[0].as_pair()));
        }
        Ok(Self { rays })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| LatticeVector::new(a, b)))
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, r: &LatticeVector) -> bool {
        self.rays.contains(r)
    }

    pub fn position(&self, r: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|x| x == r)
    }

    fn consecutive(&self) -> impl Iterator<Item = (LatticeVector, LatticeVector)> + '_ {
        let n = self.rays.len();
        (0..n).map(move |i| (self.rays[i], self.rays[(i + 1) % n]))
    }

    /// The two-dimensional cones of the fan.
    pub fn cones(&self) -> Vec<Cone2D> {
        if self.rays.len() < 2 {
            return Vec::new();
        }
        self.consecutive()
            .filter(|(u, v)| u.det(v) > 0)
            .map(|(u, v)| Cone2D { u, v })
            .collect()
    }

    /// True iff the cones cover the plane: every consecutive gap is below pi.
    /// Fans with fewer than three rays are never complete.
    pub fn is_complete(&self) -> bool {
        self.rays.len() >= 3 && self.consecutive().all(|(u, v)| u.det(&v) > 0)
    }

    /// True iff every two-dimensional cone has index 1.
    pub fn is_smooth(&self) -> bool {
        self.cones().iter().all(Cone2D::is_smooth)
    }

    pub fn cone_indices(&self) -> Vec<u64> {
        self.cones().iter().map(Cone2D::index).collect()
    }

    /// The minimal smooth refinement, obtained by Hirzebruch-Jung insertion
    /// in every singular cone.
    pub fn hj_resolve(&self) -> Result<Fan2D> {
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let mut rays = self.rays.clone();
        for cone in self.cones() {
            rays.extend(hj_cone_rays(&cone));
        }
        Fan2D::new(rays)
    }

    pub fn is_invariant(&self, g: &GaloisInvolution) -> bool {
        let set: HashSet<_> = self.rays.iter().collect();
        self.rays.iter().all(|r| set.contains(&g.apply(r)))
    }

    /// Partition of the rays into g-orbits, ordered by the angular position of
    /// their first member.
    pub fn ray_orbits(&self, g: &GaloisInvolution) -> Result<Vec<Vec<LatticeVector>>> {
        if !self.is_invariant(g) {
            return Err(Error::NotInvariant);
        }
        let mut seen = HashSet::new();
        let mut orbits = Vec::new();
        for r in &self.rays {
            if !seen.insert(*r) {
                continue;
            }
            let image = g.apply(r);
            if seen.insert(image) {
                orbits.push(vec![*r, image]);
            } else {
                orbits.push(vec![*r]);
            }
        }
        Ok(orbits)
    }
}

/// Rays strictly inside `cone` that its Hirzebruch-Jung resolution inserts,
/// listed from `u` towards `v`.
///
/// With n = det(u, v), the ray adjacent to `u` is w = (v + a u) / n where
/// 0 < a < n is the residue making w integral; then det(w, v) = a and the
/// procedure repeats on the cone (w, v).
pub fn hj_cone_rays(cone: &Cone2D) -> Vec<LatticeVector> {
    let mut inserted = Vec::new();
    let (mut u, v) = (cone.u, cone.v);
    let mut n = u.det(&v);
    while n > 1 {
        let a = hj_residue(&u, &v, n);
        let w = LatticeVector::new(
            ((v.a as i128 + a * u.a as i128) / n) as i64,
            ((v.b as i128 + a * u.b as i128) / n) as i64,
        );
        debug_assert_eq!(u.det(&w), 1);
        inserted.push(w);
        u = w;
        n = a;
    }
    inserted
}

/// The unique a in [0, n) with a u + v = 0 (mod n). Pairing with the Bezout
/// vector (x, y) of the primitive `u` gives a = -(x v.a + y v.b) mod n.
fn hj_residue(u: &LatticeVector, v: &LatticeVector, n: i128) -> i128 {
    let (x, y) = bezout(u.a as i128, u.b as i128);
    let c = x * v.a as i128 + y * v.b as i128;
    (-c).rem_euclid(n)
}

fn bezout(a: i128, b: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_s, -old_t)
    } else {
        (old_s, old_t)
    }
}

/// One ray per line as two integers separated by whitespace and/or a comma;
/// `#` starts a comment.
impl FromStr for Fan2D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rays = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: i + 1, message };
            let fields: Vec<&str> = line
                .trim_start_matches('(')
                .trim_end_matches(')')
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            if fields.len() != 2 {
                return Err(parse_err(format!("expected two coordinates, got {line:?}")));
            }
            let a: i64 = fields[0].parse().map_err(|e| parse_err(format!("{e}")))?;
            let b: i64 = fields[1].parse().map_err(|e| parse_err(format!("{e}")))?;
            rays.push(LatticeVector::new(a, b));
        }
        Fan2D::new(rays)
    }
}

impl fmt::Display for Fan2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rays {
            writeln!(f, "{} {}", r.a, r.b)?;
        }
        Ok(())
    }
}
