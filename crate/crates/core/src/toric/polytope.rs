//! Exact volumes of polytopes cut out of a rational hyperplane.
//!
//! The hyperplane `a . z = c` is first rescaled so that `a` is a primitive
//! integer vector. One coordinate `z_j` with `a_j != 0` is solved for, the
//! remaining constraints become a full-dimensional H-polytope in d - 1
//! variables, and its volume is divided by `|a_j|`. The result is the volume
//! for the measure on the hyperplane that gives the lattice of integer points
//! of `a . z = 0` covolume one; in particular it equals the plain projected
//! volume whenever the solved variable has coefficient +-1.
//!
//! Volumes are computed by vertex enumeration and a pulling triangulation.
//! All arithmetic is over `BigRational`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{abs_det, dot, primitive_integer, q, rank, solve, Matrix, Q};

/// `coeffs . z >= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Q>,
    pub bound: Q,
}

/// `coeffs . z = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: Vec<Q>,
    pub value: Q,
}

impl Inequality {
    pub fn new(coeffs: Vec<Q>, bound: Q) -> Self {
        Self { coeffs, bound }
    }

    pub fn from_ints(coeffs: &[i64], bound: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect(), q(bound))
    }

    /// `z_i >= 0` in `d` variables.
    pub fn nonnegative(i: usize, d: usize) -> Self {
        let mut c = vec![0; d];
        c[i] = 1;
        Self::from_ints(&c, 0)
    }

    pub fn satisfied_by(&self, z: &[Q]) -> bool {
        dot(&self.coeffs, z) >= self.bound
    }
}

impl Equation {
    pub fn new(coeffs: Vec<Q>, value: Q) -> Self {
        Self { coeffs, value }
    }

    pub fn from_ints(coeffs: &[i64], value: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect(), q(value))
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, coeffs: &[Q]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, _) => write!(f, " {sign} ")?,
        }
        if mag.is_one() {
            write!(f, "z{}", i + 1)?;
        } else {
            write!(f, "{}z{}", mag, i + 1)?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.coeffs)?;
        write!(f, " >= {}", self.bound)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.coeffs)?;
        write!(f, " = {}", self.value)
    }
}

/// Rows `r . x <= b`.
#[derive(Debug, Clone)]
struct HPolytope {
    rows: Vec<(Vec<Q>, Q)>,
    dim: usize,
}

/// Volume of `{z : halfspaces hold, hyperplane holds}` in the lattice-normalised
/// measure of the hyperplane. Empty slices have volume zero.
pub fn polytope_volume(halfspaces: &[Inequality], hyperplane: &Equation) -> Result<Q> {
    let d = hyperplane.coeffs.len();
    if d == 0 {
        return Err(Error::InvalidInput("hyperplane has no variables".into()));
    }
    if let Some(h) = halfspaces.iter().find(|h| h.coeffs.len() != d) {
        return Err(Error::InvalidInput(format!(
            "constraint {h} has {} coefficients, expected {d}",
            h.coeffs.len()
        )));
    }

    // Rescale the hyperplane so its normal is a primitive integer vector.
    let ints = primitive_integer(&hyperplane.coeffs);
    let scale = if hyperplane.coeffs.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("hyperplane normal is zero".into()));
    } else {
        let (idx, c) = hyperplane
            .coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .unwrap();
        Q::from_integer(ints[idx].clone()) / c.clone()
    };
    let normal: Vec<Q> = ints.iter().cloned().map(Q::from_integer).collect();
    let value = &hyperplane.value * &scale;

    // Solve for the coordinate with the smallest nonzero coefficient.
    let solved = (0..d)
        .filter(|&j| !normal[j].is_zero())
        .min_by(|&i, &j| normal[i].abs().cmp(&normal[j].abs()).then(i.cmp(&j)))
        .unwrap();
    let aj = normal[solved].clone();

    let free: Vec<usize> = (0..d).filter(|&j| j != solved).collect();
    let n = free.len();
    let mut rows = Vec::with_capacity(halfspaces.len());
    for h in halfspaces {
        // h.coeffs . z >= bound, with z_solved = (value - sum a_k z_k) / a_j.
        let hs = &h.coeffs[solved] / &aj;
        let mut r = Vec::with_capacity(n);
        for &k in &free {
            let coeff = &h.coeffs[k] - &hs * &normal[k];
            r.push(-coeff);
        }
        let b = &hs * &value - &h.bound;
        rows.push((r, b));
    }
    let poly = HPolytope { rows, dim: n };

    if !poly.is_feasible() {
        return Ok(Q::zero());
    }
    if n == 0 {
        return Ok(Q::one() / aj.abs());
    }
    if !poly.is_bounded() {
        return Err(Error::Unbounded);
    }
    Ok(poly.volume() / aj.abs())
}

impl HPolytope {
    fn is_feasible(&self) -> bool {
        fourier_motzkin_feasible(self.rows.clone(), self.dim)
    }

    /// Bounded iff the recession cone `{y : R y <= 0}` is trivial. Intersect
    /// it with the unit box; a nontrivial cone shows up as a nonzero vertex.
    fn is_bounded(&self) -> bool {
        let mut rows: Vec<(Vec<Q>, Q)> =
            self.rows.iter().map(|(r, _)| (r.clone(), Q::zero())).collect();
        for i in 0..self.dim {
            let mut e = vec![Q::zero(); self.dim];
            e[i] = Q::one();
            rows.push((e.clone(), Q::one()));
            rows.push((e.into_iter().map(|x| -x).collect(), Q::one()));
        }
        let cone = HPolytope { rows, dim: self.dim };
        cone.vertices().iter().all(|v| v.iter().all(Zero::is_zero))
    }

    fn contains(&self, x: &[Q]) -> bool {
        self.rows.iter().all(|(r, b)| dot(r, x) <= *b)
    }

    fn vertices(&self) -> Vec<Vec<Q>> {
        let n = self.dim;
        let m = self.rows.len();
        let mut out: BTreeSet<Vec<Q>> = BTreeSet::new();
        let mut idx: Vec<usize> = (0..n).collect();
        if m < n {
            return Vec::new();
        }
        loop {
            let a: Matrix = idx.iter().map(|&i| self.rows[i].0.clone()).collect();
            let b: Vec<Q> = idx.iter().map(|&i| self.rows[i].1.clone()).collect();
            if let Some(x) = solve(&a, &b) {
                if self.contains(&x) {
                    out.insert(x);
                }
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
        out.into_iter().collect()
    }

    fn volume(&self) -> Q {
        let verts = self.vertices();
        if affine_dim(&verts, &(0..verts.len()).collect::<Vec<_>>()) < self.dim {
            return Q::zero();
        }
        let all: Vec<usize> = (0..verts.len()).collect();
        let mut total = Q::zero();
        let fact: Q = (1..=self.dim as i64).map(q).product();
        for simplex in self.triangulate(&verts, &all, self.dim) {
            let base = &verts[simplex[0]];
            let m: Matrix = simplex[1..]
                .iter()
                .map(|&i| verts[i].iter().zip(base).map(|(x, y)| x - y).collect())
                .collect();
            total += abs_det(&m);
        }
        total / fact
    }

    /// Pulling triangulation of the face spanned by `face` (vertex indices,
    /// affine dimension `k`): cone the lowest-index vertex over every facet
    /// of the face that avoids it.
    fn triangulate(&self, verts: &[Vec<Q>], face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (r, b) in &self.rows {
            let tight: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&i| dot(r, &verts[i]) == *b)
                .collect();
            if tight.is_empty() || tight.len() == face.len() || tight.contains(&apex) {
                continue;
            }
            if affine_dim(verts, &tight) == k - 1 {
                facets.insert(tight);
            }
        }
        let mut out = Vec::new();
        for facet in facets {
            for mut s in self.triangulate(verts, &facet, k - 1) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }
}

fn affine_dim(verts: &[Vec<Q>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let base = &verts[idx[0]];
    let m: Matrix = idx[1..]
        .iter()
        .map(|&i| verts[i].iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    rank(&m)
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Decides whether `{x : r . x <= b for all rows}` is nonempty by eliminating
/// variables one at a time.
fn fourier_motzkin_feasible(mut rows: Vec<(Vec<Q>, Q)>, dim: usize) -> bool {
    for var in 0..dim {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.0[var].is_positive() {
                pos.push(row);
            } else if row.0[var].is_negative() {
                neg.push(row);
            } else {
                zero.push(row);
            }
        }
        let mut next: BTreeSet<(Vec<Q>, Q)> = zero.into_iter().map(normalize_row).collect();
        for (rp, bp) in &pos {
            for (rn, bn) in &neg {
                let (cp, cn) = (rp[var].clone(), -rn[var].clone());
                let r: Vec<Q> = rp.iter().zip(rn).map(|(x, y)| x * &cn + y * &cp).collect();
                let b = bp * &cn + bn * &cp;
                next.insert(normalize_row((r, b)));
            }
        }
        rows = next.into_iter().collect();
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// Scales a row so its coefficients are coprime integers (sign preserved),
/// which keeps the elimination from blowing up with duplicates.
fn normalize_row((r, b): (Vec<Q>, Q)) -> (Vec<Q>, Q) {
    let mut all = r.clone();
    all.push(b.clone());
    let lcm = all.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let l = Q::from_integer(lcm);
    let ints: Vec<Q> = r.iter().map(|x| x * &l).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    if g.is_zero() {
        let sign = if b.is_negative() { -Q::one() } else if b.is_zero() { Q::zero() } else { Q::one() };
        return (ints, sign);
    }
    let gq = Q::from_integer(g);
    (ints.iter().map(|x| x / &gq).collect(), &b * &l / &gq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn standard_simplex_projected_area() {
        let hs: Vec<_> = (0..3).map(|i| Inequality::nonnegative(i, 3)).collect();
        let h = Equation::from_ints(&[1, 1, 1], 1);
        assert_eq!(polytope_volume(&hs, &h).unwrap(), frac(1, 2));
    }

    #[test]
    fn unit_square_slice() {
        let mut hs: Vec<_> = (0..3).map(|i| Inequality::nonnegative(i, 3)).collect();
        hs.push(Inequality::from_ints(&[-1, 0, 0], -1));
        hs.push(Inequality::from_ints(&[0, -1, 0], -1));
        let h = Equation::from_ints(&[0, 0, 1], 1);
        assert_eq!(polytope_volume(&hs, &h).unwrap(), q(1));
    }

    #[test]
    fn unbounded_and_empty() {
        let hs: Vec<_> = (0..3).map(|i| Inequality::nonnegative(i, 3)).collect();
        let h = Equation::from_ints(&[0, 0, 1], 1);
        assert_eq!(polytope_volume(&hs, &h), Err(Error::Unbounded));

        let mut empty = hs.clone();
        empty.push(Inequality::from_ints(&[-1, -1, 0], 1));
        assert_eq!(polytope_volume(&empty, &h).unwrap(), q(0));
    }

    #[test]
    fn lower_dimensional_slice_has_zero_volume() {
        let mut hs: Vec<_> = (0..3).map(|i| Inequality::nonnegative(i, 3)).collect();
        hs.push(Inequality::from_ints(&[-1, 0, 0], 0));
        let h = Equation::from_ints(&[1, 1, 1], 1);
        assert_eq!(polytope_volume(&hs, &h).unwrap(), q(0));
    }

    #[test]
    fn normalisation_does_not_depend_on_scaling_or_solved_variable() {
        // 3 z1 + z2 = 1 in the positive quadrant: lattice length 1/3.
        let hs: Vec<_> = (0..2).map(|i| Inequality::nonnegative(i, 2)).collect();
        let a = polytope_volume(&hs, &Equation::from_ints(&[3, 1], 1)).unwrap();
        let b = polytope_volume(&hs, &Equation::new(vec![q(6), q(2)], q(2))).unwrap();
        assert_eq!(a, frac(1, 3));
        assert_eq!(a, b);
    }

    #[test]
    fn display() {
        let i = Inequality::from_ints(&[2, 1, 0, -1], 0);
        assert_eq!(i.to_string(), "2z1 + z2 - z4 >= 0");
        let e = Equation::from_ints(&[3, 2, 1, 0], 1);
        assert_eq!(e.to_string(), "3z1 + 2z2 + z3 = 1");
    }
}
