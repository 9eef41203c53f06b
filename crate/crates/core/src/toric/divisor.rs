//! Invariant divisor classes of a toric surface with a Galois involution.
//!
//! The orbit divisors D_i (sums of the boundary curves in one ray orbit)
//! generate Pic, subject to the relations div(chi^m) = sum <m, rho> T_rho
//! for invariant characters m in M^g. Eliminating one orbit divisor per
//! relation (always through a +-1 coefficient, so the survivors form a
//! Z-basis) gives explicit coordinates in which the dual of the effective
//! cone and the anticanonical hyperplane are written down.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::fan::Fan2D;
use super::lattice::{GaloisInvolution, LatticeVector};
use super::polytope::{polytope_volume, Equation, Inequality};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, to_q_matrix, Q};

/// `D_target = sum coeffs[i] * D_basis[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorRelation {
    pub target: usize,
    pub basis: Vec<usize>,
    pub coeffs: Vec<i64>,
}

impl fmt::Display for DivisorRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{} = ", self.target + 1)?;
        write_combination(f, &self.basis, &self.coeffs)
    }
}

/// Formats `sum c_i D_{b_i}`, e.g. `2D1 + D2 - D4`.
pub fn write_combination(f: &mut fmt::Formatter<'_>, basis: &[usize], coeffs: &[i64]) -> fmt::Result {
    let mut first = true;
    for (&b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        match (first, c < 0) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if mag != 1 {
            write!(f, "{mag}")?;
        }
        write!(f, "D{}", b + 1)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// The slice of the dual effective cone by the anticanonical hyperplane, in
/// coordinates z dual to the surviving basis divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPolytope {
    pub halfspaces: Vec<Inequality>,
    pub hyperplane: Equation,
}

impl AlphaPolytope {
    pub fn volume(&self) -> Result<Q> {
        polytope_volume(&self.halfspaces, &self.hyperplane)
    }
}

#[derive(Debug, Clone)]
pub struct DivisorClassLattice {
    /// Ray orbits in D-label order: `orbits[i]` is the support of `D_{i+1}`.
    pub orbits: Vec<Vec<LatticeVector>>,
    /// For every ray of the fan (in fan order), the index of its orbit.
    pub ray_orbit_labels: Vec<usize>,
    /// One row per generator of M^g: its pairing with each orbit.
    pub relations: Vec<Vec<i64>>,
    pub picard_rank_invariant: usize,
    pub picard_rank_geometric: usize,
    /// Indices of the orbit divisors kept as a basis of Pic.
    pub basis: Vec<usize>,
    /// The eliminated divisors written in the basis.
    pub eliminated: Vec<DivisorRelation>,
    /// Sum of all orbit divisors, before reduction (all ones).
    pub anticanonical_orbits: Vec<i64>,
    /// The anticanonical class in the basis.
    pub anticanonical: Vec<i64>,
    pub alpha_polytope: AlphaPolytope,
}

impl DivisorClassLattice {
    /// Orbits labelled in angular order of their first ray.
    pub fn new(f: &Fan2D, g: &GaloisInvolution) -> Result<Self> {
        let orbits = f.ray_orbits(g)?;
        Self::from_orbits(f, g, orbits)
    }

    /// Orbits labelled so that `labels[i]` lies in the support of `D_{i+1}`.
    pub fn with_labels(f: &Fan2D, g: &GaloisInvolution, labels: &[LatticeVector]) -> Result<Self> {
        let orbits = f.ray_orbits(g)?;
        if labels.len() != orbits.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} orbits",
                labels.len(),
                orbits.len()
            )));
        }
        let mut ordered = Vec::with_capacity(orbits.len());
        for l in labels {
            let o = orbits
                .iter()
                .find(|o| o.contains(l))
                .ok_or_else(|| Error::InvalidInput(format!("label {l} is not a ray of the fan")))?;
            if ordered.contains(o) {
                return Err(Error::InvalidInput(format!("label {l} repeats an orbit")));
            }
            ordered.push(o.clone());
        }
        Self::from_orbits(f, g, ordered)
    }

    fn from_orbits(f: &Fan2D, g: &GaloisInvolution, orbits: Vec<Vec<LatticeVector>>) -> Result<Self> {
        let k = orbits.len();
        let ray_orbit_labels = f
            .rays()
            .iter()
            .map(|r| orbits.iter().position(|o| o.contains(r)).unwrap())
            .collect();

        let relations: Vec<Vec<i64>> = invariant_characters(g)
            .into_iter()
            .map(|m| orbits.iter().map(|o| o[0].pair(m)).collect())
            .collect();
        let picard_rank_invariant = k - relations.len();
        let picard_rank_geometric = f.len() - 2;

        let (basis, eliminated) = eliminate(&relations, k)?;

        let anticanonical_orbits = vec![1i64; k];
        let mut anticanonical: Vec<i64> = basis.iter().map(|_| 1).collect();
        for rel in &eliminated {
            for (a, c) in anticanonical.iter_mut().zip(&rel.coeffs) {
                *a += c;
            }
        }

        let d = basis.len();
        let mut halfspaces: Vec<Inequality> = (0..d).map(|i| Inequality::nonnegative(i, d)).collect();
        for rel in &eliminated {
            halfspaces.push(Inequality::from_ints(&rel.coeffs, 0));
        }
        let hyperplane = Equation::from_ints(&anticanonical, 1);

        Ok(Self {
            orbits,
            ray_orbit_labels,
            relations,
            picard_rank_invariant,
            picard_rank_geometric,
            basis,
            eliminated,
            anticanonical_orbits,
            anticanonical,
            alpha_polytope: AlphaPolytope { halfspaces, hyperplane },
        })
    }

    pub fn anticanonical_display(&self) -> String {
        struct Comb<'a>(&'a [usize], &'a [i64]);
        impl fmt::Display for Comb<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_combination(f, self.0, self.1)
            }
        }
        Comb(&self.basis, &self.anticanonical).to_string()
    }
}

/// Exact volume of the alpha polytope.
pub fn alpha_volume(dcl: &DivisorClassLattice) -> Result<Q> {
    dcl.alpha_polytope.volume()
}

/// A Z-basis of M^g = ker(g^T - I).
fn invariant_characters(g: &GaloisInvolution) -> Vec<(i64, i64)> {
    let [[a, b], [c, d]] = g.matrix();
    let m = to_q_matrix(&[vec![a - 1, c], vec![b, d - 1]]);
    integer_kernel(&m, 2)
        .into_iter()
        .map(|v| (v[0].to_i64().unwrap(), v[1].to_i64().unwrap()))
        .collect()
}

/// Integer row reduction choosing, for each relation, the rightmost column
/// with a +-1 entry as the eliminated divisor.
fn eliminate(relations: &[Vec<i64>], k: usize) -> Result<(Vec<usize>, Vec<DivisorRelation>)> {
    let mut rows: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let col = (0..k)
            .rev()
            .find(|c| !pivots.contains(c) && (rows[i][*c] == BigInt::from(1) || rows[i][*c] == BigInt::from(-1)))
            .ok_or_else(|| Error::Degenerate("relations admit no unimodular elimination".into()))?;
        let pivot = rows[i][col].clone();
        for j in 0..rows.len() {
            if j != i && !rows[j][col].is_zero() {
                let factor = &rows[j][col] * &pivot;
                let src = rows[i].clone();
                for (x, y) in rows[j].iter_mut().zip(&src) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
    }
    let basis: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let eliminated = pivots
        .iter()
        .zip(&rows)
        .map(|(&col, row)| {
            // row . D = 0 with row[col] = +-1, so D_col = -row[col] * sum_{b} row[b] D_b.
            let s = &row[col];
            let coeffs = basis
                .iter()
                .map(|&b| (-(s * &row[b])).to_i64().expect("small relation"))
                .collect();
            DivisorRelation { target: col, basis: basis.clone(), coeffs }
        })
        .collect();
    Ok((basis, eliminated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;
    use crate::toric::surface_fan::{resolved_fan, DIVISOR_LABELS, RAY_ORDER_LABELS};

    #[test]
    fn relation_and_anticanonical_in_label_order() {
        let dcl =
            DivisorClassLattice::with_labels(&resolved_fan(), &GaloisInvolution::swap(), &DIVISOR_LABELS)
                .unwrap();
        assert_eq!(dcl.eliminated.len(), 1);
        assert_eq!(dcl.eliminated[0].to_string(), "D5 = 2D1 + D2 - D4");
        assert_eq!(dcl.anticanonical, vec![3, 2, 1, 0]);
        assert_eq!(dcl.anticanonical_display(), "3D1 + 2D2 + D3");
        assert_eq!(dcl.picard_rank_invariant, 4);
        assert_eq!(dcl.picard_rank_geometric, 7);
        let shown: Vec<String> = dcl.alpha_polytope.halfspaces.iter().map(|h| h.to_string()).collect();
        assert_eq!(
            shown,
            vec!["z1 >= 0", "z2 >= 0", "z3 >= 0", "z4 >= 0", "2z1 + z2 - z4 >= 0"]
        );
        assert_eq!(dcl.alpha_polytope.hyperplane.to_string(), "3z1 + 2z2 + z3 = 1");
        assert_eq!(alpha_volume(&dcl).unwrap(), frac(7, 216));
    }

    #[test]
    fn ray_order_labelling_gives_another_relation_same_volume() {
        let dcl = DivisorClassLattice::with_labels(
            &resolved_fan(),
            &GaloisInvolution::swap(),
            &RAY_ORDER_LABELS,
        )
        .unwrap();
        assert_eq!(dcl.eliminated[0].to_string(), "D5 = 2D1 - D2 + D3");
        assert_eq!(dcl.anticanonical_display(), "3D1 + 2D3 + D4");
        assert_eq!(alpha_volume(&dcl).unwrap(), frac(7, 216));
    }

    #[test]
    fn split_form_has_two_relations() {
        let dcl = DivisorClassLattice::new(&resolved_fan(), &GaloisInvolution::identity()).unwrap();
        assert_eq!(dcl.relations.len(), 2);
        assert_eq!(dcl.basis.len(), 7);
        assert_eq!(dcl.picard_rank_invariant, 7);
    }

    #[test]
    fn bad_labels() {
        let f = resolved_fan();
        let g = GaloisInvolution::swap();
        let mut labels = DIVISOR_LABELS;
        labels[1] = labels[0];
        assert!(DivisorClassLattice::with_labels(&f, &g, &labels).is_err());
        assert!(DivisorClassLattice::with_labels(&f, &g, &labels[..4]).is_err());
    }
}
