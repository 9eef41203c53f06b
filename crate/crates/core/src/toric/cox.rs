//! Hilbert bases of homogeneous linear Diophantine systems, and the Cox
//! ring generators of the resolved surface obtained from one.
//!
//! The monomials t^e in the nine boundary variables that are invariant under
//! the relevant subgroup of the Néron-Severi torus are exactly the e in N^9
//! with A e = 0 for the integer matrix A below. The minimal such e generate
//! the invariant ring, and the integer syzygies between them give its
//! relations.

use std::collections::HashSet;
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::surface_fan::RAY_NAMES;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, Matrix, Q};

/// Limits on the completion procedure.
#[derive(Debug, Clone, Copy)]
pub struct HilbertBudget {
    pub max_rounds: usize,
    pub max_frontier: usize,
}

impl Default for HilbertBudget {
    fn default() -> Self {
        Self { max_rounds: 512, max_frontier: 200_000 }
    }
}

/// Minimal nonzero solutions of A x = 0 over N^n, by the Contejean-Devie
/// completion: grow candidates one unit vector at a time, only in directions
/// that decrease the defect A x, and discard anything dominating a solution
/// already found.
pub fn hilbert_basis(a: &[Vec<i64>], n: usize, budget: HilbertBudget) -> Result<Vec<Vec<u32>>> {
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("equation rows must all have length n".into()));
    }
    let defect = |x: &[u32]| -> Vec<i64> {
        a.iter()
            .map(|row| row.iter().zip(x).map(|(c, &v)| c * v as i64).sum())
            .collect()
    };
    let columns: Vec<Vec<i64>> = (0..n).map(|j| a.iter().map(|row| row[j]).collect()).collect();

    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[j] = 1;
            e
        })
        .collect();

    for _ in 0..budget.max_rounds {
        if frontier.is_empty() {
            basis.sort();
            return Ok(basis);
        }
        let mut open = Vec::new();
        for x in frontier {
            if dominates_any(&x, &basis) {
                continue;
            }
            let d = defect(&x);
            if d.iter().all(|&v| v == 0) {
                basis.push(x);
            } else {
                open.push((x, d));
            }
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (x, d) in &open {
            for (j, col) in columns.iter().enumerate() {
                let inner: i64 = d.iter().zip(col).map(|(p, q)| p * q).sum();
                if inner >= 0 {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if !dominates_any(&y, &basis) && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.len() > budget.max_frontier {
            return Err(Error::Budget(format!(
                "Hilbert basis frontier grew to {} candidates",
                next.len()
            )));
        }
        frontier = next;
    }
    Err(Error::Budget(format!(
        "Hilbert basis not complete after {} rounds",
        budget.max_rounds
    )))
}

fn dominates_any(x: &[u32], basis: &[Vec<u32>]) -> bool {
    basis.iter().any(|b| b.iter().zip(x).all(|(bi, xi)| bi <= xi))
}

/// The grading system for the resolved cubic, in the variable order of
/// `RAY_NAMES`.
pub fn surface_system() -> Vec<Vec<i64>> {
    vec![
        vec![0, 0, 0, 1, -1, 0, 0, -1, 1],
        vec![0, 0, 0, 0, 0, -1, 1, 2, -2],
        vec![0, 1, 0, 0, 0, 0, 0, -2, 1],
        vec![0, 0, 1, 0, 0, 0, 0, 1, -2],
    ]
}

const ETA_NAMES: [(&str, [u32; 9]); 6] = [
    ("eta1", [1, 0, 0, 0, 0, 0, 0, 0, 0]),
    ("eta2", [0, 0, 0, 1, 1, 0, 0, 0, 0]),
    ("eta3", [0, 0, 0, 0, 0, 1, 1, 0, 0]),
    ("eta4", [0, 1, 1, 0, 0, 0, 0, 1, 1]),
    ("eta5", [0, 3, 0, 1, 0, 2, 0, 2, 1]),
    ("eta5'", [0, 0, 3, 0, 1, 0, 2, 1, 2]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxGenerator {
    pub name: String,
    pub exponents: Vec<u32>,
    pub monomial: String,
}

/// `prod lhs = prod rhs` among the generators, as (name, power) lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxRelation {
    pub lhs: Vec<(String, u32)>,
    pub rhs: Vec<(String, u32)>,
}

impl fmt::Display for CoxRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, terms: &[(String, u32)]) -> fmt::Result {
            for (i, (name, k)) in terms.iter().enumerate() {
                if i > 0 {
                    write!(f, " * ")?;
                }
                write!(f, "{name}")?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            Ok(())
        }
        side(f, &self.lhs)?;
        write!(f, " = ")?;
        side(f, &self.rhs)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoxRing {
    pub variables: Vec<String>,
    pub generators: Vec<CoxGenerator>,
    pub relations: Vec<CoxRelation>,
}

/// Generators and relations of the invariant ring of the resolved cubic.
pub fn cox_hilbert_basis() -> Result<CoxRing> {
    let system = surface_system();
    let mut hb = hilbert_basis(&system, 9, HilbertBudget::default())?;
    hb.sort_by_key(|e| ETA_NAMES.iter().position(|(_, v)| v == e.as_slice()).unwrap_or(usize::MAX));
    let variables: Vec<String> = RAY_NAMES.iter().map(|(n, _)| variable_name(n)).collect();
    let generators: Vec<CoxGenerator> = hb
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let name = ETA_NAMES
                .iter()
                .find(|(_, v)| v == e.as_slice())
                .map(|(n, _)| n.to_string())
                .unwrap_or_else(|| format!("g{}", i + 1));
            let monomial = monomial(&variables, &e);
            CoxGenerator { name, exponents: e, monomial }
        })
        .collect();
    let relations = syzygies(&generators);
    Ok(CoxRing { variables, generators, relations })
}

fn variable_name(ray: &str) -> String {
    ray.replacen("rho", "t", 1)
}

fn monomial(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Integer relations sum c_i g_i = 0 between the exponent vectors, split by
/// sign into multiplicative relations.
fn syzygies(gens: &[CoxGenerator]) -> Vec<CoxRelation> {
    let rows = gens.first().map_or(0, |g| g.exponents.len());
    let m: Matrix = (0..rows)
        .map(|r| gens.iter().map(|g| Q::from_integer(g.exponents[r].into())).collect())
        .collect();
    integer_kernel(&m, gens.len())
        .into_iter()
        .map(|v| {
            let c: Vec<i64> = v.iter().map(|x| x.to_i64().expect("small syzygy")).collect();
            // Normalise so the last generator involved sits on the left.
            let last = c.iter().rposition(|&x| x != 0).unwrap();
            let sign = if c[last] < 0 { 1 } else { -1 };
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for (g, &ci) in gens.iter().zip(&c) {
                let ci = ci * sign;
                if ci < 0 {
                    lhs.push((g.name.clone(), (-ci) as u32));
                } else if ci > 0 {
                    rhs.push((g.name.clone(), ci as u32));
                }
            }
            CoxRelation { lhs, rhs }
        })
        .collect()
}
