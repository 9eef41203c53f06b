use std::collections::HashMap;

use manin_core::arith::primes_up_to;
use manin_core::densities::chi4;
use manin_core::linalg::frac;
use manin_core::toric::divisor::DivisorClassLattice;
use manin_core::toric::surface_fan::{
    conjugation, resolved_fan, singular_fan, DIVISOR_LABELS, RAY_ORDER_LABELS,
};
use manin_core::toric::{
    alpha_volume, cox_hilbert_basis, frobenius_trace_pic, picard_rank_invariant, point_count_fp,
    CountMethod, Fan2D, GaloisInvolution, LatticeVector,
};
use manin_core::toric::cox::surface_system;

#[test]
fn resolution_has_nine_expected_rays() {
    let resolved = singular_fan().hj_resolve().unwrap();
    let mut got: Vec<(i64, i64)> = resolved.rays().iter().map(|r| r.as_pair()).collect();
    got.sort();
    let mut want = vec![
        (-1, -1),
        (-1, 2),
        (2, -1),
        (-1, 0),
        (-1, 1),
        (0, 1),
        (0, -1),
        (1, -1),
        (1, 0),
    ];
    want.sort();
    assert_eq!(got, want);
    assert_eq!(resolved, resolved_fan());
    assert!(resolved.is_smooth() && resolved.is_complete());
    assert_eq!(singular_fan().cone_indices(), vec![3, 3, 3]);
    assert!(!singular_fan().is_smooth());
}

#[test]
fn resolution_is_minimal() {
    let resolved = resolved_fan();
    let original = singular_fan();
    for r in resolved.rays() {
        if original.contains(r) {
            continue;
        }
        let fewer = Fan2D::new(resolved.rays().iter().copied().filter(|x| x != r)).unwrap();
        assert!(!fewer.is_smooth(), "dropping {r} keeps the fan smooth");
    }
}

#[test]
fn resolving_a_smooth_fan_is_a_no_op() {
    let f = resolved_fan();
    assert_eq!(f.hj_resolve().unwrap(), f);
}

#[test]
fn fan_text_round_trip() {
    for f in [singular_fan(), resolved_fan()] {
        let text = f.to_string();
        let back: Fan2D = text.parse().unwrap();
        assert_eq!(back, f);
    }
    let commented: Fan2D = "# the singular fan\n(-1, -1)\n-1 2\n2,-1  # last\n".parse().unwrap();
    assert_eq!(commented, singular_fan());
    assert!("1 2 3".parse::<Fan2D>().is_err());
}

#[test]
fn picard_ranks() {
    let f = resolved_fan();
    assert_eq!(picard_rank_invariant(&f, &conjugation()).unwrap(), 4);
    assert_eq!(picard_rank_invariant(&f, &GaloisInvolution::identity()).unwrap(), 7);
}

#[test]
fn point_counts_match_weil_formula() {
    let f = resolved_fan();
    let g = conjugation();
    for p in primes_up_to(97).into_iter().filter(|&p| p > 2) {
        let orbit = point_count_fp(&f, &g, p, CountMethod::Orbit).unwrap();
        let trace = point_count_fp(&f, &g, p, CountMethod::Trace).unwrap();
        let chi = chi4(p as i64);
        let weil = (p * p) as i64 + (4 + 3 * chi) * p as i64 + 1;
        assert_eq!(orbit, trace, "p = {p}");
        assert_eq!(orbit as i64, weil, "p = {p}");
    }
}

#[test]
fn frobenius_trace_depends_only_on_p_mod_4() {
    let f = resolved_fan();
    let g = conjugation();
    assert_eq!(frobenius_trace_pic(&f, &g).unwrap(), 1);
    assert_eq!(frobenius_trace_pic(&f, &GaloisInvolution::identity()).unwrap(), 7);
    let f_p = |p: u64| {
        let n = point_count_fp(&f, &g, p, CountMethod::Trace).unwrap() as i64;
        (n - (p * p) as i64 - 1) / p as i64
    };
    for (a, b) in [(3, 7), (7, 11), (5, 13), (13, 17), (3, 43)] {
        assert_eq!(f_p(a), f_p(b));
    }
}

#[test]
fn alpha_is_independent_of_labelling() {
    let f = resolved_fan();
    let g = conjugation();
    let expected = frac(7, 216);
    let a = alpha_volume(&DivisorClassLattice::with_labels(&f, &g, &DIVISOR_LABELS).unwrap()).unwrap();
    let b = alpha_volume(&DivisorClassLattice::with_labels(&f, &g, &RAY_ORDER_LABELS).unwrap()).unwrap();
    let c = alpha_volume(&DivisorClassLattice::new(&f, &g).unwrap()).unwrap();
    assert_eq!(a, expected);
    assert_eq!(b, expected);
    assert_eq!(c, expected);

    let mut labels = DIVISOR_LABELS.to_vec();
    for shift in 1..labels.len() {
        labels.rotate_left(1);
        let d = DivisorClassLattice::with_labels(&f, &g, &labels).unwrap();
        assert_eq!(alpha_volume(&d).unwrap(), expected, "rotation {shift}");
    }
}

#[test]
fn labelled_relation_and_anticanonical() {
    let d = DivisorClassLattice::with_labels(&resolved_fan(), &conjugation(), &DIVISOR_LABELS).unwrap();
    let rels: Vec<String> = d.eliminated.iter().map(|r| r.to_string()).collect();
    assert_eq!(rels, vec!["D5 = 2D1 + D2 - D4"]);
    assert_eq!(d.anticanonical_display(), "3D1 + 2D2 + D3");
    assert_eq!(d.alpha_polytope.hyperplane.to_string(), "3z1 + 2z2 + z3 = 1");
}

#[test]
fn split_surface_alpha_differs() {
    let d = DivisorClassLattice::new(&resolved_fan(), &GaloisInvolution::identity()).unwrap();
    assert_eq!(d.picard_rank_invariant, 7);
    let alpha = alpha_volume(&d).unwrap();
    assert!(alpha > frac(0, 1));
    assert_ne!(alpha, frac(7, 216));
}

#[test]
fn non_invariant_fan_is_rejected() {
    let lopsided = Fan2D::from_pairs(&[(1, 0), (0, 1), (-1, -2)]).unwrap();
    assert!(!lopsided.is_invariant(&conjugation()));
    assert!(picard_rank_invariant(&lopsided.hj_resolve().unwrap(), &conjugation()).is_err());
}

fn system_holds(x: &[u32]) -> bool {
    surface_system()
        .iter()
        .all(|row| row.iter().zip(x).map(|(a, &b)| a * b as i64).sum::<i64>() == 0)
}

#[test]
fn cox_generators_solve_the_system() {
    let ring = cox_hilbert_basis().unwrap();
    assert_eq!(ring.generators.len(), 6);
    let names: Vec<&str> = ring.generators.iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["eta1", "eta2", "eta3", "eta4", "eta5", "eta5'"]);
    for g in &ring.generators {
        assert!(system_holds(&g.exponents), "{}", g.name);
    }
    assert_eq!(ring.relations.len(), 1);
    assert_eq!(ring.relations[0].to_string(), "eta5 * eta5' = eta2 * eta3^2 * eta4^3");
}

#[test]
fn cox_relation_balances_exponents() {
    let ring = cox_hilbert_basis().unwrap();
    let by_name: HashMap<&str, &Vec<u32>> =
        ring.generators.iter().map(|g| (g.name.as_str(), &g.exponents)).collect();
    let total = |side: &[(String, u32)]| {
        let mut acc = vec![0u32; 9];
        for (n, k) in side {
            for (a, e) in acc.iter_mut().zip(by_name[n.as_str()]) {
                *a += k * e;
            }
        }
        acc
    };
    let rel = &ring.relations[0];
    assert_eq!(total(&rel.lhs), total(&rel.rhs));
}

fn decomposes(x: &mut Vec<u32>, gens: &[Vec<u32>], memo: &mut HashMap<Vec<u32>, bool>) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    if let Some(&v) = memo.get(x) {
        return v;
    }
    let mut ok = false;
    for g in gens {
        if g.iter().zip(x.iter()).all(|(a, b)| a <= b) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi -= gi;
            }
            ok = decomposes(x, gens, memo);
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += gi;
            }
            if ok {
                break;
            }
        }
    }
    memo.insert(x.clone(), ok);
    ok
}

fn for_each_vector(len: usize, budget: u32, prefix: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if prefix.len() == len {
        f(prefix);
        return;
    }
    for v in 0..=budget {
        prefix.push(v);
        for_each_vector(len, budget - v, prefix, f);
        prefix.pop();
    }
}

#[test]
fn small_solutions_decompose_over_generators() {
    let gens: Vec<Vec<u32>> = cox_hilbert_basis().unwrap().generators.into_iter().map(|g| g.exponents).collect();
    let mut memo = HashMap::new();
    let mut solutions = 0usize;
    for_each_vector(9, 12, &mut Vec::new(), &mut |x| {
        if system_holds(x) {
            solutions += 1;
            let mut v = x.to_vec();
            assert!(decomposes(&mut v, &gens, &mut memo), "{x:?}");
        }
    });
    assert!(solutions > 6);
}

#[test]
fn lattice_vector_basics() {
    let v = LatticeVector::new(2, -1);
    assert!(v.is_primitive());
    assert!(!LatticeVector::new(2, -2).is_primitive());
    assert_eq!(conjugation().apply(&v), LatticeVector::new(-1, 2));
}
