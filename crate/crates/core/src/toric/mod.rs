//! Two-dimensional fans, Galois twists and the invariants of the resolved
//! cubic surface that can be read off from them.

pub mod cox;
pub mod divisor;
pub mod fan;
pub mod lattice;
pub mod picard;
pub mod polytope;
pub mod surface_fan;

pub use cox::{cox_hilbert_basis, hilbert_basis, CoxRing, HilbertBudget};
pub use divisor::{alpha_volume, DivisorClassLattice};
pub use fan::Fan2D;
pub use lattice::{Cone2D, GaloisInvolution, LatticeVector};
pub use picard::{frobenius_trace_pic, picard_rank_invariant, point_count_fp, CountMethod};
pub use polytope::{polytope_volume, Equation, Inequality};
