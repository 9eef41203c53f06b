//! Fast and descent-based computation of N_U(B), and the empirical fit of
//! the polynomial Q in N_U(B) = B Q(log B) + o(B).

pub mod descent;
pub mod factor;
pub mod fast;
pub mod fit;

pub use descent::{descent_count, descent_counts, descent_points, DescentTriple};
pub use factor::{r2, FactorTable};
pub use fast::{fast_count, fast_counts};
pub use fit::{fit_q, fit_q_real, QFit};
