//! Local densities at every place and the assembled leading constant.

pub mod archimedean;
pub mod euler;
pub mod local;
pub mod peyre;

pub use archimedean::{omega_infty, omega_infty_quadrature, OmegaMethod, QuadratureResult};
pub use euler::{tau_product, EulerProductResult};
pub use local::{chi4, local_density_oracle, omega_p_good, sigma_local, tau_factor, LocalDensityReport};
pub use peyre::{peyre_constant, peyre_constant_with, PeyreBreakdown, PeyreOverrides};
