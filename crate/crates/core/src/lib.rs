//! Dense complex-matrix analysis: numerical radii, spectral quantities, `l_p`
//! operator norms, and bounds for Kronecker products, Schur powers,
//! semi-Hilbertian seminorms and polynomial roots.
//!
//! Everything is generic over the real scalar ([`Real`], implemented for `f32`
//! and `f64`); the aliases below fix the common `f64` case.

pub mod bounds;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod pnorm;
pub mod poly;
pub mod polyroots;
pub mod radius;
pub mod scalar;
pub mod schurpower;
pub mod semihilbert;
pub mod spectral;
pub mod structured;

pub use bounds::{BoundReport, RelationKind};
pub use error::{Error, Result};
pub use matrix::{vector, Matrix};
pub use pnorm::{kappa, kron_pnorm_bounds, opnorm_exact, opnorm_lower, opnorm_upper_interp, Exponent, PNormBounds};
pub use poly::Poly;
pub use polyroots::{est_poly_bound, fujii_kubo_bound, root_bound_report, RootBoundReport};
pub use radius::{numerical_radius, numerical_radius_nonneg, radius_antidiagonal, w, RadiusResult};
pub use scalar::{cis, Real};
pub use semihilbert::PSpace;
pub use spectral::{
    eigenvalues, hermitian_eigs, max_modulus_structure, singular_values, spectral_norm, spectral_radius,
    SpectralData,
};
pub use structured::{
    anti_diagonal, circulant, companion, doubly_stochastic_scale, kron, kron_power, schur_embed_indices,
    schur_power, schur_product,
};

/// Complex scalar with `f64` parts.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix with `f64` parts.
pub type CMatrix = Matrix<f64>;
/// Dense complex matrix with `f32` parts.
pub type CMatrix32 = Matrix<f32>;
/// Monic polynomial with `f64` coefficients.
pub type CPoly = Poly<f64>;
