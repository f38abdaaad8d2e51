//! Exact arithmetic for Hermitian symmetric polynomials that arise as
//! squared norms of holomorphic polynomial maps.
//!
//! Coefficients live in the Gaussian rationals, so ranks, inertias and
//! sum-of-squares identities are decided exactly. The main entry points:
//!
//! * [`HoloMap`] and [`HermitianForm`] with `‖F‖²`, products, powers,
//!   homogenization, truncation and power substitution;
//! * [`inertia`], [`reduce_minimal`], [`extract_sos`], [`affine_split`];
//! * [`solve_h`] and [`verify_identity`] for
//!   `(1+‖z‖²)^b (1+‖f‖²)^c = (1+‖h‖²)^a`;
//! * [`bounds`] for the rank bounds, gap intervals and prime substitution;
//! * [`ensemble`] for seeded batch experiments.

pub mod bounds;
pub mod document;
pub mod ensemble;
pub mod error;
pub mod form;
pub mod isometry;
pub mod linalg;
pub mod monomial;
pub mod par;
pub mod poly;
pub mod rankdecomp;
pub mod scalar;

pub use error::{Error, Result};
pub use form::HermitianForm;
pub use isometry::{
    divide_by_norm, lambda_family_report, modification_form, r_lambda, solve_h, tensor_rank_e, verify_identity,
    ModificationSpec,
};
pub use monomial::Monomial;
pub use poly::{HoloMap, HoloPoly};
pub use rankdecomp::{
    affine_split, extract_sos, grams_equal, inertia, reduce_minimal, span_rank, AffineSplit, Inertia, ScaledMap,
    SquaredNorm,
};
pub use scalar::GaussianRational;
