//! Residuals, models, and classification for the gradient Einstein-type
//! equation β·∇∇F + μ·dF⊗dF = (ρR + λ)g (α = 0) on warped products.
//!
//! The reduced equation ∇∇F = φg + c·dF⊗dF with c = −μ/β drives
//! everything: a family of structure identities its solutions satisfy, the
//! radial equation F''' − 3cF'F'' + c²F'³ = 0 equivalent to ψ'' = 0 for
//! ψ = F'e^{−cF}, the closed-form potentials of the classified cases, and
//! the (β, μ) sign-pattern classifier.
//!
//! φ bookkeeping: only the β-reduced φ is ever stored; β itself travels in
//! [`ReducedParams`] so λ can be recovered as λ = βφ − ρR without a second
//! division.

mod cases;
mod error;
mod ode;
mod params;
mod report;
mod residuals;
pub mod samples;
mod schouten;
mod table;
mod triviality;

pub use cases::{
    build_model, build_model_with_fiber, classify, closed_form_potential, potential_field,
    CaseTag, TheoremCase, DEFAULT_MODEL_INTERVAL,
};
pub use error::SolitonError;
pub use ode::{integrate_soliton_ode, OdeController, OdeOutcome, OdeSolution};
pub use params::{reduce, EinsteinTypeParams, LambdaMode, ReducedParams};
pub use report::ResidualReport;
pub use residuals::{
    einstein_type_residual, key1_residual, key2_residual_components, key2_residual_with_flag,
    key3_residual, key4_residual, lambda_recovery, phi, phi_prime, phi_second,
    profile_from_potential, psi_from_potential, soliton_ode_rhs, IdentityOptions,
};
pub use schouten::schouten_sigma_k;
pub use table::{lookup, soliton_type_table, LambdaSemantics, SolitonTypeEntry};
pub use triviality::{triviality_check_beta_zero, TrivialityReport, TrivialityVerdict};
