//! Semiclassical logarithmic perturbation theory for bound states of
//! screened Coulomb potentials.
//!
//! The energy `E = Σ E_k ħ^{2k−2}` and the log-derivative of the radial
//! wavefunction are expanded in powers of ħ². Each order is solved exactly
//! in rational arithmetic from the Riccati equation, with the zero count
//! `N = n + l + 1` at the origin entering as a residue condition, so ground
//! and excited states are handled by the same recursion.
//!
//! * [`potentials`]: Taylor coefficients of named screened potentials.
//! * [`series`]: the order-by-order recursion.
//! * [`residual`]: independent substitution check of the recursion output.
//! * [`summation`]: partial sums, Padé approximants, ratio diagnostics.
//! * [`numerov`]: floating-point shooting solver used as an oracle.

pub mod error;
pub mod numerov;
pub mod potentials;
pub mod rational;
pub mod residual;
pub mod series;
pub mod state;
pub mod summation;

pub use error::{Error, Result};
pub use numerov::{hulthen_exact_s_wave, solve, EigenResult, RadialGrid};
pub use potentials::{
    bernoulli_numbers, evaluate_closed_form, taylor_coefficients, PotentialKind, PotentialSeries,
    ScreenedPotentialSpec,
};
pub use rational::Rational;
pub use residual::{riccati_residual, ResidualReport};
pub use series::{dependence_cone_check, expand, leading_order, EnergySeries, LaurentTable};
pub use state::QuantumState;
pub use summation::{diagnostics, pade, partial_sums, Diagnostics, PadeApproximant};
