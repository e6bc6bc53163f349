//! Solution bases of the Picard-Fuchs operator and of its Laplace transform.

pub mod conifold;
pub mod deformed;
pub mod formal;
pub mod frobenius;
pub mod hatw;
pub mod periods;
pub mod series;

pub use conifold::{conifold_basis, frobenius_integer, recenter, ConifoldBasis};
pub use deformed::{invert_variable, DeformedSeries, GammaRatio};
pub use formal::{formal_basis, g4_coefficients, g4_prefactor, termwise_laplace, FormalSolution};
pub use frobenius::{hypergeometric_params, phi_eval, phi_exact, phi_series};
pub use hatw::{hat_w_basis, hat_w_coefficients, hat_w_sum, holomorphic_basis, holomorphic_coefficients, holomorphic_eval, PhiCombination};
pub use periods::{period_basis, period_jets, PeriodBasis};
pub use series::{ExactLogSeries, LogSeries};
