//! Exact and arbitrary-precision engine for the Laplace-transformed
//! Picard-Fuchs and GKZ operators of the one-parameter Calabi-Yau mirrors
//! Y(5), Y(6), Y(8), Y(10): solution bases at every singular point, Stokes
//! matrices, monodromy, and the matching constant c_N.

pub mod bases;
pub mod error;
pub mod exact;
pub mod models;
pub mod numerics;
pub mod operators;
pub mod stokes;

pub use error::{Error, Result};
