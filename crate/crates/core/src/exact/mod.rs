//! Exact arithmetic: rationals, cyclotomic fields, affine polynomials in the
//! parameter `a`, and matrices over them.

pub mod cyclotomic;
pub mod linalg;
pub mod matrix;
pub mod param;
pub mod rational;

pub use cyclotomic::{cyclo_reduce, Cyclotomic};
pub use matrix::{mat_inverse_unipotent, mat_mul, mat_product, symplectic_check, uncapped_order, uncapped_product, ParamMatrix};
pub use param::ParamPoly;
