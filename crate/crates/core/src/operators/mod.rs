//! Theta-operator algebra, Laplace transforms and GKZ reduction.

pub mod factor;
pub mod gkz;
pub mod laplace;
pub mod poly;
pub mod theta;

pub use factor::{factor_left, factor_theta, left_divide_poly};
pub use gkz::{gkz_from_toric, laplace_nu, laplace_star, GkzReduction, GkzSystem, MultiOp, ToricData};
pub use laplace::{laplace_pf, laplace_pf_raw, pf_operator};
pub use poly::QPoly;
pub use theta::{normal_order, ThetaOperator};
