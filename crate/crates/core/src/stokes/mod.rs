//! Continuation, monodromy, Stokes matrices and the relations between them.

pub mod conifold;
pub mod exact;
pub mod matching;
pub mod rays;
pub mod relations;
pub mod transport;

pub use conifold::{monodromy_conifold, vanishing_check, ConifoldMonodromy, VanishingReport};
pub use exact::{l_matrix, monodromy_origin, stokes_matrices};
pub use matching::{default_cn_samples, match_cn, matches_printed, verify_asymptotics, AsymptoticRow, CnMatch};
pub use rays::{ray_geometry, rays_from_exponents, rays_svg, Ray, RayConfig};
pub use relations::{euler_pairing, relation_suite, turn_product, EulerPairing, RelationCheck, StokesReport, SuiteOptions};
pub use transport::{propagate, transport, PathPlan, TransferMatrix};
