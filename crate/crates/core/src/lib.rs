//! Exact computation of inner superderivations of finite-dimensional Lie
//! superalgebras over the rationals.

pub mod algebra;
pub mod derivation;
pub mod document;
pub mod families;
pub mod linalg;
pub mod report;

pub use algebra::{LieSuperalgebra, Parity, Subspace, SuperDim};
pub use derivation::{DerivationTower, GradedMapSpace, SuperLinearMap};
