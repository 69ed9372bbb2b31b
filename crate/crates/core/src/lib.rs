//! Geometry of the Birkhoff polytope under operator `ℓp → ℓp` norms.

pub mod birkhoff;
pub mod chebgeo;
pub mod cli;
pub mod matcore;
pub mod opnorm;
pub mod sampling;
