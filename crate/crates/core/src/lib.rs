//! Asymptotic-preserving IMEX Runge-Kutta schemes for 1-D hyperbolic
//! relaxation systems with multiscale scaling parameters (ε, α).

pub mod harness;
pub mod integrator;
pub mod linalg;
pub mod model;
pub mod spatial;
pub mod tableaux;
