//! Effective admittance of finite and infinite ladder networks.
//!
//! Edges carry impedances `R + Lλ + D/λ` at a complex frequency `λ`. A
//! network is driven at a source vertex held at voltage 1 with a grounded
//! boundary, and its effective admittance is the current leaving the
//! source. The crate solves that problem for arbitrary networks, gives
//! closed forms for the αβ-ladder and its LC/CL specialisations, and
//! characterises where the infinite ladder has a limit.

pub mod dirichlet;
pub mod error;
pub mod exhaustion;
pub mod format;
pub mod infinite;
pub mod ladder;
pub mod linalg;
pub mod network;
pub mod sweep;

pub use dirichlet::{effective_admittance, solve_dirichlet, Admittance, VoltageSolution};
pub use error::{Error, Result};
pub use exhaustion::{
    diagnose, exhaust, verify_rate, ConvergenceStatus, ConvergenceVerdict, Source,
};
pub use infinite::{
    cl_boundary_limit, cl_infinite_admittance, lc_boundary_limit, lc_infinite_admittance,
    LimitValue, RegionCl, RegionLc, Side,
};
pub use ladder::{finite_ladder_admittance, finite_ladder_admittance_binomial};
pub use network::{build_ladder, EdgeParams, LadderSpec, Lambda, Network};
