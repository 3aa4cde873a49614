//! Verification engine for an explicit family of cohomogeneity-one
//! Ricci-flat Kähler metrics in dimension 4(n+1).
//!
//! The library computes curvature of invariant metrics directly from the
//! structure constants of su(n+2) via Cartan's structure equations, and
//! certifies Ricci-flatness, Kähler-form closedness, the radial ODE
//! reduction, holonomy-algebra dimension, and the limiting special cases,
//! mixing exact rational arithmetic (identities) with jet-propagated
//! numerics (pointwise curvature).

pub mod curvature;
pub mod error;
pub mod exterior;
pub mod holonomy;
pub mod liealg;
pub mod metrics;

pub use error::Error;
