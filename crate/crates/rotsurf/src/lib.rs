//! Generation, verification and export of rotational constant mean curvature
//! (cmc) and constant harmonic mean curvature (chc) surfaces in the 3-sphere
//! and in hyperbolic 3-space.
//!
//! Profile curves are evaluated through explicit Jacobi-elliptic
//! parametrizations; surfaces are assembled by letting the ambient rotation
//! subgroup (elliptic, hyperbolic or parabolic) act on them. Everything is
//! double precision and deterministic.

pub mod cli;
pub mod closure;
pub mod export;
pub mod elliptic;
pub mod profile;
pub mod spaceform;
pub mod surface;
pub mod verify;
pub mod error;
mod quad;

pub use error::{Error, Result};
