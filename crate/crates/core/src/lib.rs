//! Exact symbolic verification of the Hahn and Racah algebras realised on
//! tensor products of sl(2) Verma modules, their convolution identities, and
//! the combinatorics of coupling schemes.

pub mod coupling;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod opcalc;
pub mod polyalg;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
