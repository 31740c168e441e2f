//! Filter-induced measures on generalized solenoids.
//!
//! A filter `m` on the torus `T^d`, together with a diagonal dilation `A`,
//! induces a family of probability measures on the fibers of the solenoid
//! over `T^d`. This crate computes those measures on cylinders, finds and
//! certifies atoms, checks the Ruelle-type transfer identities, and tests
//! orthonormality and shift-disjointness of the candidate scaling set.

pub mod atoms;
pub mod cyclotomic;
pub mod dilation;
pub mod error;
pub mod fiber;
pub mod filters;
pub mod laurent;
pub mod msf;
pub mod solenoid;
pub mod tau;

pub use error::{Error, Result};
