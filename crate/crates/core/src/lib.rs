//! Exact arithmetic in Kostant's ℤ-form of a simple Lie algebra's enveloping
//! algebra, its reduction modulo p, and subalgebras generated by divided
//! powers of simple root vectors.
//!
//! The crate is layered bottom-up:
//!
//! - [`rootsys`]: root systems, convex orders, Hasse diagrams, exponent tables
//! - [`chevalley`]: signed structure constants of a Chevalley basis
//! - [`pbw`]: the divided-power PBW basis and straightening multiplication
//! - [`subalg`]: weight-graded span closure over GF(p)
//! - [`verify`]: named checks producing JSON reports

pub mod chevalley;
pub mod error;
pub mod pbw;
pub mod rootsys;
pub mod subalg;
pub mod verify;

pub use error::{Error, Result};
