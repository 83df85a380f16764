//! Exact finite models of von Neumann regular C∞-rings and the dualities
//! around them.
//!
//! Rings are finite products `K^S`, Boolean algebras are finite powersets,
//! Boolean spaces are finite discrete spaces, and profinite spaces are
//! limits of finite inverse systems. Everything here is small enough to be
//! checked exhaustively or on seeded random samples.

pub mod boolean;
pub mod duality;
pub mod error;
pub mod expr;
pub mod field;
pub mod format;
pub mod report;
pub mod ring;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
