//! Exact algebra for partially ordered groups and the categories built over them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! computation on finite data: rationals, monoid rings and truncated Novikov
//! elements, graded and persistence modules, orbit and unorbit categories,
//! curved A∞-categories together with their quotients, twisted complexes,
//! bounding cochains and localizations, and the integer linear algebra used
//! to certify acyclicity.
//!
//! IO, file formats and the command line live in the `pogcat` crate.

#![no_std]

extern crate alloc;

pub mod ainf;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod homology;
pub mod orbit;
pub mod pog;
pub mod scalars;

pub use error::Error;
pub use pog::Pog;
pub use scalars::{rat, Rational};

pub type Result<T, E = Error> = core::result::Result<T, E>;
