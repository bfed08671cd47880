//! Homogeneous ideal arithmetic, star operations, content ideals, and
//! Nagata / Kronecker function ring predicates over graded monoid algebras
//! `base[Γ]` (base Q or Z, Γ a finitely generated submonoid of Z^k).

pub mod content;
pub mod error;
pub mod falsify;
pub mod groebner;
pub mod ideal;
pub mod kron;
pub mod nagata;
pub mod parse;
#[cfg(test)]
mod properties;
pub mod registry;
pub mod report;
pub mod sample;
pub mod ring;
pub mod star;
pub mod suite;

pub use error::{Error, Result};
