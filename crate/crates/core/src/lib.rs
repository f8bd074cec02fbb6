//! Exact q-series machinery for Young books, Jackson integrals, Schur
//! functions and classical-group characters, together with verifiers that
//! check the q-Selberg family of identities as equalities of truncated
//! formal power series.

pub mod characters;
pub mod error;
pub mod harness;
pub mod jackson;
pub mod linalg;
pub mod partitions;
pub mod qexact;
pub mod report;
pub mod schur;
pub mod youngbooks;

pub use error::{Error, Result};
pub use partitions::{Composition, Partition};
pub use qexact::{HalfExp, LaurentSeries};
