//! Ramification data and genus fields of radical extensions of `F_q(T)`.

pub mod arith;
pub mod carlitz;
pub mod cli;
pub mod error;
pub mod ffpoly;
pub mod genus;
pub mod oracle;
pub mod ramify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/library.md")]
    struct Library;
    #[doc = include_str!("../../../book/src/reports.md")]
    struct Reports;
    #[doc = include_str!("../../../book/src/oracles.md")]
    struct Oracles;
}
