//! Arithmetic in `F_q` and `F_q[T]`.

mod factor;
mod field;
mod parse;
mod poly;

pub use factor::{distinct_degree, factor, squarefree, Factorization};
pub use field::{Embedding, FqContext, FqElem, MAX_FIELD_SIZE};
pub use parse::{parse_elem, parse_poly};
pub use poly::{FqPoly, MAX_DEGREE};

use crate::error::Result;

/// Builds `F_{p^m}`; see [`FqContext::new`].
pub fn make_context(p: u64, m: u32) -> Result<FqContext> {
    FqContext::new(p, m)
}

/// Whether `gamma` is an `e`-th power in `F_q^*`.
pub fn is_eth_power(ctx: &FqContext, gamma: FqElem, e: u64) -> Result<bool> {
    ctx.is_eth_power(gamma, e)
}
