//! Exact construction and certification of symmetric jet differentials on
//! complete-intersection surfaces `z^d = R(x, y)`, `t^e = S(x, y)` in P^4.

pub mod counting;
pub mod divisibility;
pub mod error;
pub mod genericity;
pub mod injectivity;
pub mod jetbuilder;
pub mod linalg;
pub mod polyring;
pub mod sampling;
pub mod surfacecharts;

pub use error::{Error, Result};
