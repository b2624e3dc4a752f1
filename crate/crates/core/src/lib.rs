//! Finite-precision computations around the tilting correspondence for
//! `K = Q_p(p^{1/p^inf})^` and `K♭ = F_p((t^{1/p^inf}))^`.

pub mod adicdisc;
pub mod arith;
pub mod error;
pub mod polyroots;
pub mod suite;
pub mod tatealg;
pub mod tiltkit;
pub mod toric;

pub use error::{Error, Result};
