//! Exact Cassels heights of cyclotomic integers.
//!
//! The crate computes mean traces and Cassels heights in `Z[w_n]`, enumerates
//! the height sets of `Z[w_p]` for odd primes `p` with verified witness
//! vectors, solves two universal ternary quadratic polynomials constructively,
//! reproduces two-sided limit point constructions exactly, and labels points
//! of Thue sets.

pub mod arith;
pub mod cli;
pub mod cp;
pub mod cyclo;
pub mod error;
pub mod height;
pub mod limits;
pub mod props;
pub mod quadforms;
pub mod rat;
pub mod scan;
pub mod thue;

pub use cyclo::{order_of_term, CycInt};
pub use error::{Error, Result};
pub use height::{cassels_height, mean_trace, HeightReport};
pub use rat::Rat;
