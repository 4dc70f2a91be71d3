//! Exact combinatorics of simplicial spheres: face-vector transforms,
//! gamma vectors, Macaulay pseudopowers, link sums and weighted
//! Motzkin-path inversion.
//!
//! All counting is done over arbitrary-precision integers and rationals.
//! Irrational quantities (fractional powers, binomial roots) go through
//! [`interval`], which returns a three-valued [`interval::Verdict`] rather
//! than guessing.

pub mod arith;
pub mod complex;
pub mod error;
pub mod interval;
pub mod link;
pub mod macaulay;
pub mod orthopath;
pub mod par;
pub mod poly;
pub mod realize;
pub mod vectors;

pub use arith::{Int, Rat};
pub use complex::{Face, Family, SimplicialComplex};
pub use error::{Error, Result};
pub use interval::{Interval, Verdict};
pub use poly::Poly;
