//! Exact decision and verification of sums of `k`-th powers of matrices over
//! finite commutative rings.

pub mod certify;
pub mod error;
pub mod expr;
pub mod matrix;
pub mod order;
pub mod par;
pub mod poly;
pub mod ring;
pub mod sets;
pub mod subgroup;
pub mod theorem;
pub mod trace_power;
pub mod universe;

pub use error::{Budget, Error, Result};
pub use matrix::MatrixR;
pub use ring::{make_ring, quotient_by_integer, Elem, Quotient, Ring, RingElement};
pub use theorem::{verify_theorem, TheoremReport, DEFAULT_SEED};
pub use universe::{run_universe, TestUniverse, UniverseReport, DEFAULT_UNIVERSE};
