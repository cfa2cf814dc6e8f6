//! Exact machinery for Macaulay representations, hyperplane restriction of
//! rational maps, and the gap phenomenon for maps between generalized balls.
//!
//! * [`binom`]: binomial table, Macaulay representations and index shifts.
//! * [`gap`]: canonical forms `N(n;a,b)`, gap intervals, plane propagation.
//! * [`poly`]: polynomials over `Q(i)`, exact rank, hyperplane restriction.
//! * [`hermitian`]: signatures, orthogonality certificates, sharpness maps.
//! * [`verify`]: seeded batch suites built on the modules above.

pub mod binom;
pub mod error;
pub mod gap;
pub mod hermitian;
pub mod poly;
pub mod rng;
pub mod verify;

pub use binom::{binom, macaulay_rep, op_lower, op_minus, op_upper, BinomTable, MacaulayRep};
pub use error::{Error, Result};
pub use gap::{classify_gap, gap_intervals, GapInterval, GapVerdict, NabForm};
pub use poly::{GRat, Hyperplane, Monomial, Poly, PolySubspace};
