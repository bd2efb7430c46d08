//! Exact-arithmetic analysis of the symmetric cube lift of an elliptic curve
//! over the rationals.
//!
//! Given integer Weierstrass coefficients, the crate computes, prime by
//! prime, the reduction type and the attached local `GL(2, Q_p)`
//! representation data, then the conductor exponent, representation type,
//! epsilon sign and spin Euler factor of its symmetric cube, and finally the
//! global conductor `N`, the paramodular level `M`, and the Atkin-Lehner
//! signs of the weight-3 degree-2 lift. All arithmetic is exact (big
//! integers and big rationals); nothing is floating point.
//!
//! The crate is organised along the pipeline:
//!
//! * [`padic`] - valuations, unit parts, Legendre symbols, square classes
//!   and quadratic character classification over `Q_p`.
//! * [`factor`] - integer factorisation support (Miller-Rabin, Brent rho).
//! * [`weierstrass`] - curve invariants, coordinate changes, minimality
//!   testing and global minimisation.
//! * [`local`] - per-prime reduction types and `GL(2)` representation data.
//! * [`sym3`] - the 4x4 symmetric cube matrix map with its similitude form,
//!   and the per-prime lift data (conductor, type, sign, Euler factor).
//! * [`global`] - assembly of the global report: `N`, `M`, Atkin-Lehner
//!   signs, CM detection.
//! * [`report`] - curve parsing, the analysis driver and stable JSON/text
//!   rendering used by the CLI.

pub mod factor;
pub mod global;
pub mod local;
pub mod padic;
pub mod report;
pub mod sym3;
pub mod weierstrass;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
