//! Sum sets, product sets and the sum-product inequality over `Z/mZ`.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure function
//! over immutable values:
//!
//! * [`residue`]: moduli, residue sets, inverses, primitive roots, discrete logs.
//! * [`set_algebra`]: `A+B`, `AB`, dilations and representation functions.
//! * [`spectral`]: additive-character transforms and the character-sum
//!   inequalities behind the quadruple-count argument.
//! * [`theorems`]: exact quadruple counts and the prime-field / residue-ring
//!   bound reports with explicit constants.
//! * [`construct`]: the generator-prefix / sliding-window construction of sets
//!   with small `max{|A+A|, |AA|}`.
//!
//! File IO, the CLI and random sweeps live in the companion `sumprod-cli` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

mod bitset;
pub mod construct;
pub mod error;
pub mod residue;
pub mod set_algebra;
pub mod spectral;
pub mod theorems;

pub use error::{Error, Result};
pub use residue::{Modulus, ResidueSet, MODULUS_CAP};
pub use set_algebra::MultiplicityVector;
pub use spectral::SpectrumVector;
