//! Exact modular arithmetic and residue-set storage.
//!
//! Every other module builds on the types here: a [`Modulus`] carries the
//! factorization and divisor list of `m` (trial division, `m <= 2^31`), and a
//! [`ResidueSet`] is a subset of `Z/mZ` stored either as a bit array or a
//! sorted list depending on `m`.

mod arith;
mod modulus;
mod set;

pub use arith::{dlog_table, find_generator, gcd, min_gcd, mod_inverse, mul_mod, pow_mod, unit_part, DlogTable};
pub use modulus::{factorize, Modulus, MODULUS_CAP};
pub use set::{Iter, Layout, ResidueSet, DENSE_LIMIT};
