use core::fmt;

/// Errors raised by the arithmetic, set and report operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus outside `[2, 2^31]`.
    InvalidModulus(u64),
    /// Element has no inverse; carries `gcd(a, m)`.
    NonInvertible { value: u64, gcd: u64 },
    /// Operation requires a prime modulus.
    NotPrime(u64),
    /// The supplied generator does not have full order.
    NotPrimitive { g: u64, p: u64 },
    /// Operands live in different rings.
    ModulusMismatch { left: u64, right: u64 },
    /// Residue outside `[0, m)`.
    OutOfRange { value: u64, modulus: u64 },
    /// Operation needs a nonempty set.
    EmptyInput,
    /// The zero residue is not allowed here.
    ZeroElement,
    /// Transform period does not divide the modulus.
    InvalidPeriod { q: u64, modulus: u64 },
    /// Requested length is outside the admissible range.
    Range { value: u64, max: u64 },
    /// `ceil(sqrt(pN))` exceeds `p - 1`.
    Infeasible { p: u64, n: u64, window: u64 },
    /// Work bound for a brute-force or exhaustive routine exceeded.
    CapExceeded { work: u128, cap: u128 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(m) => write!(f, "invalid modulus {m}: expected 2 <= m <= 2^31"),
            Error::NonInvertible { value, gcd } => {
                write!(f, "{value} is not invertible (gcd with modulus is {gcd})")
            }
            Error::NotPrime(m) => write!(f, "modulus {m} is not prime"),
            Error::NotPrimitive { g, p } => write!(f, "{g} is not a primitive root mod {p}"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            Error::OutOfRange { value, modulus } => {
                write!(f, "residue {value} out of range for modulus {modulus}")
            }
            Error::EmptyInput => f.write_str("empty input set"),
            Error::ZeroElement => f.write_str("set contains 0, which has no inverse"),
            Error::InvalidPeriod { q, modulus } => {
                write!(f, "period {q} does not divide modulus {modulus}")
            }
            Error::Range { value, max } => write!(f, "length {value} outside [1, {max}]"),
            Error::Infeasible { p, n, window } => write!(
                f,
                "infeasible construction: p={p}, N={n} needs window length {window} > p-1"
            ),
            Error::CapExceeded { work, cap } => {
                write!(f, "work estimate {work} exceeds cap {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}
