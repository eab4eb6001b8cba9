//! Working-precision bookkeeping.
//!
//! Every numeric operation in this crate is parameterized by a
//! [`PrecisionContext`]: a number of decimal digits the caller wants to trust,
//! plus guard digits that are carried internally so that cancellation-prone
//! intermediate sums do not eat into the requested accuracy. Contexts are
//! immutable and cheap to copy; the same context with the same inputs always
//! produces bit-identical results (MPFR round-to-nearest underneath).

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Float, Integer, Rational};

/// Minimum supported working precision in decimal digits.
pub const MIN_DIGITS: u32 = 50;

/// Default working precision, in decimal digits.
pub const DEFAULT_DIGITS: u32 = 150;

/// Default number of guard digits carried on top of `digits`.
pub const DEFAULT_GUARD: u32 = 20;

/// bits per decimal digit, rounded up a little (log2(10) = 3.3219...)
const BITS_PER_DIGIT: f64 = 3.3220;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Context with `digits` of working precision and the default guard.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::PrecisionTooLow {
                digits,
                min: MIN_DIGITS,
            });
        }
        Ok(PrecisionContext {
            digits,
            guard_digits,
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Total binary precision used for intermediate values.
    pub fn prec_bits(&self) -> u32 {
        decimal_to_bits(self.digits + self.guard_digits)
    }

    /// Context for evaluating a transformation of order `k`.
    ///
    /// The k-th finite-difference binomial sums lose on the order of
    /// k*log10(2) digits to cancellation, so the guard grows with k.
    pub fn elevated_for_order(&self, k: usize) -> Self {
        let needed = 20.max(k.div_ceil(2)) as u32;
        PrecisionContext {
            digits: self.digits,
            guard_digits: self.guard_digits.max(needed),
        }
    }

    /// Context with at least `extra` additional guard digits.
    pub fn with_extra_guard(&self, extra: u32) -> Self {
        PrecisionContext {
            digits: self.digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    // ----- constructors for values carrying this context's precision -----

    pub fn zero(&self) -> Float {
        Float::new(self.prec_bits())
    }

    pub fn int(&self, v: i64) -> Float {
        Float::with_val(self.prec_bits(), v)
    }

    pub fn f64(&self, v: f64) -> Float {
        Float::with_val(self.prec_bits(), v)
    }

    pub fn from_integer(&self, v: &Integer) -> Float {
        Float::with_val(self.prec_bits(), v)
    }

    pub fn from_rational(&self, v: &Rational) -> Float {
        Float::with_val(self.prec_bits(), v)
    }

    /// Parse a decimal literal at full working precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        Float::parse(s)
            .map(|p| Float::with_val(self.prec_bits(), p))
            .map_err(|e| Error::InvalidParameter(format!("cannot parse '{s}': {e}")))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec_bits(), Constant::Pi)
    }

    pub fn euler_gamma(&self) -> Float {
        Float::with_val(self.prec_bits(), Constant::Euler)
    }

    pub fn e(&self) -> Float {
        Float::with_val(self.prec_bits(), 1).exp()
    }

    pub fn ln10(&self) -> Float {
        Float::with_val(self.prec_bits(), 10).ln()
    }

    /// 10^(-digits): the relative tolerance the context promises.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.prec_bits(), 10).pow_int(-(self.digits as i64))
    }

    /// Round a value back from internal precision to `digits` of precision.
    pub fn round_to_digits(&self, v: &Float) -> Float {
        Float::with_val(decimal_to_bits(self.digits), v)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            digits: DEFAULT_DIGITS,
            guard_digits: DEFAULT_GUARD,
        }
    }
}

pub(crate) fn decimal_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
}

/// x^n for integer n (n may be negative), at x's precision.
pub(crate) trait PowInt {
    fn pow_int(self, n: i64) -> Float;
}

impl PowInt for Float {
    fn pow_int(self, n: i64) -> Float {
        use rug::ops::Pow;
        self.pow(n as i32)
    }
}
