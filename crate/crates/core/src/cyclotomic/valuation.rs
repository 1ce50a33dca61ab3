use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{CycError, CycInt, CycNum, ExactDivisor, Result};

/// Exponent of the largest power of the ideal `(1-ζ_p)` containing a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    /// The valuation of zero.
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, bound: i64) -> bool {
        self >= Valuation::Finite(bound)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `1 - ζ_p` inside `Z[ζ_N]`; requires `p | N`.
pub fn uniformizer(modulus: u64, p: u64) -> Result<CycInt> {
    if p == 0 || !modulus.is_multiple_of(p) {
        return Err(CycError::MissingRoot { p, modulus });
    }
    Ok(CycInt::one(modulus) - CycInt::root(modulus, (modulus / p) as i64))
}

/// Largest `k` with `x ∈ (1-ζ_p)^k Z[ζ_N]`.
///
/// Whole factors of `p` are stripped from the integer content first, each
/// worth `p-1`, so the division loop only runs a handful of times.
pub fn valuation(x: &CycInt, p: u64) -> Result<Valuation> {
    let pi = uniformizer(x.modulus(), p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let content = x.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let pb = BigInt::from(p);
    let mut rest = content;
    let mut p_power = 0i64;
    while rest.is_multiple_of(&pb) {
        rest /= &pb;
        p_power += 1;
    }
    let mut cur = x.div_int_exact(&pb.pow(p_power as u32));
    let divisor = ExactDivisor::new(&pi)?;
    let mut extra = 0i64;
    while let Some(q) = divisor.try_divide(&cur) {
        cur = q;
        extra += 1;
    }
    Ok(Valuation::Finite(p_power * (p as i64 - 1) + extra))
}

/// Valuation of `y / p^j`, i.e. `valuation(y) - j(p-1)`.
pub fn valuation_num(x: &CycNum) -> Result<Valuation> {
    let p = x.prime();
    Ok(match valuation(x.numerator(), p)? {
        Valuation::Finite(v) => Valuation::Finite(v - x.denominator_exponent() as i64 * (p as i64 - 1)),
        Valuation::Infinite => Valuation::Infinite,
    })
}
