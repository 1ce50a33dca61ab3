use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CycError, CycInt, Result};

/// The image of an element of `Z[ζ_N]` in `Z[ζ_N]/p`, as coefficients in
/// `0..p` over the power basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueClass {
    modulus: u64,
    p: u64,
    coeffs: Vec<u64>,
}

impl ResidueClass {
    pub fn from_cyc(x: &CycInt, p: u64) -> Self {
        let pb = BigInt::from(p);
        let coeffs = x.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64")).collect();
        ResidueClass { modulus: x.modulus(), p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The representative with coefficients in `0..p`.
    pub fn lift(&self) -> CycInt {
        CycInt::from_coeffs(self.modulus, self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(CycError::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        if self.p != other.p {
            return Err(CycError::PrimeMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % self.p).collect();
        Ok(ResidueClass { modulus: self.modulus, p: self.p, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ResidueClass::from_cyc(&(self.lift() * other.lift()), self.p))
    }
}

impl fmt::Debug for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueClass[ζ{} mod {}]{:?}", self.modulus, self.p, self.coeffs)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.p)
    }
}
