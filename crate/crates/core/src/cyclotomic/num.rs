use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::{CycError, CycInt, Result};

/// `num / p^k` in `Z[ζ_N][1/p]`, kept with the smallest possible `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycNum {
    num: CycInt,
    p: u64,
    k: u32,
}

impl CycNum {
    pub fn new(num: CycInt, p: u64, k: u32) -> Self {
        let mut x = CycNum { num, p, k };
        x.canonicalize();
        x
    }

    pub fn from_int(num: CycInt, p: u64) -> Self {
        CycNum { num, p, k: 0 }
    }

    pub fn zero(modulus: u64, p: u64) -> Self {
        Self::from_int(CycInt::zero(modulus), p)
    }

    pub fn one(modulus: u64, p: u64) -> Self {
        Self::from_int(CycInt::one(modulus), p)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        let pb = BigInt::from(self.p);
        while self.k > 0 && self.num.is_divisible_by_int(&pb) {
            self.num = self.num.div_int_exact(&pb);
            self.k -= 1;
        }
    }

    pub fn numerator(&self) -> &CycInt {
        &self.num
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Exponent of `p` in the denominator.
    pub fn denominator_exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.k == 0
    }

    pub fn to_integral(&self) -> Option<CycInt> {
        self.is_integral().then(|| self.num.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(CycError::PrimeMismatch { left: self.p, right: other.p });
        }
        if self.modulus() != other.modulus() {
            return Err(CycError::ModulusMismatch { left: self.modulus(), right: other.modulus() });
        }
        Ok(())
    }

    fn lifted(&self, k: u32) -> CycInt {
        self.num.scale(&BigInt::from(self.p).pow(k - self.k))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.k.max(other.k);
        Ok(CycNum::new(self.lifted(k) + other.lifted(k), self.p, k))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.k.max(other.k);
        Ok(CycNum::new(self.lifted(k) - other.lifted(k), self.p, k))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CycNum::new(self.num.try_mul(&other.num)?, self.p, self.k + other.k))
    }

    pub fn mul_int(&self, x: &CycInt) -> Self {
        CycNum::new(&self.num * x, self.p, self.k)
    }

    pub fn pow(&self, e: u32) -> Self {
        CycNum::new(self.num.pow(e), self.p, self.k * e)
    }
}

impl From<&CycNum> for serde_json::Value {
    fn from(x: &CycNum) -> Self {
        super::text::cyc_num_json(x)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { num: -&self.num, p: self.p, k: self.k }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "(1/{})({})", BigInt::from(self.p).pow(self.k), self.num)
        }
    }
}
