//! Exact arithmetic in `Z[ζ_N]` and `Z[ζ_N][1/p]`.
//!
//! Elements are integer coefficient vectors in the power basis, always reduced
//! modulo the cyclotomic polynomial `Φ_N`, so equality is coefficient-wise.

mod num;
mod residue;
mod ring;
mod text;
mod valuation;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{rational_inverse, IntMatrix};

pub use num::CycNum;
pub use residue::ResidueClass;
pub use ring::{cyclotomic_polynomial, Ring};
pub use valuation::{valuation, valuation_num, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("modulus mismatch: Z[ζ{left}] vs Z[ζ{right}]")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("prime mismatch: denominators in 1/{left} vs 1/{right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not exactly divisible in Z[ζ{0}]")]
    NotDivisible(u64),
    #[error("negative power of a non-unit")]
    NegativePowerOfNonUnit,
    #[error("no inverse of the form q/{p}^k with k <= {cap}")]
    NotPPowerInvertible { p: u64, cap: u32 },
    #[error("ζ{p} does not lie in Z[ζ{modulus}]")]
    MissingRoot { p: u64, modulus: u64 },
}

pub type Result<T> = std::result::Result<T, CycError>;

pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Cyclotomic modulus used for level `p`: `4p` when `p ≡ 1 (mod 4)`,
/// otherwise `2p`. Both contain a primitive `2p`-th root `A` and the phase `κ`.
pub fn ring_modulus(p: u64) -> Result<u64> {
    if !is_odd_prime(p) {
        return Err(CycError::InvalidPrime(p));
    }
    Ok(if p % 4 == 1 { 4 * p } else { 2 * p })
}

/// An element of `Z[ζ_N]`.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<Ring>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl std::hash::Hash for CycInt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[ζ{}](", self.modulus())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl CycInt {
    pub fn zero(modulus: u64) -> Self {
        let ring = Ring::get(modulus);
        let coeffs = vec![BigInt::zero(); ring.degree()];
        CycInt { ring, coeffs }
    }

    pub fn one(modulus: u64) -> Self {
        Self::from_int(modulus, 1)
    }

    pub fn from_int(modulus: u64, value: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(modulus);
        x.coeffs[0] = value.into();
        x
    }

    /// `ζ_N^j` for any integer `j`.
    pub fn root(modulus: u64, j: i64) -> Self {
        let ring = Ring::get(modulus);
        let k = j.rem_euclid(modulus as i64) as usize;
        let coeffs = ring.power(k).iter().map(|&c| BigInt::from(c)).collect();
        CycInt { ring, coeffs }
    }

    /// `Σ c·ζ^e` over the given `(e, c)` pairs; exponents may be negative.
    pub fn from_terms<C: Into<BigInt> + Copy>(modulus: u64, terms: &[(i64, C)]) -> Self {
        let mut raw = vec![BigInt::zero(); modulus as usize];
        for &(e, c) in terms {
            raw[e.rem_euclid(modulus as i64) as usize] += c.into();
        }
        let ring = Ring::get(modulus);
        let coeffs = reduce(&ring, raw);
        CycInt { ring, coeffs }
    }

    /// Builds an element from power-basis coefficients; longer inputs are
    /// reduced modulo `Φ_N`.
    pub fn from_coeffs(modulus: u64, coeffs: Vec<BigInt>) -> Self {
        let ring = Ring::get(modulus);
        let coeffs = reduce(&ring, coeffs);
        CycInt { ring, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus() == other.modulus() {
            Ok(())
        } else {
            Err(CycError::ModulusMismatch { left: self.modulus(), right: other.modulus() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { ring: self.ring.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.modulus() as usize;
        let mut raw = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % n] += a * b;
                }
            }
        }
        Ok(CycInt { ring: self.ring.clone(), coeffs: reduce(&self.ring, raw) })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * k).collect();
        CycInt { ring: self.ring.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.modulus());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// If `self = ±ζ^j`, the exponent of `ζ` and whether the sign is negative.
    pub fn as_signed_root(&self) -> Option<(u64, bool)> {
        let n = self.modulus();
        (0..n).find_map(|j| {
            let r = CycInt::root(n, j as i64);
            if r == *self {
                Some((j, false))
            } else if -&r == *self {
                Some((j, true))
            } else {
                None
            }
        })
    }

    /// Integer power, allowing negative exponents for roots of unity (up to sign).
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let (j, neg) = self.as_signed_root().ok_or(CycError::NegativePowerOfNonUnit)?;
        let m = e.unsigned_abs();
        let mut r = CycInt::root(self.modulus(), -((j * m) as i64));
        if neg && m % 2 == 1 {
            r = -r;
        }
        Ok(r)
    }

    /// The automorphism `ζ ↦ ζ^k` for `k` prime to `N`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.modulus() as i64;
        assert_eq!(k.gcd(&n), 1, "galois exponent must be prime to the modulus");
        let mut raw = vec![BigInt::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i as i64 * k).rem_euclid(n) as usize] += c;
        }
        CycInt { ring: self.ring.clone(), coeffs: reduce(&self.ring, raw) }
    }

    /// Matrix of `x ↦ self·x` in the power basis (column `j` is `self·ζ^j`).
    pub fn multiplication_matrix(&self) -> IntMatrix {
        let d = self.ring.degree();
        let zeta = CycInt::root(self.modulus(), 1);
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = &cur * &zeta;
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// `q` with `divisor · q = self`, if `self` lies in `divisor·Z[ζ_N]`.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        ExactDivisor::new(divisor)?.divide(self)
    }

    /// Whether every coefficient is divisible by `k`.
    pub fn is_divisible_by_int(&self, k: &BigInt) -> bool {
        self.coeffs.iter().all(|c| c.is_multiple_of(k))
    }

    pub(crate) fn div_int_exact(&self, k: &BigInt) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(k);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        CycInt { ring: self.ring.clone(), coeffs }
    }

    /// Smallest `k <= cap` with `p^k / self` integral, returned as `q / p^k`.
    pub fn invert_p_power(&self, p: u64, cap: u32) -> Result<CycNum> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let (adj, den) = rational_inverse(&self.multiplication_matrix())
            .expect("nonzero elements of a domain have invertible multiplication matrices");
        // self^{-1} = adj[.][0] / den; its denominator must be a power of p.
        let column: Vec<BigInt> = adj.iter().map(|row| row[0].clone()).collect();
        let g = column.iter().fold(den.clone(), |g, c| g.gcd(c));
        let mut den = &den / &g;
        // self^{-1} = (column / g) / den, and den must be exactly p^k
        let pb = BigInt::from(p);
        let mut k = 0u32;
        while !den.is_one() {
            if !den.is_multiple_of(&pb) || k >= cap {
                return Err(CycError::NotPPowerInvertible { p, cap });
            }
            den /= &pb;
            k += 1;
        }
        let coeffs: Vec<BigInt> = column.iter().map(|c| c / &g).collect();
        let num = CycInt::from_coeffs(self.modulus(), coeffs);
        Ok(CycNum::new(num, p, k))
    }

    /// Reduces the coefficient vector modulo `p`.
    pub fn mod_p(&self, p: u64) -> ResidueClass {
        ResidueClass::from_cyc(self, p)
    }
}

/// Divides by a fixed element repeatedly without re-inverting its
/// multiplication matrix.
#[derive(Debug, Clone)]
pub struct ExactDivisor {
    divisor: CycInt,
    adj: IntMatrix,
    den: BigInt,
}

impl ExactDivisor {
    pub fn new(divisor: &CycInt) -> Result<Self> {
        if divisor.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let (adj, den) = rational_inverse(&divisor.multiplication_matrix())
            .expect("nonzero elements of a domain have invertible multiplication matrices");
        Ok(ExactDivisor { divisor: divisor.clone(), adj, den })
    }

    pub fn divisor(&self) -> &CycInt {
        &self.divisor
    }

    pub fn divide(&self, x: &CycInt) -> Result<CycInt> {
        self.divisor.check(x)?;
        let mut coeffs = Vec::with_capacity(self.adj.len());
        for row in &self.adj {
            let s: BigInt = row.iter().zip(&x.coeffs).map(|(a, b)| a * b).sum();
            let (q, r) = s.div_rem(&self.den);
            if !r.is_zero() {
                return Err(CycError::NotDivisible(x.modulus()));
            }
            coeffs.push(q);
        }
        Ok(CycInt { ring: x.ring.clone(), coeffs })
    }

    pub fn try_divide(&self, x: &CycInt) -> Option<CycInt> {
        self.divide(x).ok()
    }
}

/// Folds a coefficient vector of any length into the reduced power basis.
fn reduce(ring: &Ring, mut raw: Vec<BigInt>) -> Vec<BigInt> {
    let n = ring.modulus() as usize;
    let d = ring.degree();
    if raw.len() > n {
        let extra: Vec<BigInt> = raw.drain(n..).collect();
        for (i, c) in extra.into_iter().enumerate() {
            raw[(n + i) % n] += c;
        }
    }
    if raw.len() < d {
        raw.resize(d, BigInt::zero());
    }
    if raw.len() > d {
        let high: Vec<BigInt> = raw.drain(d..).collect();
        for (off, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &t) in ring.power(d + off).iter().enumerate() {
                if t != 0 {
                    raw[i] += &c * t;
                }
            }
        }
    }
    raw
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        self.check(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(&self.coeffs, &format!("ζ{}", self.modulus())))
    }
}

/// Largest absolute coefficient, handy for reporting growth.
pub fn max_abs_coeff(x: &CycInt) -> BigInt {
    x.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
}
