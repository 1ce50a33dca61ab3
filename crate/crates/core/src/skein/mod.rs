//! The Kauffman skein of the solid torus at a fixed odd prime level `p`.
//!
//! Everything lives in `Z[ζ_N]` with `N = ring_modulus(p)` and the skein
//! variable `A = ζ_N^{N/2p}`, a primitive `2p`-th root of unity. Brackets are
//! unnormalised: the empty diagram is 1 and each trivial loop contributes
//! `δ = -A² - A^{-2}`.

mod elem;
mod hopf;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cyclotomic::{ring_modulus, CycError, CycInt, CycNum};

pub use elem::SkeinElem;
pub use hopf::HopfTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("no exact signed η is available at p = {0}; use η² instead")]
    UnsupportedPrime(u64),
    #[error("skein elements at different levels (p = {left} vs p = {right})")]
    LevelMismatch { left: u64, right: u64 },
}

/// A prime level together with its ring and the choice of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    p: u64,
    modulus: u64,
    a_step: i64,
}

/// The phase `κ` with `κ² = A^{-6-p(p+1)/2}` as a power of `ζ_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa {
    pub value: CycInt,
    pub zeta_exponent: u64,
    /// `false` when the square root was picked by the general rule rather
    /// than matching a published choice.
    pub pinned: bool,
}

impl Level {
    pub fn new(p: u64) -> Result<Level, CycError> {
        let modulus = ring_modulus(p)?;
        Ok(Level { p, modulus, a_step: (modulus / (2 * p)) as i64 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `A^k` for any integer `k`.
    pub fn a_pow(&self, k: i64) -> CycInt {
        CycInt::root(self.modulus, self.a_step * k)
    }

    pub fn int(&self, v: impl Into<BigInt>) -> CycInt {
        CycInt::from_int(self.modulus, v)
    }

    pub fn num(&self, x: CycInt) -> CycNum {
        CycNum::from_int(x, self.p)
    }

    /// `δ = -A² - A^{-2}`.
    pub fn delta(&self) -> CycInt {
        -(self.a_pow(2) + self.a_pow(-2))
    }

    /// Quantum integer `[k] = (A^{2k} - A^{-2k}) / (A² - A^{-2})`.
    pub fn quantum_int(&self, k: i64) -> CycInt {
        let num = self.a_pow(2 * k) - self.a_pow(-2 * k);
        let den = self.a_pow(2) - self.a_pow(-2);
        num.divide_exact(&den).expect("A² - A^{-2} divides A^{2k} - A^{-2k} for every k")
    }

    /// `Σ_{k=0}^{(p-3)/2} [k+1]²`, the plane evaluation of `Ω_p`.
    pub fn omega_norm(&self) -> CycInt {
        let top = (self.p as i64 - 3) / 2;
        (0..=top).fold(self.int(0), |acc, k| {
            let q = self.quantum_int(k + 1);
            acc + &q * &q
        })
    }

    pub fn kappa(&self) -> Kappa {
        let n = self.modulus as i64;
        let p = self.p as i64;
        let e = -6 - p * (p + 1) / 2;
        let zeta_exponent = if p % 4 == 1 {
            // A = ζ², so κ = ζ^e squares to A^e
            e.rem_euclid(n)
        } else {
            // A = ζ and e is even; of the two roots A^{e/2}, A^{e/2+p} take
            // the one of odd order, i.e. the even exponent.
            let half = (e / 2).rem_euclid(n);
            if half % 2 == 0 {
                half
            } else {
                (half + p).rem_euclid(n)
            }
        };
        Kappa {
            value: CycInt::root(self.modulus, zeta_exponent),
            zeta_exponent: zeta_exponent as u64,
            pinned: matches!(self.p, 5 | 7),
        }
    }

    /// `A^{-6-p(p+1)/2}`, the defining value of `κ²`.
    pub fn kappa_squared_target(&self) -> CycInt {
        let p = self.p as i64;
        self.a_pow(-6 - p * (p + 1) / 2)
    }

    /// The signed normalisation constant `η` at `p = 5` and `p = 7`.
    pub fn eta(&self) -> Result<CycNum, SkeinError> {
        let terms: &[(i64, i64)] = match self.p {
            5 => &[(1, 2), (3, 1), (5, 1), (7, -3)],
            7 => &[(0, -2), (2, -1), (3, -2), (4, 2), (5, 1)],
            p => return Err(SkeinError::UnsupportedPrime(p)),
        };
        Ok(CycNum::new(CycInt::from_terms(self.modulus, terms), self.p, 1))
    }

    /// `η²`, the inverse of `Σ [k+1]²` in `Z[ζ_N][1/p]`.
    pub fn eta_squared(&self) -> Result<CycNum, SkeinError> {
        let cap = 2 * (self.p as u32 - 1);
        Ok(self.omega_norm().invert_p_power(self.p, cap)?)
    }

    /// `Ω_p = Σ_{k=0}^{(p-3)/2} (-1)^k [k+1] e_k` in the `z` basis.
    pub fn omega(&self) -> SkeinElem {
        let top = (self.p as usize - 3) / 2;
        let mut acc = SkeinElem::zero(*self);
        for k in 0..=top {
            let mut c = self.quantum_int(k as i64 + 1);
            if k % 2 == 1 {
                c = -c;
            }
            acc = acc.add(&SkeinElem::chebyshev_e(*self, k).scale_int(&c));
        }
        acc
    }

    /// Bracket of the `n`-component positive Hopf link with every framing `+1`.
    pub fn hopf_bracket(&self, n: usize) -> CycInt {
        HopfTable::new(*self, n).get(n).clone()
    }
}
