use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Level, SkeinError};
use crate::cyclotomic::{CycInt, CycNum};

/// An element `Σ c_j z^j` of the solid-torus skein, where `z^j` is `j`
/// parallel copies of the core. Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinElem {
    level: Level,
    coeffs: Vec<CycNum>,
}

impl SkeinElem {
    pub fn zero(level: Level) -> Self {
        SkeinElem { level, coeffs: Vec::new() }
    }

    pub fn one(level: Level) -> Self {
        Self::z_power(level, 0)
    }

    pub fn z_power(level: Level, j: usize) -> Self {
        let mut coeffs = vec![CycNum::zero(level.modulus(), level.p()); j + 1];
        coeffs[j] = CycNum::one(level.modulus(), level.p());
        SkeinElem { level, coeffs }
    }

    pub fn from_coeffs(level: Level, coeffs: Vec<CycNum>) -> Self {
        let mut x = SkeinElem { level, coeffs };
        x.trim();
        x
    }

    pub fn from_int_coeffs(level: Level, coeffs: Vec<CycInt>) -> Self {
        Self::from_coeffs(level, coeffs.into_iter().map(|c| level.num(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(CycNum::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    /// Coefficient of `z^j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> CycNum {
        self.coeffs.get(j).cloned().unwrap_or_else(|| CycNum::zero(self.level.modulus(), self.level.p()))
    }

    /// Degree in `z`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SkeinError> {
        if self.level != other.level {
            return Err(SkeinError::LevelMismatch { left: self.level.p(), right: other.level.p() });
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) + other.coeff(j)).collect();
        Ok(Self::from_coeffs(self.level, coeffs))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::from_coeffs(self.level, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, c: &CycInt) -> Self {
        Self::from_coeffs(self.level, self.coeffs.iter().map(|x| x.mul_int(c)).collect())
    }

    /// Multiplication by `z` (adding one parallel copy of the core).
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(CycNum::zero(self.level.modulus(), self.level.p()));
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(self.level, coeffs)
    }

    /// Chebyshev basis: `e_0 = 1`, `e_1 = z`, `e_{k+1} = z e_k - e_{k-1}`.
    pub fn chebyshev_e(level: Level, k: usize) -> Self {
        let rows = chebyshev_rows(k);
        Self::from_int_coeffs(level, rows[k].iter().map(|c| CycInt::from_int(level.modulus(), c.clone())).collect())
    }

    /// Evaluation in the plane: `z ↦ δ`, the empty diagram is 1.
    pub fn plane_eval(&self) -> CycNum {
        let delta = self.level.delta();
        let mut acc = CycNum::zero(self.level.modulus(), self.level.p());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_int(&delta) + c;
        }
        acc
    }

    /// `t^e`, where the twist acts on `e_k` by `μ_k = (-1)^k A^{k²+2k}`.
    pub fn twist(&self, e: i64) -> Self {
        let Some(deg) = self.degree() else {
            return self.clone();
        };
        let level = self.level;
        let e_rows = chebyshev_rows(deg);
        let z_rows = z_in_e_basis(deg);
        let zero = CycNum::zero(level.modulus(), level.p());

        // coordinates in the e basis
        let mut in_e = vec![zero.clone(); deg + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (k, m) in z_rows[j].iter().enumerate() {
                if !m.is_zero() {
                    in_e[k] = &in_e[k] + &c.mul_int(&level.int(m.clone()));
                }
            }
        }
        let mut out = vec![zero; deg + 1];
        for (k, c) in in_e.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k_i = k as i64;
            let mut mu = level.a_pow(e * (k_i * k_i + 2 * k_i));
            if (k_i * e).rem_euclid(2) == 1 {
                mu = -mu;
            }
            let c = c.mul_int(&mu);
            for (i, m) in e_rows[k].iter().enumerate() {
                if !m.is_zero() {
                    out[i] = &out[i] + &c.mul_int(&level.int(m.clone()));
                }
            }
        }
        Self::from_coeffs(level, out)
    }
}

/// Rows `0..=k`; row `j` holds the `z`-coefficients of `e_j`.
fn chebyshev_rows(k: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    if k >= 1 {
        rows.push(vec![BigInt::zero(), BigInt::from(1)]);
    }
    for j in 2..=k {
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, c) in rows[j - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in rows[j - 2].iter().enumerate() {
            next[i] -= c;
        }
        rows.push(next);
    }
    rows
}

/// Rows `0..=k`; row `j` holds the `e`-coefficients of `z^j`, using
/// `z e_0 = e_1` and `z e_i = e_{i+1} + e_{i-1}`.
fn z_in_e_basis(k: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(1)]];
    for j in 1..=k {
        let prev = &rows[j - 1];
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c;
            if i > 0 {
                next[i - 1] += c;
            }
        }
        rows.push(next);
    }
    rows
}

impl fmt::Display for SkeinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]·z")?,
                _ => write!(f, "[{c}]·z^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for SkeinElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SkeinElem", 2)?;
        st.serialize_field("p", &self.level.p())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}
