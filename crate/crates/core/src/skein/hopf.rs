use num_bigint::BigInt;
use num_integer::binomial;

use super::Level;
use crate::cyclotomic::{CycInt, ExactDivisor};

/// `H(0), …, H(n_max)`: brackets of positive Hopf links whose components all
/// have framing `+1`, from Lickorish's closed form
///
/// `H_n = (A² - A^{-2})^{-1} Σ_{r<n} C(n-1, r) A^{(n-2r+1)²-1} (A^{2(n-2r+1)} - A^{-2(n-2r+1)})`
///
/// with `H_0 = 1` set separately.
#[derive(Debug, Clone)]
pub struct HopfTable {
    level: Level,
    values: Vec<CycInt>,
}

impl HopfTable {
    pub fn new(level: Level, n_max: usize) -> Self {
        let den = level.a_pow(2) - level.a_pow(-2);
        let divisor = ExactDivisor::new(&den).expect("A² - A^{-2} is nonzero");
        let values = (0..=n_max)
            .map(|n| {
                if n == 0 {
                    level.int(1)
                } else {
                    divisor
                        .divide(&Self::numerator(level, n))
                        .expect("Hopf bracket numerator is divisible by A² - A^{-2}")
                }
            })
            .collect();
        HopfTable { level, values }
    }

    /// The sum in the closed form before dividing by `A² - A^{-2}`; `n >= 1`.
    pub fn numerator(level: Level, n: usize) -> CycInt {
        assert!(n >= 1, "the closed form only holds for n >= 1");
        let n_big = BigInt::from(n - 1);
        (0..n).fold(level.int(0), |acc, r| {
            let m = n as i64 - 2 * r as i64 + 1;
            let term = level.a_pow(m * m - 1) * (level.a_pow(2 * m) - level.a_pow(-2 * m));
            acc + term.scale(&binomial(n_big.clone(), BigInt::from(r)))
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> &CycInt {
        &self.values[n]
    }
}
