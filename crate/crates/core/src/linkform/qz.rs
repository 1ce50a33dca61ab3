use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

/// An element of `Q/Z`, stored as `num/den` with `0 <= num < den` in lowest
/// terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZ {
    num: i64,
    den: i64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    pub fn new(num: i128, den: i128) -> QZ {
        assert!(den > 0, "Q/Z denominator must be positive");
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        QZ {
            num: i64::try_from(num).expect("Q/Z numerator overflow"),
            den: i64::try_from(den).expect("Q/Z denominator overflow"),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    /// The order of this element in `Q/Z`.
    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Is `k·self = 0`?
    pub fn killed_by(&self, k: i64) -> bool {
        k % self.den == 0
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, o: QZ) -> QZ {
        let den = self.den.lcm(&o.den) as i128;
        QZ::new(self.num as i128 * (den / self.den as i128) + o.num as i128 * (den / o.den as i128), den)
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::new(-(self.num as i128), self.den as i128)
    }
}

impl Sub for QZ {
    type Output = QZ;
    fn sub(self, o: QZ) -> QZ {
        self + (-o)
    }
}

impl Mul<i64> for QZ {
    type Output = QZ;
    fn mul(self, k: i64) -> QZ {
        QZ::new(self.num as i128 * k as i128, self.den as i128)
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for QZ {
    type Err = String;
    fn from_str(s: &str) -> Result<QZ, String> {
        let s = s.trim();
        let bad = || format!("invalid Q/Z value {s:?}");
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => {
                (n.trim().parse::<i128>().map_err(|_| bad())?, d.trim().parse::<i128>().map_err(|_| bad())?)
            }
            None => (s.parse::<i128>().map_err(|_| bad())?, 1),
        };
        if d <= 0 {
            return Err(bad());
        }
        Ok(QZ::new(n, d))
    }
}

impl Serialize for QZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
