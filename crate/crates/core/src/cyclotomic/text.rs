//! Text and JSON forms of cyclotomic values.
//!
//! Text follows the `−2ζ20 + 4ζ20^3` style (with ASCII minus signs); JSON is
//! `{"modulus":N,"coeffs":[...]}` for `CycInt`, plus `"p"` and `"k"` for
//! `CycNum`. Coefficients are emitted as exact JSON integers of any size.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycInt, CycNum, Ring};

pub(crate) fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn to_numbers(coeffs: &[BigInt]) -> Vec<serde_json::Number> {
    coeffs.iter().map(|c| c.to_string().parse().expect("integers are valid JSON numbers")).collect()
}

fn from_numbers<E: serde::de::Error>(modulus: u64, nums: &[serde_json::Number]) -> Result<CycInt, E> {
    if modulus == 0 {
        return Err(E::custom("modulus must be positive"));
    }
    let degree = Ring::get(modulus).degree();
    if nums.len() != degree {
        return Err(E::custom(format!("expected {degree} coefficients for Z[ζ{modulus}], got {}", nums.len())));
    }
    let coeffs = nums
        .iter()
        .map(|n| n.to_string().parse::<BigInt>().map_err(|_| E::custom(format!("not an integer: {n}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CycInt::from_coeffs(modulus, coeffs))
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    modulus: u64,
    coeffs: Vec<serde_json::Number>,
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    modulus: u64,
    coeffs: Vec<serde_json::Number>,
    p: u64,
    k: u32,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycIntRepr { modulus: self.modulus(), coeffs: to_numbers(self.coeffs()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycIntRepr::deserialize(d)?;
        from_numbers(r.modulus, &r.coeffs)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumRepr {
            modulus: self.modulus(),
            coeffs: to_numbers(self.numerator().coeffs()),
            p: self.prime(),
            k: self.denominator_exponent(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycNumRepr::deserialize(d)?;
        if r.p < 2 {
            return Err(D::Error::custom("p must be a prime"));
        }
        let num = from_numbers(r.modulus, &r.coeffs)?;
        Ok(CycNum::new(num, r.p, r.k))
    }
}

pub(crate) fn cyc_num_json(x: &CycNum) -> serde_json::Value {
    serde_json::to_value(x).expect("CycNum always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_like_the_displays() {
        let x = CycInt::from_terms(20, &[(1, -2), (3, 4), (5, -1), (7, -2)]);
        assert_eq!(x.to_string(), "-2ζ20 + 4ζ20^3 - ζ20^5 - 2ζ20^7");
        assert_eq!(CycInt::zero(14).to_string(), "0");
        assert_eq!(CycInt::from_int(14, -3).to_string(), "-3");
        let eta = CycNum::new(CycInt::from_terms(20, &[(1, 2), (3, 1), (5, 1), (7, -3)]), 5, 1);
        assert_eq!(eta.to_string(), "(1/5)(2ζ20 + ζ20^3 + ζ20^5 - 3ζ20^7)");
    }

    #[test]
    fn json_shapes() {
        let x = CycNum::new(CycInt::from_terms(20, &[(1, 2), (7, -3)]), 5, 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"modulus":20,"coeffs":[0,2,0,0,0,0,0,-3],"p":5,"k":1}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let big = CycInt::from_int(14, BigInt::from(10).pow(30));
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.contains("1000000000000000000000000000000"));
        assert_eq!(serde_json::from_str::<CycInt>(&s).unwrap(), big);
        assert!(serde_json::from_str::<CycInt>(r#"{"modulus":20,"coeffs":[1,2]}"#).is_err());
    }
}
