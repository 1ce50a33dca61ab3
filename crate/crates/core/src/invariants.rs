//! The cabled Hopf link `L'_p` (a `(p, p)` torus link of `+1`-framed fibers
//! encircled by a `0`-framed unknot), its decorated bracket, the invariant of
//! the surgered manifold, and first homology of surgery presentations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{valuation_num, CycError, CycNum, Valuation};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::skein::{HopfTable, Level, SkeinElem, SkeinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("squared invariant has odd valuation {0}; the normalisation conventions disagree")]
    OddSquaredValuation(i64),
    #[error("presentation matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// `strands` parallel `+1`-framed Hopf fibers, each decorated with
/// `cable_decor`, linked once with a `0`-framed unknot decorated with
/// `zero_decor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfSatellite {
    pub strands: usize,
    pub cable_decor: SkeinElem,
    pub zero_decor: SkeinElem,
}

impl HopfSatellite {
    /// `L'_p(Ω_p)`: `p` strands, every component decorated with `Ω_p`.
    pub fn surgery(level: Level) -> Self {
        let omega = level.omega();
        HopfSatellite { strands: level.p() as usize, cable_decor: omega.clone(), zero_decor: omega }
    }

    pub fn level(&self) -> Level {
        self.cable_decor.level()
    }
}

/// Multiplicity vectors `(m_0, …, m_parts-1)` summing to `total`, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

pub fn multinomial(counts: &[usize]) -> BigInt {
    let mut acc = BigInt::one();
    let mut seen = 0usize;
    for &m in counts {
        for i in 1..=m {
            seen += 1;
            acc = acc * BigInt::from(seen) / BigInt::from(i);
        }
    }
    acc
}

/// Coefficients of `(Σ_j c_j w^j)^n`, indexed by the `w`-degree, summed over
/// multiplicity vectors with multinomial weights rather than over `n`-tuples.
fn cable_power(cable: &SkeinElem, n: usize) -> Vec<CycNum> {
    let level = cable.level();
    let zero = CycNum::zero(level.modulus(), level.p());
    let Some(deg) = cable.degree() else {
        let mut out = vec![zero];
        if n == 0 {
            out[0] = CycNum::one(level.modulus(), level.p());
        }
        return out;
    };
    // powers[j][e] = c_j^e
    let powers: Vec<Vec<CycNum>> = cable
        .coeffs()
        .iter()
        .map(|c| {
            let mut row = Vec::with_capacity(n + 1);
            row.push(CycNum::one(level.modulus(), level.p()));
            for e in 1..=n {
                row.push(&row[e - 1] * c);
            }
            row
        })
        .collect();
    let mut out = vec![zero; deg * n + 1];
    for m in compositions(n, deg + 1) {
        if m.iter().enumerate().any(|(j, &mj)| mj > 0 && cable.coeffs()[j].is_zero()) {
            continue;
        }
        let s: usize = m.iter().enumerate().map(|(j, &mj)| j * mj).sum();
        let mut term = CycNum::new(level.int(multinomial(&m)), level.p(), 0);
        for (j, &mj) in m.iter().enumerate() {
            if mj > 0 {
                term = &term * &powers[j][mj];
            }
        }
        out[s] = &out[s] + &term;
    }
    out
}

/// Bracket of the decorated satellite, expanding the `0`-framed component
/// first: it becomes a `+1` fiber decorated with `t^{-1}(zero_decor)`.
pub fn bracket_satellite(s: &HopfSatellite) -> Result<CycNum, InvariantError> {
    let level = s.level();
    if s.zero_decor.level() != level {
        return Err(SkeinError::LevelMismatch { left: level.p(), right: s.zero_decor.level().p() }.into());
    }
    let twisted = s.zero_decor.twist(-1);
    let cable = cable_power(&s.cable_decor, s.strands);
    let max_n = cable.len() - 1 + twisted.degree().unwrap_or(0);
    let hopf = HopfTable::new(level, max_n);
    let mut acc = CycNum::zero(level.modulus(), level.p());
    for (m, tm) in twisted.coeffs().iter().enumerate() {
        if tm.is_zero() {
            continue;
        }
        let mut inner = CycNum::zero(level.modulus(), level.p());
        for (k, ck) in cable.iter().enumerate() {
            if !ck.is_zero() {
                inner = &inner + &ck.mul_int(hopf.get(m + k));
            }
        }
        acc = &acc + &(tm * &inner);
    }
    Ok(acc)
}

/// Bracket of `decors.len()` `+1`-framed Hopf fibers, the `i`-th decorated
/// with `decors[i]`, summed over every tuple of `z`-degrees.
pub fn bracket_hopf_fibers(level: Level, decors: &[SkeinElem]) -> Result<CycNum, InvariantError> {
    if let Some(bad) = decors.iter().find(|d| d.level() != level) {
        return Err(SkeinError::LevelMismatch { left: level.p(), right: bad.level().p() }.into());
    }
    let zero = CycNum::zero(level.modulus(), level.p());
    if decors.iter().any(SkeinElem::is_zero) {
        return Ok(zero);
    }
    let max_n: usize = decors.iter().map(|d| d.degree().unwrap_or(0)).sum();
    let hopf = HopfTable::new(level, max_n);
    let mut acc = zero;
    let mut idx = vec![0usize; decors.len()];
    loop {
        let coeff = idx.iter().zip(decors).fold(CycNum::one(level.modulus(), level.p()), |c, (&j, d)| &c * &d.coeff(j));
        if !coeff.is_zero() {
            acc = &acc + &coeff.mul_int(hopf.get(idx.iter().sum()));
        }
        // odometer over degree tuples
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(acc);
            }
            idx[pos] += 1;
            if idx[pos] <= decors[pos].degree().unwrap_or(0) {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `⟨M̃_p⟩_p = η^{p+2} ⟨L'_p(Ω_p)⟩`; needs the signed `η`, so `p ∈ {5, 7}`.
pub fn invariant_mtilde(p: u64) -> Result<CycNum, InvariantError> {
    let level = Level::new(p)?;
    let eta = level.eta()?;
    let bracket = bracket_satellite(&HopfSatellite::surgery(level))?;
    Ok(&eta.pow(p as u32 + 2) * &bracket)
}

/// Valuation at `(1-ζ_p)` of `⟨M̃_p⟩_p`, computed from its square
/// `(η²)^{p+2} ⟨L'_p(Ω_p)⟩²` so that no sign of `η` is needed.
pub fn invariant_valuation(p: u64) -> Result<Valuation, InvariantError> {
    let level = Level::new(p)?;
    let bracket = bracket_satellite(&HopfSatellite::surgery(level))?;
    let eta2 = level.eta_squared()?;
    let squared = &eta2.pow(p as u32 + 2) * &bracket.pow(2);
    match valuation_num(&squared)? {
        Valuation::Infinite => Ok(Valuation::Infinite),
        Valuation::Finite(v) if v % 2 != 0 => Err(InvariantError::OddSquaredValuation(v)),
        Valuation::Finite(v) => Ok(Valuation::Finite(v / 2)),
    }
}

/// Linking matrix of `L_p`: the `(p,1)` cable (framing `p`) and the
/// `0`-framed meridian.
pub fn linking_matrix_mp(p: u64) -> IntMatrix {
    let p = BigInt::from(p);
    vec![vec![BigInt::zero(), p.clone()], vec![p.clone(), p]]
}

/// A finitely generated abelian group `Z^r ⊕ Z_{d_1} ⊕ … ⊕ Z_{d_k}` with
/// `d_1 | d_2 | …` and every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let torsion: Vec<serde_json::Number> = self
            .torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => v.into(),
                None => d.to_string().parse().expect("integer"),
            })
            .collect();
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Cokernel of a square presentation matrix, via Smith normal form.
pub fn homology_from_matrix(m: &[Vec<BigInt>]) -> Result<AbelianGroup, InvariantError> {
    let rows = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != rows) {
        return Err(InvariantError::NotSquare { rows, cols: bad.len() });
    }
    let snf = smith_normal_form(m);
    let free_rank = rows - snf.rank();
    let torsion = snf.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect::<Vec<_>>();
    debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    Ok(AbelianGroup { free_rank, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycInt;
    use crate::linalg::int_matrix;

    #[test]
    fn compositions_count_and_order() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(11, 5).len(), 1365);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multinomial(&[2, 3, 2]), BigInt::from(210));
    }

    #[test]
    fn trivial_decorations_give_h0() {
        for p in [5u64, 7] {
            let l = Level::new(p).unwrap();
            let s =
                HopfSatellite { strands: p as usize, cable_decor: SkeinElem::one(l), zero_decor: SkeinElem::one(l) };
            assert_eq!(bracket_satellite(&s).unwrap(), CycNum::one(l.modulus(), p));
        }
    }

    #[test]
    fn binomial_display_at_p5() {
        let l = Level::new(5).unwrap();
        let d = l.delta();
        let sum = |shift: usize| {
            (0..=5usize).fold(l.int(0), |acc, k| {
                let c = BigInt::from(num_integer::binomial(5u64, k as u64));
                acc + (d.pow(k as u32) * l.hopf_bracket(k + shift)).scale(&c)
            })
        };
        let display = sum(0) - l.a_pow(-3) * &d * sum(1);
        let computed = bracket_satellite(&HopfSatellite::surgery(l)).unwrap();
        assert_eq!(computed, l.num(display));
    }

    #[test]
    fn trinomial_display_at_p7() {
        let l = Level::new(7).unwrap();
        let d = l.delta();
        let d2 = d.pow(2);
        let (c0, c1, c2) = (l.int(2) - &d2, d.clone(), &d2 - l.int(1));
        let sum = |shift: usize| {
            let mut acc = CycInt::zero(14);
            for i in 0..=7usize {
                for j in 0..=7 - i {
                    let k = 7 - i - j;
                    let w = multinomial(&[i, j, k]);
                    let t = c0.pow(i as u32) * c1.pow(j as u32) * c2.pow(k as u32) * l.hopf_bracket(j + 2 * k + shift);
                    acc = acc + t.scale(&w);
                }
            }
            acc
        };
        let a6 = l.a_pow(6);
        let display = (l.int(1) + &a6 - &a6 * &d2) * sum(0) - l.a_pow(11) * &d * sum(1) + &a6 * &c2 * sum(2);
        let computed = bracket_satellite(&HopfSatellite::surgery(l)).unwrap();
        assert_eq!(computed, l.num(display));
    }

    #[test]
    fn satellite_agrees_with_per_fiber_expansion() {
        for p in [5u64, 7] {
            let l = Level::new(p).unwrap();
            let s = HopfSatellite::surgery(l);
            let mut fibers = vec![s.cable_decor.clone(); p as usize];
            fibers.push(s.zero_decor.twist(-1));
            assert_eq!(bracket_satellite(&s).unwrap(), bracket_hopf_fibers(l, &fibers).unwrap());
        }
    }

    #[test]
    fn mtilde_p5() {
        let v = invariant_mtilde(5).unwrap();
        assert_eq!(v.denominator_exponent(), 0);
        assert_eq!(v.to_integral().unwrap(), CycInt::from_terms(20, &[(1, -2), (3, 4), (5, -1), (7, -2)]));
        assert!(matches!(invariant_mtilde(11), Err(InvariantError::Skein(SkeinError::UnsupportedPrime(11)))));
    }

    #[test]
    fn mtilde_p7_lies_in_7o() {
        let v = invariant_mtilde(7).unwrap();
        let expect = CycInt::from_terms(14, &[(0, 12), (2, -8), (3, -9), (4, 9), (5, 8)]).scale(&7.into());
        assert_eq!(v.to_integral().unwrap(), expect);
    }

    #[test]
    fn valuation_pathways_agree() {
        for p in [5u64, 7] {
            let direct = valuation_num(&invariant_mtilde(p).unwrap()).unwrap();
            assert_eq!(invariant_valuation(p).unwrap(), direct);
        }
    }

    #[test]
    fn homology_examples() {
        let g = homology_from_matrix(&linking_matrix_mp(5)).unwrap();
        assert_eq!(g.to_string(), "Z_5 ⊕ Z_5");
        assert!(homology_from_matrix(&int_matrix(&[&[1]])).unwrap().is_trivial());
        let g = homology_from_matrix(&linking_matrix_mp(7)).unwrap();
        assert_eq!(g, AbelianGroup { free_rank: 0, torsion: vec![7.into(), 7.into()] });
        let g = homology_from_matrix(&int_matrix(&[&[0, 0], &[0, 3]])).unwrap();
        assert_eq!(g.to_string(), "Z ⊕ Z_3");
        assert_eq!(homology_from_matrix(&int_matrix(&[&[1, 2]])), Err(InvariantError::NotSquare { rows: 1, cols: 2 }));
        let json = serde_json::to_string(&homology_from_matrix(&linking_matrix_mp(5)).unwrap()).unwrap();
        assert_eq!(json, r#"{"free_rank":0,"torsion":[5,5]}"#);
    }

    fn arb_decor(l: Level, max_deg: usize) -> impl proptest::strategy::Strategy<Value = SkeinElem> {
        use proptest::prelude::*;
        let d = crate::cyclotomic::Ring::get(l.modulus()).degree();
        prop::collection::vec(prop::collection::vec(-5i64..5, d), 0..=max_deg + 1).prop_map(move |cs| {
            SkeinElem::from_int_coeffs(
                l,
                cs.into_iter()
                    .map(|c| CycInt::from_coeffs(l.modulus(), c.into_iter().map(Into::into).collect()))
                    .collect(),
            )
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn bracket_is_linear_in_zero_decoration(
            x in arb_decor(Level::new(5).unwrap(), 3),
            y in arb_decor(Level::new(5).unwrap(), 3),
        ) {
            let l = Level::new(5).unwrap();
            let omega = l.omega();
            let at = |z: SkeinElem| bracket_satellite(&HopfSatellite { strands: 3, cable_decor: omega.clone(), zero_decor: z }).unwrap();
            proptest::prop_assert_eq!(at(x.add(&y)), &at(x) + &at(y));
        }

        #[test]
        fn fibers_are_multilinear(
            x in arb_decor(Level::new(7).unwrap(), 2),
            y in arb_decor(Level::new(7).unwrap(), 2),
            slot in 0usize..3,
        ) {
            let l = Level::new(7).unwrap();
            let mut base = vec![l.omega(), l.omega().twist(-1), SkeinElem::chebyshev_e(l, 2)];
            let mut with = |d: SkeinElem| { base[slot] = d; bracket_hopf_fibers(l, &base).unwrap() };
            let (sx, sy, sxy) = (with(x.clone()), with(y.clone()), with(x.add(&y)));
            proptest::prop_assert_eq!(sxy, &sx + &sy);
        }
    }
}
