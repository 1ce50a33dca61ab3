//! Linking forms on finite abelian `p`-groups in Wall normal form, characters
//! of `H_1 = Z^r ⊕ T`, and the algebra deciding when a cyclic cover is
//! simple (its classifying character lifts to `Z`).

mod parse;
mod qz;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::is_odd_prime;
use crate::linalg::smith_normal_form;

pub use qz::QZ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("summand {index}: exponent must be at least 1")]
    ZeroExponent { index: usize },
    #[error("summand {index}: {unit} is a square modulo {p}; B-type summands need a non-square unit")]
    SquareUnit { index: usize, unit: u64, p: u64 },
    #[error("summand {index}: p^t = {p}^{t} is too large")]
    OrderTooLarge { index: usize, p: u64, t: u32 },
    #[error("expected {expected} {what}, got {got}")]
    Shape { what: &'static str, expected: usize, got: usize },
    #[error("character value {value} on summand {index} is not killed by its order {order}")]
    IllDefined { index: usize, value: QZ, order: u64 },
    #[error("character target Z_{target} is not a power of {p}")]
    BadTarget { target: u64, p: u64 },
    #[error("character value {value} does not lie in Z_{target}")]
    OutsideTarget { value: QZ, target: u64 },
    #[error("the zero character classifies no cover")]
    ZeroCharacter,
    #[error("character has order {order}; expected {expected}")]
    WrongOrder { order: u64, expected: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FormError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    A,
    B,
}

/// One elementary piece `A_{p^t}` (`xy/p^t`) or `B_{p^t}` (`n·xy/p^t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Summand {
    pub exponent: u32,
    pub kind: Kind,
    /// `1` for `A`, the non-square unit `n` for `B`.
    pub unit: u64,
}

/// `(Z/p)^*` contains a non-square for every odd prime; this is the least.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&n| !is_square_mod(n, p)).expect("odd primes have non-residues")
}

fn is_square_mod(n: u64, p: u64) -> bool {
    (1..p).any(|x| (x * x) % p == n % p)
}

fn inverse_mod(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1, "{a} is not a unit mod {m}");
    e.x.rem_euclid(m)
}

/// A nonsingular symmetric linking form on a finite abelian `p`-group,
/// written as an orthogonal sum of elementary pieces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WallForm {
    p: u64,
    summands: Vec<Summand>,
    orders: Vec<u64>,
}

/// Orders beyond this would overflow the `i128` pairing arithmetic.
const MAX_ORDER: u64 = 1 << 31;

impl WallForm {
    pub fn new(p: u64, summands: Vec<Summand>) -> Result<WallForm> {
        if !is_odd_prime(p) {
            return Err(FormError::InvalidPrime(p));
        }
        let mut orders = Vec::with_capacity(summands.len());
        for (index, s) in summands.iter().enumerate() {
            if s.exponent == 0 {
                return Err(FormError::ZeroExponent { index });
            }
            let order = p.checked_pow(s.exponent).filter(|&o| o <= MAX_ORDER).ok_or(FormError::OrderTooLarge {
                index,
                p,
                t: s.exponent,
            })?;
            match s.kind {
                Kind::A if s.unit != 1 => return Err(FormError::Parse(format!("summand {index}: A-type has no unit"))),
                Kind::B if s.unit % p == 0 || is_square_mod(s.unit, p) => {
                    return Err(FormError::SquareUnit { index, unit: s.unit, p })
                }
                _ => {}
            }
            orders.push(order);
        }
        Ok(WallForm { p, summands, orders })
    }

    /// Every Wall form at `p` on a nontrivial group of order at most
    /// `max_order`: summands sorted by decreasing exponent, `A` before `B`
    /// at equal exponent, `B` with the default unit.
    pub fn enumerate(p: u64, max_order: u64) -> Result<Vec<WallForm>> {
        fn rec(p: u64, budget: u64, prev: Option<Summand>, acc: &mut Vec<Summand>, out: &mut Vec<Vec<Summand>>) {
            if !acc.is_empty() {
                out.push(acc.clone());
            }
            let mut t = 1;
            while p.pow(t) <= budget {
                for s in [Summand::a(t), Summand::b(p, t)] {
                    let allowed =
                        prev.is_none_or(|q| t < q.exponent || (t == q.exponent && s.kind as u8 >= q.kind as u8));
                    if allowed {
                        acc.push(s);
                        rec(p, budget / p.pow(t), Some(s), acc, out);
                        acc.pop();
                    }
                }
                t += 1;
            }
        }
        if !is_odd_prime(p) {
            return Err(FormError::InvalidPrime(p));
        }
        let mut shapes = Vec::new();
        rec(p, max_order, None, &mut Vec::new(), &mut shapes);
        shapes.into_iter().map(|s| WallForm::new(p, s)).collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn group_order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn element(&self, residues: &[i64]) -> Result<TorsionElement> {
        self.shape("residues", residues.len())?;
        Ok(TorsionElement {
            residues: residues.iter().zip(&self.orders).map(|(&x, &o)| x.rem_euclid(o as i64) as u64).collect(),
        })
    }

    pub fn zero(&self) -> TorsionElement {
        TorsionElement { residues: vec![0; self.summands.len()] }
    }

    /// Every element of the group, in lexicographic order of residues.
    pub fn elements(&self) -> impl Iterator<Item = TorsionElement> + '_ {
        let mut next = Some(self.zero());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            for i in (0..succ.residues.len()).rev() {
                succ.residues[i] += 1;
                if succ.residues[i] < self.orders[i] {
                    next = Some(succ);
                    break;
                }
                succ.residues[i] = 0;
            }
            Some(cur)
        })
    }

    fn shape(&self, what: &'static str, got: usize) -> Result<()> {
        if got != self.summands.len() {
            return Err(FormError::Shape { what, expected: self.summands.len(), got });
        }
        Ok(())
    }

    /// `b(x, y) = Σ_i n_i x_i y_i / p^{t_i}` in `Q/Z`.
    pub fn pair(&self, x: &TorsionElement, y: &TorsionElement) -> Result<QZ> {
        self.shape("residues", x.residues.len())?;
        self.shape("residues", y.residues.len())?;
        Ok(self.pair_unchecked(x, y))
    }

    fn pair_unchecked(&self, x: &TorsionElement, y: &TorsionElement) -> QZ {
        self.summands.iter().zip(&self.orders).enumerate().fold(QZ::ZERO, |acc, (i, (s, &o))| {
            let o = o as i128;
            let v = (s.unit as i128 * (x.residues[i] as i128 % o)) % o * (y.residues[i] as i128) % o;
            acc + QZ::new(v, o)
        })
    }

    /// The unique `c` with `b(c, ·) = χ` on the generators.
    pub fn dual_element(&self, chi: &[QZ]) -> Result<TorsionElement> {
        self.shape("torsion values", chi.len())?;
        let mut residues = Vec::with_capacity(chi.len());
        for (index, ((s, &order), v)) in self.summands.iter().zip(&self.orders).zip(chi).enumerate() {
            if !v.killed_by(order as i64) {
                return Err(FormError::IllDefined { index, value: *v, order });
            }
            let o = order as i128;
            let a = v.numer() as i128 * (o / v.denom() as i128);
            residues.push((a * inverse_mod(s.unit as i128, o)).rem_euclid(o) as u64);
        }
        Ok(TorsionElement { residues })
    }

    /// Additive order of `x`.
    pub fn element_order(&self, x: &TorsionElement) -> u64 {
        x.residues.iter().zip(&self.orders).map(|(&r, &o)| o / r.gcd(&o)).fold(1, |a, b| a.lcm(&b))
    }
}

impl Summand {
    pub fn a(t: u32) -> Summand {
        Summand { exponent: t, kind: Kind::A, unit: 1 }
    }

    /// `B_{p^t}` with the default unit, the least non-residue mod `p`.
    pub fn b(p: u64, t: u32) -> Summand {
        Summand { exponent: t, kind: Kind::B, unit: smallest_nonresidue(p) }
    }

    pub fn b_with_unit(t: u32, unit: u64) -> Summand {
        Summand { exponent: t, kind: Kind::B, unit }
    }
}

impl fmt::Display for WallForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .zip(&self.orders)
            .map(|(s, o)| match s.kind {
                Kind::A => format!("A{o}"),
                Kind::B => format!("B{o}[{}]", s.unit),
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl Serialize for WallForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An element of `T` in Wall coordinates, one residue per summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TorsionElement {
    residues: Vec<u64>,
}

impl TorsionElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for TorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `H_1 = Z^r ⊕ T` with the linking form on `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology1 {
    pub free_rank: usize,
    pub form: WallForm,
}

/// A class in `H_1`: integer free coordinates plus a torsion element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct H1Class {
    pub free: Vec<i64>,
    pub torsion: TorsionElement,
}

impl H1Class {
    pub fn torsion(t: TorsionElement, free_rank: usize) -> H1Class {
        H1Class { free: vec![0; free_rank], torsion: t }
    }
}

/// A character `H_1 → Z_k ⊂ Q/Z`, given by its values on the free basis
/// and on the summand generators. Values of a `Z_k`-valued character are
/// stored through `a ↦ a/k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    pub target: u64,
    pub free: Vec<QZ>,
    pub torsion: Vec<QZ>,
}

impl Character {
    /// Validates well-definedness on `h`; `target = None` takes the order of
    /// the character, i.e. the size of its image.
    pub fn new(h: &Homology1, target: Option<u64>, free: Vec<QZ>, torsion: Vec<QZ>) -> Result<Character> {
        if free.len() != h.free_rank {
            return Err(FormError::Shape { what: "free values", expected: h.free_rank, got: free.len() });
        }
        h.form.shape("torsion values", torsion.len())?;
        for (index, (v, &order)) in torsion.iter().zip(h.form.orders()).enumerate() {
            if !v.killed_by(order as i64) {
                return Err(FormError::IllDefined { index, value: *v, order });
            }
        }
        let order = free.iter().chain(&torsion).fold(1u64, |a, v| a.lcm(&(v.denom() as u64)));
        let target = target.unwrap_or(order);
        let p = h.form.p();
        if !is_power_of(target, p) {
            return Err(FormError::BadTarget { target, p });
        }
        if let Some(v) = free.iter().chain(&torsion).find(|v| !v.killed_by(target as i64)) {
            return Err(FormError::OutsideTarget { value: *v, target });
        }
        Ok(Character { target, free, torsion })
    }

    /// Size of the image, the least `k` with `kχ = 0`.
    pub fn order(&self) -> u64 {
        self.free.iter().chain(&self.torsion).fold(1u64, |a, v| a.lcm(&(v.denom() as u64)))
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn value(&self, c: &H1Class) -> QZ {
        let free = self.free.iter().zip(&c.free).fold(QZ::ZERO, |acc, (v, &x)| acc + *v * x);
        self.torsion.iter().zip(c.torsion.residues()).fold(free, |acc, (v, &x)| acc + *v * x as i64)
    }

    /// The value in `Z_k`, as an integer in `0..k`.
    pub fn value_in_target(&self, c: &H1Class) -> u64 {
        let v = self.value(c);
        (v.numer() as u64) * (self.target / v.denom() as u64)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl Homology1 {
    pub fn new(free_rank: usize, form: WallForm) -> Homology1 {
        Homology1 { free_rank, form }
    }

    fn check(&self, chi: &Character) -> Result<()> {
        if chi.free.len() != self.free_rank {
            return Err(FormError::Shape { what: "free values", expected: self.free_rank, got: chi.free.len() });
        }
        self.form.shape("torsion values", chi.torsion.len())
    }

    /// `β(χ)` transported to `T` by the linking form.
    pub fn bockstein(&self, chi: &Character) -> Result<TorsionElement> {
        self.check(chi)?;
        self.form.dual_element(&chi.torsion)
    }

    /// The cover classified by `χ` is simple iff `χ` lifts to an integral
    /// character, iff it kills the torsion.
    pub fn is_simple(&self, chi: &Character) -> Result<bool> {
        self.check(chi)?;
        Ok(chi.torsion.iter().all(QZ::is_zero))
    }

    /// Is `β(χ)` in the subgroup generated by `curves`? Decided by integer
    /// solvability of `Σ λ_j γ_j = (0, β(χ))` with the torsion coordinates
    /// read modulo the summand orders.
    #[allow(clippy::needless_range_loop)]
    pub fn complement_simple(&self, chi: &Character, curves: &[H1Class]) -> Result<bool> {
        let beta = self.bockstein(chi)?;
        for c in curves {
            if c.free.len() != self.free_rank {
                return Err(FormError::Shape { what: "free coordinates", expected: self.free_rank, got: c.free.len() });
            }
            self.form.shape("residues", c.torsion.residues().len())?;
        }
        if beta.is_zero() {
            return Ok(true);
        }
        if curves.is_empty() {
            return Ok(false);
        }
        let (r, s, m) = (self.free_rank, self.form.summands().len(), curves.len());
        // unknowns: λ_1..λ_m, then μ_1..μ_s absorbing multiples of the orders
        let mut mat = vec![vec![BigInt::from(0); m + s]; r + s];
        for (j, c) in curves.iter().enumerate() {
            for i in 0..r {
                mat[i][j] = c.free[i].into();
            }
            for i in 0..s {
                mat[r + i][j] = c.torsion.residues()[i].into();
            }
        }
        for (i, &o) in self.form.orders().iter().enumerate() {
            mat[r + i][m + i] = o.into();
        }
        let mut rhs = vec![BigInt::from(0); r + s];
        for (i, &b) in beta.residues().iter().enumerate() {
            rhs[r + i] = b.into();
        }
        Ok(smith_normal_form(&mat).solve(&rhs).is_some())
    }

    /// For `χ` of order `p`: one class per summand where `β(χ)` is nonzero,
    /// pairing with `β(χ)` to exactly `1/p`. Together they span `β(χ)`.
    pub fn scc_curves(&self, chi: &Character) -> Result<Vec<CurveChoice>> {
        self.check(chi)?;
        let p = self.form.p();
        if chi.is_zero() {
            return Err(FormError::ZeroCharacter);
        }
        if chi.order() != p {
            return Err(FormError::WrongOrder { order: chi.order(), expected: p });
        }
        self.curves_for(chi, p)
    }

    /// For `χ` onto `Z_{p²}`: classes pairing with `β(χ)` to `1/p²` where the
    /// projection has order `p²`, to `1/p` where it has order `p`.
    pub fn scc2_curves(&self, chi: &Character) -> Result<Vec<CurveChoice>> {
        self.check(chi)?;
        let p2 = self.form.p() * self.form.p();
        if chi.is_zero() {
            return Err(FormError::ZeroCharacter);
        }
        if chi.order() != p2 || chi.target != p2 {
            return Err(FormError::WrongOrder { order: chi.order(), expected: p2 });
        }
        self.curves_for(chi, p2)
    }

    fn curves_for(&self, chi: &Character, k: u64) -> Result<Vec<CurveChoice>> {
        let beta = self.bockstein(chi)?;
        let form = &self.form;
        let mut out = Vec::new();
        for (i, (&b, (s, &o))) in beta.residues().iter().zip(form.summands().iter().zip(form.orders())).enumerate() {
            if b == 0 {
                continue;
            }
            // β_i = (o/q)·w with q = ord(β_i), w a unit mod q
            let q = o / b.gcd(&o);
            let w = (b / (o / q)) as i128;
            let x = inverse_mod((s.unit as i128 * w).rem_euclid(q as i128), q as i128) as u64;
            let mut residues = vec![0; beta.residues().len()];
            residues[i] = x;
            let element = TorsionElement { residues };
            let pairing = form.pair_unchecked(&beta, &element);
            let class = H1Class::torsion(element.clone(), self.free_rank);
            let chi_value = Character { target: k, ..chi.clone() }.value_in_target(&class);
            out.push(CurveChoice { summand: i, element, pairing, chi_value });
        }
        Ok(out)
    }
}

/// One curve picked by `scc_curves` / `scc2_curves`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveChoice {
    pub summand: usize,
    pub element: TorsionElement,
    /// `b(β(χ), x)`.
    pub pairing: QZ,
    /// `χ(x)` in `Z_k`.
    pub chi_value: u64,
}

/// Parse helpers shared with the command line.
pub use parse::{parse_character, parse_class, parse_form};
