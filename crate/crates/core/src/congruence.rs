//! Residue tests modulo `p·O_p`: is a value congruent to `κ^m·n`, the
//! valuation bound `⌈(p²-7p+12)/6⌉`, and the orbit-collapse congruence
//! `Σ_σ (Π a_{σ_i}) x_σ ≡ Σ_j a_j^p x_{jj…j}` for shift-invariant `x`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{is_odd_prime, CycError, CycInt, CycNum, ResidueClass};
use crate::skein::Level;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("value has a denominator 1/{p}^{k}; residues mod p are only defined on O_p")]
    NotIntegral { p: u64, k: u32 },
    #[error("value lives in Z[ζ{got}] but p = {p} needs Z[ζ{expected}]")]
    WrongRing { p: u64, expected: u64, got: u64 },
    #[error("{terms} colour sequences exceed the enumeration cap of {cap}")]
    TooLarge { terms: u128, cap: u64 },
    #[error("no orbit value for the necklace {0:?}")]
    MissingOrbit(Vec<usize>),
    #[error("at least one colour is required")]
    NoColours,
}

pub type Result<T> = std::result::Result<T, CongruenceError>;

/// Maximum number of colour sequences `orbit_congruence_check` enumerates.
pub const ORBIT_TERM_CAP: u64 = 10_000_000;

/// The residues of `n·κ^m` mod `p`, each with its lexicographically first
/// witness `(m, n)`, `0 <= m < ord(κ)`, `0 <= n < p`.
#[derive(Debug, Clone)]
pub struct KappaResidues {
    pub p: u64,
    pub kappa: CycInt,
    pub kappa_order: u32,
    pub residues: BTreeMap<ResidueClass, (u32, u64)>,
    pub candidates: usize,
}

impl KappaResidues {
    pub fn witness(&self, r: &ResidueClass) -> Option<(u32, u64)> {
        self.residues.get(r).copied()
    }
}

/// Multiplicative order of a root of unity, by iteration.
pub fn root_order(x: &CycInt) -> u32 {
    let mut acc = x.clone();
    let mut k = 1;
    while !acc.is_one() {
        acc = &acc * x;
        k += 1;
        assert!(k as u64 <= 4 * x.modulus(), "not a root of unity");
    }
    k
}

pub fn kappa_residues(p: u64) -> Result<KappaResidues> {
    let level = Level::new(p)?;
    let kappa = level.kappa().value;
    Ok(residue_table(p, &kappa))
}

fn residue_table(p: u64, generator: &CycInt) -> KappaResidues {
    let order = root_order(generator);
    let mut residues = BTreeMap::new();
    let mut power = CycInt::one(generator.modulus());
    for m in 0..order {
        for n in 0..p {
            let r = power.scale(&BigInt::from(n)).mod_p(p);
            residues.entry(r).or_insert((m, n));
        }
        power = &power * generator;
    }
    KappaResidues { p, kappa: generator.clone(), kappa_order: order, residues, candidates: (order as u64 * p) as usize }
}

/// Outcome of a residue-membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceVerdict {
    pub congruent: bool,
    /// `(m, n)` with `x ≡ n·g^m (mod p)`, `g` the tested generator.
    pub witness: Option<(u32, u64)>,
    pub candidates_checked: usize,
}

impl Serialize for CongruenceVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Witness {
            m: u32,
            n: u64,
        }
        let mut st = s.serialize_struct("CongruenceVerdict", 3)?;
        st.serialize_field("congruent", &self.congruent)?;
        st.serialize_field("witness", &self.witness.map(|(m, n)| Witness { m, n }))?;
        st.serialize_field("candidates_checked", &self.candidates_checked)?;
        st.end()
    }
}

fn integral_residue(x: &CycNum, p: u64) -> Result<ResidueClass> {
    let expected = crate::cyclotomic::ring_modulus(p)?;
    if x.modulus() != expected {
        return Err(CongruenceError::WrongRing { p, expected, got: x.modulus() });
    }
    let int = x.to_integral().ok_or(CongruenceError::NotIntegral { p: x.prime(), k: x.denominator_exponent() })?;
    Ok(int.mod_p(p))
}

fn verdict(table: &KappaResidues, r: &ResidueClass) -> CongruenceVerdict {
    let witness = table.witness(r);
    CongruenceVerdict { congruent: witness.is_some(), witness, candidates_checked: table.candidates }
}

/// Is `x ≡ n·κ^m (mod p·O_p)` for some `m, n`?
pub fn check_kappa_congruence(x: &CycNum, p: u64) -> Result<CongruenceVerdict> {
    let r = integral_residue(x, p)?;
    Ok(verdict(&kappa_residues(p)?, &r))
}

/// Is `x ≡ n·ζ_N^j (mod p·O_p)` for some `j, n`? This ignores the choice of
/// square root made for `κ`, so it cannot be flipped by a phase convention;
/// the witness is `(j, n)`.
pub fn check_root_of_unity_congruence(x: &CycNum, p: u64) -> Result<CongruenceVerdict> {
    let r = integral_residue(x, p)?;
    let zeta = CycInt::root(x.modulus(), 1);
    Ok(verdict(&residue_table(p, &zeta), &r))
}

/// `⌈(p² - 7p + 12)/6⌉`.
pub fn cm_bound(p: u64) -> u64 {
    let num = (p as i128 - 3) * (p as i128 - 4);
    num.max(0).div_euclid(6) as u64 + u64::from(num.max(0) % 6 != 0)
}

/// Lexicographically least rotation: the representative of a shift orbit.
pub fn necklace_rep(seq: &[usize]) -> Vec<usize> {
    (0..seq.len()).map(|r| [&seq[r..], &seq[..r]].concat()).min().unwrap_or_default()
}

/// All colour sequences of length `len` over `colours` colours, in
/// lexicographic order.
fn sequences(colours: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some(vec![0usize; len]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < colours {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    })
}

fn check_size(colours: usize, p: u64) -> Result<u64> {
    if colours == 0 {
        return Err(CongruenceError::NoColours);
    }
    let terms = (colours as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
    if terms > ORBIT_TERM_CAP as u128 {
        return Err(CongruenceError::TooLarge { terms, cap: ORBIT_TERM_CAP });
    }
    Ok(terms as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub p: u64,
    pub lhs: CycInt,
    pub rhs: CycInt,
    pub congruent: bool,
    pub sequences: u64,
    pub orbits: usize,
}

impl Serialize for OrbitReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrbitReport", 6)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("congruent", &self.congruent)?;
        st.serialize_field("sequences", &self.sequences)?;
        st.serialize_field("orbits", &self.orbits)?;
        st.end()
    }
}

/// Sum `Σ_σ (Π_i a_{σ_i}) x_σ` over every colour sequence `σ` of length
/// `p`, where `x_σ` is looked up by necklace representative, and compare
/// with the constant-sequence sum `Σ_j a_j^p x_{jj…j}` modulo `p`.
pub fn orbit_congruence_check(
    weights: &[CycInt],
    orbit_values: &BTreeMap<Vec<usize>, CycInt>,
    p: u64,
) -> Result<OrbitReport> {
    if !is_odd_prime(p) {
        return Err(CycError::InvalidPrime(p).into());
    }
    let sequences_total = check_size(weights.len(), p)?;
    let modulus = weights[0].modulus();
    if let Some(bad) = weights.iter().chain(orbit_values.values()).find(|w| w.modulus() != modulus) {
        return Err(CycError::ModulusMismatch { left: modulus, right: bad.modulus() }.into());
    }
    let lookup = |seq: &[usize]| {
        let rep = necklace_rep(seq);
        orbit_values.get(&rep).ok_or(CongruenceError::MissingOrbit(rep))
    };

    let mut lhs = CycInt::zero(modulus);
    for seq in sequences(weights.len(), p as usize) {
        let x = lookup(&seq)?;
        let prod = seq.iter().fold(x.clone(), |acc, &c| &acc * &weights[c]);
        lhs += &prod;
    }
    let mut rhs = CycInt::zero(modulus);
    for (j, a) in weights.iter().enumerate() {
        rhs += &(a.pow(p as u32) * lookup(&vec![j; p as usize])?);
    }
    let congruent = (&lhs - &rhs).mod_p(p).is_zero();
    Ok(OrbitReport { p, lhs, rhs, congruent, sequences: sequences_total, orbits: orbit_values.len() })
}

/// Weights and values per necklace representative.
pub type OrbitInstance = (Vec<CycInt>, BTreeMap<Vec<usize>, CycInt>);

/// A random instance: weights and per-necklace values in `Z[ζ_N]` with
/// coefficients in `-bound..=bound`, generated in a fixed order so a seeded
/// `rng` reproduces it exactly.
pub fn random_orbit_instance<R: Rng>(
    rng: &mut R,
    modulus: u64,
    p: u64,
    colours: usize,
    bound: i64,
) -> Result<OrbitInstance> {
    check_size(colours, p)?;
    let degree = crate::cyclotomic::Ring::get(modulus).degree();
    let sample = |rng: &mut R| {
        CycInt::from_coeffs(modulus, (0..degree).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
    };
    let weights = (0..colours).map(|_| sample(rng)).collect();
    let mut values = BTreeMap::new();
    for seq in sequences(colours, p as usize) {
        let rep = necklace_rep(&seq);
        if rep == seq {
            values.insert(rep, sample(rng));
        }
    }
    Ok((weights, values))
}
