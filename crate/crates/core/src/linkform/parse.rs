//! Literal syntax: forms `"A25+A5+B5[2]"`, characters
//! `"free:0,0;tors:1/5,0,2/5"` (optionally `"k:25;…"`), classes
//! `"free:1,0;tors:5,0"`.

use super::{Character, FormError, H1Class, Homology1, Kind, Result, Summand, WallForm, QZ};

fn err(msg: impl Into<String>) -> FormError {
    FormError::Parse(msg.into())
}

/// `n = p^t` for an odd prime `p`, or `None`.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut m, mut t) = (n, 0);
    while m % p == 0 {
        m /= p;
        t += 1;
    }
    (m == 1 && p % 2 == 1).then_some((p, t))
}

/// Parse a form literal. An empty literal (or `"0"`) is the form on the
/// trivial group and needs `prime`; otherwise `prime`, if given, must agree
/// with the summand orders.
pub fn parse_form(s: &str, prime: Option<u64>) -> Result<WallForm> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        let p = prime.ok_or_else(|| err("the trivial form needs an explicit prime"))?;
        return WallForm::new(p, Vec::new());
    }
    let mut p = prime;
    let mut summands = Vec::new();
    for tok in s.split('+').map(str::trim) {
        let kind = match tok.chars().next() {
            Some('A') => Kind::A,
            Some('B') => Kind::B,
            _ => return Err(err(format!("summand {tok:?} must start with A or B"))),
        };
        let body = &tok[1..];
        let (order, unit) = match body.split_once('[') {
            Some((o, u)) => {
                let u = u.strip_suffix(']').ok_or_else(|| err(format!("unclosed unit in {tok:?}")))?;
                (o, Some(u.trim().parse::<u64>().map_err(|_| err(format!("bad unit in {tok:?}")))?))
            }
            None => (body, None),
        };
        let order: u64 = order.trim().parse().map_err(|_| err(format!("bad order in {tok:?}")))?;
        let (q, t) = prime_power(order).ok_or_else(|| err(format!("{order} is not a power of an odd prime")))?;
        match p {
            Some(p) if p != q => return Err(err(format!("{tok:?} is not {p}-primary"))),
            _ => p = Some(q),
        }
        summands.push(match (kind, unit) {
            (Kind::A, None) => Summand::a(t),
            (Kind::A, Some(_)) => return Err(err(format!("A-type summand {tok:?} takes no unit"))),
            (Kind::B, None) => Summand::b(q, t),
            (Kind::B, Some(u)) => Summand::b_with_unit(t, u),
        });
    }
    WallForm::new(p.expect("at least one summand"), summands)
}

fn sections(s: &str) -> Result<Vec<(&str, &str)>> {
    s.split(';')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.split_once(':')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected key:values, got {part:?}")))
        })
        .collect()
}

fn list<T>(v: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|x| f(x.trim())).collect()
}

/// Parse a character on `h`; missing sections default to all zeros.
pub fn parse_character(h: &Homology1, s: &str) -> Result<Character> {
    let qz = |x: &str| x.parse::<QZ>().map_err(err);
    let mut free = vec![QZ::ZERO; h.free_rank];
    let mut tors = vec![QZ::ZERO; h.form.summands().len()];
    let mut target = None;
    for (key, val) in sections(s)? {
        match key {
            "free" => free = list(val, qz)?,
            "tors" => tors = list(val, qz)?,
            "k" => target = Some(val.parse::<u64>().map_err(|_| err(format!("bad target {val:?}")))?),
            other => return Err(err(format!("unknown character section {other:?}"))),
        }
    }
    Character::new(h, target, free, tors)
}

/// Parse a class of `H_1`; missing sections default to zeros.
pub fn parse_class(h: &Homology1, s: &str) -> Result<H1Class> {
    let int = |x: &str| x.parse::<i64>().map_err(|_| err(format!("bad integer {x:?}")));
    let mut free = vec![0; h.free_rank];
    let mut tors = vec![0; h.form.summands().len()];
    for (key, val) in sections(s)? {
        match key {
            "free" => free = list(val, int)?,
            "tors" => tors = list(val, int)?,
            other => return Err(err(format!("unknown class section {other:?}"))),
        }
    }
    if free.len() != h.free_rank {
        return Err(FormError::Shape { what: "free coordinates", expected: h.free_rank, got: free.len() });
    }
    Ok(H1Class { free, torsion: h.form.element(&tors)? })
}
