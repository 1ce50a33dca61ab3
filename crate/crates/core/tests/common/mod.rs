//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use so3cover::skein::Level;
use so3cover::CycInt;

/// A crossing `X[a, b, c, d]`: `a` is the incoming under-strand and the
/// labels run counterclockwise.
#[derive(Debug, Clone, Copy)]
pub struct Crossing(pub [usize; 4]);

/// A planar diagram: crossings plus crossingless arcs joining two labels.
#[derive(Debug, Default)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<(usize, usize)>,
    labels: usize,
}

impl Diagram {
    fn fresh(&mut self) -> usize {
        self.labels += 1;
        self.labels - 1
    }

    /// Closure of the positive braid word `word` (generator indices from 0)
    /// on `strands` strands, with `kinks[i]` positive curls inserted on the
    /// strand starting at position `i`.
    pub fn braid_closure(strands: usize, word: &[usize], kinks: &[usize]) -> Diagram {
        let mut d = Diagram::default();
        let start: Vec<usize> = (0..strands).map(|_| d.fresh()).collect();
        let mut cur = start.clone();
        for (pos, &k) in kinks.iter().enumerate() {
            for _ in 0..k {
                // the under-strand enters, the loop label appears twice, the
                // over-strand leaves: X[in, out, loop, loop]
                let (l, out) = (d.fresh(), d.fresh());
                d.crossings.push(Crossing([cur[pos], out, l, l]));
                cur[pos] = out;
            }
        }
        for &i in word {
            // positive σ_i, braid read upwards: the strand at i passes over
            // to i+1; the under-strand runs bottom-right to top-left
            let (bl, br) = (cur[i], cur[i + 1]);
            let (tl, tr) = (d.fresh(), d.fresh());
            d.crossings.push(Crossing([br, tr, tl, bl]));
            cur[i] = tl;
            cur[i + 1] = tr;
        }
        for (s, e) in start.into_iter().zip(cur) {
            d.arcs.push((e, s));
        }
        d
    }

    /// The `n`-component positive Hopf link, each component framed `+1`:
    /// closure of the full twist with one curl per strand.
    pub fn hopf(n: usize) -> Diagram {
        let word: Vec<usize> = (0..n).flat_map(|_| 0..n.saturating_sub(1)).collect();
        Diagram::braid_closure(n, &word, &vec![1; n])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Laurent polynomial in `A` as exponent → coefficient.
pub type Laurent = BTreeMap<i64, i64>;

fn laurent_mul(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&e1, &c1) in x {
        for (&e2, &c2) in y {
            *out.entry(e1 + e2).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Unnormalised Kauffman bracket by summing over all `2^c` states:
/// `Σ_s A^{#A - #B} δ^{loops(s)}`, `δ = -A² - A^{-2}`.
pub fn state_sum(d: &Diagram) -> Laurent {
    let c = d.crossings.len();
    assert!(c < 24, "too many crossings for brute force");
    // (A-count minus B-count, loops) -> number of states
    let mut tally: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for mask in 0u32..(1 << c) {
        let mut parent: Vec<usize> = (0..d.labels).collect();
        let join = |a: usize, b: usize, parent: &mut Vec<usize>| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            parent[ra] = rb;
        };
        let mut balance = 0i64;
        for (i, Crossing([a, b, cc, dd])) in d.crossings.iter().enumerate() {
            if mask >> i & 1 == 0 {
                balance += 1;
                join(*a, *b, &mut parent);
                join(*cc, *dd, &mut parent);
            } else {
                balance -= 1;
                join(*a, *dd, &mut parent);
                join(*b, *cc, &mut parent);
            }
        }
        for &(x, y) in &d.arcs {
            join(x, y, &mut parent);
        }
        let loops = (0..d.labels).filter(|&x| find(&mut parent, x) == x).count();
        *tally.entry((balance, loops)).or_insert(0) += 1;
    }
    let delta: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let mut out = Laurent::new();
    for ((balance, loops), count) in tally {
        let mut term: Laurent = [(balance, count)].into_iter().collect();
        for _ in 0..loops {
            term = laurent_mul(&term, &delta);
        }
        for (e, c) in term {
            *out.entry(e).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn laurent_in_ring(level: Level, x: &Laurent) -> CycInt {
    x.iter().fold(level.int(0), |acc, (&e, &c)| acc + level.a_pow(e).scale(&c.into()))
}

/// `H_n` evaluated straight from the Lickorish-style sum, dividing by
/// `A² - A^{-2}` as Laurent polynomials over the integers.
pub fn hopf_by_formula(n: usize) -> Laurent {
    if n == 0 {
        return [(0, 1)].into_iter().collect();
    }
    let n = n as i64;
    let mut num = Laurent::new();
    let mut binom = 1i64;
    for r in 0..n {
        let m = n - 2 * r + 1;
        for (e, c) in [(m * m - 1 + 2 * m, binom), (m * m - 1 - 2 * m, -binom)] {
            *num.entry(e).or_insert(0) += c;
        }
        binom = binom * (n - 1 - r) / (r + 1);
    }
    num.retain(|_, c| *c != 0);
    // long division by A² - A^{-2}, from the top exponent down
    let mut q = Laurent::new();
    while let Some((&top, &c)) = num.iter().next_back() {
        let shift = top - 2;
        q.insert(shift, c);
        for (e, d) in [(shift + 2, c), (shift - 2, -c)] {
            *num.entry(e).or_insert(0) -= d;
        }
        num.retain(|_, c| *c != 0);
        assert!(q.len() < 10_000, "division did not terminate");
    }
    q
}
