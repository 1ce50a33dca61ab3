//! Small exact integer linear algebra: rational inverses, Smith normal form
//! and integer solvability of `M x = b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix stored row-major as nested vectors.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Inverse of a square integer matrix written as `adj / den` with `den > 0`
/// and `adj` integral. Returns `None` for singular input.
#[allow(clippy::needless_range_loop)]
pub fn rational_inverse(m: &[Vec<BigInt>]) -> Option<(IntMatrix, BigInt)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "rational_inverse needs a square matrix");
            let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..2 * n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }

    let mut den = BigInt::one();
    for row in &a {
        for v in &row[n..] {
            den = den.lcm(v.denom());
        }
    }
    let adj = a.iter().map(|row| row[n..].iter().map(|v| v.numer() * (&den / v.denom())).collect()).collect();
    Some((adj, den))
}

/// `left · m · right = diag(diagonal)` with unimodular `left`, `right`.
/// Nonzero diagonal entries are positive and form a divisibility chain.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Integer solution of `m x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let ub: Vec<BigInt> = self.left.iter().map(|row| row.iter().zip(b).map(|(u, v)| u * v).sum()).collect();
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, v) in ub.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(d) if !d.is_zero() => {
                    let (q, r) = v.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    y[i] = q;
                }
                _ => {
                    if !v.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(self.right.iter().map(|row| row.iter().zip(&y).map(|(v, w)| v * w).sum()).collect())
    }
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: IntMatrix = m.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    let row_axpy = |a: &mut IntMatrix, dst: usize, src: usize, f: &BigInt| {
        for c in 0..a[0].len() {
            let delta = f * &a[src][c];
            a[dst][c] += delta;
        }
    };
    let col_axpy = |a: &mut IntMatrix, dst: usize, src: usize, f: &BigInt| {
        for row in a.iter_mut() {
            let delta = f * &row[src];
            row[dst] += delta;
        }
    };
    let swap_cols = |a: &mut IntMatrix, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };

    for t in 0..rows.min(cols) {
        'pivot: loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            a.swap(t, bi);
            left.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut right, t, bj);

            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = -a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut left, i, t, &q);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = -a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut right, j, t, &q);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    row_axpy(&mut a, t, i, &one);
                    row_axpy(&mut left, t, i, &one);
                }
                None => break 'pivot,
            }
        }
        if a[t][t].is_negative() {
            for v in a[t].iter_mut() {
                *v = -&*v;
            }
            for v in left[t].iter_mut() {
                *v = -&*v;
            }
        }
    }

    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    Smith { diagonal, left, right, rows, cols }
}
