//! Integer row reduction: Hermite normal form with a unimodular transform, and
//! Smith invariant factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Result of [`row_hnf`]: `transform · input = form`.
#[derive(Debug, Clone)]
pub struct RowHnf {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    /// Column index of the pivot of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl RowHnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn row_negate(m: &mut IntMatrix, i: usize) {
    for x in m[i].iter_mut() {
        *x = -&*x;
    }
}

/// Row-style Hermite normal form over `Z`.
///
/// Nonzero rows come first, pivots are positive and strictly increasing, and
/// entries above each pivot are reduced into `[0, pivot)`. The form is unique
/// for the row lattice, so it doubles as a canonical basis.
pub fn row_hnf(input: &IntMatrix) -> RowHnf {
    let rows = input.len();
    let cols = input.first().map_or(0, Vec::len);
    let mut a = input.clone();
    let mut u = identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below row r in column c
            let best = (r..rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)));
            let Some(best) = best else { break };
            a.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            row_negate(&mut a, r);
            row_negate(&mut u, r);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            row_axpy(&mut a, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    RowHnf { form: a, transform: u, pivots }
}

/// Smith invariant factors (the nonzero diagonal of the Smith form), each
/// dividing the next.
pub fn smith_invariants(input: &IntMatrix) -> Vec<BigInt> {
    let mut a = input.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            row_axpy(&mut a, i, t, &q);
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the whole trailing block
        let mut fixed = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !a[i][j].is_multiple_of(&a[t][t]) {
                    let src = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&src) {
                        *x += y;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let k = b.len();
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn hnf_transform_is_consistent() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = row_hnf(&a);
        assert_eq!(mul(&h.transform, &a), h.form);
        assert_eq!(h.rank(), 3);
        assert_eq!(h.form[0][0], BigInt::from(2));
        for (r, &c) in h.pivots.iter().enumerate() {
            assert!(h.form[r][c] > BigInt::zero());
            for i in 0..r {
                assert!(h.form[i][c] >= BigInt::zero() && h.form[i][c] < h.form[r][c]);
            }
        }
    }

    #[test]
    fn smith_examples() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_invariants(&a);
        assert_eq!(s, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(smith_invariants(&m(&[&[2, -1]])), vec![BigInt::one()]);
        assert_eq!(smith_invariants(&m(&[&[0, 0]])), Vec::<BigInt>::new());
    }
}
