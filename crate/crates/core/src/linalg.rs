//! Dense Gaussian elimination over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn to_rat_matrix(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &[Vec<BigRational>]) -> (RatMatrix, Vec<usize>) {
    let mut a: RatMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<BigRational>], cols: usize) -> RatMatrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r[i][f].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: RatMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[i][cols].clone();
    }
    Some(x)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// `a · b` for an integer row and a rational vector.
pub fn dot_mixed(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + y * BigRational::from_integer(x.clone()))
}

pub fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn nullspace_and_solve() {
        let m = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 1), rat(4, 1), rat(6, 1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in &m {
                assert!(crate::arith::rational::dot(row, x).is_zero());
            }
        }
        assert!(solve(&m, &[rat(1, 1), rat(3, 1)]).is_none());
        let x = solve(&m, &[rat(1, 2), rat(1, 1)]).unwrap();
        assert_eq!(crate::arith::rational::dot(&m[0], &x), rat(1, 2));
        assert_eq!(primitive(&[rat(2, 3), rat(-4, 9)]), vec![BigInt::from(3), BigInt::from(-2)]);
    }
}
