//! Integer points of a rational polytope given by vertices.
//!
//! For each prefix length `j` the projection onto the first `j` coordinates is
//! described by inequalities, so every fiber is an interval read off directly.
//! The walk never visits a prefix that has no continuation over the reals.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dd::polytope_hrep;
use crate::error::{Error, Result};
use crate::exec::Limits;

#[derive(Debug, Clone)]
struct Row {
    /// Coefficients of the prefix coordinates `z_0 .. z_{j−1}`.
    prefix: Vec<BigInt>,
    last: BigInt,
    constant: BigInt,
    equality: bool,
    fast: Option<(Vec<i128>, i128, i128)>,
}

impl Row {
    fn new(row: &[BigInt], j: usize, equality: bool) -> Self {
        let prefix = row[..j].to_vec();
        let last = row[j].clone();
        let constant = row[row.len() - 1].clone();
        let fast = (|| {
            let p: Option<Vec<i128>> = prefix.iter().map(|x| x.to_i128()).collect();
            Some((p?, last.to_i128()?, constant.to_i128()?))
        })();
        Row { prefix, last, constant, equality, fast }
    }

    /// `Σ prefix_i z_i + constant`.
    fn rest_fast(&self, z: &[i64]) -> Option<i128> {
        let (p, _, c) = self.fast.as_ref()?;
        let mut acc = *c;
        for (a, &x) in p.iter().zip(z) {
            acc = acc.checked_add(a.checked_mul(x as i128)?)?;
        }
        Some(acc)
    }

    fn rest_big(&self, z: &[i64]) -> BigInt {
        self.prefix.iter().zip(z).fold(self.constant.clone(), |acc, (a, &x)| acc + a * BigInt::from(x))
    }
}

#[derive(Debug, Clone)]
struct Level {
    rows: Vec<Row>,
}

enum Bound {
    Empty,
    Range(i64, i64),
}

impl Level {
    fn bounds(&self, z: &[i64]) -> Result<Bound> {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        let tighten_lo = |lo: &mut Option<BigInt>, v: BigInt| {
            if lo.as_ref().is_none_or(|l| v > *l) {
                *lo = Some(v);
            }
        };
        let tighten_hi = |hi: &mut Option<BigInt>, v: BigInt| {
            if hi.as_ref().is_none_or(|h| v < *h) {
                *hi = Some(v);
            }
        };
        for row in &self.rows {
            // last · z_j + rest ≥ 0 (or = 0)
            let (last, rest) = match (row.fast.as_ref(), row.rest_fast(z)) {
                (Some((_, l, _)), Some(r)) => (BigInt::from(*l), BigInt::from(r)),
                _ => (row.last.clone(), row.rest_big(z)),
            };
            let neg_rest = -rest;
            if row.equality {
                let (q, r) = neg_rest.div_rem(&last);
                if !r.is_zero() {
                    return Ok(Bound::Empty);
                }
                tighten_lo(&mut lo, q.clone());
                tighten_hi(&mut hi, q);
            } else if last.is_positive() {
                tighten_lo(&mut lo, neg_rest.div_ceil(&last));
            } else {
                // z_j ≤ rest / (−last)
                tighten_hi(&mut hi, (-neg_rest).div_floor(&(-last)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::Inconsistent("polytope projection is unbounded".into()));
        };
        if lo > hi {
            return Ok(Bound::Empty);
        }
        let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
            return Err(Error::Overflow("lattice coordinate range"));
        };
        Ok(Bound::Range(lo, hi))
    }
}

/// Integer points of the convex hull of finitely many rational points.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    dim: usize,
    levels: Vec<Level>,
    empty: bool,
}

impl LatticePolytope {
    pub fn from_vertices(vertices: &[Vec<BigRational>], dim: usize) -> Self {
        if vertices.is_empty() {
            return LatticePolytope { dim, levels: Vec::new(), empty: true };
        }
        let levels = (0..dim)
            .map(|j| {
                let proj: Vec<Vec<BigRational>> = vertices.iter().map(|v| v[..=j].to_vec()).collect();
                let h = polytope_hrep(&proj, j + 1);
                let rows = h
                    .inequalities
                    .iter()
                    .map(|r| (r, false))
                    .chain(h.equalities.iter().map(|r| (r, true)))
                    .filter(|(r, _)| !r[j].is_zero())
                    .map(|(r, eq)| Row::new(r, j, eq))
                    .collect();
                Level { rows }
            })
            .collect();
        LatticePolytope { dim, levels, empty: false }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Folds `visit` over every integer point. The top coordinate is split
    /// across workers and the partial accumulators are merged in increasing
    /// order of that coordinate, so the result is independent of scheduling.
    pub fn fold<A, I, V, M>(&self, limits: &Limits, init: I, visit: V, merge: M) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &[i64]) + Sync + Send,
        M: Fn(A, A) -> A,
    {
        let mut acc = init();
        if self.empty {
            return Ok(acc);
        }
        if self.dim == 0 {
            visit(&mut acc, &[]);
            return Ok(acc);
        }
        let counter = AtomicUsize::new(0);
        let stop = AtomicBool::new(false);
        let top = match self.levels[0].bounds(&[])? {
            Bound::Empty => return Ok(acc),
            Bound::Range(lo, hi) => (lo..=hi).collect::<Vec<i64>>(),
        };
        let parts = limits.exec.try_map(top, |z0| {
            let mut part = init();
            let mut z = vec![z0];
            self.walk(&mut z, &mut part, &visit, &counter, &stop, limits.guard)?;
            Ok::<A, Error>(part)
        })?;
        for p in parts {
            acc = merge(acc, p);
        }
        Ok(acc)
    }

    fn walk<A, V>(
        &self,
        z: &mut Vec<i64>,
        acc: &mut A,
        visit: &V,
        counter: &AtomicUsize,
        stop: &AtomicBool,
        guard: usize,
    ) -> Result<()>
    where
        V: Fn(&mut A, &[i64]),
    {
        if stop.load(Ordering::Relaxed) {
            return Err(Error::ResourceGuard(guard));
        }
        let j = z.len();
        if j == self.dim {
            if counter.fetch_add(1, Ordering::Relaxed) >= guard {
                stop.store(true, Ordering::Relaxed);
                return Err(Error::ResourceGuard(guard));
            }
            visit(acc, z);
            return Ok(());
        }
        if let Bound::Range(lo, hi) = self.levels[j].bounds(z)? {
            for x in lo..=hi {
                z.push(x);
                let r = self.walk(z, acc, visit, counter, stop, guard);
                z.pop();
                r?;
            }
        }
        Ok(())
    }

    pub fn points(&self, limits: &Limits) -> Result<Vec<Vec<i64>>> {
        self.fold(
            limits,
            Vec::new,
            |acc: &mut Vec<Vec<i64>>, z| acc.push(z.to_vec()),
            |mut a, b| {
                a.extend(b);
                a
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn triangle_points() {
        let v = vec![vec![rat(0, 1), rat(0, 1)], vec![rat(3, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]];
        let p = LatticePolytope::from_vertices(&v, 2);
        let pts = p.points(&Limits::default()).unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn flat_polytope_in_plane() {
        // segment from (1/2, 1/2) to (7/2, 7/2): integer points (1,1),(2,2),(3,3)
        let v = vec![vec![rat(1, 2), rat(1, 2)], vec![rat(7, 2), rat(7, 2)]];
        let pts = LatticePolytope::from_vertices(&v, 2).points(&Limits::default()).unwrap();
        assert_eq!(pts, vec![vec![1, 1], vec![2, 2], vec![3, 3]]);
        // segment on a line with no integer points
        let v = vec![vec![rat(0, 1), rat(1, 2)], vec![rat(3, 1), rat(1, 2)]];
        assert!(LatticePolytope::from_vertices(&v, 2).points(&Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn guard_trips() {
        let v = vec![vec![rat(0, 1), rat(0, 1)], vec![rat(100, 1), rat(0, 1)], vec![rat(0, 1), rat(100, 1)]];
        let p = LatticePolytope::from_vertices(&v, 2);
        let lim = Limits { guard: 50, ..Limits::default() };
        assert_eq!(p.points(&lim), Err(Error::ResourceGuard(50)));
    }
}
