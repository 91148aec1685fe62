//! Double description: facets of a finitely generated cone, and H-descriptions
//! of polytopes given by points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{dot, lcm_of_denominators};
use crate::lattice::hnf::IntMatrix;
use crate::linalg::{self, RatMatrix};

/// `{x : f·x ≥ 0 for every inequality, e·x = 0 for every equality}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeHrep {
    pub inequalities: IntMatrix,
    pub equalities: IntMatrix,
    /// Dimension of the cone (rank of the generators).
    pub dim: usize,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    z: Vec<BigRational>,
    tight: Bits,
}

fn normalize(z: Vec<BigRational>) -> Vec<BigRational> {
    let p = linalg::primitive(&z);
    p.into_iter().map(BigRational::from_integer).collect()
}

/// Extreme rays of the pointed cone `{z : B z ≥ 0}` where `B` has full column
/// rank.
fn extreme_rays(b: &RatMatrix, k: usize) -> Vec<Vec<BigRational>> {
    let m = b.len();
    // greedy choice of k independent rows for the initial simplicial cone
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: RatMatrix = Vec::new();
    for (i, row) in b.iter().enumerate() {
        acc.push(row.clone());
        if linalg::rank(&acc) > chosen.len() {
            chosen.push(i);
        } else {
            acc.pop();
        }
        if chosen.len() == k {
            break;
        }
    }
    debug_assert_eq!(chosen.len(), k);
    let mut rays: Vec<Ray> = Vec::with_capacity(k);
    for j in 0..k {
        // column j of the inverse of the chosen block
        let rhs: Vec<BigRational> =
            (0..k).map(|i| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
        let sub: RatMatrix = chosen.iter().map(|&i| b[i].clone()).collect();
        let z = linalg::solve(&sub, &rhs).expect("independent rows");
        let mut tight = Bits::new(m);
        for (t, &i) in chosen.iter().enumerate() {
            if t != j {
                tight.set(i);
            }
        }
        rays.push(Ray { z: normalize(z), tight });
    }
    for (i, row) in b.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<BigRational> = rays.iter().map(|r| dot(row, &r.z)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&t| vals[t].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&t| vals[t].is_negative()).collect();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                if k >= 2 && common.count() < k - 2 {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, r)| t == p || t == q || !common.subset_of(&r.tight));
                if !adjacent {
                    continue;
                }
                let z: Vec<BigRational> = rays[q]
                    .z
                    .iter()
                    .zip(&rays[p].z)
                    .map(|(zq, zp)| &vals[p] * zq - &vals[q] * zp)
                    .collect();
                let mut tight = common;
                tight.set(i);
                fresh.push(Ray { z: normalize(z), tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (t, mut r) in rays.into_iter().enumerate() {
            if vals[t].is_negative() {
                continue;
            }
            if vals[t].is_zero() {
                r.tight.set(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }
    rays.into_iter().map(|r| r.z).collect()
}

/// Facets and equalities of the cone generated by the rows of `generators`
/// (each of length `d`). An empty generator list gives the zero cone.
pub fn cone_hrep(generators: &[Vec<BigRational>], d: usize) -> ConeHrep {
    let gens: RatMatrix = generators.iter().filter(|g| !linalg::is_zero_vec(g)).cloned().collect();
    let equalities: IntMatrix = if gens.is_empty() {
        (0..d).map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        linalg::nullspace(&gens, d).iter().map(|v| linalg::primitive(v)).collect()
    };
    if gens.is_empty() {
        return ConeHrep { inequalities: Vec::new(), equalities, dim: 0 };
    }
    let (r, pivots) = linalg::rref(&gens);
    let k = pivots.len();
    let w: RatMatrix = r[..k].to_vec();
    let b: RatMatrix = gens.iter().map(|g| w.iter().map(|wj| dot(g, wj)).collect()).collect();
    let mut inequalities: IntMatrix = extreme_rays(&b, k)
        .into_iter()
        .map(|z| {
            let mut y = vec![BigRational::zero(); d];
            for (zj, wj) in z.iter().zip(&w) {
                for (yi, wi) in y.iter_mut().zip(wj) {
                    *yi += zj * wi;
                }
            }
            linalg::primitive(&y)
        })
        .collect();
    inequalities.sort();
    inequalities.dedup();
    ConeHrep { inequalities, equalities, dim: k }
}

pub fn cone_hrep_int(generators: &[Vec<BigInt>], d: usize) -> ConeHrep {
    cone_hrep(&linalg::to_rat_matrix(generators), d)
}

/// `{x : f·x + f0 ≥ 0, e·x + e0 = 0}` with integer rows `(f, f0)`, `(e, e0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeHrep {
    pub inequalities: IntMatrix,
    pub equalities: IntMatrix,
    pub dim: usize,
}

impl PolytopeHrep {
    pub fn contains(&self, x: &[BigRational]) -> bool {
        let eval = |row: &Vec<BigInt>| {
            let (f, f0) = row.split_at(row.len() - 1);
            linalg::dot_mixed(f, x) + BigRational::from_integer(f0[0].clone())
        };
        self.inequalities.iter().all(|r| !eval(r).is_negative()) && self.equalities.iter().all(|r| eval(r).is_zero())
    }
}

/// H-description of the convex hull of nonempty `points` in `Q^d`.
pub fn polytope_hrep(points: &[Vec<BigRational>], d: usize) -> PolytopeHrep {
    let lifted: RatMatrix = points
        .iter()
        .map(|p| {
            let l = BigRational::from_integer(lcm_of_denominators(p.iter()));
            let mut v: Vec<BigRational> = p.iter().map(|x| x * &l).collect();
            v.push(l);
            v
        })
        .collect();
    let h = cone_hrep(&lifted, d + 1);
    PolytopeHrep { inequalities: h.inequalities, equalities: h.equalities, dim: h.dim.saturating_sub(1) }
}

/// Vertices of the bounded polytope `{z ∈ Q^k : g z ≥ h}`, where `g` has rank
/// `k`. Empty when the system is infeasible.
pub fn polytope_vertices(g: &[Vec<BigRational>], h: &[BigRational], k: usize) -> Vec<Vec<BigRational>> {
    let mut b: RatMatrix = g
        .iter()
        .zip(h)
        .map(|(row, hi)| {
            let mut r = row.clone();
            r.push(-hi.clone());
            r
        })
        .collect();
    let mut t = vec![BigRational::zero(); k + 1];
    t[k] = BigRational::one();
    b.push(t);
    extreme_rays(&b, k + 1)
        .into_iter()
        .filter(|r| r[k].is_positive())
        .map(|r| r[..k].iter().map(|x| x / &r[k]).collect())
        .collect()
}
