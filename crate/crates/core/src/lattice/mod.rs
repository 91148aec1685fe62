//! Integer linear algebra attached to a configuration `A ⊂ Z^n`: the relation
//! lattice `L`, the group `ZA`, negative supports and bounded enumeration of
//! `L_v`.

pub mod hnf;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::linalg;
use hnf::{row_hnf, smith_invariants, IntMatrix};

/// A finite list of integer vectors `a_1, …, a_N` in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    columns: IntMatrix,
    homogeneity: Option<Vec<BigRational>>,
}

impl Configuration {
    /// Pairwise distinct columns, as the theory assumes.
    pub fn new(columns: IntMatrix) -> Result<Self> {
        let cfg = Self::multiset(columns)?;
        for i in 0..cfg.len() {
            for j in 0..i {
                if cfg.columns[i] == cfg.columns[j] {
                    return Err(Error::InvalidConfiguration(format!(
                        "columns {} and {} coincide",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(cfg)
    }

    /// Like [`Configuration::new`] but allows repeated columns. Repeats are
    /// harmless for every computation here and appear in classical examples
    /// such as the binomial series with `A = {1, 1}`.
    pub fn multiset(columns: IntMatrix) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::InvalidConfiguration("no columns".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidConfiguration("ambient dimension is zero".into()));
        }
        if let Some(i) = columns.iter().position(|c| c.len() != n) {
            return Err(Error::InvalidConfiguration(format!(
                "column {} has length {}, expected {n}",
                i + 1,
                columns[i].len()
            )));
        }
        Ok(Configuration { columns, homogeneity: None })
    }

    pub fn from_i64(columns: &[&[i64]]) -> Result<Self> {
        Self::new(columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn multiset_from_i64(columns: &[&[i64]]) -> Result<Self> {
        Self::multiset(columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Attaches a linear form `h` with `h(a_i) = 1` for every column.
    pub fn with_homogeneity(mut self, h: Vec<BigRational>) -> Result<Self> {
        if h.len() != self.dim() {
            return Err(Error::InvalidConfiguration("homogeneity form has the wrong length".into()));
        }
        for (i, a) in self.columns.iter().enumerate() {
            if linalg::dot_mixed(a, &h) != BigRational::one() {
                return Err(Error::InvalidConfiguration(format!(
                    "homogeneity form does not take the value 1 on column {}",
                    i + 1
                )));
            }
        }
        self.homogeneity = Some(h);
        Ok(self)
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.columns[0].len()
    }

    /// Number of columns `N`.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &IntMatrix {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[BigInt] {
        &self.columns[i]
    }

    pub fn homogeneity(&self) -> Option<&[BigRational]> {
        self.homogeneity.as_deref()
    }

    /// A linear form taking the value 1 on every column, if one exists. The
    /// attached form is returned when present.
    pub fn find_homogeneity(&self) -> Option<Vec<BigRational>> {
        if let Some(h) = &self.homogeneity {
            return Some(h.clone());
        }
        let m = linalg::to_rat_matrix(&self.columns);
        linalg::solve(&m, &vec![BigRational::one(); self.len()])
    }

    pub fn is_nonconfluent(&self) -> bool {
        self.find_homogeneity().is_some()
    }

    /// `Σ v_i a_i`.
    pub fn combine(&self, v: &[BigRational]) -> Vec<BigRational> {
        crate::arith::rational::combine_columns(&self.columns, v)
    }

    pub fn combine_int(&self, l: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (a, c) in self.columns.iter().zip(l) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += c * x;
            }
        }
        out
    }

    pub fn is_relation(&self, l: &[BigInt]) -> bool {
        l.len() == self.len() && self.combine_int(l).iter().all(Zero::is_zero)
    }

    pub(crate) fn check_len(&self, v: &[BigRational]) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "vector has {} entries but the configuration has {} columns",
                v.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// Keeps the columns selected by `keep`, preserving order and repeats.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        Self::multiset(keep.iter().map(|&i| self.columns[i].clone()).collect())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "{{{}}}", cols.join(", "))
    }
}

/// A Z-basis of the relation lattice `L = {l ∈ Z^N : Σ l_i a_i = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: IntMatrix,
    pub ambient: usize,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// `Σ coeffs[j] · basis[j]`.
    pub fn combine(&self, coeffs: &[i64]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (b, &c) in self.vectors.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            for (o, x) in out.iter_mut().zip(b) {
                *o += &c * x;
            }
        }
        out
    }

    /// Whether both bases generate the same lattice (compares canonical forms).
    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        self.ambient == other.ambient && canonical_rows(&self.vectors) == canonical_rows(&other.vectors)
    }

    /// Whether `Z^N / L` is torsion free, checked via Smith invariants.
    pub fn is_saturated(&self) -> bool {
        smith_invariants(&self.vectors).iter().all(One::is_one)
    }
}

fn canonical_rows(rows: &IntMatrix) -> IntMatrix {
    let h = row_hnf(rows);
    h.form.into_iter().take(h.pivots.len()).collect()
}

/// A Z-basis of the relation lattice, in Hermite normal form.
pub fn kernel_basis(cfg: &Configuration) -> LatticeBasis {
    let h = row_hnf(cfg.columns());
    let kernel: IntMatrix = h.transform[h.rank()..].to_vec();
    let vectors = if kernel.is_empty() { kernel } else { canonical_rows(&kernel) };
    LatticeBasis { vectors, ambient: cfg.len() }
}

/// The group `ZA ⊆ Z^n`, stored as an echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupZA {
    pub basis: IntMatrix,
    pivots: Vec<usize>,
    dim: usize,
}

impl GroupZA {
    /// `Z^n` itself.
    pub fn standard(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        GroupZA { basis, pivots: (0..n).collect(), dim: n }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `x` in the basis over `Q`, if `x` lies in the span.
    pub fn rational_coordinates(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut rem = x.to_vec();
        let mut z = Vec::with_capacity(self.rank());
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let coef = &rem[c] / BigRational::from_integer(row[c].clone());
            if !coef.is_zero() {
                for (r, a) in rem.iter_mut().zip(row) {
                    *r -= &coef * BigRational::from_integer(a.clone());
                }
            }
            z.push(coef);
        }
        linalg::is_zero_vec(&rem).then_some(z)
    }

    /// Integer coordinates of `x`, if `x ∈ ZA`.
    pub fn coordinates(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        let z = self.rational_coordinates(x)?;
        z.iter().all(|q| q.is_integer()).then(|| z.iter().map(|q| q.to_integer()).collect())
    }

    pub fn member(&self, x: &[BigRational]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn member_int(&self, x: &[BigInt]) -> bool {
        self.member(&crate::arith::rational::to_rationals(x))
    }

    /// Whether `x − y ∈ ZA`.
    pub fn same_coset(&self, x: &[BigRational], y: &[BigRational]) -> bool {
        let d: Vec<BigRational> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.member(&d)
    }

    /// `Σ z_j g_j` over the basis rows.
    pub fn point(&self, z: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim];
        for (row, c) in self.basis.iter().zip(z) {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += c * BigRational::from_integer(a.clone());
            }
        }
        out
    }
}

pub fn group_za(cfg: &Configuration) -> GroupZA {
    let h = row_hnf(cfg.columns());
    let rank = h.rank();
    GroupZA { basis: h.form[..rank].to_vec(), pivots: h.pivots, dim: cfg.dim() }
}

/// Indices `i` (0-based) with `v_i` a negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportProfile {
    pub indices: BTreeSet<usize>,
}

impl SupportProfile {
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn is_proper_subset(&self, other: &SupportProfile) -> bool {
        self.indices.len() < other.indices.len() && self.indices.is_subset(&other.indices)
    }
}

pub fn is_negative_integer(q: &BigRational) -> bool {
    q.is_integer() && q.is_negative()
}

pub fn nsupp(v: &[BigRational]) -> SupportProfile {
    SupportProfile { indices: v.iter().enumerate().filter(|(_, q)| is_negative_integer(q)).map(|(i, _)| i).collect() }
}

pub fn shifted(v: &[BigRational], l: &[BigInt]) -> Vec<BigRational> {
    v.iter().zip(l).map(|(x, y)| x + BigRational::from_integer(y.clone())).collect()
}

pub fn in_lv(v: &[BigRational], l: &[BigInt]) -> bool {
    nsupp(&shifted(v, l)) == nsupp(v)
}

/// One element of `L_v` with its coordinates in the kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LvPoint {
    pub coeffs: Vec<i64>,
    pub l: Vec<BigInt>,
}

/// All coefficient vectors in `[−radius, radius]^k`, ordered by max-norm and
/// then lexicographically.
pub fn graded_box(k: usize, radius: u64, guard: usize) -> Result<Vec<Vec<i64>>> {
    let side = 2 * radius + 1;
    let total = (side as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > guard as u128 {
        return Err(Error::ResourceGuard(guard));
    }
    let r = radius as i64;
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![-r; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_by_key(|c| c.iter().map(|x| x.abs()).max().unwrap_or(0));
                return Ok(out);
            }
            i -= 1;
            if cur[i] < r {
                cur[i] += 1;
                break;
            }
            cur[i] = -r;
        }
    }
}

/// Elements of `L_v` whose kernel-basis coordinates lie in the box of the given
/// radius, in graded lexicographic order of the coordinates.
pub fn enumerate_lv(
    basis: &LatticeBasis,
    v: &[BigRational],
    radius: u64,
    limits: &Limits,
) -> Result<Vec<LvPoint>> {
    let target = nsupp(v);
    let boxed = graded_box(basis.rank(), radius, limits.guard)?;
    let found = limits.exec.map(boxed, |coeffs| {
        let l = basis.combine(&coeffs);
        (nsupp(&shifted(v, &l)) == target).then_some(LvPoint { coeffs, l })
    });
    Ok(found.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minimality {
    /// No relation can shrink the negative support (proved by an infeasible
    /// real relaxation).
    Minimal,
    NotMinimal { witness: Vec<BigInt> },
    /// No shrinking relation in the searched box, but the relaxation did not
    /// rule one out.
    MinimalWithinBound { radius: u64 },
}

/// Decides whether `v` has minimal negative support, exactly when the real
/// relaxation settles it and relative to the search box otherwise.
pub fn minimal_negative_support_check(
    cfg: &Configuration,
    v: &[BigRational],
    radius: u64,
    limits: &Limits,
) -> Result<Minimality> {
    cfg.check_len(v)?;
    let support = nsupp(v);
    if support.is_empty() {
        return Ok(Minimality::Minimal);
    }
    let basis = kernel_basis(cfg);
    let nonneg: Vec<usize> = (0..v.len()).filter(|&j| v[j].is_integer() && !v[j].is_negative()).collect();
    let mut relaxable = false;
    for &i in &support.indices {
        // rows: (Kᵀ t)_j ≥ −v_j for j = i and the nonnegative integer slots
        let rows: Vec<usize> = std::iter::once(i).chain(nonneg.iter().copied()).collect();
        let g: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&j| basis.vectors.iter().map(|b| BigRational::from_integer(b[j].clone())).collect())
            .collect();
        let h: Vec<BigRational> = rows.iter().map(|&j| -v[j].clone()).collect();
        if crate::geometry::lp::feasible_point(&g, &h, basis.rank()).is_some() {
            relaxable = true;
            break;
        }
    }
    if !relaxable {
        return Ok(Minimality::Minimal);
    }
    let boxed = graded_box(basis.rank(), radius, limits.guard)?;
    let hits = limits.exec.map(boxed, |coeffs| {
        let l = basis.combine(&coeffs);
        nsupp(&shifted(v, &l)).is_proper_subset(&support).then_some(l)
    });
    Ok(match hits.into_iter().flatten().next() {
        Some(witness) => Minimality::NotMinimal { witness },
        None => Minimality::MinimalWithinBound { radius },
    })
}

pub fn fmt_int_vec(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let cfg = Configuration::from_i64(&[&[1], &[2]]).unwrap();
        let k = kernel_basis(&cfg);
        assert_eq!(k.vectors, vec![ints(&[2, -1])]);
        let id = Configuration::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(kernel_basis(&id).rank(), 0);
    }

    #[test]
    fn za_membership() {
        let cfg = Configuration::from_i64(&[&[2]]).unwrap();
        let za = group_za(&cfg);
        assert!(!za.member(&[rat(3, 1)]));
        assert!(za.member(&[rat(-4, 1)]));
        assert!(!za.member(&[rat(1, 2)]));
        assert!(za.same_coset(&[rat(1, 2)], &[rat(5, 2)]));
        let cfg = Configuration::from_i64(&[&[1], &[2]]).unwrap();
        assert_eq!(group_za(&cfg), GroupZA::standard(1));
    }

    #[test]
    fn nsupp_examples() {
        let s = nsupp(&[rat(-1, 1), rat(0, 1), rat(-1, 2)]);
        assert_eq!(s.indices.into_iter().collect::<Vec<_>>(), vec![0]);
        assert!(nsupp(&[rat(0, 1), rat(0, 1)]).is_empty());
        assert_eq!(nsupp(&[rat(-2, 1), rat(-1, 1)]).indices.len(), 2);
    }

    #[test]
    fn lv_enumeration_example() {
        let cfg = Configuration::from_i64(&[&[1], &[2]]).unwrap();
        let basis = kernel_basis(&cfg);
        let v = [rat(-1, 1), rat(0, 1)];
        let pts = enumerate_lv(&basis, &v, 3, &Limits::default()).unwrap();
        let ls: Vec<Vec<BigInt>> = pts.into_iter().map(|p| p.l).collect();
        let expected: Vec<Vec<BigInt>> = (0..=3).map(|k| ints(&[-2 * k, k])).collect();
        assert_eq!(ls, expected);
    }

    #[test]
    fn minimality_examples() {
        let lim = Limits::default();
        let cfg = Configuration::from_i64(&[&[1], &[2]]).unwrap();
        assert_eq!(
            minimal_negative_support_check(&cfg, &[rat(0, 1), rat(0, 1)], 5, &lim).unwrap(),
            Minimality::Minimal
        );
        assert_eq!(
            minimal_negative_support_check(&cfg, &[rat(-1, 1), rat(0, 1)], 5, &lim).unwrap(),
            Minimality::Minimal
        );
        let twin = Configuration::multiset_from_i64(&[&[1], &[1]]).unwrap();
        assert_eq!(
            minimal_negative_support_check(&twin, &[rat(-1, 1), rat(1, 1)], 5, &lim).unwrap(),
            Minimality::NotMinimal { witness: ints(&[1, -1]) }
        );
    }

    #[test]
    fn distinct_columns_enforced() {
        assert!(Configuration::from_i64(&[&[1], &[1]]).is_err());
        assert!(Configuration::multiset_from_i64(&[&[1], &[1]]).is_ok());
        assert!(Configuration::from_i64(&[&[1], &[1, 2]]).is_err());
    }
}
