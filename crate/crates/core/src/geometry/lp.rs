//! Exact two-phase simplex over `Q` with Bland's rule.
//!
//! Problems are in standard form `min c·x` subject to `A x = b`, `x ≥ 0`.
//! Every outcome carries a certificate that [`LpResult::verify`] rechecks
//! from scratch.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::dot;
use crate::linalg::{self, RatMatrix};

#[derive(Debug, Clone)]
pub struct StandardLp {
    pub a: RatMatrix,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    /// `x` is optimal, `dual` satisfies `Aᵀy ≤ c` and `b·y = c·x`.
    Optimal { x: Vec<BigRational>, value: BigRational, dual: Vec<BigRational> },
    /// `Aᵀy ≤ 0` and `b·y > 0`, so no `x ≥ 0` solves `A x = b`.
    Infeasible { farkas: Vec<BigRational> },
    /// `point` is feasible, `ray ≥ 0`, `A ray = 0` and `c·ray < 0`.
    Unbounded { point: Vec<BigRational>, ray: Vec<BigRational> },
}

impl LpResult {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Rechecks the certificate against the problem.
    pub fn verify(&self, lp: &StandardLp) -> bool {
        let at = linalg::transpose(&lp.a);
        match self {
            LpResult::Optimal { x, value, dual } => {
                primal_feasible(lp, x)
                    && dual.len() == lp.b.len()
                    && at.iter().zip(&lp.c).all(|(col, cj)| dot(col, dual) <= *cj)
                    && dot(&lp.c, x) == *value
                    && dot(&lp.b, dual) == *value
            }
            LpResult::Infeasible { farkas } => {
                farkas.len() == lp.b.len()
                    && at.iter().all(|col| !dot(col, farkas).is_positive())
                    && dot(&lp.b, farkas).is_positive()
            }
            LpResult::Unbounded { point, ray } => {
                primal_feasible(lp, point)
                    && ray.iter().all(|r| !r.is_negative())
                    && lp.a.iter().all(|row| dot(row, ray).is_zero())
                    && dot(&lp.c, ray).is_negative()
            }
        }
    }
}

fn primal_feasible(lp: &StandardLp, x: &[BigRational]) -> bool {
    x.len() == lp.c.len()
        && x.iter().all(|v| !v.is_negative())
        && lp.a.iter().zip(&lp.b).all(|(row, bi)| dot(row, x) == *bi)
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Original row index of each tableau row.
    origin: Vec<usize>,
    basis: Vec<usize>,
    obj: Vec<BigRational>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.rows[r][j].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pr = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x -= &f * y;
            }
        }
        if !self.obj[j].is_zero() {
            let f = self.obj[j].clone();
            for (x, y) in self.obj.iter_mut().zip(&pr) {
                *x -= &f * y;
            }
        }
        self.basis[r] = j;
    }

    fn load_objective(&mut self, cost: &[BigRational]) {
        let rhs = self.rhs();
        let mut obj = vec![BigRational::zero(); rhs + 1];
        obj[..cost.len()].clone_from_slice(cost);
        for (row, &bj) in self.rows.iter().zip(&self.basis) {
            let cb = cost.get(bj).cloned().unwrap_or_else(BigRational::zero);
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                *o -= &cb * x;
            }
        }
        self.obj = obj;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns the unbounded
    /// entering column, if any.
    fn optimize(&mut self, allowed: usize) -> Option<usize> {
        let rhs = self.rhs();
        loop {
            let j = (0..allowed).find(|&j| self.obj[j].is_negative())?;
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Some(j),
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); n];
        for (row, &bj) in self.rows.iter().zip(&self.basis) {
            if bj < n {
                x[bj] = row[self.rhs()].clone();
            }
        }
        x
    }
}

/// Solves `Bᵀ y = c_B` for the basis columns of `full` on the tableau rows.
fn basis_dual(full: &RatMatrix, t: &Tableau, cost: &[BigRational], m: usize) -> Vec<BigRational> {
    let bt: RatMatrix = t.basis.iter().map(|&j| t.origin.iter().map(|&i| full[i][j].clone()).collect()).collect();
    let cb: Vec<BigRational> = t.basis.iter().map(|&j| cost.get(j).cloned().unwrap_or_else(BigRational::zero)).collect();
    let y_red = linalg::solve(&bt, &cb).expect("basis matrix is invertible");
    let mut y = vec![BigRational::zero(); m];
    for (&i, yi) in t.origin.iter().zip(y_red) {
        y[i] = yi;
    }
    y
}

pub fn solve(lp: &StandardLp) -> LpResult {
    let m = lp.a.len();
    let n = lp.c.len();
    // flip rows so that b ≥ 0, then append one artificial column per row
    let signs: Vec<bool> = lp.b.iter().map(|b| b.is_negative()).collect();
    let width = n + m;
    let mut full: RatMatrix = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let s = if signs[i] { -BigRational::one() } else { BigRational::one() };
        let mut row: Vec<BigRational> = lp.a[i].iter().map(|x| x * &s).collect();
        row.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        full.push(row.clone());
        row.push(&lp.b[i] * &s);
        rows.push(row);
    }
    let mut t = Tableau { rows, origin: (0..m).collect(), basis: (n..n + m).collect(), obj: Vec::new(), width };
    let phase1: Vec<BigRational> =
        (0..width).map(|j| if j < n { BigRational::zero() } else { BigRational::one() }).collect();
    t.load_objective(&phase1);
    t.optimize(width);
    let infeasibility = -t.obj[width].clone();
    if infeasibility.is_positive() {
        let y = basis_dual(&full, &t, &phase1, m);
        let farkas = y.into_iter().zip(&signs).map(|(v, &s)| if s { -v } else { v }).collect();
        return LpResult::Infeasible { farkas };
    }
    // drive zero-valued artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.origin.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = lp.c.clone();
    cost.resize(width, BigRational::zero());
    t.load_objective(&cost);
    if let Some(j) = t.optimize(n) {
        let point = t.primal(n);
        let mut ray = vec![BigRational::zero(); n];
        ray[j] = BigRational::one();
        for (row, &bj) in t.rows.iter().zip(&t.basis) {
            ray[bj] = -row[j].clone();
        }
        return LpResult::Unbounded { point, ray };
    }
    let x = t.primal(n);
    let value = dot(&lp.c, &x);
    let y = basis_dual(&full, &t, &cost, m);
    let dual = y.into_iter().zip(&signs).map(|(v, &s)| if s { -v } else { v }).collect();
    LpResult::Optimal { x, value, dual }
}

/// Outcome of an LP over free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

/// `min c·x` over free `x ∈ Q^k` subject to `ge · x ≥ ge_rhs` and
/// `eq · x = eq_rhs`.
pub fn solve_free(
    c: &[BigRational],
    ge: &[Vec<BigRational>],
    ge_rhs: &[BigRational],
    eq: &[Vec<BigRational>],
    eq_rhs: &[BigRational],
) -> FreeOutcome {
    let k = c.len();
    let s = ge.len();
    // columns: x⁺ (k), x⁻ (k), surplus (s)
    let mut a = Vec::with_capacity(s + eq.len());
    let mut b = Vec::with_capacity(s + eq.len());
    for (i, (row, rhs)) in ge.iter().zip(ge_rhs).enumerate() {
        let mut r: Vec<BigRational> = row.clone();
        r.extend(row.iter().map(|x| -x.clone()));
        r.extend((0..s).map(|j| if j == i { -BigRational::one() } else { BigRational::zero() }));
        a.push(r);
        b.push(rhs.clone());
    }
    for (row, rhs) in eq.iter().zip(eq_rhs) {
        let mut r: Vec<BigRational> = row.clone();
        r.extend(row.iter().map(|x| -x.clone()));
        r.extend((0..s).map(|_| BigRational::zero()));
        a.push(r);
        b.push(rhs.clone());
    }
    let mut cost: Vec<BigRational> = c.to_vec();
    cost.extend(c.iter().map(|x| -x.clone()));
    cost.extend((0..s).map(|_| BigRational::zero()));
    if a.is_empty() {
        return if c.iter().all(Zero::is_zero) {
            FreeOutcome::Optimal { x: vec![BigRational::zero(); k], value: BigRational::zero() }
        } else {
            FreeOutcome::Unbounded
        };
    }
    let lp = StandardLp { a, b, c: cost };
    match solve(&lp) {
        LpResult::Optimal { x, value, .. } => {
            let x = (0..k).map(|j| &x[j] - &x[k + j]).collect();
            FreeOutcome::Optimal { x, value }
        }
        LpResult::Infeasible { .. } => FreeOutcome::Infeasible,
        LpResult::Unbounded { .. } => FreeOutcome::Unbounded,
    }
}

/// Some `x ∈ Q^k` with `g x ≥ h`, if one exists.
pub fn feasible_point(g: &[Vec<BigRational>], h: &[BigRational], k: usize) -> Option<Vec<BigRational>> {
    if k == 0 {
        return h.iter().all(|x| !x.is_positive()).then(Vec::new);
    }
    match solve_free(&vec![BigRational::zero(); k], g, h, &[], &[]) {
        FreeOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn small_optimum_with_dual() {
        // min t1 + t2, t1 + 2 t2 = 1
        let lp = StandardLp { a: vec![q(&[1, 2])], b: q(&[1]), c: q(&[1, 1]) };
        let r = solve(&lp);
        assert_eq!(r.value(), Some(&rat(1, 2)));
        assert!(r.verify(&lp));
    }

    #[test]
    fn infeasible_has_farkas() {
        let lp = StandardLp { a: vec![q(&[1, 2])], b: q(&[-1]), c: q(&[1, 1]) };
        let r = solve(&lp);
        assert!(matches!(r, LpResult::Infeasible { .. }));
        assert!(r.verify(&lp));
    }

    #[test]
    fn redundant_rows_and_unbounded() {
        let lp = StandardLp {
            a: vec![q(&[1, 1, 0]), q(&[2, 2, 0]), q(&[0, 1, -1])],
            b: q(&[2, 4, 0]),
            c: q(&[1, 0, 0]),
        };
        let r = solve(&lp);
        assert_eq!(r.value(), Some(&rat(0, 1)));
        assert!(r.verify(&lp));
        let lp = StandardLp { a: vec![q(&[1, -1])], b: q(&[0]), c: q(&[-1, 0]) };
        let r = solve(&lp);
        assert!(matches!(r, LpResult::Unbounded { .. }));
        assert!(r.verify(&lp));
    }

    #[test]
    fn free_variables() {
        // min x subject to x ≥ -3/2
        match solve_free(&q(&[1]), &[q(&[1])], &[rat(-3, 2)], &[], &[]) {
            FreeOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![rat(-3, 2)]);
                assert_eq!(value, rat(-3, 2));
            }
            other => panic!("{other:?}"),
        }
        assert!(feasible_point(&[q(&[1]), q(&[-1])], &[rat(1, 1), rat(0, 1)], 1).is_none());
    }
}
