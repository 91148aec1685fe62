use hyperint::arith::rational::rat;
use hyperint::geometry::dd::{cone_hrep_int, polytope_hrep};
use hyperint::geometry::enumerate::LatticePolytope;
use hyperint::geometry::lp::{solve, LpResult, StandardLp};
use hyperint::geometry::{facet_description, w_delta};
use hyperint::lattice::Configuration;
use hyperint::{linalg, Error, Exec, Limits};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(x: i64) -> BigRational {
    rat(x, 1)
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Best objective over all basic feasible solutions, by brute force.
fn best_basic(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Option<BigRational> {
    let (m, n) = (a.len(), c.len());
    let mut best: Option<BigRational> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize > m {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let sub: Vec<Vec<BigRational>> = a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        if linalg::rank(&sub) < cols.len() {
            continue;
        }
        let Some(xs) = linalg::solve(&sub, b) else { continue };
        if xs.iter().any(|x| *x < BigRational::zero()) {
            continue;
        }
        let val = cols.iter().zip(&xs).fold(BigRational::zero(), |acc, (&j, x)| acc + &c[j] * x);
        if best.as_ref().is_none_or(|bv| val < *bv) {
            best = Some(val);
        }
    }
    best
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simplex_certificates_and_basic_oracle(
        a in small_matrix(2, 4),
        b in proptest::collection::vec(-4i64..=4, 2),
        c in proptest::collection::vec(0i64..=4, 4),
    ) {
        let lp = StandardLp {
            a: a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            b: b.iter().map(|&x| q(x)).collect(),
            c: c.iter().map(|&x| q(x)).collect(),
        };
        let res = solve(&lp);
        prop_assert!(res.verify(&lp));
        // nonnegative costs keep the problem bounded
        let oracle = best_basic(&lp.a, &lp.b, &lp.c);
        match res {
            LpResult::Optimal { value, .. } => prop_assert_eq!(Some(value), oracle),
            LpResult::Infeasible { .. } => prop_assert!(oracle.is_none()),
            LpResult::Unbounded { .. } => prop_assert!(false, "bounded problem reported unbounded"),
        }
    }

    #[test]
    fn cone_facets_certify(gens in small_matrix(5, 3)) {
        let g = int_rows(&gens);
        let h = cone_hrep_int(&g, 3);
        let rg = linalg::to_rat_matrix(&g);
        for gen in &rg {
            prop_assert!(h.inequalities.iter().all(|f| linalg::dot_mixed(f, gen) >= BigRational::zero()));
            prop_assert!(h.equalities.iter().all(|e| linalg::dot_mixed(e, gen).is_zero()));
        }
        for f in &h.inequalities {
            let tight: Vec<Vec<BigRational>> = rg.iter().filter(|x| linalg::dot_mixed(f, x).is_zero()).cloned().collect();
            prop_assert_eq!(linalg::rank(&tight) + 1, h.dim);
        }
    }

    #[test]
    fn cone_membership_matches_lp(gens in small_matrix(4, 3), x in proptest::collection::vec(-4i64..=4, 3)) {
        let g = int_rows(&gens);
        let h = cone_hrep_int(&g, 3);
        let xr: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
        let inside = h.inequalities.iter().all(|f| linalg::dot_mixed(f, &xr) >= BigRational::zero())
            && h.equalities.iter().all(|e| linalg::dot_mixed(e, &xr).is_zero());
        let lp = StandardLp {
            a: (0..3).map(|r| gens.iter().map(|col| q(col[r])).collect()).collect(),
            b: xr.clone(),
            c: vec![BigRational::zero(); gens.len()],
        };
        let res = solve(&lp);
        prop_assert!(res.verify(&lp));
        prop_assert_eq!(inside, matches!(res, LpResult::Optimal { .. }));
    }

    #[test]
    fn enumeration_matches_box_filter(pts in proptest::collection::vec(proptest::collection::vec(-12i64..=12, 2), 1..5), den in 1i64..4) {
        let vertices: Vec<Vec<BigRational>> = pts.iter().map(|p| p.iter().map(|&x| rat(x, den)).collect()).collect();
        let poly = LatticePolytope::from_vertices(&vertices, 2);
        let mut got = poly.points(&Limits::default()).unwrap();
        got.sort();
        let hrep = polytope_hrep(&vertices, 2);
        let mut want = Vec::new();
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                if hrep.contains(&[q(x), q(y)]) {
                    want.push(vec![x, y]);
                }
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn gauge_matches_weight_lp(cols in small_matrix(4, 2), x in proptest::collection::vec(-6i64..=6, 2)) {
        let with_last: Vec<Vec<i64>> = cols.iter().map(|c| vec![c[0], c[1], 1]).collect();
        let refs: Vec<&[i64]> = with_last.iter().map(|c| c.as_slice()).collect();
        let Ok(cfg) = Configuration::from_i64(&refs) else { return Ok(()) };
        let desc = facet_description(&cfg).unwrap();
        prop_assert!(desc.certify());
        let gamma = vec![q(x[0]), q(x[1]), q(3)];
        prop_assert_eq!(desc.gauge(&gamma), w_delta(&cfg, &gamma).unwrap());
    }
}

#[test]
fn enumeration_is_identical_across_execution_modes() {
    let vertices = vec![vec![q(0), q(0), q(0)], vec![q(9), q(0), q(0)], vec![q(0), q(8), q(0)], vec![q(0), q(0), q(7)]];
    let poly = LatticePolytope::from_vertices(&vertices, 3);
    let seq = poly.points(&Limits { exec: Exec::Sequential, ..Limits::default() }).unwrap();
    let par = poly.points(&Limits { exec: Exec::Parallel, ..Limits::default() }).unwrap();
    assert_eq!(seq, par);
    let tight = Limits { guard: 10, ..Limits::default() };
    assert!(matches!(poly.points(&tight), Err(Error::ResourceGuard(_))));
}
