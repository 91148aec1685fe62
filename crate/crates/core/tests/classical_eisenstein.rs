use hyperint::arith::rational::rat;
use hyperint::classical::{
    cor57_check, f_coefficient, prop514_crosscheck, xi_grid_minimum, xi_minimum, xi_minimum_by_lattice, ClassicalSpec,
};
use hyperint::eisenstein::{
    denominator_constant, first_failure, minimize_constant, tail_normalize, AlgebraicSeries, BiPoly,
};
use hyperint::Limits;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// A one-variable spec with equal column sums, built from arbitrary small data.
fn one_variable(c: Vec<u64>, d: Vec<u64>, tn: Vec<i64>, sn: Vec<i64>, den: i64) -> Option<ClassicalSpec> {
    if c.iter().sum::<u64>() != d.iter().sum::<u64>() {
        return None;
    }
    let param = |n: i64| rat(n.clamp(1, den), den);
    ClassicalSpec::new(
        c.into_iter().map(|x| vec![x]).collect(),
        d.into_iter().map(|x| vec![x]).collect(),
        tn.into_iter().map(param).collect(),
        sn.into_iter().map(param).collect(),
        None,
    )
    .ok()
}

fn spec_strategy() -> impl Strategy<Value = Option<ClassicalSpec>> {
    (
        proptest::collection::vec(1u64..=4, 1..=2),
        proptest::collection::vec(1u64..=4, 1..=2),
        proptest::collection::vec(1i64..=12, 2),
        proptest::collection::vec(1i64..=12, 2),
        1i64..=12,
    )
        .prop_map(|(c, d, tn, sn, den)| {
            let (j, k) = (c.len(), d.len());
            one_variable(c, d, tn[..j].to_vec(), sn[..k].to_vec(), den)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_agrees_with_lattice_and_grid(spec in spec_strategy()) {
        let Some(spec) = spec else { return Ok(()) };
        let lim = Limits::default();
        let sweep = xi_minimum(&spec.theta, &spec.sigma, &spec, &lim).unwrap();
        let lattice = xi_minimum_by_lattice(&spec.theta, &spec.sigma, &spec, &lim).unwrap();
        prop_assert_eq!(&sweep.minimum, &lattice.minimum);
        let grid = xi_grid_minimum(&spec.theta, &spec.sigma, &spec, 240);
        prop_assert!(sweep.minimum <= grid.minimum);
    }

    #[test]
    fn coset_equality_tracks_sweep(spec in spec_strategy(), pi in 0usize..4, mu in 0usize..2) {
        let Some(spec) = spec else { return Ok(()) };
        let p = [5u64, 7, 11, 13][pi];
        prop_assume!(spec.denominator % p != 0);
        let x = prop514_crosscheck(&spec, mu, p, &Limits::default()).unwrap();
        prop_assert!(x.agree);
    }

    #[test]
    fn eisenstein_constant_on_binomial_roots(a in 1i64..6, k in 2usize..4, t in 12usize..30) {
        // Z^k − (1 + aX) with f(0) = 1
        let f = BiPoly::from_terms(&[(0, k, rat(1, 1)), (0, 0, rat(-1, 1)), (1, 0, rat(-a, 1))]);
        let s = AlgebraicSeries::from_seed(f, vec![rat(1, 1)], t).unwrap();
        let tn = tail_normalize(&s).unwrap();
        let n = denominator_constant(&tn, &s).unwrap();
        prop_assert_eq!(first_failure(&s.prefix, &n.n), None);
        let m = minimize_constant(&s.prefix, &n.n);
        for len in 2..=s.prefix.len() {
            prop_assert_eq!(first_failure(&s.prefix[..len], &m.minimal), None);
        }
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

#[test]
fn landau_verdicts_match_divisibility() {
    let lim = Limits::default();
    let forward =
        ClassicalSpec::new(vec![vec![1, 1]], vec![vec![1, 0], vec![0, 1]], vec![rat(1, 1)], vec![rat(1, 1), rat(1, 1)], None)
            .unwrap();
    let reverse =
        ClassicalSpec::new(vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1]], vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1)], None)
            .unwrap();
    assert!(cor57_check(&forward, &lim).unwrap().holds);
    let rv = cor57_check(&reverse, &lim).unwrap();
    assert!(!rv.holds);
    let min = &rv.classes[0].shifts[0];
    assert_eq!(min.minimum, BigInt::from(-1));
    let mut all_forward = true;
    let mut all_reverse = true;
    for m in 0..=40u64 {
        for n in 0..=40 - m {
            let fwd = f_coefficient(&forward, &[m, n]).unwrap();
            assert_eq!(fwd, BigRational::new(factorial(m + n), factorial(m) * factorial(n)));
            all_forward &= fwd.is_integer();
            all_reverse &= f_coefficient(&reverse, &[m, n]).unwrap().is_integer();
        }
    }
    assert!(all_forward);
    assert!(!all_reverse);
}

fn gauss() -> ClassicalSpec {
    ClassicalSpec::new(vec![vec![1], vec![1]], vec![vec![1], vec![1]], vec![rat(1, 2), rat(1, 2)], vec![rat(1, 1), rat(1, 1)], None)
        .unwrap()
}

fn mixed_two_variable() -> ClassicalSpec {
    ClassicalSpec::new(
        vec![vec![2, 1], vec![0, 1]],
        vec![vec![1, 1], vec![1, 0], vec![0, 1]],
        vec![rat(1, 3), rat(2, 3)],
        vec![rat(1, 1), rat(1, 3), rat(1, 1)],
        None,
    )
    .unwrap()
}

#[test]
fn coefficients_match_series_terms() {
    use hyperint::classical::{build_configuration, lattice_vector, term_sign};
    use hyperint::lattice::{kernel_basis, LatticeBasis};
    use hyperint::series::bracket_vector;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for spec in [gauss(), mixed_two_variable()] {
        let built = build_configuration(&spec).unwrap();
        let unit: Vec<Vec<BigInt>> = (0..spec.r())
            .map(|s| lattice_vector(&spec, &(0..spec.r()).map(|t| (s == t) as u64).collect::<Vec<_>>()))
            .collect();
        let l_basis = LatticeBasis { vectors: unit, ambient: built.cfg.len() };
        assert!(kernel_basis(&built.cfg).same_lattice(&l_basis));
        for _ in 0..30 {
            let m: Vec<u64> = (0..spec.r()).map(|_| rng.gen_range(0..8)).collect();
            let l = lattice_vector(&spec, &m);
            assert!(built.cfg.is_relation(&l));
            let sign = BigRational::from_integer(BigInt::from(term_sign(&spec, &m)));
            assert_eq!(bracket_vector(&built.v, &l).unwrap(), sign * f_coefficient(&spec, &m).unwrap());
        }
    }
}

#[test]
fn passing_classes_give_integral_coefficients() {
    use hyperint::arith::rational::valuation;
    use hyperint::classical::thm56_check;
    let lim = Limits::default();
    for spec in [gauss(), mixed_two_variable()] {
        let dd = spec.denominator;
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
            if dd % p == 0 {
                continue;
            }
            let trace = thm56_check(&spec, (p - 1) % dd + 1, &lim).unwrap();
            if !trace.holds {
                continue;
            }
            for a in 0..6u64 {
                for b in 0..6u64 {
                    let m: Vec<u64> = [a, b][..spec.r()].to_vec();
                    let c = f_coefficient(&spec, &m).unwrap();
                    assert!(valuation(&c, p).unwrap() >= 0, "p = {p}, m = {m:?}");
                }
            }
        }
    }
}

#[test]
fn psi_orbits_close() {
    use hyperint::arith::{BoxedRational, Side};
    for d in 2u64..13 {
        for h in 1..d {
            if num_integer::Integer::gcd(&h, &d) != 1 {
                continue;
            }
            let a = hyperint::arith::rational::multiplicative_order(h, d).unwrap() as usize;
            for n in 1..=d {
                let x = BoxedRational::new(rat(n as i64, d as i64), BigInt::from(d), Side::NonNegative).unwrap();
                assert_eq!(x.shift_n(h, a).unwrap().value(), x.value());
            }
        }
    }
}
