use hyperint::arith::rational::rat;
use hyperint::arith::weight;
use hyperint::geometry::lower_bound_thm46;
use hyperint::lattice::{group_za, in_lv, kernel_basis, Configuration};
use hyperint::series::{
    analyze, residue_transfer, unbounded_family, valuation_by_formula, verify_hypergeometric_system, SearchParams,
    Status, Transfer,
};
use hyperint::Limits;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ord(mut n: BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut e = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        e += 1;
    }
    e
}

/// Valuation of `[v]_l π^{Σ l}` straight from the defining product.
fn brute_valuation(v: &[BigRational], l: &[BigInt], p: u64) -> BigRational {
    let mut num = BigRational::one();
    for (vi, li) in v.iter().zip(l) {
        let li: i64 = li.try_into().unwrap();
        if li >= 0 {
            for k in 1..=li {
                num /= vi + BigRational::from_integer(BigInt::from(k));
            }
        } else {
            for k in 0..-li {
                num *= vi - BigRational::from_integer(BigInt::from(k));
            }
        }
    }
    let e = ord(num.numer().abs(), p) - ord(num.denom().clone(), p);
    let s: BigInt = l.iter().sum();
    BigRational::from_integer(BigInt::from(e)) + BigRational::new(s, BigInt::from(p - 1))
}

fn configurations() -> Vec<Configuration> {
    vec![
        Configuration::from_i64(&[&[1], &[2]]).unwrap(),
        Configuration::from_i64(&[&[1, 0], &[1, 1], &[1, 2]]).unwrap(),
        Configuration::from_i64(&[&[2, 0, 1], &[1, 1, 1], &[0, 2, 1]]).unwrap(),
        Configuration::from_i64(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).unwrap(),
        Configuration::multiset_from_i64(&[&[1], &[1]]).unwrap(),
        Configuration::from_i64(&[&[1], &[3]]).unwrap(),
    ]
}

#[test]
fn formula_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let primes = [2u64, 3, 5, 7];
    let mut checked = 0;
    for cfg in configurations() {
        let basis = kernel_basis(&cfg);
        for _ in 0..300 {
            let p = primes[rng.gen_range(0..primes.len())];
            let v: Vec<BigRational> = (0..cfg.len())
                .map(|_| loop {
                    let d = rng.gen_range(1..10i64);
                    if d % p as i64 != 0 {
                        break rat(rng.gen_range(-2 * d..=d), d);
                    }
                })
                .collect();
            let z: Vec<i64> = (0..basis.rank()).map(|_| rng.gen_range(-6..=6)).collect();
            let l = basis.combine(&z);
            if !in_lv(&v, &l) {
                continue;
            }
            let f = valuation_by_formula(&v, &l, p).unwrap();
            assert_eq!(f.value, brute_valuation(&v, &l, p), "v = {v:?}, l = {l:?}, p = {p}");
            checked += 1;
        }
    }
    assert!(checked > 500);
}

#[test]
fn kernel_and_group_are_consistent() {
    for cfg in configurations() {
        let basis = kernel_basis(&cfg);
        assert!(basis.is_saturated());
        for z in [vec![1i64; basis.rank()], vec![-2; basis.rank()]] {
            assert!(cfg.is_relation(&basis.combine(&z)));
        }
        let za = group_za(&cfg);
        for col in cfg.columns() {
            assert!(za.member_int(col));
        }
    }
}

#[test]
fn half_line_verdicts() {
    let cfg = Configuration::from_i64(&[&[1], &[2]]).unwrap();
    let params = SearchParams { max_b_multiplier: 2, box_radius: 5, ..SearchParams::default() };
    let good = vec![rat(0, 1), rat(-1, 2)];
    let cert = analyze(&cfg, &good, 3, &params).unwrap();
    assert_eq!(cert.status, Status::IntegralCertified);
    assert_eq!((cert.w_p_v.clone(), cert.lower_bound.clone()), (rat(1, 1), rat(1, 1)));
    assert!(cert.validate(&cfg, &good));

    let bad = vec![rat(-1, 1), rat(0, 1)];
    let cert = analyze(&cfg, &bad, 3, &params).unwrap();
    assert_eq!(cert.status, Status::UnboundedCertified);
    let w = cert.witness.clone().unwrap();
    assert_eq!(w.r, vec![rat(0, 1), rat(-1, 2)]);
    assert!(cert.validate(&cfg, &bad));
    let fam = unbounded_family(&bad, &w.r, 3, 6).unwrap();
    for t in &fam {
        assert_eq!(t.predicted, rat(-(t.c as i64), 2));
        assert_eq!(brute_valuation(&bad, &t.l, 3), t.predicted);
    }
    let st = residue_transfer(&cert, &bad, &BigInt::from(2)).unwrap();
    assert_eq!(st.transfer, Transfer::Unbounded);
    assert_eq!(st.text, "unbounded for all p ≡ 1 mod 2");
    for p in [5u64, 7, 11] {
        assert!(weight(&w.r, p).unwrap().weight < weight(&bad, p).unwrap().weight);
    }
}

#[test]
fn system_check_detects_bad_support() {
    let cfg = Configuration::from_i64(&[&[1], &[2]]).unwrap();
    assert!(verify_hypergeometric_system(&cfg, &[rat(-1, 1), rat(0, 1)], 8).unwrap().passes);
    assert!(verify_hypergeometric_system(&cfg, &[rat(0, 1), rat(-1, 2)], 8).unwrap().passes);
    // both negative integers: the support is not minimal
    let check = verify_hypergeometric_system(&cfg, &[rat(-1, 1), rat(-1, 1)], 8).unwrap();
    assert!(!check.passes);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bound_never_exceeds_weight(ci in 0usize..4, nums in proptest::collection::vec(0i64..=6, 4), d in 1i64..7, pi in 0usize..3) {
        let p = [2u64, 5, 7][pi];
        prop_assume!(d % p as i64 != 0);
        let cfg = &configurations()[ci];
        let v: Vec<BigRational> = nums.iter().take(cfg.len()).map(|&n| -rat(n.min(d), d)).collect();
        let w = weight(&v, p).unwrap().weight;
        let b = lower_bound_thm46(cfg, &v, p, &Limits::default()).unwrap();
        prop_assert!(b.bound <= w);
        prop_assert!(!b.bound.is_negative());
    }
}
