//! p-adic digit machinery on exact rationals.
//!
//! Everything here is a pure function of its inputs. Nonnegative integers are
//! `BigInt`s with a nonnegativity precondition, primes are `u64`.

pub mod rational;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use rational::{fmt_rational, is_p_integral, lcm_of_denominators, mod_inverse};

/// Largest common denominator accepted when computing orbit periods.
pub const MAX_DENOMINATOR: u64 = 1_000_000;

/// Base-`p` digit sum of a nonnegative integer.
pub fn digit_sum(t: &BigInt, p: u64) -> BigInt {
    assert!(!t.is_negative(), "digit_sum of a negative integer");
    let p = BigInt::from(p);
    let mut t = t.clone();
    let mut s = BigInt::zero();
    while !t.is_zero() {
        let (q, r) = t.div_rem(&p);
        s += r;
        t = q;
    }
    s
}

/// Componentwise extension of [`digit_sum`].
pub fn digit_sum_vec(s: &[BigInt], p: u64) -> BigInt {
    s.iter().map(|t| digit_sum(t, p)).sum()
}

/// `ord_p(t!) = (t − wt_p(t)) / (p − 1)`.
pub fn factorial_valuation(t: &BigInt, p: u64) -> BigInt {
    (t - digit_sum(t, p)) / BigInt::from(p - 1)
}

/// `ord_p(t (t−1) ⋯ (t−k+1))` for `0 ≤ k ≤ t`.
pub fn falling_factorial_valuation(t: &BigInt, k: &BigInt, p: u64) -> Result<BigInt> {
    if k.is_negative() || k > t {
        return Err(Error::InvalidArgument(format!("need 0 <= k <= t, got t = {t}, k = {k}")));
    }
    Ok(factorial_valuation(t, p) - factorial_valuation(&(t - k), p))
}

/// A rational number viewed as an element of `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicRational {
    value: BigRational,
    p: u64,
}

impl PAdicRational {
    pub fn new(value: BigRational, p: u64) -> Result<Self> {
        if !is_p_integral(&value, p) {
            return Err(Error::NotPIntegral(fmt_rational(&value), p));
        }
        Ok(Self { value, p })
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The eventually periodic digit expansion.
    pub fn expansion(&self) -> DigitExpansion {
        DigitExpansion::new(&self.value, self.p)
    }
}

/// p-adic digits of a p-integral rational split into a preperiod and a period.
///
/// The expansion is found with the recurrence `d = t mod p`, `t ← (t − d)/p`;
/// the state sequence of a rational is eventually periodic, so the orbit is
/// stored once and digits are read off by index.
#[derive(Debug, Clone)]
pub struct DigitExpansion {
    p: u64,
    head: Vec<u64>,
    cycle: Vec<u64>,
}

impl DigitExpansion {
    pub fn new(t: &BigRational, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut seen: HashMap<BigRational, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut state = t.clone();
        loop {
            if let Some(&start) = seen.get(&state) {
                let cycle = digits.split_off(start);
                return Self { p, head: digits, cycle };
            }
            seen.insert(state.clone(), digits.len());
            let inv = mod_inverse(state.denom(), &pb).expect("p-integral input");
            let d = (state.numer() * inv).mod_floor(&pb);
            digits.push(d.to_u64().expect("digit below p"));
            state = (state - BigRational::from_integer(d)) / BigRational::from_integer(pb.clone());
        }
    }

    pub fn digit(&self, i: usize) -> u64 {
        if i < self.head.len() {
            self.head[i]
        } else {
            self.cycle[(i - self.head.len()) % self.cycle.len()]
        }
    }

    /// `t^{(b)} = Σ_{i<b} t_i p^i`.
    pub fn truncate(&self, b: usize) -> BigInt {
        let pb = BigInt::from(self.p);
        let mut acc = BigInt::zero();
        for i in (0..b).rev() {
            acc = acc * &pb + BigInt::from(self.digit(i));
        }
        acc
    }

    pub fn preperiod(&self) -> usize {
        self.head.len()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }
}

/// The unique integer in `[0, p^b)` congruent to `t` modulo `p^b`.
pub fn truncate(t: &PAdicRational, b: usize) -> BigInt {
    t.expansion().truncate(b)
}

/// Which closed unit interval a [`BoxedRational`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `[−1, 0]`, acted on by the downward digit shift.
    NonPositive,
    /// `[0, 1]`, acted on by the upward digit shift.
    NonNegative,
}

/// A rational in `[−1, 0]` or `[0, 1]` together with a denominator bound `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxedRational {
    value: BigRational,
    bound: BigInt,
    side: Side,
}

impl BoxedRational {
    pub fn new(value: BigRational, bound: BigInt, side: Side) -> Result<Self> {
        if !bound.is_positive() {
            return Err(Error::InvalidArgument(format!("denominator bound {bound} must be positive")));
        }
        if !(&value * BigRational::from_integer(bound.clone())).is_integer() {
            return Err(Error::InvalidArgument(format!(
                "{} · {} is not an integer",
                bound,
                fmt_rational(&value)
            )));
        }
        let (lo, hi, name) = match side {
            Side::NonPositive => (-BigRational::one(), BigRational::zero(), "[-1, 0]"),
            Side::NonNegative => (BigRational::zero(), BigRational::one(), "[0, 1]"),
        };
        if value < lo || value > hi {
            return Err(Error::OutOfBox(fmt_rational(&value), name));
        }
        Ok(Self { value, bound, side })
    }

    pub fn nonpositive(value: BigRational) -> Result<Self> {
        let d = value.denom().clone();
        Self::new(value, d, Side::NonPositive)
    }

    pub fn nonnegative(value: BigRational) -> Result<Self> {
        let d = value.denom().clone();
        Self::new(value, d, Side::NonNegative)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// One digit shift with multiplier `h`.
    ///
    /// On `[−1, 0]` this is the unique `r′` with `D r′ ∈ Z` and
    /// `r − h r′ ∈ {0, …, h−1}`; on `[0, 1]` the unique `r′` with
    /// `h r′ − r ∈ {0, …, h−1}`. Writing `r = ∓s/D`, both reduce to
    /// `s′ ≡ s h⁻¹ (mod D)` with `s′ ∈ [0, D]`, the endpoints being fixed.
    pub fn shift(&self, h: u64) -> Result<Self> {
        if h == 0 || !BigInt::from(h).gcd(&self.bound).is_one() {
            return Err(Error::NotCoprime { h, bound: self.bound.to_string() });
        }
        let d = self.value.denom().clone();
        let s = self.value.numer().abs();
        let s_new = if s.is_zero() || s == d {
            s
        } else {
            let inv = mod_inverse(&BigInt::from(h), &d).expect("h coprime to the denominator");
            (s * inv).mod_floor(&d)
        };
        let magnitude = BigRational::new(s_new, d);
        let value = match self.side {
            Side::NonPositive => -magnitude,
            Side::NonNegative => magnitude,
        };
        Ok(Self { value, bound: self.bound.clone(), side: self.side })
    }

    /// `k`-fold iterate of [`shift`](Self::shift).
    pub fn shift_n(&self, h: u64, k: usize) -> Result<Self> {
        let mut r = self.clone();
        for _ in 0..k {
            r = r.shift(h)?;
        }
        Ok(r)
    }
}

/// Weight data of a vector in the box `[−1, 0]^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub entries: Vec<BigRational>,
    /// Least `a` with `(1 − p^a) r ∈ N^N`.
    pub period: u64,
    /// `(1 − p^a) r`.
    pub scaled: Vec<BigInt>,
    pub weight: BigRational,
}

/// Checks that every entry lies in `[−1, 0]` and is p-integral, and returns
/// the common denominator, capped at [`MAX_DENOMINATOR`].
pub fn box_denominator(r: &[BigRational], p: u64) -> Result<u64> {
    for x in r {
        if x.is_positive() || *x < -BigRational::one() {
            return Err(Error::OutOfBox(fmt_rational(x), "[-1, 0]"));
        }
        if !is_p_integral(x, p) {
            return Err(Error::NotPIntegral(fmt_rational(x), p));
        }
    }
    let d = lcm_of_denominators(r);
    match d.to_u64() {
        Some(d) if d <= MAX_DENOMINATOR => Ok(d),
        _ => Err(Error::DenominatorTooLarge(d.to_string(), MAX_DENOMINATOR)),
    }
}

/// Least `a ≥ 1` with `(1 − p^a) r ∈ N^N`.
pub fn orbit_period(r: &[BigRational], p: u64) -> Result<u64> {
    let d = box_denominator(r, p)?;
    rational::multiplicative_order(p, d)
}

/// `w_p(r) = wt_p((1 − p^a) r) / a`.
pub fn weight(r: &[BigRational], p: u64) -> Result<WeightVector> {
    let a = orbit_period(r, p)?;
    let factor = BigInt::from(p).pow(a as u32) - BigInt::one();
    let scaled: Vec<BigInt> = r
        .iter()
        .map(|x| {
            let s = -x * BigRational::from_integer(factor.clone());
            debug_assert!(s.is_integer());
            s.to_integer()
        })
        .collect();
    let wt = digit_sum_vec(&scaled, p);
    Ok(WeightVector {
        entries: r.to_vec(),
        period: a,
        scaled,
        weight: BigRational::new(wt, BigInt::from(a)),
    })
}

/// The same weight through the digit-shift orbit:
/// `w_p(r) = (1 − p)/a · Σ_{μ<a} Σ_i φ_p^{(μ)}(r_i)`, for any `a` that is a
/// multiple of the orbit period.
pub fn weight_by_orbit(r: &[BigRational], p: u64, a: u64) -> Result<BigRational> {
    let period = orbit_period(r, p)?;
    if a == 0 || !a.is_multiple_of(period) {
        return Err(Error::InvalidArgument(format!("{a} is not a multiple of the orbit period {period}")));
    }
    let mut total = BigRational::zero();
    for x in r {
        let mut b = BoxedRational::nonpositive(x.clone())?;
        for _ in 0..a {
            total += b.value();
            b = b.shift(p)?;
        }
        debug_assert_eq!(b.value(), x);
    }
    Ok(total * BigRational::new(BigInt::one() - BigInt::from(p), BigInt::from(a)))
}

/// `φ_p^{(μ)}` applied componentwise to a vector in `[−1, 0]^N`.
pub fn shift_vector(r: &[BigRational], p: u64, mu: usize) -> Result<Vec<BigRational>> {
    r.iter()
        .map(|x| Ok(BoxedRational::nonpositive(x.clone())?.shift_n(p, mu)?.value().clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::rational::rat;
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(&big(0), 2), big(0));
        assert_eq!(digit_sum(&big(13), 2), big(3));
        assert_eq!(digit_sum(&big(9), 3), big(1));
    }

    #[test]
    fn factorial_valuations() {
        assert_eq!(factorial_valuation(&big(4), 2), big(3));
        assert_eq!(factorial_valuation(&big(9), 3), big(4));
        assert_eq!(factorial_valuation(&big(0), 5), big(0));
        assert_eq!(falling_factorial_valuation(&big(9), &big(5), 3).unwrap(), big(3));
        assert_eq!(falling_factorial_valuation(&big(7), &big(0), 3).unwrap(), big(0));
        assert_eq!(falling_factorial_valuation(&big(4), &big(4), 2).unwrap(), big(3));
        assert!(falling_factorial_valuation(&big(3), &big(4), 2).is_err());
    }

    #[test]
    fn truncations() {
        let t = PAdicRational::new(rat(-1, 3), 2).unwrap();
        assert_eq!(truncate(&t, 2), big(1));
        assert_eq!(truncate(&t, 3), big(5));
        let seven = PAdicRational::new(rat(7, 1), 5).unwrap();
        assert_eq!(truncate(&seven, 4), big(7));
        assert!(PAdicRational::new(rat(1, 2), 2).is_err());
        let e = t.expansion();
        assert_eq!((e.preperiod(), e.period()), (0, 2));
    }

    #[test]
    fn negative_integers_expand_to_trailing_top_digits() {
        let t = PAdicRational::new(rat(-3, 1), 3).unwrap();
        // -3 = 0 + 2·3 + 2·9 + ...
        assert_eq!(truncate(&t, 1), big(0));
        assert_eq!(truncate(&t, 3), big(24));
    }

    #[test]
    fn shift_endpoints_and_examples() {
        for h in [1u64, 2, 5, 7] {
            let z = BoxedRational::new(rat(0, 1), big(3), Side::NonPositive).unwrap();
            assert_eq!(z.shift(h).unwrap().value(), &rat(0, 1));
            let m = BoxedRational::new(rat(-1, 1), big(5), Side::NonPositive).unwrap();
            if h != 5 {
                assert_eq!(m.shift(h).unwrap().value(), &rat(-1, 1));
            }
            let o = BoxedRational::new(rat(1, 1), big(1), Side::NonNegative).unwrap();
            assert_eq!(o.shift(h).unwrap().value(), &rat(1, 1));
        }
        let r = BoxedRational::nonpositive(rat(-1, 3)).unwrap();
        assert_eq!(r.shift(2).unwrap().value(), &rat(-2, 3));
        assert_eq!(r.shift_n(2, 2).unwrap().value(), &rat(-1, 3));
        let s = BoxedRational::nonnegative(rat(1, 3)).unwrap();
        assert_eq!(s.shift(2).unwrap().value(), &rat(2, 3));
        let s = BoxedRational::nonnegative(rat(1, 2)).unwrap();
        assert_eq!(s.shift(3).unwrap().value(), &rat(1, 2));
    }

    #[test]
    fn shift_rejects_non_coprime_multiplier() {
        let r = BoxedRational::new(rat(-1, 3), big(6), Side::NonPositive).unwrap();
        assert!(matches!(r.shift(2), Err(Error::NotCoprime { .. })));
        assert!(BoxedRational::new(rat(1, 3), big(2), Side::NonNegative).is_err());
        assert!(BoxedRational::nonpositive(rat(1, 3)).is_err());
    }

    #[test]
    fn weights() {
        let w = weight(&[rat(-1, 3), rat(-2, 3)], 2).unwrap();
        assert_eq!(w.period, 2);
        assert_eq!(w.scaled, vec![big(1), big(2)]);
        assert_eq!(w.weight, rat(1, 1));
        assert_eq!(weight(&[rat(0, 1), rat(0, 1), rat(0, 1)], 5).unwrap().weight, rat(0, 1));
        assert_eq!(weight(&[rat(-1, 1), rat(0, 1)], 3).unwrap().weight, rat(2, 1));
        assert_eq!(weight_by_orbit(&[rat(-1, 3), rat(-2, 3)], 2, 2).unwrap(), rat(1, 1));
        assert_eq!(weight_by_orbit(&[rat(-1, 3), rat(-2, 3)], 2, 6).unwrap(), rat(1, 1));
        assert!(weight_by_orbit(&[rat(-1, 3)], 2, 3).is_err());
    }

    #[test]
    fn weight_input_validation() {
        assert!(matches!(weight(&[rat(-1, 2)], 2), Err(Error::NotPIntegral(..))));
        assert!(matches!(weight(&[rat(1, 2)], 3), Err(Error::OutOfBox(..))));
        assert!(matches!(
            weight(&[rat(-1, 1_000_003)], 2),
            Err(Error::DenominatorTooLarge(..))
        ));
    }
}
