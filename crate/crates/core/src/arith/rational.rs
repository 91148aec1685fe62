//! Small helpers around `BigInt` / `BigRational` shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parses `"p/q"`, `"-p/q"` or `"n"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` (or `"n"`) rendering with a positive reduced denominator.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn fmt_vec(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

/// `ord_p` of a nonzero rational.
pub fn valuation(q: &BigRational, p: u64) -> Option<i64> {
    let a = valuation_int(q.numer(), p)? as i64;
    let b = valuation_int(q.denom(), p)? as i64;
    Some(a - b)
}

pub fn is_p_integral(q: &BigRational, p: u64) -> bool {
    !q.denom().is_multiple_of(&BigInt::from(p))
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

/// Inverse of `a` modulo `m` (`m ≥ 1`), if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Least `a ≥ 1` with `h^a ≡ 1 (mod m)`; `1` when `m = 1`.
pub fn multiplicative_order(h: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(1);
    }
    if h.gcd(&m) != 1 {
        return Err(Error::NotCoprime { h, bound: m.to_string() });
    }
    let h = (h % m) as u128;
    let m128 = m as u128;
    let mut x = h;
    let mut a = 1u64;
    while x != 1 {
        x = x * h % m128;
        a += 1;
    }
    Ok(a)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Σ coeffs[i] · columns[i] for integer columns.
pub fn combine_columns(columns: &[Vec<BigInt>], coeffs: &[BigRational]) -> Vec<BigRational> {
    let n = columns.first().map_or(0, Vec::len);
    let mut out = vec![BigRational::zero(); n];
    for (col, c) in columns.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(col) {
            *o += c * BigRational::from_integer(a.clone());
        }
    }
    out
}

pub fn to_rationals(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(fmt_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(fmt_rational(&rat(6, 3)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn orders_and_primes() {
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(3, 2).unwrap(), 1);
        assert_eq!(multiplicative_order(5, 1).unwrap(), 1);
        assert!(multiplicative_order(2, 4).is_err());
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(24, 5), 2), Some(3));
        assert_eq!(valuation(&rat(5, 24), 2), Some(-3));
        assert_eq!(valuation(&rat(0, 1), 2), None);
    }
}
