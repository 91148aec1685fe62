//! Denominator bounds for one-variable algebraic power series: the tail
//! functional equation `ρ f̃ = X F₀(X, f̃)` and an integer `N` with
//! `N^m c_m ∈ Z`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::fmt_rational;
use crate::error::{Error, Result};

/// Univariate polynomial or truncated series in `X`, lowest degree first.
pub type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], t: usize) -> Poly {
    let len = (a.len() + b.len()).saturating_sub(1).min(t);
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(acc: &mut Poly, p: &[BigRational]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x;
    }
}

fn coeff(p: &[BigRational], i: usize) -> BigRational {
    p.get(i).cloned().unwrap_or_else(BigRational::zero)
}

fn order(p: &[BigRational]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `F(X, Z) = Σ_h a_h(X) Z^h`, stored as the list of `a_h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    pub z_coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(z_coeffs: Vec<Poly>) -> Self {
        let mut z_coeffs: Vec<Poly> = z_coeffs.into_iter().map(trim).collect();
        while z_coeffs.last().is_some_and(|p| p.is_empty()) {
            z_coeffs.pop();
        }
        BiPoly { z_coeffs }
    }

    /// Builds `Σ c X^i Z^h` from `(i, h, c)` triples.
    pub fn from_terms(terms: &[(usize, usize, BigRational)]) -> Self {
        let zdeg = terms.iter().map(|t| t.1).max().map_or(0, |d| d + 1);
        let mut z_coeffs: Vec<Poly> = vec![Vec::new(); zdeg];
        for (i, h, c) in terms {
            let p = &mut z_coeffs[*h];
            if p.len() <= *i {
                p.resize(i + 1, BigRational::zero());
            }
            p[*i] += c;
        }
        BiPoly::new(z_coeffs)
    }

    pub fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for (h, p) in self.z_coeffs.iter().enumerate() {
            for (i, c) in p.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, h, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.z_coeffs.is_empty()
    }

    pub fn z_degree(&self) -> usize {
        self.z_coeffs.len().saturating_sub(1)
    }

    pub fn derivative_z(&self) -> BiPoly {
        BiPoly::new(
            self.z_coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(h, p)| p.iter().map(|c| c * BigRational::from_integer(BigInt::from(h))).collect())
                .collect(),
        )
    }

    /// `F(X, f(X)) mod X^t`.
    pub fn eval_series(&self, f: &[BigRational], t: usize) -> Poly {
        let mut acc: Poly = Vec::new();
        for a in self.z_coeffs.iter().rev() {
            acc = mul_trunc(&acc, f, t);
            add_into(&mut acc, &a[..a.len().min(t)]);
        }
        acc.resize(t, BigRational::zero());
        acc
    }

    fn scale(&self, k: &BigRational) -> BiPoly {
        BiPoly::new(self.z_coeffs.iter().map(|p| p.iter().map(|c| c * k).collect()).collect())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(i, h, c)| {
                let mut s = fmt_rational(c);
                if *i > 0 {
                    s.push_str(&format!("·X^{i}"));
                }
                if *h > 0 {
                    s.push_str(&format!("·Z^{h}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A power series `f = Σ c_m X^m` known through `c_T`, with an annihilating
/// polynomial `F` of minimal degree in `Z` (asserted by the caller).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicSeries {
    pub annihilator: BiPoly,
    pub prefix: Vec<BigRational>,
}

impl AlgebraicSeries {
    /// Checks `F(X, c_0 + … + c_T X^T) ≡ 0 mod X^{T+1}`.
    pub fn new(annihilator: BiPoly, prefix: Vec<BigRational>) -> Result<Self> {
        if annihilator.is_zero() {
            return Err(Error::InvalidArgument("the annihilating polynomial is zero".into()));
        }
        if prefix.is_empty() {
            return Err(Error::PrefixTooShort("no coefficients supplied".into()));
        }
        let t = prefix.len();
        if let Some(i) = order(&annihilator.eval_series(&prefix, t)) {
            return Err(Error::NotAnnihilating(format!("F(X, f) has a nonzero X^{i} coefficient")));
        }
        Ok(AlgebraicSeries { annihilator, prefix })
    }

    /// Extends `seed` to `c_0..c_T` one coefficient at a time. The seed must
    /// be long enough that the order `μ` of `F_Z(X, f)` is visible in it.
    pub fn from_seed(annihilator: BiPoly, seed: Vec<BigRational>, t: usize) -> Result<Self> {
        let fz = annihilator.derivative_z();
        let mu = order(&fz.eval_series(&seed, seed.len()))
            .ok_or_else(|| Error::PrefixTooShort("F_Z(X, f) vanishes on the seed".into()))?;
        let lead = fz.eval_series(&seed, mu + 1)[mu].clone();
        let mut f = seed;
        while f.len() <= t {
            let m = f.len();
            let r = annihilator.eval_series(&f, m + mu + 1);
            f.push(-&r[m + mu] / &lead);
        }
        f.truncate(t + 1);
        AlgebraicSeries::new(annihilator, f)
    }

    /// `T`, the index of the last known coefficient.
    pub fn order(&self) -> usize {
        self.prefix.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailNormalization {
    pub mu: usize,
    pub big_m: usize,
    pub big_m_prime: usize,
    pub phi_m: Poly,
    pub psi_m: Poly,
    /// Taylor remainder `G_M(X, W)` with `F(X, f_M + W) = F(X, f_M) + F_Z(X, f_M) W + W² G_M`.
    pub g_m: BiPoly,
    pub f1: BiPoly,
    pub rho: BigInt,
    pub f0: BiPoly,
    /// Residual `ρ f̃ − X F₀(X, f̃)` vanishes modulo `X^checked_to`.
    pub checked_to: usize,
}

/// `f̃ = Σ_{m>M} c_m X^{m−M′}` as far as the prefix determines it.
fn tail_series(prefix: &[BigRational], big_m: usize, big_mp: usize) -> Poly {
    let len = prefix.len() - big_mp;
    (0..len)
        .map(|i| if i + big_mp > big_m { prefix[i + big_mp].clone() } else { BigRational::zero() })
        .collect()
}

pub fn tail_normalize(s: &AlgebraicSeries) -> Result<TailNormalization> {
    let t = s.order();
    let f = &s.annihilator;
    let fz = f.derivative_z();
    let mu = order(&fz.eval_series(&s.prefix, t + 1))
        .ok_or_else(|| Error::PrefixTooShort("F_Z(X, f) vanishes on the prefix".into()))?;
    let big_m = 2 * mu + 1;
    let big_mp = mu + 1;
    if t < big_m {
        return Err(Error::PrefixTooShort(format!("need coefficients through c_{big_m}")));
    }
    let f_m: Poly = s.prefix[..=big_m].to_vec();
    let deg_bound = f.z_coeffs.iter().map(Vec::len).max().unwrap_or(0) + big_m * f.z_degree() + 1;
    let fz_at = trim(fz.eval_series(&f_m, deg_bound));
    if order(&fz_at) != Some(mu) {
        return Err(Error::Inconsistent("derivative order changed on truncation".into()));
    }
    let phi_m: Poly = fz_at[mu..].to_vec();
    let f_at = trim(f.eval_series(&f_m, deg_bound));
    if order(&f_at).is_some_and(|o| o <= big_m) {
        return Err(Error::NotAnnihilating("F(X, f_M) vanishes to low order".into()));
    }
    let psi_m: Poly = f_at.get(big_m + 1..).map(<[_]>::to_vec).unwrap_or_default();

    // Taylor coefficients T_k = Σ_h a_h C(h, k) f_M^{h−k}
    let zd = f.z_degree();
    let mut powers: Vec<Poly> = vec![vec![BigRational::one()]];
    for _ in 0..zd {
        let next = mul_trunc(powers.last().unwrap(), &f_m, deg_bound);
        powers.push(trim(next));
    }
    let taylor: Vec<Poly> = (0..=zd)
        .map(|k| {
            let mut acc: Poly = Vec::new();
            for h in k..=zd {
                let c = BigRational::from_integer(binomial(h, k));
                let term: Poly = mul_trunc(&f.z_coeffs[h], &powers[h - k], deg_bound).iter().map(|x| x * &c).collect();
                add_into(&mut acc, &term);
            }
            trim(acc)
        })
        .collect();
    let g_m = BiPoly::new(taylor.iter().skip(2).cloned().collect());

    // F₁ = −((φ_M − φ_M(0))/X · Z + ψ_M + Z² G_M(X, X^{μ+1} Z))
    let phi0 = phi_m[0].clone();
    let mut z_coeffs: Vec<Poly> = vec![psi_m.clone(), phi_m[1..].to_vec()];
    for (k, tk) in taylor.iter().enumerate().skip(2) {
        let shift = (mu + 1) * (k - 2);
        let mut p = vec![BigRational::zero(); shift];
        p.extend(tk.iter().cloned());
        z_coeffs.push(p);
    }
    let f1 = BiPoly::new(z_coeffs).scale(&-BigRational::one());

    let mut lcm = phi0.denom().clone();
    for (_, _, c) in f1.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let l = BigRational::from_integer(lcm);
    let rho_q = &phi0 * &l;
    let f0_q = f1.scale(&l);
    let mut content = rho_q.numer().abs();
    for (_, _, c) in f0_q.terms() {
        content = content.gcd(c.numer());
    }
    let rho = rho_q.to_integer() / &content;
    let f0 = f0_q.scale(&BigRational::new(BigInt::one(), content));

    let checked_to = t - big_m;
    let tail = tail_series(&s.prefix, big_m, big_mp);
    let rhs = f0.eval_series(&tail, checked_to);
    for i in 0..checked_to {
        let lhs = BigRational::from_integer(rho.clone()) * coeff(&tail, i);
        let r = if i == 0 { BigRational::zero() } else { coeff(&rhs, i - 1) };
        if lhs != r {
            return Err(Error::Inconsistent(format!("tail equation fails at X^{i}")));
        }
    }
    Ok(TailNormalization { mu, big_m, big_m_prime: big_mp, phi_m, psi_m, g_m, f1, rho, f0, checked_to })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorConstant {
    /// `|ρ|`.
    pub tau: BigInt,
    /// `lcm(τ, denominators of c_1..c_M)`.
    pub n: BigInt,
    /// `N^m c_m ∈ Z` holds for `1 ≤ m ≤ verified_to`.
    pub verified_to: usize,
}

/// First `m ≥ 1` in the prefix with `N^m c_m ∉ Z`.
pub fn first_failure(prefix: &[BigRational], n: &BigInt) -> Option<usize> {
    let mut pow = BigInt::one();
    for (m, c) in prefix.iter().enumerate().skip(1) {
        pow *= n;
        if !(c * BigRational::from_integer(pow.clone())).is_integer() {
            return Some(m);
        }
    }
    None
}

pub fn denominator_constant(tn: &TailNormalization, s: &AlgebraicSeries) -> Result<DenominatorConstant> {
    let tail = tail_series(&s.prefix, tn.big_m, tn.big_m_prime);
    let rho = &tn.rho;
    let terms: Vec<(usize, usize, BigInt)> = tn.f0.terms().into_iter().map(|(j, h, c)| (j, h, c.to_integer())).collect();
    let max_h = terms.iter().map(|t| t.1).max().unwrap_or(0);
    // g_m = ρ^m γ_m via the recursion, compared with the prefix
    let mut g: Vec<BigInt> = vec![BigInt::zero()];
    let mut rho_pow = BigInt::one();
    for m in 1..tail.len() {
        rho_pow *= rho;
        let mut powers: Vec<Vec<BigInt>> = vec![{
            let mut one = vec![BigInt::zero(); m];
            one[0] = BigInt::one();
            one
        }];
        for _ in 0..max_h {
            let prev = powers.last().unwrap();
            let mut next = vec![BigInt::zero(); m];
            for (i, x) in prev.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (k, y) in g.iter().enumerate().take(m - i) {
                    next[i + k] += x * y;
                }
            }
            powers.push(next);
        }
        let mut acc = BigInt::zero();
        for (j, h, mu_jh) in &terms {
            if *j + 1 > m {
                continue;
            }
            let k = m - 1 - j;
            acc += mu_jh * rho.pow(*j as u32) * &powers[*h][k];
        }
        let expected = &tail[m] * BigRational::from_integer(rho_pow.clone());
        if BigRational::from_integer(acc.clone()) != expected {
            return Err(Error::RecursionMismatch(m));
        }
        g.push(acc);
    }
    let tau = rho.abs();
    let n = s.prefix[1..=tn.big_m].iter().fold(tau.clone(), |acc, c| acc.lcm(c.denom()));
    if let Some(m) = first_failure(&s.prefix, &n) {
        return Err(Error::Inconsistent(format!("N^m c_m is not integral at m = {m}")));
    }
    Ok(DenominatorConstant { tau, n, verified_to: s.order() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTrial {
    pub candidate: BigInt,
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimization {
    pub minimal: BigInt,
    pub trials: Vec<ConstantTrial>,
}

fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.to_u64().expect("constant fits in u64");
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Lowers each prime exponent of `n` while the prefix still passes. The
/// result passes on the prefix; it is not claimed to be minimal overall.
pub fn minimize_constant(prefix: &[BigRational], n: &BigInt) -> Minimization {
    let mut current = n.clone();
    let mut trials = Vec::new();
    for q in prime_factors(n) {
        let q = BigInt::from(q);
        while current.is_multiple_of(&q) {
            let candidate = &current / &q;
            let fail = first_failure(prefix, &candidate);
            trials.push(ConstantTrial { candidate: candidate.clone(), first_failure: fail });
            if fail.is_some() {
                break;
            }
            current = candidate;
        }
    }
    Minimization { minimal: current, trials }
}
