//! Classical multivariate series
//! `F(t) = Σ_m ∏_j (θ_j)_{C_j(m)} / ∏_k (σ_k)_{D_k(m)} · t^m`,
//! their A-configuration, and the Landau-type step function `ξ`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::{fmt_rational, lcm_of_denominators, multiplicative_order, require_prime};
use crate::arith::{shift_vector, BoxedRational, Side};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::geometry::lp::{self, LpResult, StandardLp};
use crate::geometry::{self, FaceDescriptor};
use crate::lattice::{Configuration, GroupZA};

/// Data of a classical series: linear forms `C_j = Σ_s c_{js} x_s`,
/// `D_k = Σ_s d_{ks} x_s`, parameters `θ_j, σ_k ∈ (0, 1]` and a common
/// denominator `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalSpec {
    pub c: Vec<Vec<u64>>,
    pub d: Vec<Vec<u64>>,
    pub theta: Vec<BigRational>,
    pub sigma: Vec<BigRational>,
    pub denominator: u64,
}

fn in_unit_interval(q: &BigRational) -> bool {
    q.is_positive() && *q <= BigRational::one()
}

impl ClassicalSpec {
    /// Validates the data. `denominator` defaults to the lcm of the parameter
    /// denominators; a supplied value must be a multiple of it.
    pub fn new(
        c: Vec<Vec<u64>>,
        d: Vec<Vec<u64>>,
        theta: Vec<BigRational>,
        sigma: Vec<BigRational>,
        denominator: Option<u64>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidClassical(m));
        if c.is_empty() || d.is_empty() {
            return bad("J and K must be positive".into());
        }
        let r = c[0].len();
        if r == 0 {
            return bad("r must be positive".into());
        }
        if c.iter().chain(&d).any(|row| row.len() != r) {
            return bad("rows of c and d must all have length r".into());
        }
        if theta.len() != c.len() || sigma.len() != d.len() {
            return bad("Θ must have J entries and Σ must have K entries".into());
        }
        if let Some(j) = c.iter().position(|row| row.iter().all(|&x| x == 0)) {
            return bad(format!("C_{} is identically zero", j + 1));
        }
        if let Some(k) = d.iter().position(|row| row.iter().all(|&x| x == 0)) {
            return bad(format!("D_{} is identically zero", k + 1));
        }
        for s in 0..r {
            if c.iter().chain(&d).all(|row| row[s] == 0) {
                return bad(format!("variable x_{} does not appear", s + 1));
            }
            let cs: u64 = c.iter().map(|row| row[s]).sum();
            let ds: u64 = d.iter().map(|row| row[s]).sum();
            if cs != ds {
                return bad(format!("column sums differ for variable x_{} ({cs} ≠ {ds})", s + 1));
            }
        }
        if let Some(x) = theta.iter().chain(&sigma).find(|q| !in_unit_interval(q)) {
            return bad(format!("parameter {} is not in (0, 1]", fmt_rational(x)));
        }
        let lcm = lcm_of_denominators(theta.iter().chain(&sigma));
        let lcm = lcm.to_u64().ok_or(Error::DenominatorTooLarge(lcm.to_string(), u64::MAX))?;
        let denominator = match denominator {
            None => lcm,
            Some(dd) if dd > 0 && dd % lcm == 0 => dd,
            Some(dd) => return bad(format!("D = {dd} does not clear the parameter denominators")),
        };
        Ok(ClassicalSpec { c, d, theta, sigma, denominator })
    }

    pub fn r(&self) -> usize {
        self.c[0].len()
    }

    pub fn j(&self) -> usize {
        self.c.len()
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    /// `n = r + J + K`.
    pub fn n(&self) -> usize {
        self.r() + self.j() + self.k()
    }

    fn form(row: &[u64], m: &[BigRational]) -> BigRational {
        row.iter()
            .zip(m)
            .fold(BigRational::zero(), |acc, (&c, x)| acc + x * BigRational::from_integer(BigInt::from(c)))
    }

    fn form_int(row: &[u64], m: &[u64]) -> u64 {
        row.iter().zip(m).map(|(c, x)| c * x).sum()
    }
}

/// The configuration `A ⊂ Z^n`, the exponent vector `v` and `β = Σ v_i a_i`.
#[derive(Debug, Clone)]
pub struct BuiltConfiguration {
    pub cfg: Configuration,
    pub v: Vec<BigRational>,
    pub beta: Vec<BigRational>,
}

fn configuration_for(spec: &ClassicalSpec, theta: &[BigRational], sigma: &[BigRational]) -> Result<BuiltConfiguration> {
    let (r, jj, kk, n) = (spec.r(), spec.j(), spec.k(), spec.n());
    let mut columns: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|t| BigInt::from((i == t) as i64)).collect())
        .collect();
    for s in 0..r {
        let mut a = vec![BigInt::zero(); n];
        a[s] = BigInt::one();
        for j in 0..jj {
            a[r + j] = BigInt::from(spec.c[j][s]);
        }
        for k in 0..kk {
            a[r + jj + k] = -BigInt::from(spec.d[k][s]);
        }
        columns.push(a);
    }
    let cfg = Configuration::new(columns)?.with_homogeneity(vec![BigRational::one(); n])?;
    let one = BigRational::one();
    let mut v: Vec<BigRational> = vec![-one.clone(); r];
    v.extend(theta.iter().map(|t| -t.clone()));
    v.extend(sigma.iter().map(|s| s - &one));
    v.extend(vec![BigRational::zero(); r]);
    let beta = cfg.combine(&v);
    Ok(BuiltConfiguration { cfg, v, beta })
}

pub fn build_configuration(spec: &ClassicalSpec) -> Result<BuiltConfiguration> {
    configuration_for(spec, &spec.theta, &spec.sigma)
}

/// `(z)_k = z (z + 1) ⋯ (z + k − 1)`.
pub fn pochhammer(z: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = z.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

pub fn f_coefficient(spec: &ClassicalSpec, m: &[u64]) -> Result<BigRational> {
    if m.len() != spec.r() {
        return Err(Error::InvalidArgument(format!("m must have {} entries", spec.r())));
    }
    let num = spec
        .c
        .iter()
        .zip(&spec.theta)
        .fold(BigRational::one(), |acc, (row, t)| acc * pochhammer(t, ClassicalSpec::form_int(row, m)));
    let den = spec
        .d
        .iter()
        .zip(&spec.sigma)
        .fold(BigRational::one(), |acc, (row, s)| acc * pochhammer(s, ClassicalSpec::form_int(row, m)));
    Ok(num / den)
}

/// The relation `(−m, −C(m), D(m), m)` indexing the term of `m`.
pub fn lattice_vector(spec: &ClassicalSpec, m: &[u64]) -> Vec<BigInt> {
    let mut l: Vec<BigInt> = m.iter().map(|&x| -BigInt::from(x)).collect();
    l.extend(spec.c.iter().map(|row| -BigInt::from(ClassicalSpec::form_int(row, m))));
    l.extend(spec.d.iter().map(|row| BigInt::from(ClassicalSpec::form_int(row, m))));
    l.extend(m.iter().map(|&x| BigInt::from(x)));
    l
}

/// `[v]_l = sign · F_m` at `l = lattice_vector(m)`, with
/// `sign = (−1)^{Σ m_s + Σ_j C_j(m)}`.
pub fn term_sign(spec: &ClassicalSpec, m: &[u64]) -> i64 {
    let e: u64 = m.iter().sum::<u64>() + spec.c.iter().map(|row| ClassicalSpec::form_int(row, m)).sum::<u64>();
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ξ(Θ′, Σ′; x) = Σ_j ⌊1 − θ′_j + C_j(x)⌋ − Σ_k ⌊1 − σ′_k + D_k(x)⌋`.
pub fn xi_eval(theta: &[BigRational], sigma: &[BigRational], spec: &ClassicalSpec, x: &[BigRational]) -> BigInt {
    let one = BigRational::one();
    let plus: BigInt = spec
        .c
        .iter()
        .zip(theta)
        .map(|(row, t)| (&one - t + ClassicalSpec::form(row, x)).floor().to_integer())
        .sum();
    let minus: BigInt = spec
        .d
        .iter()
        .zip(sigma)
        .map(|(row, s)| (&one - s + ClassicalSpec::form(row, x)).floor().to_integer())
        .sum();
    plus - minus
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiMinimum {
    pub minimum: BigInt,
    pub minimizer: Vec<BigRational>,
}

/// One-variable minimum: `ξ` is constant on the half-open cells between
/// consecutive breakpoints, so evaluating at each left endpoint suffices.
fn xi_sweep(theta: &[BigRational], sigma: &[BigRational], spec: &ClassicalSpec) -> XiMinimum {
    let one = BigRational::one();
    let mut points: BTreeSet<BigRational> = BTreeSet::new();
    points.insert(BigRational::zero());
    let rows = spec.c.iter().zip(theta).chain(spec.d.iter().zip(sigma));
    for (row, param) in rows {
        let c = row[0] as i64;
        for m in -1..=c {
            let x = (param + BigRational::from_integer(BigInt::from(m))) / BigRational::from_integer(BigInt::from(c));
            if !x.is_negative() && x < one {
                points.insert(x);
            }
        }
    }
    let mut best: Option<XiMinimum> = None;
    for x in points {
        let val = xi_eval(theta, sigma, spec, std::slice::from_ref(&x));
        if best.as_ref().is_none_or(|b| val < b.minimum) {
            best = Some(XiMinimum { minimum: val, minimizer: vec![x] });
        }
    }
    best.expect("0 is always a breakpoint")
}

fn psi_iterate(values: &[BigRational], h: u64, mu: usize, bound: u64) -> Result<Vec<BigRational>> {
    values
        .iter()
        .map(|x| {
            let b = BoxedRational::new(x.clone(), BigInt::from(bound), Side::NonNegative)?;
            Ok(b.shift_n(h, mu)?.value().clone())
        })
        .collect()
}

/// Minimum of `w_Δ` over interior points of `−β′ + Z^n` for the configuration
/// built from `(Θ′, Σ′)`, minus `w_Δ(−β′)`, together with a point `x` where
/// `ξ` takes that value.
fn xi_by_lattice(
    theta: &[BigRational],
    sigma: &[BigRational],
    spec: &ClassicalSpec,
    limits: &Limits,
) -> Result<XiMinimum> {
    let built = configuration_for(spec, theta, sigma)?;
    let desc = geometry::facet_description(&built.cfg)?;
    let target: Vec<BigRational> = built.beta.iter().map(|x| -x).collect();
    let interior = FaceDescriptor { tight_set: BTreeSet::new() };
    let c = geometry::coset_min_in_lattice(&desc, &GroupZA::standard(spec.n()), &interior, &target, limits)?;
    let base = desc.gauge(&target).expect("−β′ lies in the cone");
    let diff = &c.minimum - &base;
    if !diff.is_integer() {
        return Err(Error::Inconsistent("weight difference is not an integer".into()));
    }
    let x = interior_representation(&built.cfg, &c.minimizer, spec)?;
    let minimum = diff.to_integer();
    if xi_eval(theta, sigma, spec, &x) != minimum {
        return Err(Error::Inconsistent("recovered point does not realize the lattice minimum".into()));
    }
    Ok(XiMinimum { minimum, minimizer: x })
}

/// Writes `y = Σ z_i a_i` with `z ≥ 0` and the first `r + J` coefficients as
/// large as possible, then returns the last `r` coefficients.
fn interior_representation(cfg: &Configuration, y: &[BigRational], spec: &ClassicalSpec) -> Result<Vec<BigRational>> {
    let n = cfg.dim();
    let big_n = cfg.len();
    let lead = spec.r() + spec.j();
    // variables: z (N), ε, slack per leading index (lead), cap slack
    let width = big_n + 1 + lead + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for row in 0..n {
        let mut r = vec![BigRational::zero(); width];
        for (i, col) in cfg.columns().iter().enumerate() {
            r[i] = BigRational::from_integer(col[row].clone());
        }
        a.push(r);
        b.push(y[row].clone());
    }
    for i in 0..lead {
        // z_i − ε − slack_i = 0
        let mut r = vec![BigRational::zero(); width];
        r[i] = BigRational::one();
        r[big_n] = -BigRational::one();
        r[big_n + 1 + i] = -BigRational::one();
        a.push(r);
        b.push(BigRational::zero());
    }
    // ε + cap = 1
    let mut r = vec![BigRational::zero(); width];
    r[big_n] = BigRational::one();
    r[width - 1] = BigRational::one();
    a.push(r);
    b.push(BigRational::one());
    let mut c = vec![BigRational::zero(); width];
    c[big_n] = -BigRational::one();
    let problem = StandardLp { a, b, c };
    let result = lp::solve(&problem);
    if !result.verify(&problem) {
        return Err(Error::Inconsistent("representation LP certificate failed".into()));
    }
    match result {
        LpResult::Optimal { x, .. } if x[big_n].is_positive() => Ok(x[n..n + spec.r()].to_vec()),
        _ => Err(Error::Inconsistent("minimizer is not an interior point".into())),
    }
}

/// Exact minimum of `ξ(Θ′, Σ′; ·)` over `[0, 1)^r`: a breakpoint sweep when
/// `r = 1`, the lattice criterion otherwise.
pub fn xi_minimum(
    theta: &[BigRational],
    sigma: &[BigRational],
    spec: &ClassicalSpec,
    limits: &Limits,
) -> Result<XiMinimum> {
    if spec.r() == 1 {
        Ok(xi_sweep(theta, sigma, spec))
    } else {
        xi_by_lattice(theta, sigma, spec, limits)
    }
}

/// Lattice-criterion minimum for any `r`, used to cross-check the sweep.
pub fn xi_minimum_by_lattice(
    theta: &[BigRational],
    sigma: &[BigRational],
    spec: &ClassicalSpec,
    limits: &Limits,
) -> Result<XiMinimum> {
    xi_by_lattice(theta, sigma, spec, limits)
}

/// Smallest value of `ξ` on the grid `{0, 1/g, …, (g−1)/g}^r`. A diagnostic
/// only: it can miss cells narrower than the grid step.
pub fn xi_grid_minimum(theta: &[BigRational], sigma: &[BigRational], spec: &ClassicalSpec, g: u64) -> XiMinimum {
    let r = spec.r();
    let mut idx = vec![0u64; r];
    let mut best: Option<XiMinimum> = None;
    loop {
        let x: Vec<BigRational> = idx.iter().map(|&i| BigRational::new(BigInt::from(i), BigInt::from(g))).collect();
        let val = xi_eval(theta, sigma, spec, &x);
        if best.as_ref().is_none_or(|b| val < b.minimum) {
            best = Some(XiMinimum { minimum: val, minimizer: x });
        }
        let mut s = r;
        loop {
            if s == 0 {
                return best.expect("grid is nonempty");
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < g {
                break;
            }
            idx[s] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftTrace {
    pub mu: usize,
    pub theta: Vec<BigRational>,
    pub sigma: Vec<BigRational>,
    pub minimum: BigInt,
    pub minimizer: Vec<BigRational>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTrace {
    pub h: u64,
    pub a: u64,
    pub shifts: Vec<ShiftTrace>,
    pub holds: bool,
}

/// `ξ(ψ_h^{(μ)}(Θ), ψ_h^{(μ)}(Σ); ·) ≥ 0` for `μ = 0..a`, `a = ord_D(h)`;
/// success certifies p-integrality for every prime `p ≡ h (mod D)`.
pub fn thm56_check(spec: &ClassicalSpec, h: u64, limits: &Limits) -> Result<ClassTrace> {
    let dd = spec.denominator;
    if h == 0 || h.gcd(&dd) != 1 {
        return Err(Error::NotCoprime { h, bound: dd.to_string() });
    }
    let a = multiplicative_order(h, dd)?;
    let shifts = (0..a as usize)
        .map(|mu| {
            let theta = psi_iterate(&spec.theta, h, mu, dd)?;
            let sigma = psi_iterate(&spec.sigma, h, mu, dd)?;
            let m = xi_minimum(&theta, &sigma, spec, limits)?;
            Ok(ShiftTrace { mu, holds: !m.minimum.is_negative(), minimum: m.minimum, minimizer: m.minimizer, theta, sigma })
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = shifts.iter().all(|s| s.holds);
    Ok(ClassTrace { h, a, shifts, holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalVerdict {
    pub classes: Vec<ClassTrace>,
    pub holds: bool,
    pub note: Option<String>,
}

/// Runs [`thm56_check`] on the least positive representative of every class
/// prime to `D`.
pub fn cor57_check(spec: &ClassicalSpec, limits: &Limits) -> Result<ClassicalVerdict> {
    let dd = spec.denominator;
    let reps: Vec<u64> = (1..=dd).filter(|h| h.gcd(&dd) == 1).collect();
    let classes = limits.exec.try_map(reps, |h| thm56_check(spec, h, &Limits { exec: crate::Exec::Sequential, ..*limits }))?;
    let holds = classes.iter().all(|c| c.holds);
    let note = holds.then(|| {
        "there exist positive integers b_1, …, b_r such that F(b_1 t_1, …, b_r t_r) has integral coefficients"
            .to_string()
    });
    Ok(ClassicalVerdict { classes, holds, note })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub coset_minimum: BigRational,
    /// `r + Σ ψ^{(μ)}(θ_j) + Σ ψ^{(μ)}(1 − σ_k)`.
    pub digit_value: BigRational,
    pub lattice_side: bool,
    pub xi_minimum: BigInt,
    pub xi_side: bool,
    pub agree: bool,
}

/// Compares the coset equality for shift `μ` at `p` with the sign of the
/// `ξ` sweep for the `ψ_p^{(μ)}`-shifted parameters (one variable only).
pub fn prop514_crosscheck(spec: &ClassicalSpec, mu: usize, p: u64, limits: &Limits) -> Result<CrossCheck> {
    if spec.r() != 1 {
        return Err(Error::InvalidArgument("the cross-check needs r = 1".into()));
    }
    require_prime(p)?;
    let dd = spec.denominator;
    if dd.is_multiple_of(p) {
        return Err(Error::NotCoprime { h: p, bound: dd.to_string() });
    }
    let built = build_configuration(spec)?;
    let desc = geometry::facet_description(&built.cfg)?;
    let shifted = shift_vector(&built.v, p, mu)?;
    let witness: Vec<BigRational> = built.cfg.combine(&shifted).iter().map(|x| -x).collect();
    let interior = FaceDescriptor { tight_set: BTreeSet::new() };
    let coset = geometry::coset_min_in_lattice(&desc, &GroupZA::standard(spec.n()), &interior, &witness, limits)?;
    let one = BigRational::one();
    let theta = psi_iterate(&spec.theta, p, mu, dd)?;
    let sigma = psi_iterate(&spec.sigma, p, mu, dd)?;
    let co_sigma: Vec<BigRational> = spec.sigma.iter().map(|s| &one - s).collect();
    let co_sigma = psi_iterate(&co_sigma, p, mu, dd)?;
    let digit_value = BigRational::from_integer(BigInt::from(spec.r()))
        + theta.iter().fold(BigRational::zero(), |acc, x| acc + x)
        + co_sigma.iter().fold(BigRational::zero(), |acc, x| acc + x);
    let lattice_side = coset.minimum == digit_value;
    let sweep = xi_sweep(&theta, &sigma, spec);
    let xi_side = !sweep.minimum.is_negative();
    Ok(CrossCheck {
        coset_minimum: coset.minimum,
        digit_value,
        lattice_side,
        xi_minimum: sweep.minimum,
        xi_side,
        agree: lattice_side == xi_side,
    })
}
