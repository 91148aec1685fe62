//! Coefficients and p-adic valuations of the series
//! `Φ_{v,π}(λ) = Σ_{l ∈ L_v} [v]_l π^{Σ l_i} λ^{v+l}`, the integrality decision
//! procedure with its certificates, and formal checks against the
//! hypergeometric operators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{fmt_rational, fmt_vec, lcm_of_denominators, require_prime, valuation};
use crate::arith::{self, DigitExpansion};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::geometry::dd::polytope_vertices;
use crate::geometry::enumerate::LatticePolytope;
use crate::geometry::{self, ShiftCheck, WeightBound};
use crate::lattice::{self, Configuration, LatticeBasis};

/// One term `[v]_l π^{Σ l_i} λ^{v+l}` of the normalized series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTerm {
    pub l: Vec<BigInt>,
    pub coefficient: BigRational,
    pub pi_exponent: BigInt,
    /// `ord_p([v]_l) + Σ l_i / (p − 1)`, from the factored coefficient.
    pub valuation: BigRational,
}

/// `[v_i]_{l_i}`.
pub fn bracket(vi: &BigRational, li: &BigInt) -> BigRational {
    let one = BigRational::one();
    let mut acc = BigRational::one();
    if li.is_positive() {
        let mut x = vi.clone();
        let mut k = BigInt::zero();
        while &k < li {
            x += &one;
            acc *= &x;
            k += 1;
        }
        acc.recip()
    } else {
        let mut x = vi.clone();
        let mut k = BigInt::zero();
        while k < -li {
            acc *= &x;
            x -= &one;
            k += 1;
        }
        acc
    }
}

/// `[v]_l = ∏ [v_i]_{l_i}`, rejecting offsets that change the negative support.
pub fn bracket_vector(v: &[BigRational], l: &[BigInt]) -> Result<BigRational> {
    if v.len() != l.len() {
        return Err(Error::InvalidArgument("v and l have different lengths".into()));
    }
    if !lattice::in_lv(v, l) {
        return Err(Error::NotInLv(lattice::fmt_int_vec(l)));
    }
    Ok(v.iter().zip(l).fold(BigRational::one(), |acc, (vi, li)| acc * bracket(vi, li)))
}

fn pi_valuation(pi_exponent: &BigInt, p: u64) -> BigRational {
    BigRational::new(pi_exponent.clone(), BigInt::from(p - 1))
}

/// The term at `l`, with its valuation computed directly from the coefficient.
pub fn coefficient(v: &[BigRational], l: &[BigInt], p: u64) -> Result<SeriesTerm> {
    require_prime(p)?;
    let coefficient = bracket_vector(v, l)?;
    let pi_exponent: BigInt = l.iter().sum();
    let ord = valuation(&coefficient, p).expect("coefficients are nonzero");
    let valuation = BigRational::from_integer(BigInt::from(ord)) + pi_valuation(&pi_exponent, p);
    Ok(SeriesTerm { l: l.to_vec(), coefficient, pi_exponent, valuation })
}

/// Valuation of a term from digit sums alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaValuation {
    /// Least `b` with `0 ≤ v_i^{(b)} + l_i ≤ p^b − 1` for every `i`.
    pub b: usize,
    /// `(wt_p((v+l)^{(b)}) − wt_p(v^{(b)})) / (p − 1)`.
    pub value: BigRational,
    /// For `v` in the box: `(b′, (b′/(p−1))(w_p(v + (1−p^{b′})^{-1} l) − w_p(v)))`
    /// with `b′` the least multiple of the orbit period that is at least `b`.
    pub weight_form: Option<(usize, BigRational)>,
}

const MAX_DIGITS: usize = 1 << 16;

pub fn valuation_by_formula(v: &[BigRational], l: &[BigInt], p: u64) -> Result<FormulaValuation> {
    require_prime(p)?;
    if v.len() != l.len() {
        return Err(Error::InvalidArgument("v and l have different lengths".into()));
    }
    if !lattice::in_lv(v, l) {
        return Err(Error::NotInLv(lattice::fmt_int_vec(l)));
    }
    let expansions: Vec<DigitExpansion> = v
        .iter()
        .map(|x| Ok(arith::PAdicRational::new(x.clone(), p)?.expansion()))
        .collect::<Result<_>>()?;
    let pb = BigInt::from(p);
    // the condition is monotone in b, so the first hit is the least b
    let mut b = 1;
    let mut power = pb.clone();
    let truncs = loop {
        let t: Vec<BigInt> = expansions.iter().map(|e| e.truncate(b)).collect();
        let ok = t.iter().zip(l).all(|(ti, li)| {
            let s = ti + li;
            !s.is_negative() && s < power
        });
        if ok {
            break t;
        }
        b += 1;
        power *= &pb;
        if b > MAX_DIGITS {
            return Err(Error::Inconsistent("no admissible digit count found".into()));
        }
    };
    let shifted: Vec<BigInt> = truncs.iter().zip(l).map(|(t, li)| t + li).collect();
    let diff = arith::digit_sum_vec(&shifted, p) - arith::digit_sum_vec(&truncs, p);
    let value = BigRational::new(diff, BigInt::from(p - 1));
    let weight_form = match arith::orbit_period(v, p) {
        Ok(a) => {
            let a = a as usize;
            let b2 = b.div_ceil(a) * a;
            let q = BigInt::from(p).pow(b2 as u32) - BigInt::one();
            // w_p(x) = wt_p((1 − p^{b′}) x) / b′ for any multiple b′ of the period
            let qr = BigRational::from_integer(q.clone());
            let scaled = |x: &BigRational| (-x * &qr).to_integer();
            let r: Vec<BigRational> =
                v.iter().zip(l).map(|(x, li)| x - BigRational::new(li.clone(), q.clone())).collect();
            let sr: Vec<BigInt> = r.iter().map(scaled).collect();
            let sv: Vec<BigInt> = v.iter().map(scaled).collect();
            let diff = arith::digit_sum_vec(&sr, p) - arith::digit_sum_vec(&sv, p);
            Some((b2, BigRational::new(diff, BigInt::from(p - 1))))
        }
        Err(_) => None,
    };
    Ok(FormulaValuation { b, value, weight_form })
}

/// A term together with its digit-formula valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedTerm {
    pub coeffs: Vec<i64>,
    pub term: SeriesTerm,
    pub formula: FormulaValuation,
}

/// All terms whose kernel-basis coordinates lie in `[−order, order]`, in
/// graded order. Fails if the two valuations ever disagree.
pub fn expand(
    cfg: &Configuration,
    v: &[BigRational],
    p: u64,
    order: u64,
    limits: &Limits,
) -> Result<Vec<ExpandedTerm>> {
    cfg.check_len(v)?;
    require_prime(p)?;
    let basis = lattice::kernel_basis(cfg);
    let points = lattice::enumerate_lv(&basis, v, order, limits)?;
    limits.exec.try_map(points, |pt| {
        let term = coefficient(v, &pt.l, p)?;
        let formula = valuation_by_formula(v, &pt.l, p)?;
        let agree = formula.value == term.valuation
            && formula.weight_form.as_ref().is_none_or(|(_, w)| *w == term.valuation);
        if !agree {
            return Err(Error::Inconsistent(format!(
                "valuation mismatch at l = {}",
                lattice::fmt_int_vec(&pt.l)
            )));
        }
        Ok(ExpandedTerm { coeffs: pt.coeffs, term, formula })
    })
}

/// Search grid for lighter points of `R_p(β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    /// `b` ranges over `a, 2a, …, max_b_multiplier·a`.
    pub max_b_multiplier: u32,
    /// Bound on the kernel-basis coordinates of `l`.
    pub box_radius: u64,
    pub limits: Limits,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { max_b_multiplier: 3, box_radius: 40, limits: Limits::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    IntegralCertified,
    UnboundedCertified,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::IntegralCertified => "integral_certified",
            Status::UnboundedCertified => "unbounded_certified",
            Status::Undecided => "undecided",
        }
    }
}

/// A point `r = v + (1 − p^b)^{-1} l` of `R_p(β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub r: Vec<BigRational>,
    pub b: usize,
    pub l: Vec<BigInt>,
    pub weight: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub b_values: Vec<usize>,
    pub box_radius: u64,
    pub examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub modulus: BigInt,
    pub residue: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub status: Status,
    pub p: u64,
    pub w_p_v: BigRational,
    pub lower_bound: BigRational,
    pub bound: WeightBound,
    pub shift_checks: Vec<ShiftCheck>,
    /// Lightest point found by the search (only reported when lighter than `v`).
    pub witness: Option<Witness>,
    pub residue_class: ResidueClass,
    pub search_bounds: SearchBounds,
}

impl Certificate {
    /// Rechecks the claims the certificate makes.
    pub fn validate(&self, cfg: &Configuration, v: &[BigRational]) -> bool {
        match self.status {
            Status::IntegralCertified => {
                self.w_p_v == self.lower_bound || (!self.shift_checks.is_empty() && self.shift_checks.iter().all(|c| c.holds))
            }
            Status::UnboundedCertified => {
                let Some(w) = &self.witness else { return false };
                let beta = cfg.combine(v);
                arith::weight(&w.r, self.p).is_ok_and(|x| x.weight == w.weight)
                    && w.weight < self.w_p_v
                    && cfg.combine(&w.r) == beta
                    && lattice::in_lv(v, &w.l)
                    && cfg.is_relation(&w.l)
            }
            Status::Undecided => self.lower_bound < self.w_p_v,
        }
    }
}

fn residue_of(p: u64, vectors: &[&[BigRational]]) -> ResidueClass {
    let modulus = vectors.iter().fold(BigInt::one(), |acc, v| acc.lcm(&lcm_of_denominators(v.iter())));
    ResidueClass { residue: BigInt::from(p).mod_floor(&modulus), modulus }
}

struct Candidate {
    weight: BigRational,
    r: Vec<BigRational>,
    l: Vec<BigInt>,
}

fn better(a: &Candidate, b: &Candidate) -> bool {
    a.weight < b.weight || (a.weight == b.weight && a.r < b.r)
}

/// Lightest point of `R_p(β)` of the form `v + (1 − p^b)^{-1} l` with the
/// kernel coordinates of `l` in the box; exhaustive for the given `b`.
fn lightest_for_b(
    basis: &LatticeBasis,
    v: &[BigRational],
    p: u64,
    b: usize,
    radius: u64,
    limits: &Limits,
) -> Result<(Option<Candidate>, usize)> {
    let k = basis.rank();
    let q = BigInt::from(p).pow(b as u32) - BigInt::one();
    let qr = BigRational::from_integer(q.clone());
    let evaluate = |l: Vec<BigInt>| -> Result<Candidate> {
        let r: Vec<BigRational> = v.iter().zip(&l).map(|(x, li)| x - BigRational::new(li.clone(), q.clone())).collect();
        // (1 − p^b) r = q·(−v) + l is a nonnegative integer vector
        let s: Vec<BigInt> = r.iter().map(|x| (-x * &qr).to_integer()).collect();
        let weight = BigRational::new(arith::digit_sum_vec(&s, p), BigInt::from(b as u64));
        Ok(Candidate { weight, r, l })
    };
    if k == 0 {
        return Ok((Some(evaluate(vec![BigInt::zero(); v.len()])?), 1));
    }
    // q v_i ≤ (Kᵀ z)_i ≤ q (1 + v_i) and |z_j| ≤ radius
    let mut g = Vec::new();
    let mut h = Vec::new();
    for (i, vi) in v.iter().enumerate() {
        let col: Vec<BigRational> = basis.vectors.iter().map(|row| BigRational::from_integer(row[i].clone())).collect();
        g.push(col.clone());
        h.push(vi * &qr);
        g.push(col.iter().map(|x| -x).collect());
        h.push(-((vi + BigRational::one()) * &qr));
    }
    let rad = BigRational::from_integer(BigInt::from(radius));
    for j in 0..k {
        let mut e = vec![BigRational::zero(); k];
        e[j] = BigRational::one();
        g.push(e.clone());
        h.push(-rad.clone());
        g.push(e.iter().map(|x| -x).collect());
        h.push(-rad.clone());
    }
    let vertices = polytope_vertices(&g, &h, k);
    let poly = LatticePolytope::from_vertices(&vertices, k);
    type Acc = (Option<Candidate>, usize);
    let (best, examined) = poly.fold(
        limits,
        || (None, 0),
        |acc: &mut Acc, z| {
            acc.1 += 1;
            let cand = evaluate(basis.combine(z)).expect("candidate evaluation");
            if acc.0.as_ref().is_none_or(|cur| better(&cand, cur)) {
                acc.0 = Some(cand);
            }
        },
        |a: Acc, b: Acc| {
            let best = match (a.0, b.0) {
                (Some(x), Some(y)) => Some(if better(&y, &x) { y } else { x }),
                (x, y) => x.or(y),
            };
            (best, a.1 + b.1)
        },
    )?;
    Ok((best, examined))
}

/// The integrality decision for `Φ_{v,π}` at `p`.
pub fn analyze(cfg: &Configuration, v: &[BigRational], p: u64, params: &SearchParams) -> Result<Certificate> {
    require_prime(p)?;
    cfg.check_len(v)?;
    let wv = arith::weight(v, p)?;
    let a = wv.period as usize;
    let basis = lattice::kernel_basis(cfg);
    let mut best: Option<(Candidate, usize)> = None;
    let mut b_values = Vec::new();
    let mut examined = 0;
    for m in 1..=params.max_b_multiplier.max(1) as usize {
        let b = a * m;
        b_values.push(b);
        let (cand, count) = lightest_for_b(&basis, v, p, b, params.box_radius, &params.limits)?;
        examined += count;
        if let Some(c) = cand {
            if best.as_ref().is_none_or(|(cur, _)| c.weight < cur.weight) {
                best = Some((c, b));
            }
        }
    }
    let bound = geometry::lower_bound_thm46(cfg, v, p, &params.limits)?;
    let witness = best
        .filter(|(c, _)| c.weight < wv.weight)
        .map(|(c, b)| Witness { r: c.r, b, l: c.l, weight: c.weight });
    let mut shift_checks = Vec::new();
    let status = if witness.is_some() {
        Status::UnboundedCertified
    } else if bound.bound == wv.weight {
        Status::IntegralCertified
    } else {
        shift_checks = geometry::check_criterion_49(cfg, v, p, &params.limits)?;
        if shift_checks.iter().all(|c| c.holds) {
            Status::IntegralCertified
        } else {
            Status::Undecided
        }
    };
    let residue_class = match &witness {
        Some(w) => residue_of(p, &[v, &w.r]),
        None => residue_of(p, &[v]),
    };
    Ok(Certificate {
        status,
        p,
        w_p_v: wv.weight,
        lower_bound: bound.bound.clone(),
        bound,
        shift_checks,
        witness,
        residue_class,
        search_bounds: SearchBounds { b_values, box_radius: params.box_radius, examined },
    })
}

/// One member `l^{(c)} = (1 − p^{bc})(r − v)` of the family of terms whose
/// valuations decrease without bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTerm {
    pub c: u32,
    pub l: Vec<BigInt>,
    pub predicted: BigRational,
}

pub fn unbounded_family(v: &[BigRational], r: &[BigRational], p: u64, count: u32) -> Result<Vec<FamilyTerm>> {
    require_prime(p)?;
    let wv = arith::weight(v, p)?;
    let wr = arith::weight(r, p)?;
    let b = (wv.period as usize).lcm(&(wr.period as usize));
    let diff = &wr.weight - &wv.weight;
    (1..=count)
        .map(|c| {
            let bc = b * c as usize;
            let factor = BigRational::from_integer(BigInt::one() - BigInt::from(p).pow(bc as u32));
            let l: Vec<BigInt> = r
                .iter()
                .zip(v)
                .map(|(ri, vi)| {
                    let x = (ri - vi) * &factor;
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect();
            let predicted = &diff * BigRational::new(BigInt::from(bc as u64), BigInt::from(p - 1));
            Ok(FamilyTerm { c, l, predicted })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transfer {
    /// Integral for every prime in the class.
    Integral,
    /// Unbounded for every prime in the class.
    Unbounded,
    None,
}

/// The verdict of a certificate, extended to a residue class of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueStatement {
    pub modulus: BigInt,
    pub residue: BigInt,
    pub transfer: Transfer,
    pub text: String,
}

pub fn residue_transfer(cert: &Certificate, v: &[BigRational], modulus: &BigInt) -> Result<ResidueStatement> {
    if !modulus.is_positive() {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let clears = |xs: &[BigRational]| xs.iter().all(|x| (x * BigRational::from_integer(modulus.clone())).is_integer());
    if !clears(v) {
        return Err(Error::InvalidArgument(format!("{modulus} does not clear the denominators of v")));
    }
    if let Some(w) = &cert.witness {
        if !clears(&w.r) {
            return Err(Error::InvalidArgument(format!("{modulus} does not clear the denominators of the witness")));
        }
    }
    let residue = BigInt::from(cert.p).mod_floor(modulus);
    let class = if modulus.is_one() { "all p".to_string() } else { format!("all p ≡ {residue} mod {modulus}") };
    let (transfer, text) = match cert.status {
        Status::IntegralCertified => (Transfer::Integral, format!("integral for {class}")),
        Status::UnboundedCertified => (Transfer::Unbounded, format!("unbounded for {class}")),
        Status::Undecided => (Transfer::None, "no residue-class statement".to_string()),
    };
    Ok(ResidueStatement { modulus: modulus.clone(), residue, transfer, text })
}

/// Result of applying the box and Euler operators to a truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemCheck {
    pub passes: bool,
    /// Monomials at which a box operator was checked exactly.
    pub interior_checked: usize,
    /// First monomial offset `l` (relative to `v`) where cancellation failed.
    pub failure: Option<Vec<BigInt>>,
    pub euler_ok: bool,
}

/// `u (u − 1) ⋯ (u − k + 1)`.
fn falling(u: &BigRational, k: &BigInt) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = u.clone();
    let mut i = BigInt::zero();
    while &i < k {
        acc *= &x;
        x -= BigRational::one();
        i += 1;
    }
    acc
}

/// Applies `□_m` for each kernel basis vector `m` and each Euler operator to
/// `Φ_v` truncated to kernel coordinates in `[−order, order]`.
///
/// `□_m` sends the terms at `l` and `l − m` to the same monomial, so the
/// monomial is checked only when both lie in the truncation box.
pub fn verify_hypergeometric_system(cfg: &Configuration, v: &[BigRational], order: u64) -> Result<SystemCheck> {
    cfg.check_len(v)?;
    let basis = lattice::kernel_basis(cfg);
    let k = basis.rank();
    let boxed = lattice::graded_box(k, order, usize::MAX)?;
    let coeff_at = |z: &[i64]| -> (Vec<BigInt>, Option<BigRational>) {
        let l = basis.combine(z);
        let c = lattice::in_lv(v, &l).then(|| bracket_vector(v, &l).expect("offset in L_v"));
        (l, c)
    };
    let beta = cfg.combine(v);
    let mut euler_ok = true;
    let mut interior = 0;
    let mut failure = None;
    let bound = order as i64;
    for z in &boxed {
        let (l, c) = coeff_at(z);
        if c.is_some() && cfg.combine(&lattice::shifted(v, &l)) != beta {
            euler_ok = false;
        }
        for (j, m) in basis.vectors.iter().enumerate() {
            if z[j] - 1 < -bound {
                continue;
            }
            let mut z2 = z.clone();
            z2[j] -= 1;
            let (l2, c2) = coeff_at(&z2);
            let u = lattice::shifted(v, &l);
            let u2 = lattice::shifted(v, &l2);
            let plus = c.as_ref().map_or_else(BigRational::zero, |c| {
                u.iter().zip(m).filter(|(_, mi)| mi.is_positive()).fold(c.clone(), |acc, (ui, mi)| acc * falling(ui, mi))
            });
            let minus = c2.as_ref().map_or_else(BigRational::zero, |c| {
                u2.iter().zip(m).filter(|(_, mi)| mi.is_negative()).fold(c.clone(), |acc, (ui, mi)| acc * falling(ui, &-mi))
            });
            interior += 1;
            if plus != minus && failure.is_none() {
                failure = Some(l.iter().zip(m).map(|(x, mi)| if mi.is_positive() { x - mi } else { x.clone() }).collect());
            }
        }
    }
    if interior == 0 {
        return Err(Error::TruncationTooSmall(format!("order {order} leaves no interior monomial")));
    }
    Ok(SystemCheck { passes: failure.is_none() && euler_ok, interior_checked: interior, failure, euler_ok })
}

pub fn fmt_status_line(cert: &Certificate) -> String {
    format!("w_p(v) = {} ≥ bound = {}", fmt_rational(&cert.w_p_v), fmt_rational(&cert.lower_bound))
}

pub fn describe_witness(w: &Witness) -> String {
    format!("{} at b = {}", fmt_vec(&w.r), w.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn line12() -> Configuration {
        Configuration::from_i64(&[&[1], &[2]]).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let v = [rat(-1, 1), rat(0, 1)];
        assert_eq!(coefficient(&v, &ints(&[0, 0]), 3).unwrap().coefficient, rat(1, 1));
        // (2k)!/k! at k = 3
        assert_eq!(coefficient(&v, &ints(&[-6, 3]), 3).unwrap().coefficient, rat(120, 1));
        let v = [rat(0, 1), rat(-1, 2)];
        // (−1)^m / (4^m m!) at m = 2
        assert_eq!(coefficient(&v, &ints(&[4, -2]), 3).unwrap().coefficient, rat(1, 32));
        assert!(coefficient(&[rat(-1, 1), rat(0, 1)], &ints(&[2, -1]), 3).is_err());
    }

    #[test]
    fn formula_examples() {
        let v = [rat(-1, 1), rat(0, 1)];
        let f = valuation_by_formula(&v, &ints(&[-8, 4]), 3).unwrap();
        assert_eq!(f.value, rat(-1, 1));
        assert_eq!(f.value, coefficient(&v, &ints(&[-8, 4]), 3).unwrap().valuation);
        let v = [rat(0, 1), rat(-1, 2)];
        let f = valuation_by_formula(&v, &ints(&[6, -3]), 3).unwrap();
        assert_eq!(f.value, rat(1, 2));
        assert_eq!(f.weight_form.unwrap().1, rat(1, 2));
        assert_eq!(valuation_by_formula(&v, &ints(&[0, 0]), 3).unwrap().value, rat(0, 1));
    }

    #[test]
    fn analyze_examples() {
        let params = SearchParams::default();
        let c = analyze(&line12(), &[rat(0, 1), rat(-1, 2)], 3, &params).unwrap();
        assert_eq!(c.status, Status::IntegralCertified);
        assert_eq!((c.w_p_v.clone(), c.lower_bound.clone()), (rat(1, 1), rat(1, 1)));
        let v = [rat(-1, 1), rat(0, 1)];
        let c = analyze(&line12(), &v, 3, &params).unwrap();
        assert_eq!(c.status, Status::UnboundedCertified);
        let w = c.witness.as_ref().unwrap();
        assert_eq!(w.r, vec![rat(0, 1), rat(-1, 2)]);
        assert_eq!((w.b, w.l.clone()), (1, ints(&[-2, 1])));
        assert!(c.validate(&line12(), &v));
        let s = residue_transfer(&c, &v, &BigInt::from(2)).unwrap();
        assert_eq!(s.text, "unbounded for all p ≡ 1 mod 2");
        let c = analyze(&line12(), &[rat(0, 1), rat(0, 1)], 3, &params).unwrap();
        assert_eq!(c.status, Status::IntegralCertified);
        assert_eq!(c.w_p_v, rat(0, 1));
    }

    #[test]
    fn family_examples() {
        let v = [rat(-1, 1), rat(0, 1)];
        let r = [rat(0, 1), rat(-1, 2)];
        let fam = unbounded_family(&v, &r, 3, 2).unwrap();
        assert_eq!((fam[0].l.clone(), fam[0].predicted.clone()), (ints(&[-2, 1]), rat(-1, 2)));
        assert_eq!((fam[1].l.clone(), fam[1].predicted.clone()), (ints(&[-8, 4]), rat(-1, 1)));
        assert!(unbounded_family(&v, &v, 3, 3).unwrap().iter().all(|t| t.predicted.is_zero()));
    }

    #[test]
    fn system_check_examples() {
        let ok = verify_hypergeometric_system(&line12(), &[rat(-1, 1), rat(0, 1)], 20).unwrap();
        assert!(ok.passes && ok.interior_checked >= 20);
        let twin = Configuration::multiset_from_i64(&[&[1], &[1]]).unwrap();
        let bad = verify_hypergeometric_system(&twin, &[rat(-1, 1), rat(1, 1)], 20).unwrap();
        assert!(!bad.passes);
        assert!(bad.euler_ok);
    }
}
