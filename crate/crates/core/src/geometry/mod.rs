//! Polyhedral side of the theory: the polytope `Δ = conv(A ∪ {0})`, its cone
//! `C(Δ)`, the weight `w_Δ`, faces, and minimization of `w_Δ` over lattice
//! cosets inside the relative interior of a face.

pub mod dd;
pub mod enumerate;
pub mod lp;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, rational::fmt_vec};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::lattice::hnf::IntMatrix;
use crate::lattice::{group_za, Configuration, GroupZA};
use crate::linalg;
use enumerate::LatticePolytope;
use lp::{LpResult, StandardLp};

/// V- and H-description of `C(Δ)` together with the gauge of `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    /// The columns `a_i`; the origin is implicit.
    pub generators: IntMatrix,
    /// Primitive integer rows `h_f` with `h_f · x ≥ 0` on the cone.
    pub facets: IntMatrix,
    /// Rows `e` with `e · x = 0` on the linear span of the cone.
    pub equalities: IntMatrix,
    pub dim: usize,
    /// Rows `g` with `g · x ≤ 1` cutting `Δ` out of the cone.
    pub gauge_rows: Vec<Vec<BigRational>>,
}

impl ConeDescription {
    fn facet_values(&self, x: &[BigRational]) -> impl Iterator<Item = BigRational> + '_ {
        let x = x.to_vec();
        self.facets.iter().map(move |f| linalg::dot_mixed(f, &x))
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|e| linalg::dot_mixed(e, x).is_zero())
            && self.facet_values(x).all(|v| !v.is_negative())
    }

    /// Indices of the facets vanishing at `x`.
    pub fn tight_set(&self, x: &[BigRational]) -> BTreeSet<usize> {
        self.facet_values(x).enumerate().filter(|(_, v)| v.is_zero()).map(|(i, _)| i).collect()
    }

    /// `w_Δ(x)` for `x` in the cone, read off the facets of `Δ`.
    pub fn gauge(&self, x: &[BigRational]) -> Option<BigRational> {
        if !self.contains(x) {
            return None;
        }
        Some(
            self.gauge_rows
                .iter()
                .map(|g| arith::rational::dot(g, x))
                .fold(BigRational::zero(), |m, v| if v > m { v } else { m }),
        )
    }

    /// Checks the V/H pair against each other: every generator satisfies every
    /// facet, and every facet is tight on `dim − 1` independent generators.
    pub fn certify(&self) -> bool {
        let gens: Vec<Vec<BigRational>> =
            self.generators.iter().map(|g| arith::rational::to_rationals(g)).collect();
        if !gens.iter().all(|g| self.contains(g)) {
            return false;
        }
        if linalg::rank(&gens) != self.dim {
            return false;
        }
        self.facets.iter().all(|f| {
            let tight: Vec<Vec<BigRational>> =
                gens.iter().filter(|g| linalg::dot_mixed(f, g).is_zero()).cloned().collect();
            linalg::rank(&tight) + 1 == self.dim
        })
    }

    /// `min Σ t_i` subject to `Σ t_i a_i = γ`, `t ≥ 0`, with its certificate.
    pub fn w_delta_lp(&self, gamma: &[BigRational]) -> (StandardLp, LpResult) {
        let n = gamma.len();
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| self.generators.iter().map(|g| BigRational::from_integer(g[r].clone())).collect())
            .collect();
        let problem = StandardLp {
            a,
            b: gamma.to_vec(),
            c: vec![BigRational::one(); self.generators.len()],
        };
        let result = lp::solve(&problem);
        (problem, result)
    }
}

/// Facets of `C(Δ)` and the facets of `Δ` away from the origin.
pub fn facet_description(cfg: &Configuration) -> Result<ConeDescription> {
    let n = cfg.dim();
    let cone = dd::cone_hrep_int(cfg.columns(), n);
    if cone.dim == 0 {
        return Err(Error::ZeroDimensionalCone);
    }
    let mut points: Vec<Vec<BigRational>> = cfg.columns().iter().map(|c| arith::rational::to_rationals(c)).collect();
    points.push(vec![BigRational::zero(); n]);
    let delta = dd::polytope_hrep(&points, n);
    let gauge_rows = delta
        .inequalities
        .iter()
        .filter(|r| r[n].is_positive())
        .map(|r| {
            let f0 = BigRational::from_integer(r[n].clone());
            r[..n].iter().map(|x| -BigRational::from_integer(x.clone()) / &f0).collect()
        })
        .collect();
    Ok(ConeDescription {
        generators: cfg.columns().clone(),
        facets: cone.inequalities,
        equalities: cone.equalities,
        dim: cone.dim,
        gauge_rows,
    })
}

/// `w_Δ(γ)` by exact LP; `None` when `γ` lies outside `C(Δ)`.
pub fn w_delta(cfg: &Configuration, gamma: &[BigRational]) -> Result<Option<BigRational>> {
    if gamma.len() != cfg.dim() {
        return Err(Error::InvalidArgument("point has the wrong dimension".into()));
    }
    let desc = ConeDescription {
        generators: cfg.columns().clone(),
        facets: Vec::new(),
        equalities: Vec::new(),
        dim: 0,
        gauge_rows: Vec::new(),
    };
    let (problem, result) = desc.w_delta_lp(gamma);
    if !result.verify(&problem) {
        return Err(Error::Inconsistent("LP certificate failed to verify".into()));
    }
    match result {
        LpResult::Optimal { value, .. } => Ok(Some(value)),
        LpResult::Infeasible { .. } => Ok(None),
        LpResult::Unbounded { .. } => Err(Error::Inconsistent("weight LP is unbounded".into())),
    }
}

/// A face of `C(Δ)`, given by the facets containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceDescriptor {
    pub tight_set: BTreeSet<usize>,
}

/// The smallest face containing `γ`.
pub fn smallest_face(desc: &ConeDescription, gamma: &[BigRational]) -> Result<FaceDescriptor> {
    if !desc.contains(gamma) {
        return Err(Error::OutsideCone(fmt_vec(gamma)));
    }
    Ok(FaceDescriptor { tight_set: desc.tight_set(gamma) })
}

/// Whether `x` lies in the relative interior of the face.
pub fn rel_interior_test(desc: &ConeDescription, face: &FaceDescriptor, x: &[BigRational]) -> bool {
    desc.contains(x) && desc.tight_set(x) == face.tight_set
}

/// Indices of the generators lying on the face.
pub fn face_generators(desc: &ConeDescription, face: &FaceDescriptor) -> Vec<usize> {
    (0..desc.generators.len())
        .filter(|&i| face.tight_set.iter().all(|&f| linalg::dot_int(&desc.facets[f], &desc.generators[i]).is_zero()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetMinimum {
    pub minimum: BigRational,
    /// Lexicographically least point attaining the minimum.
    pub minimizer: Vec<BigRational>,
    /// Number of points attaining the minimum.
    pub minimizers: usize,
    /// Number of lattice points examined.
    pub examined: usize,
}

#[derive(Default)]
struct Best {
    min: Option<(BigRational, Vec<BigRational>, usize)>,
    examined: usize,
}

impl Best {
    fn offer(&mut self, w: BigRational, x: Vec<BigRational>) {
        match &mut self.min {
            None => self.min = Some((w, x, 1)),
            Some((m, best, count)) => {
                if w < *m {
                    *m = w;
                    *best = x;
                    *count = 1;
                } else if w == *m {
                    *count += 1;
                    if x < *best {
                        *best = x;
                    }
                }
            }
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.examined += other.examined;
        if let Some((w, x, c)) = other.min {
            match &mut self.min {
                None => self.min = Some((w, x, c)),
                Some((m, best, count)) => {
                    if w < *m {
                        *m = w;
                        *best = x;
                        *count = c;
                    } else if w == *m {
                        *count += c;
                        if x < *best {
                            *best = x;
                        }
                    }
                }
            }
        }
        self
    }
}

/// Minimum of `w_Δ` over `(witness + lattice) ∩ σ°` for the face `σ`.
///
/// Every point of that set with weight at most `w_Δ(witness)` lies in the
/// dilation `w_Δ(witness)·(Δ ∩ σ)`, and the dilations are nested because
/// `0 ∈ Δ`. Enumerating the finitely many lattice points of that dilation
/// therefore finds the infimum and shows it is attained.
pub fn coset_min_in_lattice(
    desc: &ConeDescription,
    lattice: &GroupZA,
    face: &FaceDescriptor,
    witness: &[BigRational],
    limits: &Limits,
) -> Result<CosetMinimum> {
    if !rel_interior_test(desc, face, witness) {
        return Err(Error::InvalidArgument(format!(
            "witness {} is not in the relative interior of the face",
            fmt_vec(witness)
        )));
    }
    let w = desc.gauge(witness).expect("witness lies in the cone");
    let coords = |x: &[BigRational]| {
        lattice
            .rational_coordinates(x)
            .ok_or_else(|| Error::Inconsistent("point outside the span of the lattice".into()))
    };
    let neg_witness: Vec<BigRational> = witness.iter().map(|x| -x).collect();
    let mut vertices = vec![coords(&neg_witness)?];
    for i in face_generators(desc, face) {
        let x: Vec<BigRational> = desc.generators[i]
            .iter()
            .zip(witness)
            .map(|(a, c)| &w * BigRational::from_integer(a.clone()) - c)
            .collect();
        vertices.push(coords(&x)?);
    }
    let poly = LatticePolytope::from_vertices(&vertices, lattice.rank());
    let best = poly.fold(
        limits,
        Best::default,
        |acc: &mut Best, z| {
            acc.examined += 1;
            let zq: Vec<BigRational> = z.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
            let x: Vec<BigRational> = lattice.point(&zq).iter().zip(witness).map(|(a, b)| a + b).collect();
            if rel_interior_test(desc, face, &x) {
                let g = desc.gauge(&x).expect("point lies in the cone");
                acc.offer(g, x);
            }
        },
        Best::merge,
    )?;
    let examined = best.examined;
    let Some((minimum, minimizer, minimizers)) = best.min else {
        return Err(Error::Inconsistent("witness was not enumerated".into()));
    };
    // independent confirmation of the minimum by LP
    let (problem, result) = desc.w_delta_lp(&minimizer);
    if !result.verify(&problem) || result.value() != Some(&minimum) {
        return Err(Error::Inconsistent(format!(
            "gauge and LP disagree at {}",
            fmt_vec(&minimizer)
        )));
    }
    Ok(CosetMinimum { minimum, minimizer, minimizers, examined })
}

/// Minimum of `w_Δ` over `(witness + ZA) ∩ σ°`.
pub fn coset_min_weight(
    cfg: &Configuration,
    desc: &ConeDescription,
    face: &FaceDescriptor,
    witness: &[BigRational],
    limits: &Limits,
) -> Result<CosetMinimum> {
    coset_min_in_lattice(desc, &group_za(cfg), face, witness, limits)
}

/// The lower bound `(p − 1)/e · Σ_{μ<e} w_Δ(σ°_{−β} ∩ (−β_μ + ZA))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBound {
    pub e: usize,
    pub per_mu_terms: Vec<BigRational>,
    pub minimizers: Vec<Vec<BigRational>>,
    pub bound: BigRational,
}

fn negate(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().map(|x| -x).collect()
}

/// `β_μ = Σ φ_p^{(μ)}(v_i) a_i` for `μ = 0..=count`.
fn shifted_betas(cfg: &Configuration, v: &[BigRational], p: u64, count: usize) -> Result<Vec<Vec<BigRational>>> {
    (0..=count).map(|mu| Ok(cfg.combine(&arith::shift_vector(v, p, mu)?))).collect()
}

pub fn lower_bound_thm46(cfg: &Configuration, v: &[BigRational], p: u64, limits: &Limits) -> Result<WeightBound> {
    arith::rational::require_prime(p)?;
    cfg.check_len(v)?;
    let a = arith::orbit_period(v, p)? as usize;
    let desc = facet_description(cfg)?;
    let za = group_za(cfg);
    let betas = shifted_betas(cfg, v, p, a)?;
    let e = (1..=a)
        .find(|&mu| za.same_coset(&betas[mu], &betas[0]))
        .ok_or_else(|| Error::Inconsistent("coset period does not divide the orbit period".into()))?;
    let face = smallest_face(&desc, &negate(&betas[0]))?;
    let mins = limits.exec.try_map((0..e).collect(), |mu| {
        coset_min_in_lattice(&desc, &za, &face, &negate(&betas[mu]), &Limits { exec: crate::Exec::Sequential, ..*limits })
    })?;
    let per_mu_terms: Vec<BigRational> = mins.iter().map(|m| m.minimum.clone()).collect();
    let sum = per_mu_terms.iter().fold(BigRational::zero(), |acc, t| acc + t);
    let bound = sum * BigRational::new(BigInt::from(p - 1), BigInt::from(e));
    Ok(WeightBound { e, per_mu_terms, minimizers: mins.into_iter().map(|m| m.minimizer).collect(), bound })
}

/// One row of the per-shift equality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCheck {
    pub mu: usize,
    /// `−Σ_i φ_p^{(μ)}(v_i)`.
    pub digit_side: BigRational,
    /// `w_Δ(σ°_{−β} ∩ (−β_μ + ZA))`.
    pub coset_side: BigRational,
    pub holds: bool,
}

/// The per-shift equalities over `μ = 0..a` where `a` is the orbit period.
pub fn check_criterion_49(cfg: &Configuration, v: &[BigRational], p: u64, limits: &Limits) -> Result<Vec<ShiftCheck>> {
    let a = arith::orbit_period(v, p)? as usize;
    check_criterion_49_over(cfg, v, p, a, limits)
}

/// Same as [`check_criterion_49`] over `μ = 0..count`, for any `count`.
pub fn check_criterion_49_over(
    cfg: &Configuration,
    v: &[BigRational],
    p: u64,
    count: usize,
    limits: &Limits,
) -> Result<Vec<ShiftCheck>> {
    arith::rational::require_prime(p)?;
    cfg.check_len(v)?;
    arith::box_denominator(v, p)?;
    let desc = facet_description(cfg)?;
    let za = group_za(cfg);
    let beta = cfg.combine(v);
    let face = smallest_face(&desc, &negate(&beta))?;
    let seq = Limits { exec: crate::Exec::Sequential, ..*limits };
    limits.exec.try_map((0..count).collect(), |mu| {
        let shifted = arith::shift_vector(v, p, mu)?;
        let digit_side = -shifted.iter().fold(BigRational::zero(), |acc, x| acc + x);
        let witness = negate(&cfg.combine(&shifted));
        let coset_side = coset_min_in_lattice(&desc, &za, &face, &witness, &seq)?.minimum;
        Ok(ShiftCheck { mu, holds: digit_side == coset_side, digit_side, coset_side })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm63Check {
    /// Number of `−1` entries of `v`.
    pub m: usize,
    pub minimum: BigRational,
    pub minimizer: Vec<BigRational>,
    pub holds: bool,
}

/// For `v ∈ {−1, 0}^N` on a nonconfluent configuration, compares
/// `w_Δ(σ°_{−β} ∩ ZA)` with the number of `−1` entries.
pub fn check_thm63(cfg: &Configuration, v: &[BigRational], limits: &Limits) -> Result<Thm63Check> {
    cfg.check_len(v)?;
    if !cfg.is_nonconfluent() {
        return Err(Error::Confluent);
    }
    let minus_one = -BigRational::one();
    if let Some(x) = v.iter().find(|x| !x.is_zero() && **x != minus_one) {
        return Err(Error::InvalidArgument(format!("entry {x} is not -1 or 0")));
    }
    let m = v.iter().filter(|x| **x == minus_one).count();
    let desc = facet_description(cfg)?;
    let witness = negate(&cfg.combine(v));
    let face = smallest_face(&desc, &witness)?;
    let c = coset_min_weight(cfg, &desc, &face, &witness, limits)?;
    let holds = c.minimum == BigRational::from_integer(BigInt::from(m));
    Ok(Thm63Check { m, minimum: c.minimum, minimizer: c.minimizer, holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniqueness {
    pub unique: bool,
    pub minimum: BigRational,
    pub minimizers: usize,
    pub minimizer: Vec<BigRational>,
}

/// Whether `−β` is the only point of `C(Δ)° ∩ (−β + Z^n)` of least weight.
pub fn uniqueness_prop516(cfg: &Configuration, beta: &[BigRational], limits: &Limits) -> Result<Uniqueness> {
    let desc = facet_description(cfg)?;
    let target = negate(beta);
    let interior = FaceDescriptor { tight_set: BTreeSet::new() };
    if !rel_interior_test(&desc, &interior, &target) {
        return Err(Error::InvalidArgument(format!("{} is not interior to the cone", fmt_vec(&target))));
    }
    let c = coset_min_in_lattice(&desc, &GroupZA::standard(cfg.dim()), &interior, &target, limits)?;
    Ok(Uniqueness {
        unique: c.minimizers == 1 && c.minimizer == target,
        minimum: c.minimum,
        minimizers: c.minimizers,
        minimizer: c.minimizer,
    })
}
