//! Problem files, the dispatch to the analysis pipelines, and canonical
//! reports.

use std::fmt::Write as _;

use hyperint::arith::rational::{fmt_rational, lcm_of_denominators, parse_rational};
use hyperint::classical::{self, ClassicalSpec};
use hyperint::eisenstein::{self, AlgebraicSeries, BiPoly};
use hyperint::geometry;
use hyperint::lattice::Configuration;
use hyperint::series::{self, Certificate, SearchParams, Status};
use hyperint::{arith, Error, Limits};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub const TOOL: &str = concat!("hyperint ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Analyze,
    Classical,
    Series,
    Bound,
    Thm63,
    Eisenstein,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Analyze => "analyze",
            Mode::Classical => "classical",
            Mode::Series => "series",
            Mode::Bound => "bound",
            Mode::Thm63 => "thm63",
            Mode::Eisenstein => "eisenstein",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub max_b: Option<u32>,
    #[serde(rename = "box")]
    pub box_radius: Option<u64>,
    pub order: Option<u64>,
    pub guard: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationSection {
    /// The columns `a_i`, one list per column.
    pub columns: Vec<Vec<i64>>,
    pub v: Vec<String>,
    #[serde(default)]
    pub multiset: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalSection {
    pub c: Vec<Vec<u64>>,
    pub d: Vec<Vec<u64>>,
    pub theta: Vec<String>,
    pub sigma: Vec<String>,
    pub denominator: Option<u64>,
    /// Residue classes to check; all classes prime to `D` when absent.
    pub classes: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub x: usize,
    pub z: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EisensteinSection {
    pub annihilator: Vec<TermEntry>,
    /// Known coefficients `c_0, c_1, …`; extended through `c_through` when shorter.
    pub prefix: Vec<String>,
    pub through: Option<usize>,
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub mode: Option<Mode>,
    pub p: Option<u64>,
    pub primes: Option<Vec<u64>>,
    #[serde(default)]
    pub search: SearchSection,
    pub configuration: Option<ConfigurationSection>,
    pub classical: Option<ClassicalSection>,
    pub eisenstein: Option<EisensteinSection>,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Run(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    /// 3 for a tripped resource guard, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Run(e) if e.is_resource() => 3,
            _ => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceGuard(_) | Error::Inconsistent(_) => CliError::Run(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))
}

/// Search settings after applying command-line overrides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEcho {
    pub max_b_multiplier: u32,
    pub box_radius: u64,
    pub order: u64,
    pub guard: usize,
}

impl Default for SearchEcho {
    fn default() -> Self {
        SearchEcho { max_b_multiplier: 3, box_radius: 40, order: 40, guard: hyperint::exec::DEFAULT_GUARD }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_b: Option<u32>,
    pub box_radius: Option<u64>,
    pub order: Option<u64>,
    pub guard: Option<usize>,
}

fn rationals(field: &str, xs: &[String]) -> Result<Vec<BigRational>, CliError> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| CliError::Input(format!("{field}[{i}]: {e}"))))
        .collect()
}

fn strs(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(fmt_rational).collect()
}

fn ints(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(BigInt::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub e: usize,
    pub per_mu_terms: Vec<String>,
    pub minimizers: Vec<Vec<String>>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub mu: usize,
    pub digit_side: String,
    pub coset_side: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub r: Vec<String>,
    pub b: usize,
    pub l: Vec<String>,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassReport {
    pub modulus: String,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBoundsReport {
    pub b_values: Vec<usize>,
    pub box_radius: u64,
    pub examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRow {
    pub l: Vec<String>,
    pub coefficient: String,
    pub pi_exponent: String,
    pub valuation: String,
}

/// One prime's certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub p: u64,
    pub status: String,
    pub w_p_v: String,
    pub lower_bound: String,
    pub bound: BoundReport,
    pub shift_checks: Vec<ShiftRow>,
    pub witness: Option<WitnessReport>,
    pub residue_class: ResidueClassReport,
    pub residue_statement: String,
    pub search_bounds: Option<SearchBoundsReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<TermRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftTraceReport {
    pub mu: usize,
    pub theta: Vec<String>,
    pub sigma: Vec<String>,
    pub minimum: String,
    pub minimizer: Vec<String>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub h: u64,
    pub a: u64,
    pub holds: bool,
    pub shifts: Vec<ShiftTraceReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub n: usize,
    pub big_n: usize,
    pub beta: Vec<String>,
    pub denominator: u64,
    pub classes: Vec<ClassReport>,
    pub holds: bool,
    pub statement: String,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm63Report {
    pub m: usize,
    pub minimum: String,
    pub minimizer: Vec<String>,
    pub holds: bool,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub candidate: String,
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinReport {
    pub mu: usize,
    pub big_m: usize,
    pub big_m_prime: usize,
    pub rho: String,
    pub f0: String,
    pub tau: String,
    pub constructed_n: String,
    /// Smallest constant found by lowering prime exponents on the prefix.
    pub n: String,
    pub verified_to: usize,
    pub trials: Vec<TrialReport>,
}

/// Canonical report. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub mode: String,
    pub status: String,
    pub search: SearchEcho,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub analyses: Vec<Analysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thm63: Option<Thm63Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eisenstein: Option<EisensteinReport>,
}

impl Report {
    /// 0 for a certified result, 2 when undecided.
    pub fn exit_code(&self) -> i32 {
        if self.status == "undecided" {
            2
        } else {
            0
        }
    }
}

fn search_echo(problem: &ProblemFile, o: &Overrides) -> SearchEcho {
    let d = SearchEcho::default();
    SearchEcho {
        max_b_multiplier: o.max_b.or(problem.search.max_b).unwrap_or(d.max_b_multiplier),
        box_radius: o.box_radius.or(problem.search.box_radius).unwrap_or(d.box_radius),
        order: o.order.or(problem.search.order).unwrap_or(d.order),
        guard: o.guard.or(problem.search.guard).unwrap_or(d.guard),
    }
}

fn primes(problem: &ProblemFile) -> Result<Vec<u64>, CliError> {
    let list = match (&problem.p, &problem.primes) {
        (Some(p), None) => vec![*p],
        (None, Some(ps)) if !ps.is_empty() => ps.clone(),
        (Some(_), Some(_)) => return Err(CliError::Input("give either p or primes, not both".into())),
        _ => return Err(CliError::Input("missing p or primes".into())),
    };
    for &p in &list {
        arith::rational::require_prime(p)?;
    }
    Ok(list)
}

fn configuration(problem: &ProblemFile) -> Result<(Configuration, Vec<BigRational>), CliError> {
    let sec = problem.configuration.as_ref().ok_or_else(|| CliError::Input("missing [configuration] section".into()))?;
    if sec.columns.is_empty() {
        return Err(CliError::Input("configuration.columns is empty".into()));
    }
    let width = sec.columns[0].len();
    if let Some(i) = sec.columns.iter().position(|c| c.len() != width) {
        return Err(CliError::Input(format!("configuration.columns[{i}] has length {} (expected {width})", sec.columns[i].len())));
    }
    let refs: Vec<&[i64]> = sec.columns.iter().map(Vec::as_slice).collect();
    let cfg = if sec.multiset { Configuration::multiset_from_i64(&refs)? } else { Configuration::from_i64(&refs)? };
    let v = rationals("configuration.v", &sec.v)?;
    if v.len() != cfg.len() {
        return Err(CliError::Input(format!("configuration.v has {} entries for {} columns", v.len(), cfg.len())));
    }
    Ok((cfg, v))
}

fn certificate_report(cert: &Certificate, v: &[BigRational]) -> Result<Analysis, CliError> {
    let statement = series::residue_transfer(cert, v, &cert.residue_class.modulus)?;
    Ok(Analysis {
        p: cert.p,
        status: cert.status.as_str().to_string(),
        w_p_v: fmt_rational(&cert.w_p_v),
        lower_bound: fmt_rational(&cert.lower_bound),
        bound: BoundReport {
            e: cert.bound.e,
            per_mu_terms: strs(&cert.bound.per_mu_terms),
            minimizers: cert.bound.minimizers.iter().map(|m| strs(m)).collect(),
            value: fmt_rational(&cert.bound.bound),
        },
        shift_checks: cert
            .shift_checks
            .iter()
            .map(|c| ShiftRow {
                mu: c.mu,
                digit_side: fmt_rational(&c.digit_side),
                coset_side: fmt_rational(&c.coset_side),
                holds: c.holds,
            })
            .collect(),
        witness: cert.witness.as_ref().map(|w| WitnessReport {
            r: strs(&w.r),
            b: w.b,
            l: ints(&w.l),
            weight: fmt_rational(&w.weight),
        }),
        residue_class: ResidueClassReport {
            modulus: cert.residue_class.modulus.to_string(),
            residue: cert.residue_class.residue.to_string(),
        },
        residue_statement: statement.text,
        search_bounds: Some(SearchBoundsReport {
            b_values: cert.search_bounds.b_values.clone(),
            box_radius: cert.search_bounds.box_radius,
            examined: cert.search_bounds.examined,
        }),
        terms: Vec::new(),
    })
}

fn combined_status<'a>(it: impl Iterator<Item = &'a str>) -> String {
    let all: Vec<&str> = it.collect();
    if all.contains(&"undecided") {
        "undecided".into()
    } else if all.iter().all(|s| *s == all[0]) {
        all[0].into()
    } else {
        "mixed_certified".into()
    }
}

fn run_analyses(problem: &ProblemFile, search: &SearchEcho, mode: Mode, limits: &Limits) -> Result<Vec<Analysis>, CliError> {
    let (cfg, v) = configuration(problem)?;
    let params = SearchParams { max_b_multiplier: search.max_b_multiplier, box_radius: search.box_radius, limits: *limits };
    let mut out = Vec::new();
    for p in primes(problem)? {
        let mut a = match mode {
            Mode::Bound => bound_report(&cfg, &v, p, limits)?,
            _ => {
                let cert = series::analyze(&cfg, &v, p, &params)?;
                if !cert.validate(&cfg, &v) {
                    return Err(CliError::Run(Error::Inconsistent("certificate failed validation".into())));
                }
                certificate_report(&cert, &v)?
            }
        };
        if mode == Mode::Series {
            a.terms = series::expand(&cfg, &v, p, search.order, limits)?
                .into_iter()
                .map(|t| TermRow {
                    l: ints(&t.term.l),
                    coefficient: fmt_rational(&t.term.coefficient),
                    pi_exponent: t.term.pi_exponent.to_string(),
                    valuation: fmt_rational(&t.term.valuation),
                })
                .collect();
        }
        out.push(a);
    }
    Ok(out)
}

fn bound_report(cfg: &Configuration, v: &[BigRational], p: u64, limits: &Limits) -> Result<Analysis, CliError> {
    let w = arith::weight(v, p)?.weight;
    let bound = geometry::lower_bound_thm46(cfg, v, p, limits)?;
    let checks = if bound.bound == w { Vec::new() } else { geometry::check_criterion_49(cfg, v, p, limits)? };
    let integral = bound.bound == w || checks.iter().all(|c| c.holds);
    let status = if integral { Status::IntegralCertified } else { Status::Undecided };
    let modulus = lcm_of_denominators(v.iter());
    let cert = Certificate {
        status,
        p,
        w_p_v: w,
        lower_bound: bound.bound.clone(),
        bound,
        shift_checks: checks,
        witness: None,
        residue_class: series::ResidueClass {
            residue: BigInt::from(p) % &modulus,
            modulus,
        },
        search_bounds: series::SearchBounds { b_values: Vec::new(), box_radius: 0, examined: 0 },
    };
    let mut a = certificate_report(&cert, v)?;
    a.search_bounds = None;
    Ok(a)
}

fn run_classical(problem: &ProblemFile, limits: &Limits) -> Result<ClassicalReport, CliError> {
    let sec = problem.classical.as_ref().ok_or_else(|| CliError::Input("missing [classical] section".into()))?;
    let spec = ClassicalSpec::new(
        sec.c.clone(),
        sec.d.clone(),
        rationals("classical.theta", &sec.theta)?,
        rationals("classical.sigma", &sec.sigma)?,
        sec.denominator,
    )?;
    let built = classical::build_configuration(&spec)?;
    let dd = spec.denominator;
    let verdict = match &sec.classes {
        None => classical::cor57_check(&spec, limits)?,
        Some(hs) => {
            let classes = hs.iter().map(|&h| classical::thm56_check(&spec, h, limits)).collect::<Result<Vec<_>, _>>()?;
            let holds = classes.iter().all(|c| c.holds);
            classical::ClassicalVerdict { classes, holds, note: None }
        }
    };
    let statement = if verdict.holds {
        let scope = match (&sec.classes, dd) {
            (None, 1) => "all p".to_string(),
            (None, _) => format!("all p ∤ {dd}"),
            (Some(hs), _) => {
                let list: Vec<String> = hs.iter().map(u64::to_string).collect();
                format!("all p ≡ {} mod {dd}", list.join(", "))
            }
        };
        format!("integral for {scope}")
    } else {
        let (c, s) = verdict
            .classes
            .iter()
            .find_map(|c| c.shifts.iter().find(|s| !s.holds).map(|s| (c, s)))
            .expect("a failing shift exists");
        format!(
            "criterion fails for h = {} mod {dd} at μ = {}: ξ = {} at x = ({})",
            c.h,
            s.mu,
            s.minimum,
            strs(&s.minimizer).join(", ")
        )
    };
    Ok(ClassicalReport {
        n: spec.n(),
        big_n: built.cfg.len(),
        beta: strs(&built.beta),
        denominator: dd,
        classes: verdict
            .classes
            .iter()
            .map(|c| ClassReport {
                h: c.h,
                a: c.a,
                holds: c.holds,
                shifts: c
                    .shifts
                    .iter()
                    .map(|s| ShiftTraceReport {
                        mu: s.mu,
                        theta: strs(&s.theta),
                        sigma: strs(&s.sigma),
                        minimum: s.minimum.to_string(),
                        minimizer: strs(&s.minimizer),
                        holds: s.holds,
                    })
                    .collect(),
            })
            .collect(),
        holds: verdict.holds,
        statement,
        note: verdict.note,
    })
}

fn run_thm63(problem: &ProblemFile, limits: &Limits) -> Result<Thm63Report, CliError> {
    let (cfg, v) = configuration(problem)?;
    let c = geometry::check_thm63(&cfg, &v, limits)?;
    let statement =
        if c.holds { "integral for all p".to_string() } else { "coset minimum differs from the number of -1 entries".to_string() };
    Ok(Thm63Report {
        m: c.m,
        minimum: fmt_rational(&c.minimum),
        minimizer: strs(&c.minimizer),
        holds: c.holds,
        statement,
    })
}

fn run_eisenstein(problem: &ProblemFile) -> Result<EisensteinReport, CliError> {
    let sec = problem.eisenstein.as_ref().ok_or_else(|| CliError::Input("missing [eisenstein] section".into()))?;
    let mut terms = Vec::new();
    for (i, t) in sec.annihilator.iter().enumerate() {
        let c = parse_rational(&t.c).map_err(|e| CliError::Input(format!("eisenstein.annihilator[{i}].c: {e}")))?;
        terms.push((t.x, t.z, c));
    }
    let f = BiPoly::from_terms(&terms);
    let prefix = rationals("eisenstein.prefix", &sec.prefix)?;
    let s = match sec.through {
        Some(t) if t >= prefix.len() => AlgebraicSeries::from_seed(f, prefix, t)?,
        Some(t) => AlgebraicSeries::new(f, prefix[..=t].to_vec())?,
        None => AlgebraicSeries::new(f, prefix)?,
    };
    let tn = eisenstein::tail_normalize(&s)?;
    let n = eisenstein::denominator_constant(&tn, &s)?;
    let m = eisenstein::minimize_constant(&s.prefix, &n.n);
    Ok(EisensteinReport {
        mu: tn.mu,
        big_m: tn.big_m,
        big_m_prime: tn.big_m_prime,
        rho: tn.rho.to_string(),
        f0: tn.f0.to_string(),
        tau: n.tau.to_string(),
        constructed_n: n.n.to_string(),
        n: m.minimal.to_string(),
        verified_to: n.verified_to,
        trials: m
            .trials
            .iter()
            .map(|t| TrialReport { candidate: t.candidate.to_string(), first_failure: t.first_failure })
            .collect(),
    })
}

pub fn run(problem: &ProblemFile, mode: Mode, overrides: &Overrides) -> Result<Report, CliError> {
    if let Some(m) = problem.mode {
        if m != mode {
            return Err(CliError::Input(format!("file declares mode {} but {} was requested", m.as_str(), mode.as_str())));
        }
    }
    let search = search_echo(problem, overrides);
    let limits = Limits { guard: search.guard, ..Limits::default() };
    let mut report = Report {
        tool: TOOL.to_string(),
        mode: mode.as_str().to_string(),
        status: String::new(),
        search,
        analyses: Vec::new(),
        classical: None,
        thm63: None,
        eisenstein: None,
    };
    match mode {
        Mode::Analyze | Mode::Series | Mode::Bound => {
            report.analyses = run_analyses(problem, &search, mode, &limits)?;
            report.status = combined_status(report.analyses.iter().map(|a| a.status.as_str()));
        }
        Mode::Classical => {
            let c = run_classical(problem, &limits)?;
            report.status = if c.holds { "integral_certified" } else { "undecided" }.into();
            report.classical = Some(c);
        }
        Mode::Thm63 => {
            let t = run_thm63(problem, &limits)?;
            report.status = if t.holds { "integral_certified" } else { "undecided" }.into();
            report.thm63 = Some(t);
        }
        Mode::Eisenstein => {
            report.eisenstein = Some(run_eisenstein(problem)?);
            report.status = "constant_verified".into();
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

pub fn parse_report(json: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(json)
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.tool, r.mode);
    let _ = writeln!(out, "status: {}", r.status);
    let s = &r.search;
    let _ = writeln!(
        out,
        "search: max_b = {}, box = {}, order = {}, guard = {}",
        s.max_b_multiplier, s.box_radius, s.order, s.guard
    );
    for a in &r.analyses {
        let _ = writeln!(out, "p = {}: {}", a.p, a.status);
        let _ = writeln!(out, "  w_p(v) = {} ≥ bound = {}", a.w_p_v, a.lower_bound);
        let _ = writeln!(out, "  bound terms (e = {}): {}", a.bound.e, a.bound.per_mu_terms.join(", "));
        for c in &a.shift_checks {
            let _ = writeln!(
                out,
                "  shift μ = {}: {} vs {} ({})",
                c.mu,
                c.digit_side,
                c.coset_side,
                if c.holds { "holds" } else { "fails" }
            );
        }
        if let Some(w) = &a.witness {
            let _ = writeln!(out, "  witness r = ({}), b = {}, w_p(r) = {}", w.r.join(", "), w.b, w.weight);
            let _ = writeln!(out, "  l = ({})", w.l.join(", "));
        }
        let _ = writeln!(out, "  residue: {}", a.residue_statement);
        if let Some(b) = &a.search_bounds {
            let _ = writeln!(out, "  searched b in {:?}, box radius {}, {} points", b.b_values, b.box_radius, b.examined);
        }
        if !a.terms.is_empty() {
            let _ = writeln!(out, "  terms: {}", a.terms.len());
            for t in &a.terms {
                let _ = writeln!(
                    out,
                    "    l = ({})  coefficient = {}  π^{}  ord = {}",
                    t.l.join(", "),
                    t.coefficient,
                    t.pi_exponent,
                    t.valuation
                );
            }
        }
    }
    if let Some(c) = &r.classical {
        let _ = writeln!(out, "n = {}, N = {}, D = {}, β = ({})", c.n, c.big_n, c.denominator, c.beta.join(", "));
        for class in &c.classes {
            let _ = writeln!(out, "class h = {} (a = {}): {}", class.h, class.a, if class.holds { "holds" } else { "fails" });
            for t in &class.shifts {
                let _ = writeln!(
                    out,
                    "  μ = {}: Θ′ = ({}), Σ′ = ({}), min ξ = {} at ({})",
                    t.mu,
                    t.theta.join(", "),
                    t.sigma.join(", "),
                    t.minimum,
                    t.minimizer.join(", ")
                );
            }
        }
        let _ = writeln!(out, "{}", c.statement);
        if let Some(n) = &c.note {
            let _ = writeln!(out, "note: {n}");
        }
    }
    if let Some(t) = &r.thm63 {
        let _ = writeln!(out, "-1 entries: {}, coset minimum: {} at ({})", t.m, t.minimum, t.minimizer.join(", "));
        let _ = writeln!(out, "{}", t.statement);
    }
    if let Some(e) = &r.eisenstein {
        let _ = writeln!(out, "μ = {}, M = {}, M′ = {}", e.mu, e.big_m, e.big_m_prime);
        let _ = writeln!(out, "ρ = {}, F₀ = {}", e.rho, e.f0);
        let _ = writeln!(out, "N = {} (constructed {}), verified m ≤ {}", e.n, e.constructed_n, e.verified_to);
        for t in &e.trials {
            match t.first_failure {
                Some(m) => {
                    let _ = writeln!(out, "  N = {} fails at m = {m}", t.candidate);
                }
                None => {
                    let _ = writeln!(out, "  N = {} passes", t.candidate);
                }
            }
        }
    }
    out
}
