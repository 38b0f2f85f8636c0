//! Reports: invariants, derivation spaces, bound and theorem checks, with a
//! JSON form and a text rendering built from the same data.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{LieSuperalgebra, Parity, SuperDim};
use crate::derivation::{self, BoundReport, ChainReport, DerivationTower, GradedMapSpace};
use crate::document::format_rational;
use crate::families::{self, Class2Report, FamilyError, FiliformReport, HeisenbergReport};

/// `filiform:n,m`, `heisenberg:m,n,m1,n1` or `abelian:p,q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Filiform {
        n: usize,
        m: usize,
    },
    Heisenberg {
        m: usize,
        n: usize,
        m1: usize,
        n1: usize,
    },
    Abelian {
        p: usize,
        q: usize,
    },
}

impl FromStr for FamilySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| format!("family spec `{s}` must look like kind:a,b"))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| format!("family spec `{s}` needs non-negative integer parameters"))?;
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(format!("`{kind}` takes {k} parameters, got {}", nums.len()))
            }
        };
        match kind {
            "filiform" => {
                arity(2)?;
                if nums[0] == 0 || nums[1] == 0 {
                    return Err("filiform needs n, m >= 1".into());
                }
                Ok(Self::Filiform {
                    n: nums[0],
                    m: nums[1],
                })
            }
            "heisenberg" => {
                arity(4)?;
                Ok(Self::Heisenberg {
                    m: nums[0],
                    n: nums[1],
                    m1: nums[2],
                    n1: nums[3],
                })
            }
            "abelian" => {
                arity(2)?;
                Ok(Self::Abelian {
                    p: nums[0],
                    q: nums[1],
                })
            }
            other => Err(format!(
                "unknown family `{other}` (expected filiform, heisenberg or abelian)"
            )),
        }
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Filiform { n, m } => write!(f, "filiform:{n},{m}"),
            Self::Heisenberg { m, n, m1, n1 } => write!(f, "heisenberg:{m},{n},{m1},{n1}"),
            Self::Abelian { p, q } => write!(f, "abelian:{p},{q}"),
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<LieSuperalgebra, String> {
        match *self {
            Self::Filiform { n, m } => Ok(families::model_filiform(n, m)),
            Self::Heisenberg { m, n, m1, n1 } => families::generic_heisenberg_data(m, n, m1, n1)
                .map(|d| families::generalized_heisenberg(&d).expect("generic data is valid"))
                .ok_or_else(|| {
                    format!("no generalized Heisenberg superalgebra with sdim ({m}, {n}) and center ({m1}, {n1})")
                }),
            Self::Abelian { p, q } => Ok(families::abelian(p, q)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Bound,
    Heisenberg,
    Class2,
    Filiform,
    Chain,
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Bound => "bound",
            Self::Heisenberg => "heisenberg",
            Self::Class2 => "class2",
            Self::Filiform => "filiform",
            Self::Chain => "chain",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, holds: bool) -> Check {
    Check {
        name: name.to_string(),
        holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Details {
    Bound(BoundReport),
    Chain(ChainReport),
    Heisenberg(HeisenbergReport),
    Class2(Class2Report),
    Filiform(FiliformReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierOutcome {
    pub theorem: Theorem,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Details>,
}

impl VerifierOutcome {
    fn inapplicable(theorem: Theorem, reason: String) -> Self {
        Self {
            theorem,
            status: Status::Inapplicable,
            reason: Some(reason),
            checks: Vec::new(),
            details: None,
        }
    }

    fn from_checks(theorem: Theorem, checks: Vec<Check>, details: Details) -> Self {
        let status = if checks.iter().all(|c| c.holds) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            theorem,
            status,
            reason: None,
            checks,
            details: Some(details),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub sdim: SuperDim,
    pub names: Vec<String>,
    pub valid: bool,
    #[serde(default)]
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub derived: SuperDim,
    pub center: SuperDim,
    pub lower_central_series: Vec<SuperDim>,
    pub upper_central_series: Vec<SuperDim>,
    pub nilpotency_class: Option<usize>,
    pub super_nilindex: Option<SuperDim>,
    /// Minimal generator pair of `L`; absent when `L` is not nilpotent.
    pub minimal_pair: Option<SuperDim>,
}

/// Rows of rational strings.
pub type MatrixText = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSection {
    pub sdim: SuperDim,
    pub even: Vec<MatrixText>,
    pub odd: Vec<MatrixText>,
}

impl SpaceSection {
    fn new(space: &GradedMapSpace) -> Self {
        let render = |p: Parity| {
            space
                .basis(p)
                .iter()
                .map(|d| {
                    let m = d.matrix();
                    (0..m.rows())
                        .map(|r| m.row(r).iter().map(format_rational).collect())
                        .collect()
                })
                .collect()
        };
        Self {
            sdim: space.sdim(),
            even: render(Parity::Even),
            odd: render(Parity::Odd),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationSection {
    pub der: SpaceSection,
    pub id: SpaceSection,
    pub id_star: SpaceSection,
    pub ad: SpaceSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub source: String,
    pub algebra: AlgebraSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Invariants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivations: Option<DerivationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_note: Option<String>,
    #[serde(default)]
    pub verifications: Vec<VerifierOutcome>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Worst verifier status: any failure, else any inapplicable, else pass.
    pub fn status(&self) -> Status {
        let statuses: Vec<Status> = self.verifications.iter().map(|v| v.status).collect();
        if !self.algebra.valid || statuses.contains(&Status::Fail) {
            Status::Fail
        } else if statuses.contains(&Status::Inapplicable) {
            Status::Inapplicable
        } else {
            Status::Pass
        }
    }
}

pub fn summarize(l: &LieSuperalgebra) -> AlgebraSummary {
    let diagnostics = l.validate();
    AlgebraSummary {
        sdim: l.sdim(),
        names: l.names().to_vec(),
        valid: diagnostics.is_valid(),
        violations: diagnostics
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect(),
    }
}

pub fn invariants(l: &LieSuperalgebra) -> Invariants {
    Invariants {
        derived: l.derived_subalgebra().sdim(),
        center: l.center().sdim(),
        lower_central_series: l.lower_central_series().iter().map(|s| s.sdim()).collect(),
        upper_central_series: l.upper_central_series().iter().map(|s| s.sdim()).collect(),
        nilpotency_class: l.nilpotency_class(),
        super_nilindex: l.super_nilindex(),
        minimal_pair: l.minimal_generator_pair().ok(),
    }
}

/// Full report for `l`; derivation and bound sections only for valid input.
pub fn full_report(source: &str, l: &LieSuperalgebra) -> (Report, Option<DerivationTower>) {
    let algebra = summarize(l);
    if !algebra.valid {
        let report = Report {
            source: source.to_string(),
            algebra,
            invariants: None,
            derivations: None,
            bound: None,
            bound_note: None,
            verifications: Vec::new(),
        };
        return (report, None);
    }
    let tower = DerivationTower::compute(l);
    let (bound, bound_note) = match derivation::bound_report(l, &tower) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = Report {
        source: source.to_string(),
        algebra,
        invariants: Some(invariants(l)),
        derivations: Some(DerivationSection {
            der: SpaceSection::new(&tower.der),
            id: SpaceSection::new(&tower.id),
            id_star: SpaceSection::new(&tower.id_star),
            ad: SpaceSection::new(&tower.ad),
        }),
        bound,
        bound_note,
        verifications: Vec::new(),
    };
    (report, Some(tower))
}

fn bound_checks(b: &BoundReport) -> Vec<Check> {
    vec![check("sdim ID* <= lambda(L^2; p, q)", b.holds)]
}

fn chain_checks(c: &ChainReport) -> Vec<Check> {
    let names = ["ad <= ID*", "ID* <= ID", "ID <= Der"];
    let closed = ["ad closed", "ID* closed", "ID closed", "Der closed"];
    names
        .iter()
        .zip(c.containments)
        .chain(closed.iter().zip(c.closed))
        .map(|(n, h)| check(n, h))
        .collect()
}

fn heisenberg_checks(r: &HeisenbergReport) -> Vec<Check> {
    vec![
        check("block shape", r.block_shape),
        check("free blocks unconstrained", r.free_blocks),
        check("sdim ID* matches formula", r.matches_formula()),
        check("sdim ID* = lambda(H^2; m-m1, n-n1)", r.matches_bound()),
    ]
}

fn class2_checks(r: &Class2Report) -> Vec<Check> {
    vec![
        check("sdim ID*(L) = sdim ID*(H)", r.id_star == r.id_star_h),
        check("sdim ID*(L) = lambda(L^2; p, q)", r.tight()),
        check("maps kill Z(L) and land in L^2", r.kills_center),
        check("block shape", r.block_shape),
    ]
}

fn filiform_checks(r: &FiliformReport) -> Vec<Check> {
    let mut checks = vec![
        check("sdim L^2", r.derived == r.expected_derived),
        check("sdim Z(L) = (1, 1)", r.center == SuperDim::new(1, 1)),
        check("minimal pair of L/Z(L)", r.pair == r.expected_pair),
        check(
            "lambda(L^2; p, q) = case formula",
            r.bound == r.case_formula,
        ),
        check("sdim ID* <= lambda(L^2; p, q)", r.bound_holds()),
        check("sdim ID* = lambda(L^2; p, q)", r.tight()),
        check("sdim ID* = case formula", r.matches_case_formula()),
        check("shift property", r.shift_property),
    ];
    if let Some(q) = r.central_quotient_is_model {
        checks.push(check("L/Z(L) = L^{n-1,m-1}", q));
    }
    checks
}

fn family_reason(e: &FamilyError) -> String {
    match e {
        FamilyError::WrongClass { class: Some(c) } => format!("class {c}"),
        FamilyError::WrongClass { class: None } => "not nilpotent".to_string(),
        other => other.to_string(),
    }
}

/// Runs one theorem check. `family` enables the filiform verifier.
pub fn verify(
    l: &LieSuperalgebra,
    tower: Option<&DerivationTower>,
    family: Option<&FamilySpec>,
    theorem: Theorem,
) -> VerifierOutcome {
    let owned;
    let tower = match tower {
        Some(t) => t,
        None => {
            owned = DerivationTower::compute(l);
            &owned
        }
    };
    match theorem {
        Theorem::Chain => {
            let c = derivation::chain_report(tower);
            VerifierOutcome::from_checks(theorem, chain_checks(&c), Details::Chain(c))
        }
        Theorem::Bound => match derivation::bound_report(l, tower) {
            Ok(b) => VerifierOutcome::from_checks(theorem, bound_checks(&b), Details::Bound(b)),
            Err(e) => VerifierOutcome::inapplicable(theorem, e.to_string()),
        },
        Theorem::Heisenberg => match families::verify_heisenberg_idstar(l) {
            Ok(r) => {
                VerifierOutcome::from_checks(theorem, heisenberg_checks(&r), Details::Heisenberg(r))
            }
            Err(e) => VerifierOutcome::inapplicable(theorem, family_reason(&e)),
        },
        Theorem::Class2 => match families::verify_class2_idstar(l) {
            Ok(r) => VerifierOutcome::from_checks(theorem, class2_checks(&r), Details::Class2(r)),
            Err(e) => VerifierOutcome::inapplicable(theorem, family_reason(&e)),
        },
        Theorem::Filiform => match family {
            Some(FamilySpec::Filiform { n, m }) => match families::verify_filiform_idstar(*n, *m) {
                Ok(r) => {
                    VerifierOutcome::from_checks(theorem, filiform_checks(&r), Details::Filiform(r))
                }
                Err(e) => VerifierOutcome::inapplicable(theorem, family_reason(&e)),
            },
            _ => VerifierOutcome::inapplicable(
                theorem,
                "needs a model filiform input (--family filiform:n,m)".to_string(),
            ),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSample {
    pub index: usize,
    pub sdim: SuperDim,
    pub derived: SuperDim,
    pub center: SuperDim,
    pub valid: bool,
    pub chain: bool,
    pub bound: Option<BoundReport>,
}

impl FuzzSample {
    pub fn passed(&self) -> bool {
        self.valid && self.chain && self.bound.as_ref().is_some_and(|b| b.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub max_dim: usize,
    pub passed: usize,
    pub failed: usize,
    pub tight: usize,
    pub non_tight: usize,
    pub samples: Vec<FuzzSample>,
}

/// Sample `index` of the stream for `seed`; independent of thread order.
pub fn fuzz_algebra(seed: u64, index: usize, max_dim: usize) -> LieSuperalgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let data = families::random_class2_data(&mut rng, max_dim);
    families::central_extension(&data).expect("random form is graded and skew")
}

fn fuzz_sample(index: usize, l: &LieSuperalgebra) -> FuzzSample {
    let valid = l.validate().is_valid();
    let tower = DerivationTower::compute(l);
    FuzzSample {
        index,
        sdim: l.sdim(),
        derived: tower.derived.sdim(),
        center: tower.center.sdim(),
        valid,
        chain: derivation::chain_report(&tower).holds(),
        bound: derivation::bound_report(l, &tower).ok(),
    }
}

/// # Panics
/// If `count > 0` and `max_dim < 2`.
pub fn run_fuzz(count: usize, max_dim: usize, seed: u64) -> FuzzSummary {
    let samples: Vec<FuzzSample> = (0..count)
        .into_par_iter()
        .map(|i| fuzz_sample(i, &fuzz_algebra(seed, i, max_dim)))
        .collect();
    let passed = samples.iter().filter(|s| s.passed()).count();
    let tight = samples
        .iter()
        .filter(|s| s.bound.as_ref().is_some_and(|b| b.tight))
        .count();
    FuzzSummary {
        seed,
        count,
        max_dim,
        passed,
        failed: count - passed,
        tight,
        non_tight: count - tight,
        samples,
    }
}

impl FuzzSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "fuzz: {} random class-2 central extensions, total dim <= {}, seed {}",
            self.count, self.max_dim, self.seed
        );
        for s in self.samples.iter().filter(|s| !s.passed()) {
            let _ = writeln!(
                out,
                "  FAIL sample {}: sdim {}, valid {}, chain {}, bound {}",
                s.index,
                s.sdim,
                s.valid,
                s.chain,
                s.bound.as_ref().map_or("n/a".to_string(), |b| format!(
                    "{} <= {}: {}",
                    b.id_star, b.bound, b.holds
                ))
            );
        }
        let _ = writeln!(
            out,
            "passed {}, failed {}; bound tight {}, not tight {}",
            self.passed, self.failed, self.tight, self.non_tight
        );
        out
    }
}

fn legend(out: &mut String, names: &[String], sdim: SuperDim) {
    let even = names[..sdim.even].join(" ");
    let odd = names[sdim.even..].join(" ");
    let _ = writeln!(
        out,
        "  legend: column j is the image of basis vector j; rows and columns ordered [{even} | {odd}] (even block first)"
    );
}

fn render_matrix(out: &mut String, m: &MatrixText, sdim: SuperDim) {
    let width = m.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    for (r, row) in m.iter().enumerate() {
        if r == sdim.even && sdim.even > 0 && sdim.odd > 0 {
            let dashes = (width + 1) * row.len() + 2;
            let _ = writeln!(out, "      {}", "-".repeat(dashes));
        }
        let mut line = String::from("      ");
        for (c, x) in row.iter().enumerate() {
            if c == sdim.even && sdim.even > 0 && sdim.odd > 0 {
                line.push_str("| ");
            }
            let _ = write!(line, "{x:>width$} ");
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

fn render_space(out: &mut String, label: &str, space: &SpaceSection, sdim: SuperDim) {
    let _ = writeln!(out, "  {label}: sdim {}", space.sdim);
    for (parity, maps) in [("even", &space.even), ("odd", &space.odd)] {
        for (k, m) in maps.iter().enumerate() {
            let _ = writeln!(out, "    {parity} basis map {}:", k + 1);
            render_matrix(out, m, sdim);
        }
    }
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref()
        .map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

fn list(xs: &[SuperDim]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" > ")
}

fn render_details(out: &mut String, d: &Details) {
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "    {k}: {v}");
    };
    match d {
        Details::Bound(b) => {
            line("sdim L^2", b.derived.to_string());
            line("minimal pair of L/Z(L)", b.pair.to_string());
            line("lambda(L^2; p, q)", b.bound.to_string());
            line("sdim ID*", b.id_star.to_string());
            line("tight", b.tight.to_string());
        }
        Details::Chain(c) => {
            line("sdim ad", c.ad.to_string());
            line("sdim ID*", c.id_star.to_string());
            line("sdim ID", c.id.to_string());
            line("sdim Der", c.der.to_string());
        }
        Details::Heisenberg(r) => {
            line("sdim H", r.sdim.to_string());
            line("sdim Z(H)", r.center.to_string());
            line("sdim ID* (adapted basis)", r.id_star.to_string());
            line("sdim ID* (input basis)", r.id_star_input_basis.to_string());
            line("formula", r.formula.to_string());
            line("lambda(H^2; m-m1, n-n1)", r.bound.to_string());
        }
        Details::Class2(r) => {
            line("sdim complement", r.layout.complement.to_string());
            line("sdim L^2", r.layout.derived.to_string());
            line("sdim S", r.layout.central.to_string());
            line("sdim ID*(L)", r.id_star.to_string());
            line("sdim ID*(H)", r.id_star_h.to_string());
            line("minimal pair of L/Z(L)", r.pair.to_string());
            line("lambda(L^2; p, q)", r.bound.to_string());
        }
        Details::Filiform(r) => {
            line("case", format!("{:?}", r.case));
            line(
                "sdim L^2",
                format!("{} (expected {})", r.derived, r.expected_derived),
            );
            line("sdim Z(L)", r.center.to_string());
            line(
                "minimal pair of L/Z(L)",
                format!("{} (expected {})", r.pair, r.expected_pair),
            );
            line("lambda(L^2; p, q)", r.bound.to_string());
            line("case formula", r.case_formula.to_string());
            line("sdim ID*", r.id_star.to_string());
        }
    }
}

impl Report {
    pub fn render_text(&self, with_matrices: bool) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(out, "== {}", self.source);
        let _ = writeln!(out, "sdim L: {}", a.sdim);
        let _ = writeln!(
            out,
            "basis: [{} | {}]",
            a.names[..a.sdim.even].join(" "),
            a.names[a.sdim.even..].join(" ")
        );
        if a.valid {
            let _ = writeln!(out, "valid Lie superalgebra: yes");
        } else {
            let _ = writeln!(out, "valid Lie superalgebra: no");
            for v in &a.violations {
                let _ = writeln!(out, "  {v}");
            }
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "invariants:");
            let _ = writeln!(out, "  sdim L^2: {}", inv.derived);
            let _ = writeln!(out, "  sdim Z(L): {}", inv.center);
            let _ = writeln!(
                out,
                "  lower central series: {}",
                list(&inv.lower_central_series)
            );
            let _ = writeln!(
                out,
                "  upper central series: {}",
                list(&inv.upper_central_series)
            );
            let _ = writeln!(out, "  nilpotency class: {}", opt(&inv.nilpotency_class));
            let _ = writeln!(out, "  super-nilindex: {}", opt(&inv.super_nilindex));
            let _ = writeln!(out, "  minimal generator pair: {}", opt(&inv.minimal_pair));
        }
        if let Some(d) = &self.derivations {
            let _ = writeln!(out, "derivations:");
            for (label, s) in [
                ("Der", &d.der),
                ("ID", &d.id),
                ("ID*", &d.id_star),
                ("ad", &d.ad),
            ] {
                let _ = writeln!(out, "  sdim {label}: {}", s.sdim);
            }
            if with_matrices {
                legend(&mut out, &a.names, a.sdim);
                for (label, s) in [
                    ("Der", &d.der),
                    ("ID", &d.id),
                    ("ID*", &d.id_star),
                    ("ad", &d.ad),
                ] {
                    render_space(&mut out, label, s, a.sdim);
                }
            }
        }
        if let Some(b) = &self.bound {
            let _ = writeln!(out, "bound:");
            let _ = writeln!(out, "  minimal pair of L/Z(L): {}", b.pair);
            let _ = writeln!(out, "  lambda(L^2; p, q): {}", b.bound);
            let _ = writeln!(out, "  sdim ID*: {}", b.id_star);
            let _ = writeln!(out, "  holds: {}, tight: {}", b.holds, b.tight);
        }
        if let Some(note) = &self.bound_note {
            let _ = writeln!(out, "bound: not defined ({note})");
        }
        for v in &self.verifications {
            let status = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inapplicable => "INAPPLICABLE",
            };
            let _ = writeln!(out, "verify {}: {status}", v.theorem);
            if let Some(r) = &v.reason {
                let _ = writeln!(out, "  inapplicable: {r}");
            }
            for c in &v.checks {
                let _ = writeln!(
                    out,
                    "  [{}] {}",
                    if c.holds { "ok" } else { "FAILED" },
                    c.name
                );
            }
            if let Some(d) = &v.details {
                render_details(&mut out, d);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::heisenberg_h01;

    #[test]
    fn family_specs_parse() {
        assert_eq!(
            "filiform:3,4".parse::<FamilySpec>().unwrap(),
            FamilySpec::Filiform { n: 3, m: 4 }
        );
        assert_eq!(
            "heisenberg:3,2,1,1"
                .parse::<FamilySpec>()
                .unwrap()
                .to_string(),
            "heisenberg:3,2,1,1"
        );
        for bad in [
            "filiform:0,2",
            "filiform:1",
            "abelian:a,b",
            "lie:1,2",
            "abelian",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
        assert!("heisenberg:2,0,1,0"
            .parse::<FamilySpec>()
            .unwrap()
            .build()
            .is_err());
    }

    #[test]
    fn report_round_trips() {
        let (mut r, tower) = full_report("h01", &heisenberg_h01());
        r.verifications.push(verify(
            &heisenberg_h01(),
            tower.as_ref(),
            None,
            Theorem::Heisenberg,
        ));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.status(), Status::Pass);
    }

    #[test]
    fn abelian_report() {
        let l = families::abelian(2, 2);
        let (r, _) = full_report("abelian", &l);
        let d = r.derivations.unwrap();
        assert_eq!(d.der.sdim, SuperDim::new(8, 8));
        assert_eq!(d.id_star.sdim, SuperDim::new(0, 0));
    }

    #[test]
    fn inapplicable_class2() {
        let out = verify(&families::abelian(1, 1), None, None, Theorem::Class2);
        assert_eq!(out.status, Status::Inapplicable);
        assert_eq!(out.reason.as_deref(), Some("class 1"));
    }

    #[test]
    fn text_rendering_mentions_every_section() {
        let l = heisenberg_h01();
        let (mut r, tower) = full_report("h01", &l);
        r.verifications
            .push(verify(&l, tower.as_ref(), None, Theorem::Bound));
        let text = r.render_text(true);
        for needle in [
            "sdim ID*: (0, 1)",
            "legend",
            "minimal generator pair: (0, 1)",
            "verify bound: PASS",
        ] {
            assert!(text.contains(needle), "{needle}\n{text}");
        }
    }

    #[test]
    fn fuzz_is_deterministic() {
        let a = run_fuzz(12, 6, 99);
        let b = run_fuzz(12, 6, 99);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.failed, 0);
        assert_eq!(run_fuzz(0, 6, 1).passed, 0);
    }
}
