//! Analysis reports and the commands that fill them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use contractible::cgroups::{
    automorphism_check, bch_integrate, certificate_check, group_axioms, run_demo, Check, CheckStatus, DemoConfig, Group,
    GroupAutomorphismSpec, GroupElement, CONVENTION,
};
use contractible::gradlie::{
    automorphism_from_gradation, gradation_from_automorphism, lower_central_series, spectral_filtration,
    validate_lie, FiltrationReport, LieAlgebraSpec, SpecFile,
};
use contractible::selfcheck::{run_criterion, SelfcheckConfig};
use contractible::ufield::sample::random_exact;
use contractible::ufield::{fmt_rational, FieldElement, Q};
use contractible::ulinalg::{
    adapted_norm_for, char_poly, char_subspaces, newton_polygon, operator_bounds, DecompositionReport, MatrixK,
    NormReport, Subspace,
};
use contractible::{Error, ErrorClass, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Gradation,
    CentralSeries,
    Integrate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Gradation => "gradation",
            Command::CentralSeries => "central-series",
            Command::Integrate => "integrate",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Convention {
    pub a: String,
    pub q: Option<u64>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    /// Largest one-step gain in level.
    pub theta_log: String,
    /// Smallest one-step gain in level; positive means every ball is invariant.
    pub big_theta_log: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BchSummary {
    pub class: usize,
    pub terms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub name: String,
    pub class: String,
    pub message: String,
}

/// Every key is always present; stages that did not run leave `null`.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub command: String,
    pub input: Option<String>,
    pub name: Option<String>,
    pub field: Option<String>,
    pub convention: Convention,
    pub precision: u32,
    pub seed: u64,
    pub valuations: Option<Vec<String>>,
    pub contractive: Option<bool>,
    pub decomposition: Option<DecompositionReport>,
    pub adapted_norm: Option<NormReport>,
    pub operator_bounds: Option<Bounds>,
    pub m: Option<u64>,
    pub layers: Option<BTreeMap<u64, Vec<Vec<String>>>>,
    pub layer_dims: Option<BTreeMap<u64, usize>>,
    pub filtration: Option<FiltrationReport>,
    pub lower_central_series: Option<Vec<usize>>,
    pub nilpotency_class: Option<usize>,
    pub bch: Option<BchSummary>,
    pub demo: Option<String>,
    pub conclusion: Option<String>,
    pub checks: Vec<Check>,
    pub error: Option<ErrorInfo>,
    pub status: String,
    #[serde(skip)]
    pub exit_code: i32,
}

/// Failure outside the library, such as an unreadable input file.
#[derive(Clone, Debug)]
pub struct Failure {
    pub name: String,
    pub class: ErrorClass,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            name: e.name().to_string(),
            class: e.class(),
            message: e.to_string(),
        }
    }
}

fn class_name(c: ErrorClass) -> &'static str {
    match c {
        ErrorClass::Parse => "parse",
        ErrorClass::Precondition => "precondition",
        ErrorClass::Precision => "precision",
        ErrorClass::CheckFailure => "check_failure",
    }
}

fn exit_code(c: ErrorClass) -> i32 {
    match c {
        ErrorClass::Parse => 1,
        ErrorClass::Precondition => 2,
        ErrorClass::Precision => 3,
        ErrorClass::CheckFailure => 4,
    }
}

impl AnalysisReport {
    pub fn new(command: &str, precision: u32, seed: u64) -> Self {
        AnalysisReport {
            command: command.to_string(),
            input: None,
            name: None,
            field: None,
            convention: Convention {
                a: "q".into(),
                q: None,
                note: CONVENTION.into(),
            },
            precision,
            seed,
            valuations: None,
            contractive: None,
            decomposition: None,
            adapted_norm: None,
            operator_bounds: None,
            m: None,
            layers: None,
            layer_dims: None,
            filtration: None,
            lower_central_series: None,
            nilpotency_class: None,
            bch: None,
            demo: None,
            conclusion: None,
            checks: Vec::new(),
            error: None,
            status: String::new(),
            exit_code: 0,
        }
    }

    /// Record the outcome and set `status`.
    pub fn finish(mut self, outcome: std::result::Result<(), Failure>) -> Self {
        match outcome {
            Ok(()) => {
                let ok = self.checks.iter().all(Check::passed);
                self.status = if ok { "pass" } else { "fail" }.into();
                self.exit_code = if ok { 0 } else { exit_code(ErrorClass::CheckFailure) };
            }
            Err(f) => {
                self.exit_code = exit_code(f.class);
                self.error = Some(ErrorInfo {
                    name: f.name,
                    class: class_name(f.class).into(),
                    message: f.message,
                });
                self.status = "error".into();
            }
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        if let Some(i) = &self.input {
            let _ = writeln!(s, "input: {i}");
        }
        if let Some(d) = &self.demo {
            let _ = writeln!(s, "demo: {d}");
        }
        if let Some(f) = &self.field {
            let _ = writeln!(s, "field: {f} (precision {}, seed {})", self.precision, self.seed);
        }
        let _ = writeln!(s, "convention: {}", self.convention.note);
        if let Some(v) = &self.valuations {
            let _ = writeln!(s, "valuations: [{}]", v.join(", "));
        }
        if let Some(c) = self.contractive {
            let _ = writeln!(s, "contractive: {c}");
        }
        if let Some(b) = &self.operator_bounds {
            let _ = writeln!(s, "operator bounds: theta_log {}, big_theta_log {}", b.theta_log, b.big_theta_log);
        }
        if let Some(m) = self.m {
            let _ = writeln!(s, "m: {m}");
        }
        if let Some(d) = &self.layer_dims {
            let parts: Vec<String> = d.iter().map(|(n, k)| format!("{n}: {k}")).collect();
            let _ = writeln!(s, "layer dims: {{{}}}", parts.join(", "));
        }
        if let Some(f) = &self.filtration {
            let _ = writeln!(s, "filtration dims: {:?}", f.dims);
        }
        if let Some(l) = &self.lower_central_series {
            let _ = writeln!(s, "lower central series dims: {l:?}");
        }
        if let Some(c) = self.nilpotency_class {
            let _ = writeln!(s, "nilpotency class: {c}");
        }
        if let Some(b) = &self.bch {
            let _ = writeln!(s, "bch: class {}, {} terms", b.class, b.terms);
        }
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "n/a",
            };
            let _ = writeln!(s, "  [{tag}] {}: {}", c.name, c.witness);
        }
        if let Some(c) = &self.conclusion {
            let _ = writeln!(s, "conclusion: {c}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {} ({}): {}", e.name, e.class, e.message);
        }
        let _ = writeln!(s, "status: {}", self.status);
        s
    }
}

fn strs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

/// The automorphism given in the file, or the one built from its gradation
/// and `theta`.
fn automorphism_of(spec: &SpecFile, l: &LieAlgebraSpec) -> Result<MatrixK> {
    if let Some(b) = spec.automorphism()? {
        return Ok(b);
    }
    match (spec.gradation(l)?, spec.theta()?) {
        (Some(g), Some(theta)) => automorphism_from_gradation(l, &g, &theta),
        _ => Err(Error::InvalidAlgebra(
            "spec file needs an automorphism, or a gradation together with theta".into(),
        )),
    }
}

pub fn run_spec(cmd: Command, spec: SpecFile, report: &mut AnalysisReport) -> Result<()> {
    let spec = spec.with_precision(report.precision);
    let desc = spec.descriptor();
    report.name = spec.name.clone();
    report.field = Some(desc.to_string());
    report.convention.q = Some(desc.q());

    let l = spec.algebra()?;
    validate_lie(&l)?;
    let b = automorphism_of(&spec, &l)?;
    analyze(&l, &b, report)?;
    match cmd {
        Command::Analyze => Ok(()),
        Command::Gradation => gradation(&l, &b, report),
        Command::CentralSeries => {
            gradation(&l, &b, report)?;
            central_series(&l, &b, report)
        }
        Command::Integrate => integrate(&l, &b, report),
    }
}

fn analyze(l: &LieAlgebraSpec, b: &MatrixK, report: &mut AnalysisReport) -> Result<()> {
    contractible::gradlie::check_lie_automorphism(l, b)?;
    report.checks.push(Check::new(
        "lie_automorphism",
        true,
        "B[e_i, e_j] = [B e_i, B e_j] on all basis pairs",
    ));
    let np = newton_polygon(&char_poly(b)?)?;
    let vals = np.valuations_with_multiplicity();
    report.valuations = Some(strs(&vals));
    let contractive = vals.iter().all(|w| *w > Q::from_integer(0));
    report.contractive = Some(contractive);
    if !contractive {
        return Err(Error::NotContractive(format!("[{}]", strs(&np.slopes()).join(", "))));
    }

    let dec = char_subspaces(b)?;
    report.decomposition = Some(dec.report());
    let norm = adapted_norm_for(&dec)?;
    let (theta, big_theta) = operator_bounds(b, &norm)?;
    report.adapted_norm = Some(norm.report());
    report.operator_bounds = Some(Bounds {
        theta_log: fmt_rational(&theta),
        big_theta_log: fmt_rational(&big_theta),
    });

    let mut scaled = 0;
    let mut total = 0;
    for piece in &dec.pieces {
        for v in &piece.basis {
            total += 1;
            if norm.norm_q(&b.mul_vec(v)?)? == norm.norm_q(v)? + piece.valuation {
                scaled += 1;
            }
        }
    }
    report.checks.push(Check::new(
        "adapted_norm_scales_pieces",
        scaled == total,
        format!("w(Bv) = w(v) + slope on {scaled}/{total} piece basis vectors"),
    ));
    report.checks.push(Check::new(
        "invariant_balls",
        big_theta > Q::from_integer(0),
        format!("every step raises the level by at least {}", fmt_rational(&big_theta)),
    ));
    Ok(())
}

fn gradation(l: &LieAlgebraSpec, b: &MatrixK, report: &mut AnalysisReport) -> Result<()> {
    let g = gradation_from_automorphism(l, b)?;
    let r = g.report();
    report.m = Some(r.m);
    report.layers = Some(r.layers);
    report.layer_dims = Some(g.layer_dims());
    report.checks.push(Check::new(
        "graded",
        true,
        "[L_i, L_j] ⊆ L_(i+j) on all layer basis pairs",
    ));

    let pi = FieldElement::uniformizer(*l.descriptor());
    let back = gradation_from_automorphism(l, &automorphism_from_gradation(l, &g, &pi)?)?;
    report.checks.push(Check::new(
        "round_trip",
        back.m == 1 && back.layer_dims() == g.layer_dims(),
        format!("layers of the automorphism acting as pi^n on layer n: {:?}", back.layer_dims()),
    ));
    Ok(())
}

fn central_series(l: &LieAlgebraSpec, b: &MatrixK, report: &mut AnalysisReport) -> Result<()> {
    let f = spectral_filtration(l, b)?;
    let r = f.len();
    report.filtration = Some(f.report());
    report.checks.push(Check::new(
        "central_filtration",
        true,
        "[g, F_j] ⊆ F_(j-1) on all basis pairs and every F_j is invariant",
    ));
    let lcs = lower_central_series(l)?;
    report.lower_central_series = Some(lcs.dims());
    report.nilpotency_class = lcs.class;
    let distinct = report.decomposition.as_ref().map_or(0, |d| d.pieces.len());
    report.checks.push(Check::new(
        "class_bound",
        lcs.class.is_some_and(|c| c <= distinct),
        match lcs.class {
            Some(c) => format!("class {c}, {distinct} distinct valuations"),
            None => "not nilpotent".into(),
        },
    ));
    let zero = Subspace::zero(*l.descriptor(), l.dim());
    let mut nested = true;
    for (k0, ck) in lcs.chain.iter().enumerate() {
        let target = if k0 < r { &f.chain[r - 1 - k0] } else { &zero };
        nested &= target.contains_space(ck)?;
    }
    report.checks.push(Check::new("lower_central_inside_filtration", nested, "C^k ⊆ F_(r-k+1) for every k"));
    Ok(())
}

fn integrate(l: &LieAlgebraSpec, b: &MatrixK, report: &mut AnalysisReport) -> Result<()> {
    let desc = *l.descriptor();
    let group = bch_integrate(l, b)?;
    report.bch = Some(BchSummary {
        class: group.class(),
        terms: group.term_count(),
    });
    let group = Group::Bch(Box::new(group));
    let spec = GroupAutomorphismSpec::BchLinear(b.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(report.seed);
    let samples: Vec<GroupElement> = (0..30)
        .map(|_| {
            GroupElement::bch(
                (0..l.dim())
                    .map(|_| {
                        let lo = rng.gen_range(-1..=1);
                        random_exact(desc, &mut rng, lo, 4)
                    })
                    .collect(),
            )
        })
        .collect();
    report.checks.extend(group_axioms(&group, &samples)?);
    report.checks.push(automorphism_check(&group, &spec, &samples)?);
    report.checks.push(certificate_check(&group, &spec, &samples)?);
    Ok(())
}

pub fn run_demo_report(name: &str, report: &mut AnalysisReport) -> Result<()> {
    report.demo = Some(name.to_string());
    let cfg = DemoConfig {
        seed: report.seed,
        precision: report.precision,
        ..DemoConfig::default()
    };
    let demo = run_demo(name, &cfg)?;
    report.field = Some(demo.field);
    report.conclusion = demo.conclusion;
    report.checks = demo.checks;
    Ok(())
}

/// Criteria 1 to 9, one check each. With `progress`, each line is written
/// to stderr as soon as it is known.
pub fn run_selfcheck_report(report: &mut AnalysisReport, progress: bool) {
    let cfg = SelfcheckConfig {
        seed: report.seed,
        precision: report.precision,
    };
    for id in 1..=9 {
        let r = run_criterion(id, &cfg);
        if progress {
            eprintln!("{}", r.line());
        }
        report.checks.push(Check::new(
            format!("criterion_{id}"),
            r.passed,
            format!("{}: {}", r.title, r.detail),
        ));
    }
}
