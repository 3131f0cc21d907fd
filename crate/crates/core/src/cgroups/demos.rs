//! Named demonstrations with JSON-friendly reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::automorphism::{apply_automorphism, contractivity_report, semidirect_alpha_matrix, GroupAutomorphismSpec};
use super::ball::{ball_lemma_check, BallGroup};
use super::bch::{bch_cross_check, bch_integrate};
use super::check::{all_passed, Check};
use super::extend::extend_morphism;
use super::group::{Group, GroupElement};
use super::shift::{decimate, shift_isomorphisms, spread, ShiftConfig, ShiftIsoName, Windowed};
use super::torsion::torsion_exponent;
use crate::error::{Error, Result};
use crate::gradlie::LieAlgebraSpec;
use crate::ufield::sample::random_exact;
use crate::ufield::{FieldDescriptor, FieldElement, Q};
use crate::ulinalg::{vec_is_equal, MatrixK, Vector};

pub const DEMO_NAMES: [&str; 7] = [
    "even-sub",
    "subfield",
    "interleave-2",
    "interleave-n",
    "semidirect",
    "heisenberg-bch",
    "same-linearization",
];

pub const CONVENTION: &str = "|x| = a^(-v(x)) with a = q; levels and bounds are log-scale valuations, larger means smaller";

#[derive(Clone, Debug)]
pub struct DemoConfig {
    pub seed: u64,
    /// Random samples per property.
    pub samples: usize,
    /// Deepest ball level for the separation demo.
    pub depth: u32,
    /// Window width for shift-group elements.
    pub width: usize,
    /// Working precision for p-adic demos.
    pub precision: u32,
    pub p: u32,
}

impl Default for DemoConfig {
    fn default() -> Self {
        DemoConfig {
            seed: 0,
            samples: 100,
            depth: 10,
            width: 32,
            precision: 64,
            p: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DemoReport {
    pub demo: String,
    pub field: String,
    pub convention: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
}

impl DemoReport {
    fn new(demo: &str, field: String, cfg: &DemoConfig, checks: Vec<Check>, conclusion: Option<String>) -> Self {
        let status = if all_passed(&checks) { "pass" } else { "fail" };
        DemoReport {
            demo: demo.to_string(),
            field,
            convention: CONVENTION.to_string(),
            seed: cfg.seed,
            checks,
            status: status.to_string(),
            conclusion,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

pub fn run_demo(name: &str, cfg: &DemoConfig) -> Result<DemoReport> {
    match name {
        "even-sub" | "subfield" | "interleave-2" | "interleave-n" => shift_demo(name, cfg),
        "semidirect" => semidirect_demo(cfg),
        "heisenberg-bch" => heisenberg_bch_demo(cfg),
        "same-linearization" => same_linearization_demo(cfg),
        _ => Err(Error::InvalidAlgebra(format!(
            "unknown demo {name:?}; expected one of {}",
            DEMO_NAMES.join(", ")
        ))),
    }
}

fn shift_config(cfg: &DemoConfig) -> ShiftConfig {
    ShiftConfig {
        p: cfg.p,
        width: cfg.width,
        samples: cfg.samples.min(50),
        seed: cfg.seed,
        n: 3,
    }
}

/// Random shift-group elements on windows of the configured width.
pub fn shift_samples(desc: FieldDescriptor, cfg: &DemoConfig, count: usize) -> Result<Vec<GroupElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5157);
    (0..count)
        .map(|_| {
            let lo = rng.gen_range(-3..=3);
            let w = Windowed::random(desc, &mut rng, lo, cfg.width);
            GroupElement::new(super::GroupTag::Shift, vec![w.x])
        })
        .collect()
}

fn shift_demo(name: &str, cfg: &DemoConfig) -> Result<DemoReport> {
    let iso = ShiftIsoName::parse(name).expect("listed name");
    let r = shift_isomorphisms(iso, &shift_config(cfg))?;
    let mut checks = r.checks;
    let base = FieldDescriptor::laurent(cfg.p, 1)?;
    let shift = Group::shift(base)?;
    let e = torsion_exponent(&shift, &shift_samples(base, cfg, 20)?)?;
    checks.push(Check::new(
        "shift_torsion_exponent",
        e == cfg.p as u64,
        format!("exponent {e} on 20 windowed samples"),
    ));
    if iso == ShiftIsoName::Interleave2 {
        checks.push(interleave_extension_check(cfg, 20)?);
    }
    Ok(DemoReport::new(name, r.field, cfg, checks, None))
}

/// Extend `phi(x, y) = x(X^2) + X y(X^2)`, given only on the level-0 ball of
/// `alpha(x, y) = (X y, x)`, and compare with the global map.
pub fn interleave_extension_check(cfg: &DemoConfig, count: usize) -> Result<Check> {
    let desc = FieldDescriptor::laurent(cfg.p, 1)?;
    let x = FieldElement::uniformizer(desc);
    let phi = |v: &[FieldElement]| -> FieldElement { &spread(&v[0], 2) + &(&x * &spread(&v[1], 2)) };
    let on_ball = |v: &[FieldElement]| -> Result<Vector> {
        if v.iter().any(|c| c.valuation().is_some_and(|k| k < 0)) {
            return Err(Error::InvalidAlgebra("ball map evaluated outside the ball".into()));
        }
        Ok(vec![phi(v)])
    };
    let alpha1 = MatrixK::parse_strs(desc, &[&["0", "X"], &["1", "0"]])?;
    let alpha2 = MatrixK::parse_strs(desc, &[&["X"]])?;
    let h = extend_morphism(&on_ball, &alpha1, &alpha2, Q::from_integer(0))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xe7);
    let mut ok = 0;
    let mut max_n = 0;
    for _ in 0..count {
        let mut coord = || {
            let lo = rng.gen_range(-6..=0);
            random_exact(desc, &mut rng, lo, 8)
        };
        let v = vec![coord(), coord()];
        let (n, _) = h.entry(&v)?;
        max_n = max_n.max(n);
        let got = h.apply(&v)?;
        let inv_ok = {
            let back = [decimate(&got[0], 2, 0), decimate(&got[0], 2, 1)];
            vec_is_equal(&back, &v)
        };
        if got[0].is_equal(&phi(&v)) && inv_ok {
            ok += 1;
        }
    }
    Ok(Check::new(
        "ball_extension",
        ok == count,
        format!("h = alpha_2^-n g alpha_1^n agrees with the global interleave map on {ok}/{count} exact samples (max n = {max_n})"),
    ))
}

/// Random exact elements of the semidirect group.
pub fn semidirect_samples(desc: FieldDescriptor, seed: u64, count: usize) -> Result<Vec<GroupElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5d);
    (0..count)
        .map(|_| {
            let mut c = || {
                let lo = rng.gen_range(-2..=2);
                random_exact(desc, &mut rng, lo, 5)
            };
            GroupElement::semidirect(c(), c(), c())
        })
        .collect()
}

/// Associativity, identity and inverses on consecutive sample triples.
pub fn group_axioms(group: &Group, samples: &[GroupElement]) -> Result<Vec<Check>> {
    let n = samples.len();
    let mut assoc = 0;
    let mut unit = 0;
    let mut inverse = 0;
    for i in 0..n {
        let (a, b, c) = (&samples[i], &samples[(i + 1) % n], &samples[(i + 2) % n]);
        let left = group.op(&group.op(a, b)?, c)?;
        let right = group.op(a, &group.op(b, c)?)?;
        if left.is_equal(&right) {
            assoc += 1;
        }
        let e = group.identity();
        if group.op(a, &e)?.is_equal(a) && group.op(&e, a)?.is_equal(a) {
            unit += 1;
        }
        let ai = group.inv(a)?;
        if group.op(a, &ai)?.is_identity() && group.op(&ai, a)?.is_identity() {
            inverse += 1;
        }
    }
    Ok(vec![
        Check::new("associativity", assoc == n, format!("{assoc}/{n} triples")),
        Check::new("identity", unit == n, format!("{unit}/{n} samples")),
        Check::new("inverses", inverse == n, format!("{inverse}/{n} samples")),
    ])
}

/// `alpha(gh) = alpha(g) alpha(h)` on consecutive sample pairs.
pub fn automorphism_check(group: &Group, spec: &GroupAutomorphismSpec, samples: &[GroupElement]) -> Result<Check> {
    let n = samples.len();
    let mut ok = 0;
    for i in 0..n {
        let (a, b) = (&samples[i], &samples[(i + 1) % n]);
        let lhs = apply_automorphism(spec, &group.op(a, b)?)?;
        let rhs = group.op(&apply_automorphism(spec, a)?, &apply_automorphism(spec, b)?)?;
        if lhs.is_equal(&rhs) {
            ok += 1;
        }
    }
    Ok(Check::new("automorphism", ok == n, format!("alpha(gh) = alpha(g) alpha(h) on {ok}/{n} pairs")))
}

/// Contraction certificate over 50 iterations with target level 20.
pub fn certificate_check(group: &Group, spec: &GroupAutomorphismSpec, samples: &[GroupElement]) -> Result<Check> {
    let r = contractivity_report(group, spec, samples, 50, Q::from_integer(20))?;
    let max_n0 = r.samples.iter().map(|s| s.entry_time).max().unwrap_or(0);
    Ok(Check::new(
        "contraction_certificate",
        r.passed,
        format!(
            "w(alpha^n g) >= w(g) + n*{} for n <= 50 on {} samples; entry times into level 20 at most {max_n0}",
            r.big_theta_log,
            samples.len()
        ),
    ))
}

fn semidirect_demo(cfg: &DemoConfig) -> Result<DemoReport> {
    let desc = FieldDescriptor::laurent(cfg.p, 1)?;
    let group = Group::semidirect(desc)?;
    let spec = GroupAutomorphismSpec::SemidirectAlpha;
    let samples = semidirect_samples(desc, cfg.seed, cfg.samples.max(100))?;
    let mut checks = group_axioms(&group, &samples)?;

    let mut formula = 0;
    let mut central = 0;
    let p = cfg.p as u64;
    let zero = FieldElement::zero(desc);
    for i in 0..samples.len() {
        let (g, h) = (&samples[i], &samples[(i + 1) % samples.len()]);
        let (y, z) = (&g.payload()[1], &g.payload()[2]);
        let (b, c) = (&h.payload()[1], &h.payload()[2]);
        let want = &(&z.pow(p) * b) - &(&c.pow(p) * y);
        let got = group.commutator(g, h)?;
        if got.payload()[0].is_equal(&want) && got.payload()[1].is_zero() && got.payload()[2].is_zero() {
            formula += 1;
        }
        let x_only = GroupElement::semidirect(g.payload()[0].clone(), zero.clone(), zero.clone())?;
        if group.commutator(&x_only, h)?.is_identity() {
            central += 1;
        }
    }
    let n = samples.len();
    checks.push(Check::new(
        "commutator_formula",
        formula == n,
        format!("g h g^-1 h^-1 = (z^p b - c^p y, 0, 0) on {formula}/{n} pairs"),
    ));
    checks.push(Check::new(
        "central_subgroup",
        central == n,
        format!("K x 0 x 0 commutes with {central}/{n} samples"),
    ));
    checks.push(automorphism_check(&group, &spec, &samples)?);
    checks.push(certificate_check(&group, &spec, &samples[..20])?);

    let s = Q::from_integer(2);
    let ball = ball_lemma_check(&BallGroup::Semidirect(desc), s)?;
    let wit: Vec<String> = ball.checks.iter().map(|c| format!("({}) {}", c.name, c.witness)).collect();
    checks.push(Check::new("ball_lemma", ball.passed, format!("level {s}: {}", wit.join("; "))));

    let e = torsion_exponent(&group, &samples[..20])?;
    checks.push(Check::new(
        "torsion_exponent",
        (p * p).is_multiple_of(e),
        format!("exponent {e} on 20 exact samples; divides p^2 = {}", p * p),
    ));
    let f2 = FieldDescriptor::laurent(2, 1)?;
    let e2 = torsion_exponent(&Group::semidirect(f2)?, &semidirect_samples(f2, cfg.seed, 20)?)?;
    checks.push(Check::new(
        "torsion_exponent_char_2",
        e2 == 4,
        format!("over F_2((X)) the exponent is {e2} = 2^2"),
    ));
    Ok(DemoReport::new("semidirect", desc.to_string(), cfg, checks, None))
}

fn heisenberg_bch_demo(cfg: &DemoConfig) -> Result<DemoReport> {
    let q5 = FieldDescriptor::padic(5)?.with_precision(cfg.precision);
    let l = LieAlgebraSpec::heisenberg(q5);
    let b = MatrixK::parse_strs(q5, &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "25"]])?;
    let bch = bch_integrate(&l, &b)?;
    let class = bch.class();
    let group = Group::Bch(Box::new(bch));
    let spec = GroupAutomorphismSpec::BchLinear(b);
    let mut checks = vec![Check::new(
        "dynkin_cross_check",
        (1..=3).all(bch_cross_check),
        "Dynkin coefficients match x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12 through degree 3",
    )];

    let e1 = GroupElement::bch(l.unit(0));
    let e2 = GroupElement::bch(l.unit(1));
    let prod = group.op(&e1, &e2)?;
    let half = FieldElement::from_ratio(q5, 1.into(), 2.into())?;
    let want = GroupElement::bch(vec![FieldElement::one(q5), FieldElement::one(q5), half]);
    checks.push(Check::new("generator_product", prod.is_equal(&want), format!("e1 * e2 = {prod}, class {class}")));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xb0);
    let samples: Vec<GroupElement> = (0..30)
        .map(|_| {
            GroupElement::bch(
                (0..3)
                    .map(|_| {
                        let lo = rng.gen_range(-1..=1);
                        random_exact(q5, &mut rng, lo, 4)
                    })
                    .collect(),
            )
        })
        .collect();
    checks.extend(group_axioms(&group, &samples)?);
    let mut comm = 0;
    for i in 0..samples.len() {
        let (g, h) = (&samples[i], &samples[(i + 1) % samples.len()]);
        let c = group.commutator(g, h)?;
        if vec_is_equal(c.payload(), &l.bracket(g.payload(), h.payload())) {
            comm += 1;
        }
    }
    checks.push(Check::new(
        "commutator_is_bracket",
        comm == samples.len(),
        format!("g h g^-1 h^-1 = [x, y] on {comm}/{} pairs", samples.len()),
    ));
    checks.push(automorphism_check(&group, &spec, &samples)?);
    checks.push(certificate_check(&group, &spec, &samples)?);

    let q2 = FieldDescriptor::padic(2)?;
    let b2 = MatrixK::parse_strs(q2, &[&["2", "0", "0"], &["0", "2", "0"], &["0", "0", "4"]])?;
    let rejected = bch_integrate(&LieAlgebraSpec::heisenberg(q2), &b2);
    checks.push(Check::new(
        "q2_rejected",
        matches!(rejected, Err(Error::DenominatorNotUnit { .. })),
        match rejected {
            Err(e) => format!("{}: {e}", e.name()),
            Ok(_) => "accepted".into(),
        },
    ));
    Ok(DemoReport::new("heisenberg-bch", q5.to_string(), cfg, checks, None))
}

/// Contrast the semidirect group with `(K^3, +)`: same Lie algebra, same
/// linear automorphism, but only one of them is abelian on any ball.
pub fn same_linearization_demo(cfg: &DemoConfig) -> Result<DemoReport> {
    let desc = FieldDescriptor::laurent(cfg.p, 1)?;
    let sd = Group::semidirect(desc)?;
    let add = Group::additive(desc, 3);
    let p = cfg.p as u64;
    let samples = semidirect_samples(desc, cfg.seed, cfg.samples.max(20))?;
    let n = samples.len();
    let zero = FieldElement::zero(desc);

    let mut formula = 0;
    let mut abelian = 0;
    for i in 0..n {
        let (g, h) = (&samples[i], &samples[(i + 1) % n]);
        let (y, z) = (&g.payload()[1], &g.payload()[2]);
        let (b, c) = (&h.payload()[1], &h.payload()[2]);
        let want = &(&z.pow(p) * b) - &(&c.pow(p) * y);
        let got = sd.commutator(g, h)?;
        if got.payload()[0].is_equal(&want) && got.payload()[1].is_zero() && got.payload()[2].is_zero() {
            formula += 1;
        }
        let ga = GroupElement::additive(g.payload().to_vec());
        let ha = GroupElement::additive(h.payload().to_vec());
        if add.commutator(&ga, &ha)?.is_identity() {
            abelian += 1;
        }
    }
    let mut checks = vec![
        Check::new(
            "commutator_formula",
            formula == n,
            format!("(z^p b - c^p y, 0, 0) on {formula}/{n} pairs"),
        ),
        Check::new("additive_abelian", abelian == n, format!("(K^3, +) commutators trivial on {abelian}/{n} pairs")),
    ];

    let mut levels_ok = true;
    let mut witnesses = Vec::new();
    for s in 1..=cfg.depth as i64 {
        let xs = FieldElement::uniformizer_pow(desc, s);
        let g = GroupElement::semidirect(zero.clone(), xs.clone(), zero.clone())?;
        let h = GroupElement::semidirect(zero.clone(), zero.clone(), xs.clone())?;
        let inside = [&g, &h].iter().all(|e| e.payload().iter().all(|c| c.valuation().is_none_or(|v| v >= s)));
        let c = sd.commutator(&g, &h)?;
        let predicted = -FieldElement::uniformizer_pow(desc, (p as i64 + 1) * s);
        let ok = inside && !c.is_identity() && c.payload()[0].is_equal(&predicted) && c.payload()[1].is_zero() && c.payload()[2].is_zero();
        levels_ok &= ok;
        witnesses.push(format!("s={s}: [(0,X^{s},0),(0,0,X^{s})] = {c}"));
    }
    checks.push(Check::new("noncommuting_pairs", levels_ok, witnesses.join("; ")));

    let alpha = semidirect_alpha_matrix(desc);
    let spec_sd = GroupAutomorphismSpec::SemidirectAlpha;
    let spec_add = GroupAutomorphismSpec::Linear(alpha.clone());
    let mut same = 0;
    for g in &samples {
        let a = apply_automorphism(&spec_sd, g)?;
        let b = apply_automorphism(&spec_add, &GroupElement::additive(g.payload().to_vec()))?;
        if vec_is_equal(a.payload(), b.payload()) {
            same += 1;
        }
    }
    checks.push(Check::new(
        "same_linear_automorphism",
        same == n,
        format!("both automorphisms act as {alpha} on coordinates ({same}/{n} samples)"),
    ));
    let additive: Vec<GroupElement> = samples.iter().map(|g| GroupElement::additive(g.payload().to_vec())).collect();
    let mut on_sd = automorphism_check(&sd, &spec_sd, &samples)?;
    on_sd.name = "automorphism_semidirect".into();
    let mut on_add = automorphism_check(&add, &spec_add, &additive)?;
    on_add.name = "automorphism_additive".into();
    checks.push(on_sd);
    checks.push(on_add);
    let conclusion = "both groups have the abelian Lie algebra K^3 and the automorphism diag(X^(p+1), X, X), \
                      yet only (K^3, +) is abelian on a ball: in characteristic p the pair (L, L(alpha)) \
                      does not determine the contraction group";
    Ok(DemoReport::new("same-linearization", desc.to_string(), cfg, checks, Some(conclusion.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> DemoConfig {
        DemoConfig {
            samples: 20,
            ..DemoConfig::default()
        }
    }

    #[test]
    fn every_demo_passes() {
        for name in DEMO_NAMES {
            let r = run_demo(name, &quick()).unwrap();
            assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn level_one_witness() {
        let r = same_linearization_demo(&quick()).unwrap();
        let w = &r.checks.iter().find(|c| c.name == "noncommuting_pairs").unwrap().witness;
        assert!(w.contains("s=1: [(0,X^1,0),(0,0,X^1)] = (2*X^4, 0, 0)"), "{w}");
    }

    #[test]
    fn unknown_demo() {
        assert!(run_demo("nope", &quick()).is_err());
    }
}
