//! Contractive automorphisms of the concrete groups and contraction certificates.

use serde::{Deserialize, Serialize};

use super::group::{Group, GroupElement, GroupTag};
use crate::error::{Error, Result};
use crate::ufield::{ceil_q, fmt_rational, serde_rational, FieldDescriptor, FieldElement, LogValue, Q};
use crate::ulinalg::{adapted_norm, is_contractive, operator_bounds, MatrixK, NormReport, ValuationNorm};

#[derive(Clone, Debug)]
pub enum GroupAutomorphismSpec {
    Linear(MatrixK),
    /// Multiplication by `X^steps` on a shift group.
    RightShift(u32),
    /// `(x, y, z) -> (X^(p+1) x, X y, X z)`.
    SemidirectAlpha,
    BchLinear(MatrixK),
}

impl GroupAutomorphismSpec {
    pub fn tag_name(&self) -> &'static str {
        match self {
            GroupAutomorphismSpec::Linear(_) => "Linear",
            GroupAutomorphismSpec::RightShift(_) => "RightShift",
            GroupAutomorphismSpec::SemidirectAlpha => "SemidirectAlpha",
            GroupAutomorphismSpec::BchLinear(_) => "BchLinear",
        }
    }

    fn accepts(&self, tag: GroupTag) -> bool {
        match (self, tag) {
            (GroupAutomorphismSpec::Linear(a), GroupTag::Additive(n))
            | (GroupAutomorphismSpec::BchLinear(a), GroupTag::Bch(n)) => a.nrows() == n && a.ncols() == n,
            (GroupAutomorphismSpec::RightShift(_), GroupTag::Shift)
            | (GroupAutomorphismSpec::SemidirectAlpha, GroupTag::Semidirect) => true,
            _ => false,
        }
    }

    /// The matrix by which the automorphism acts on coordinates; every
    /// supported automorphism is coordinate-linear.
    pub fn matrix(&self, desc: FieldDescriptor) -> MatrixK {
        match self {
            GroupAutomorphismSpec::Linear(a) | GroupAutomorphismSpec::BchLinear(a) => a.clone(),
            GroupAutomorphismSpec::RightShift(k) => {
                MatrixK::diag(desc, &[FieldElement::uniformizer_pow(desc, *k as i64)])
            }
            GroupAutomorphismSpec::SemidirectAlpha => semidirect_alpha_matrix(desc),
        }
    }
}

/// `diag(X^(p+1), X, X)`.
pub fn semidirect_alpha_matrix(desc: FieldDescriptor) -> MatrixK {
    let x = FieldElement::uniformizer(desc);
    MatrixK::diag(desc, &[FieldElement::uniformizer_pow(desc, desc.p() as i64 + 1), x.clone(), x])
}

pub fn apply_automorphism(spec: &GroupAutomorphismSpec, g: &GroupElement) -> Result<GroupElement> {
    if !spec.accepts(g.tag()) {
        return Err(Error::TagMismatch(format!("{} applied to {}", spec.tag_name(), g.tag())));
    }
    let desc = *g.descriptor().expect("nonempty payload");
    let payload = match spec {
        GroupAutomorphismSpec::RightShift(k) => {
            let xk = FieldElement::uniformizer_pow(desc, *k as i64);
            vec![&g.payload()[0] * &xk]
        }
        _ => spec.matrix(desc).mul_vec(g.payload())?,
    };
    Ok(g.with_payload(payload))
}

/// A norm on group coordinates in which the automorphism scales every
/// vector by a factor between `a^-theta` and `a^-big_theta` in log scale.
#[derive(Clone, Debug)]
pub struct ContractionData {
    pub norm: ValuationNorm,
    /// Largest per-step valuation gain.
    pub theta_log: Q,
    /// Smallest per-step valuation gain.
    pub big_theta_log: Q,
}

impl ContractionData {
    pub fn level(&self, g: &GroupElement) -> Result<LogValue> {
        self.norm.norm(g.payload())
    }
}

/// Norm and operator bounds for `spec` acting on `group`.
///
/// The semidirect group and the shift group use the plain coordinate
/// valuation, in which their balls of nonnegative level are subgroups.
pub fn contraction_data(group: &Group, spec: &GroupAutomorphismSpec) -> Result<ContractionData> {
    let tag = group.tag();
    if !spec.accepts(tag) {
        return Err(Error::TagMismatch(format!("{} on a {tag} group", spec.tag_name())));
    }
    let desc = group.descriptor();
    let a = spec.matrix(desc);
    let norm = match spec {
        GroupAutomorphismSpec::Linear(_) | GroupAutomorphismSpec::BchLinear(_) => {
            let c = is_contractive(&a)?;
            if !c.contractive {
                let s: Vec<String> = c.valuations.iter().map(fmt_rational).collect();
                return Err(Error::NotContractive(format!("[{}]", s.join(", "))));
            }
            adapted_norm(&a)?
        }
        GroupAutomorphismSpec::RightShift(0) => return Err(Error::NotContractive("[0]".into())),
        _ => ValuationNorm::standard(desc, tag.arity()),
    };
    let (theta_log, big_theta_log) = operator_bounds(&a, &norm)?;
    Ok(ContractionData {
        norm,
        theta_log,
        big_theta_log,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleTrajectory {
    pub element: Vec<String>,
    /// Levels of `alpha^n(g)` for `n = 0..=horizon`.
    pub levels: Vec<LogValue>,
    pub nondecreasing: bool,
    /// `level(alpha^n g) >= level(g) + n * big_theta_log` for every `n`.
    pub certified: bool,
    pub target: LogValue,
    /// Entry time `n0 = ceil((target - w(g)) / big_theta_log)`, clamped at 0.
    pub entry_time: u64,
    /// `level(alpha^n0 g) >= target`, checked by applying `alpha` `n0` times.
    pub reaches_target: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractivityReport {
    pub automorphism: String,
    #[serde(with = "serde_rational")]
    pub theta_log: Q,
    #[serde(with = "serde_rational")]
    pub big_theta_log: Q,
    pub norm: NormReport,
    /// `big_theta_log > 0`, so each ball `U_s` satisfies `alpha(U_s) ⊆ U_s`.
    pub invariant_balls: bool,
    pub samples: Vec<SampleTrajectory>,
    pub passed: bool,
}

/// Trajectories of `alpha^n(g)` for `n <= horizon`, entry times into the
/// ball at level `target`, and the log-scale contraction certificate.
pub fn contractivity_report(
    group: &Group,
    spec: &GroupAutomorphismSpec,
    samples: &[GroupElement],
    horizon: u64,
    target: Q,
) -> Result<ContractivityReport> {
    let data = contraction_data(group, spec)?;
    let step = data.big_theta_log;
    let mut out = Vec::with_capacity(samples.len());
    for g in samples {
        if g.tag() != group.tag() {
            return Err(Error::TagMismatch(format!("{} sample in a {} group", g.tag(), group.tag())));
        }
        let w0 = data.level(g)?;
        let mut levels = vec![w0];
        let mut cur = g.clone();
        for _ in 0..horizon {
            cur = apply_automorphism(spec, &cur)?;
            levels.push(data.level(&cur)?);
        }
        let nondecreasing = levels.windows(2).all(|w| w[0] <= w[1]);
        let certified = levels
            .iter()
            .enumerate()
            .all(|(n, w)| *w >= w0 + step * Q::from_integer(n as i64));
        let entry_time = match w0 {
            LogValue::Infinity => 0,
            LogValue::Finite(w) => ceil_q(&((target - w) / step)).max(0) as u64,
        };
        let reaches_target = if (entry_time as usize) < levels.len() {
            levels[entry_time as usize] >= LogValue::Finite(target)
        } else {
            let mut h = g.clone();
            for _ in 0..entry_time {
                h = apply_automorphism(spec, &h)?;
            }
            data.level(&h)? >= LogValue::Finite(target)
        };
        out.push(SampleTrajectory {
            element: g.to_strings(),
            levels,
            nondecreasing,
            certified,
            target: LogValue::Finite(target),
            entry_time,
            reaches_target,
        });
    }
    let invariant_balls = step > Q::from_integer(0);
    let passed = invariant_balls && out.iter().all(|s| s.nondecreasing && s.certified && s.reaches_target);
    Ok(ContractivityReport {
        automorphism: spec.tag_name().to_string(),
        theta_log: data.theta_log,
        big_theta_log: step,
        norm: data.norm.report(),
        invariant_balls,
        samples: out,
        passed,
    })
}
