//! Positive gradations `g = (+)_n g_n` and their correspondence with contractive automorphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lie::{check_lie_automorphism, LieAlgebraSpec};
use crate::error::{Error, Result};
use crate::ufield::{fmt_rational, lcm_denominators, FieldElement, Q};
use crate::ulinalg::{char_subspaces, CharDecomposition, MatrixK, Subspace, Vector};

#[derive(Clone, Debug)]
pub struct Gradation {
    /// Common denominator: layer `n` is the piece of valuation `n / m`.
    pub m: u64,
    /// Nonempty layers by positive index.
    pub layers: BTreeMap<u64, Vec<Vector>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradationReport {
    pub m: u64,
    pub layers: BTreeMap<u64, Vec<Vec<String>>>,
}

impl Gradation {
    pub fn layer_dims(&self) -> BTreeMap<u64, usize> {
        self.layers.iter().map(|(n, b)| (*n, b.len())).collect()
    }

    pub fn layer_space(&self, l: &LieAlgebraSpec, n: u64) -> Subspace {
        match self.layers.get(&n) {
            Some(b) => Subspace::span(*l.descriptor(), l.dim(), b).unwrap_or_else(|_| Subspace::zero(*l.descriptor(), l.dim())),
            None => Subspace::zero(*l.descriptor(), l.dim()),
        }
    }

    pub fn report(&self) -> GradationReport {
        GradationReport {
            m: self.m,
            layers: self
                .layers
                .iter()
                .map(|(n, b)| (*n, b.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()))
                .collect(),
        }
    }

    pub fn from_report(l: &LieAlgebraSpec, r: &GradationReport) -> Result<Self> {
        let desc = *l.descriptor();
        let layers = r
            .layers
            .iter()
            .map(|(n, b)| {
                let vs = b
                    .iter()
                    .map(|v| v.iter().map(|s| FieldElement::parse(desc, s)).collect::<Result<Vector>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok((*n, vs))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Gradation { m: r.m, layers })
    }

    /// Direct sum, positivity and `[g_r, g_s] ⊆ g_{r+s}` on basis pairs.
    ///
    /// Structural defects give `InvalidGradation`, bracket defects `GradingViolation`.
    pub fn validate(&self, l: &LieAlgebraSpec) -> Result<()> {
        let desc = *l.descriptor();
        let d = l.dim();
        if self.m == 0 || self.layers.contains_key(&0) {
            return Err(Error::InvalidGradation("layer indices must be positive".into()));
        }
        let cols: Vec<Vector> = self.layers.values().flatten().cloned().collect();
        if cols.len() != d || cols.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidGradation(format!(
                "layers have total dimension {} in a {d}-dimensional algebra",
                cols.len()
            )));
        }
        MatrixK::from_columns(desc, d, &cols)?
            .inverse()
            .map_err(|_| Error::InvalidGradation("layers do not form a direct sum".into()))?;
        let spaces: BTreeMap<u64, Subspace> = self
            .layers
            .iter()
            .map(|(n, b)| Ok((*n, Subspace::span(desc, d, b)?)))
            .collect::<Result<_>>()?;
        let zero = Subspace::zero(desc, d);
        for (r, br) in &self.layers {
            for (s, bs) in self.layers.range(r..) {
                let target = spaces.get(&(r + s)).unwrap_or(&zero);
                for x in br {
                    for y in bs {
                        if !target.contains(&l.bracket(x, y))? {
                            return Err(Error::GradingViolation(format!(
                                "bracket of layers {r} and {s} leaves layer {}",
                                r + s
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn require_contractive(dec: &CharDecomposition) -> Result<()> {
    let vals = dec.valuations();
    if vals.iter().any(|w| *w <= Q::from_integer(0)) {
        let s: Vec<String> = vals.iter().map(fmt_rational).collect();
        return Err(Error::NotContractive(format!("[{}]", s.join(", "))));
    }
    Ok(())
}

/// Gradation from a decomposition already known to be contractive.
pub(crate) fn gradation_from_decomposition(l: &LieAlgebraSpec, dec: &CharDecomposition) -> Result<Gradation> {
    require_contractive(dec)?;
    let m = lcm_denominators(&dec.valuations()) as u64;
    let layers = dec
        .pieces
        .iter()
        .map(|p| {
            let n = p.valuation * Q::from_integer(m as i64);
            (n.to_integer() as u64, p.basis.clone())
        })
        .collect();
    let g = Gradation { m, layers };
    g.validate(l)?;
    Ok(g)
}

/// Layer `n` is the characteristic piece of valuation `n / m`, with `m` the
/// least common denominator of the characteristic valuations.
pub fn gradation_from_automorphism(l: &LieAlgebraSpec, b: &MatrixK) -> Result<Gradation> {
    check_lie_automorphism(l, b)?;
    let dec = char_subspaces(b)?;
    gradation_from_decomposition(l, &dec)
}

/// The automorphism acting as `theta^n` on layer `n`.
pub fn automorphism_from_gradation(l: &LieAlgebraSpec, g: &Gradation, theta: &FieldElement) -> Result<MatrixK> {
    let desc = *l.descriptor();
    desc.same_field(theta.descriptor())?;
    match theta.valuation() {
        Some(v) if v > 0 => {}
        _ => return Err(Error::NotContracting(theta.log_value().to_string())),
    }
    g.validate(l).map_err(|e| match e {
        Error::GradingViolation(msg) => Error::InvalidGradation(msg),
        e => e,
    })?;
    let mut cols = Vec::with_capacity(l.dim());
    let mut scal = Vec::with_capacity(l.dim());
    for (n, basis) in &g.layers {
        let t = theta.pow(*n);
        for v in basis {
            cols.push(v.clone());
            scal.push(t.clone());
        }
    }
    let p = MatrixK::from_columns(desc, l.dim(), &cols)?;
    let b = p.mul(&MatrixK::diag(desc, &scal))?.mul(&p.inverse()?)?;
    check_lie_automorphism(l, &b)?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufield::FieldDescriptor;

    #[test]
    fn heisenberg_layers() {
        let q5 = FieldDescriptor::padic(5).unwrap();
        let h = LieAlgebraSpec::heisenberg(q5);
        let b = MatrixK::parse_strs(q5, &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "25"]]).unwrap();
        let g = gradation_from_automorphism(&h, &b).unwrap();
        assert_eq!(g.m, 1);
        assert_eq!(g.layer_dims(), BTreeMap::from([(1, 2), (2, 1)]));
        let back = automorphism_from_gradation(&h, &g, &FieldElement::from_int(q5, 5)).unwrap();
        assert!(back.is_equal(&b));
        assert!(back.is_exact());
    }

    #[test]
    fn abelian_examples() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let a = LieAlgebraSpec::abelian(f3, 2);
        let d = MatrixK::parse_strs(f3, &[&["X", "0"], &["0", "X^2"]]).unwrap();
        let g = gradation_from_automorphism(&a, &d).unwrap();
        assert_eq!((g.m, g.layer_dims()), (1, BTreeMap::from([(1, 1), (2, 1)])));
        let c = MatrixK::parse_strs(f3, &[&["0", "X"], &["1", "0"]]).unwrap();
        let g = gradation_from_automorphism(&a, &c).unwrap();
        assert_eq!((g.m, g.layer_dims()), (2, BTreeMap::from([(1, 2)])));
        let x = FieldElement::uniformizer(f3);
        let one_layer = Gradation {
            m: 1,
            layers: BTreeMap::from([(1, vec![a.unit(0), a.unit(1)])]),
        };
        let b = automorphism_from_gradation(&a, &one_layer, &x).unwrap();
        assert!(b.is_equal(&MatrixK::identity(f3, 2).scale(&x)));
        assert!(matches!(
            automorphism_from_gradation(&a, &one_layer, &FieldElement::one(f3)),
            Err(Error::NotContracting(_))
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        let q5 = FieldDescriptor::padic(5).unwrap();
        let h = LieAlgebraSpec::heisenberg(q5);
        let id = MatrixK::identity(q5, 3);
        assert!(matches!(
            gradation_from_automorphism(&h, &id.scale(&FieldElement::from_int(q5, 5))),
            Err(Error::NotAutomorphism { .. })
        ));
        let inv = MatrixK::parse_strs(q5, &[&["1", "0", "0"], &["0", "1/5", "0"], &["0", "0", "1/5"]]).unwrap();
        assert!(matches!(gradation_from_automorphism(&h, &inv), Err(Error::NotContractive(_))));
        let flat = Gradation {
            m: 1,
            layers: BTreeMap::from([(1, vec![h.unit(0), h.unit(1), h.unit(2)])]),
        };
        assert!(matches!(
            automorphism_from_gradation(&h, &flat, &FieldElement::from_int(q5, 5)),
            Err(Error::InvalidGradation(_))
        ));
    }
}
