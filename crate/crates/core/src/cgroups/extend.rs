//! Extending a morphism from an invariant ball to the whole contraction group
//! by `h(x) = alpha_2^-n g(alpha_1^n x)`.

use super::ball::BallSubgroup;
use crate::error::{Error, Result};
use crate::ufield::{ceil_q, fmt_rational, FieldElement, LogValue, Q};
use crate::ulinalg::{adapted_norm, operator_bounds, vec_is_equal, vec_to_strings, MatrixK, ValuationNorm, Vector};

pub type BallMap<'a> = dyn Fn(&[FieldElement]) -> Result<Vector> + 'a;

pub struct ExtendedMorphism<'a> {
    g: &'a BallMap<'a>,
    alpha1: MatrixK,
    alpha2_inv: MatrixK,
    ball: BallSubgroup,
    big_theta_log: Q,
}

/// Certify that `U = {w >= level}` (adapted norm of `alpha1`) is
/// `alpha1`-invariant and that `g` intertwines on the module generators of
/// `U`, then return the extension.
pub fn extend_morphism<'a>(g: &'a BallMap<'a>, alpha1: &MatrixK, alpha2: &MatrixK, level: Q) -> Result<ExtendedMorphism<'a>> {
    let norm: ValuationNorm = adapted_norm(alpha1).map_err(|e| match e {
        Error::NotContractive(v) => Error::NotInvariant(format!("alpha_1 has characteristic valuations {v}")),
        e => e,
    })?;
    let (_, big_theta_log) = operator_bounds(alpha1, &norm)?;
    if big_theta_log <= Q::from_integer(0) {
        return Err(Error::NotInvariant(format!(
            "alpha_1 only guarantees a gain of {}",
            fmt_rational(&big_theta_log)
        )));
    }
    let ball = BallSubgroup { norm, level };
    for u in ball.generators() {
        let au = alpha1.mul_vec(&u)?;
        if !ball.contains(&au)? {
            return Err(Error::NotInvariant(format!("alpha_1 moves {:?} out of the ball", vec_to_strings(&u))));
        }
        let lhs = g(&au)?;
        let rhs = alpha2.mul_vec(&g(&u)?)?;
        if !vec_is_equal(&lhs, &rhs) {
            return Err(Error::NotIntertwining(format!(
                "g(alpha_1 u) = {:?} but alpha_2 g(u) = {:?} for u = {:?}",
                vec_to_strings(&lhs),
                vec_to_strings(&rhs),
                vec_to_strings(&u)
            )));
        }
    }
    Ok(ExtendedMorphism {
        g,
        alpha1: alpha1.clone(),
        alpha2_inv: alpha2.inverse()?,
        ball,
        big_theta_log,
    })
}

impl ExtendedMorphism<'_> {
    pub fn ball(&self) -> &BallSubgroup {
        &self.ball
    }

    /// Smallest `n >= 0` with `alpha_1^n x` in the ball, and that element.
    /// The search is bounded by `ceil((level - w(x)) / Theta)`.
    pub fn entry(&self, x: &[FieldElement]) -> Result<(u64, Vector)> {
        let bound = match self.ball.norm.norm(x)? {
            LogValue::Infinity => 0,
            LogValue::Finite(w) => ceil_q(&((self.ball.level - w) / self.big_theta_log)).max(0) as u64,
        };
        let mut cur = x.to_vec();
        for n in 0..=bound {
            if self.ball.contains(&cur)? {
                return Ok((n, cur));
            }
            cur = self.alpha1.mul_vec(&cur)?;
        }
        Err(Error::NotInvariant(format!("no entry within the certified bound {bound}")))
    }

    pub fn apply(&self, x: &[FieldElement]) -> Result<Vector> {
        let (n, inside) = self.entry(x)?;
        let mut y = (self.g)(&inside)?;
        for _ in 0..n {
            y = self.alpha2_inv.mul_vec(&y)?;
        }
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufield::FieldDescriptor;

    fn f3() -> FieldDescriptor {
        FieldDescriptor::laurent(3, 1).unwrap()
    }

    fn el(s: &str) -> FieldElement {
        FieldElement::parse(f3(), s).unwrap()
    }

    #[test]
    fn scalar_multiple_extends_globally() {
        let x = MatrixK::parse_strs(f3(), &[&["X"]]).unwrap();
        let c = el("2 + X");
        let g = |v: &[FieldElement]| -> Result<Vector> {
            assert!(v[0].valuation().is_none_or(|k| k >= 0), "called outside the ball");
            Ok(vec![&c * &v[0]])
        };
        let h = extend_morphism(&g, &x, &x, Q::from_integer(0)).unwrap();
        let v = vec![el("X^-5 + 1")];
        let (n, _) = h.entry(&v).unwrap();
        assert_eq!(n, 5);
        assert!(h.apply(&v).unwrap()[0].is_equal(&(&c * &v[0])));
    }

    #[test]
    fn non_intertwining_map_is_rejected() {
        let x = MatrixK::parse_strs(f3(), &[&["X"]]).unwrap();
        let x2 = MatrixK::parse_strs(f3(), &[&["X^2"]]).unwrap();
        let g = |v: &[FieldElement]| -> Result<Vector> { Ok(v.to_vec()) };
        assert!(matches!(
            extend_morphism(&g, &x, &x2, Q::from_integer(0)),
            Err(Error::NotIntertwining(_))
        ));
        let one = MatrixK::identity(f3(), 1);
        assert!(matches!(
            extend_morphism(&g, &one, &one, Q::from_integer(0)),
            Err(Error::NotInvariant(_))
        ));
    }
}
