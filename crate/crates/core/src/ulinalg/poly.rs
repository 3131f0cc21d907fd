//! Univariate polynomials over a local field, coefficients in ascending order.

use std::fmt;

use super::matrix::MatrixK;
use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement};

#[derive(Clone, Debug)]
pub struct Poly {
    desc: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

fn exact_zero(x: &FieldElement) -> bool {
    x.is_zero() && x.is_exact()
}

impl Poly {
    pub fn new(desc: FieldDescriptor, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Poly { desc, coeffs };
        p.trim();
        p
    }

    pub fn parse(desc: FieldDescriptor, coeffs: &[&str]) -> Result<Self> {
        Ok(Self::new(
            desc,
            coeffs
                .iter()
                .map(|s| FieldElement::parse(desc, s))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn zero(desc: FieldDescriptor) -> Self {
        Poly {
            desc,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(*c.descriptor(), vec![c])
    }

    /// `t - c`.
    pub fn linear(c: &FieldElement) -> Self {
        let desc = *c.descriptor();
        Self::new(desc, vec![-c, FieldElement::one(desc)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(exact_zero) {
            self.coeffs.pop();
        }
    }

    /// Also drop leading coefficients that are zero at their precision.
    pub(crate) fn trim_zero_classes(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.desc))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_exact() && c.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_equal(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i).is_equal(&other.coeff(i)))
    }

    pub fn with_descriptor(&self, desc: FieldDescriptor) -> Self {
        Poly {
            desc,
            coeffs: self.coeffs.iter().map(|c| c.with_descriptor(desc)).collect(),
        }
    }

    /// Forget all digits at or beyond `pi^n`. An exact leading one is kept exact.
    pub fn truncate(&self, n: i64) -> Self {
        let monic = self.is_monic();
        let last = self.coeffs.len().saturating_sub(1);
        Self::new(
            self.desc,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if monic && i == last { c.clone() } else { c.truncate(n) })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.desc, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.desc, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.desc, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.desc, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(self.desc);
        }
        let mut out = vec![FieldElement::zero(self.desc); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if exact_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !exact_zero(b) {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.desc, out)
    }

    /// Division with remainder by a monic polynomial.
    pub fn divrem_monic(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if !d.is_monic() {
            return Err(Error::InvalidAlgebra("divisor is not monic".into()));
        }
        let k = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= k {
            return Ok((Self::zero(self.desc), self.clone()));
        }
        let mut quot = vec![FieldElement::zero(self.desc); rem.len() - k];
        for i in (k..rem.len()).rev() {
            let c = rem[i].clone();
            quot[i - k] = c.clone();
            if exact_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate().take(k) {
                if !exact_zero(dj) {
                    rem[i - k + j] = &rem[i - k + j] - &(&c * dj);
                }
            }
            rem[i] = FieldElement::zero(self.desc);
        }
        rem.truncate(k);
        Ok((Self::new(self.desc, quot), Self::new(self.desc, rem)))
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.desc);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &MatrixK) -> Result<MatrixK> {
        let n = a.nrows();
        let mut acc = MatrixK::zeros(self.desc, n, n);
        let id = MatrixK::identity(self.desc, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if exact_zero(c) {
                continue;
            }
            let cs = c.to_string();
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let term = if mono.is_empty() {
                cs
            } else if c.is_exact() && c.is_one() {
                mono
            } else if cs.contains([' ', '+', '/']) || cs[1..].contains('-') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_monic() {
        let q5 = FieldDescriptor::padic(5).unwrap();
        let f = Poly::parse(q5, &["125", "-30", "1"]).unwrap().mul(&Poly::parse(q5, &["1", "1"]).unwrap());
        let d = Poly::parse(q5, &["-5", "1"]).unwrap();
        let (q, r) = f.divrem_monic(&d).unwrap();
        assert!(r.is_zero());
        assert!(q.mul(&d).is_equal(&f));
        assert!(f.eval(&FieldElement::from_int(q5, 25)).is_zero());
    }

    #[test]
    fn display() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let f = Poly::parse(f3, &["X^3", "-X - X^2", "1"]).unwrap();
        assert_eq!(f.to_string(), "t^2 + (2*X + 2*X^2)*t + X^3");
    }
}
