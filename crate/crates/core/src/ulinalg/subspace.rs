//! Subspaces of `K^d` given by bases, with precision-aware membership tests.

use super::matrix::{gauss_jordan, significance, unit_vector, MatrixK, Sig, Vector};
use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement};

#[derive(Clone, Debug)]
pub struct Subspace {
    desc: FieldDescriptor,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(desc: FieldDescriptor, ambient: usize) -> Self {
        Subspace {
            desc,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(desc: FieldDescriptor, ambient: usize) -> Self {
        Subspace {
            desc,
            ambient,
            basis: (0..ambient).map(|i| unit_vector(desc, ambient, i)).collect(),
        }
    }

    /// Span of the given vectors; a maximal independent subset, in order, is kept as basis.
    pub fn span(desc: FieldDescriptor, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let mut s = Self::zero(desc, ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in K^{ambient}",
                    v.len()
                )));
            }
            if !s.contains(v)? {
                s.basis.push(v.clone());
            }
        }
        Ok(s)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside the span.
    ///
    /// A residual that is nonzero but known to fewer than the margin of
    /// significant digits makes the answer undecidable.
    pub fn coordinates(&self, v: &[FieldElement]) -> Result<Option<Vector>> {
        let k = self.basis.len();
        let mut rows: Vec<Vector> = (0..self.ambient)
            .map(|i| {
                let mut r: Vector = self.basis.iter().map(|b| b[i].clone()).collect();
                r.push(v[i].clone());
                r
            })
            .collect();
        let piv = gauss_jordan(self.desc, &mut rows, k, None)?;
        if piv.len() < k {
            return Err(Error::PrecisionExhausted(
                "subspace basis degenerated at working precision".into(),
            ));
        }
        for row in rows.iter().skip(k) {
            match significance(&row[k]) {
                Sig::Zero => {}
                Sig::Nonzero => return Ok(None),
                Sig::Uncertain => {
                    return Err(Error::PrecisionExhausted(
                        "membership decided by fewer than the required significant digits".into(),
                    ))
                }
            }
        }
        let mut x = vec![FieldElement::zero(self.desc); k];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = rows[r][k].clone();
        }
        Ok(Some(x))
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        if self.basis.is_empty() {
            return match v.iter().map(significance).find(|s| *s != Sig::Zero) {
                None => Ok(true),
                Some(Sig::Nonzero) => Ok(false),
                Some(_) => Err(Error::PrecisionExhausted(
                    "membership decided by fewer than the required significant digits".into(),
                )),
            };
        }
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_space(&self, other: &Subspace) -> Result<bool> {
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.desc, self.ambient, &all)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_space(other)?)
    }

    pub fn image(&self, a: &MatrixK) -> Result<Subspace> {
        let imgs = self
            .basis
            .iter()
            .map(|b| a.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.desc, a.nrows(), &imgs)
    }

    pub fn is_invariant(&self, a: &MatrixK) -> Result<bool> {
        for b in &self.basis {
            if !self.contains(&a.mul_vec(b)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The basis as the columns of a matrix.
    pub fn matrix(&self) -> Result<MatrixK> {
        MatrixK::from_columns(self.desc, self.ambient, &self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_and_membership() {
        let q5 = FieldDescriptor::padic(5).unwrap();
        let v = |xs: &[i64]| -> Vector { xs.iter().map(|&x| FieldElement::from_int(q5, x)).collect() };
        let s = Subspace::span(q5, 3, &[v(&[1, 0, 5]), v(&[2, 0, 10]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[3, 2, 17])).unwrap());
        assert!(!s.contains(&v(&[0, 0, 1])).unwrap());
        let x = s.coordinates(&v(&[3, 2, 17])).unwrap().unwrap();
        assert!(x[0].is_equal(&FieldElement::from_int(q5, 3)));
        assert!(x[1].is_equal(&FieldElement::from_int(q5, 2)));
        assert!(Subspace::whole(q5, 3).contains_space(&s).unwrap());
        assert!(Subspace::zero(q5, 3).contains(&v(&[0, 0, 0])).unwrap());
    }
}
