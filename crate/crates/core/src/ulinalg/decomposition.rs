//! The characteristic-subspace decomposition `E = (+)_w E_w` of an invertible matrix.

use serde::{Deserialize, Serialize};

use super::charpoly::{char_poly, newton_polygon, slope_factor};
use super::matrix::{significance, MatrixK, Sig, Vector};
use crate::error::{Error, Result};
use crate::ufield::{serde_rational, serde_rational_vec, FieldDescriptor, Q};

#[derive(Clone, Debug)]
pub struct CharPiece {
    /// Common valuation of the eigenvalues on this piece.
    pub valuation: Q,
    pub basis: Vec<Vector>,
    /// The restriction of the matrix to the piece, in the coordinates of `basis`.
    pub block: MatrixK,
}

impl CharPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct CharDecomposition {
    desc: FieldDescriptor,
    dim: usize,
    pub pieces: Vec<CharPiece>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceReport {
    #[serde(with = "serde_rational")]
    pub valuation: Q,
    pub dimension: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub pieces: Vec<PieceReport>,
}

impl CharDecomposition {
    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valuations(&self) -> Vec<Q> {
        self.pieces.iter().map(|p| p.valuation).collect()
    }

    pub fn valuations_with_multiplicity(&self) -> Vec<Q> {
        self.pieces
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.valuation, p.dim()))
            .collect()
    }

    pub fn piece(&self, w: Q) -> Option<&CharPiece> {
        self.pieces.iter().find(|p| p.valuation == w)
    }

    /// All piece bases side by side, as the columns of a `d x d` matrix.
    pub fn basis_matrix(&self) -> Result<MatrixK> {
        let cols: Vec<Vector> = self.pieces.iter().flat_map(|p| p.basis.clone()).collect();
        MatrixK::from_columns(self.desc, self.dim, &cols)
    }

    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceReport {
                    valuation: p.valuation,
                    dimension: p.dim(),
                    basis: p
                        .basis
                        .iter()
                        .map(|v| v.iter().map(|x| x.to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

fn check_automorphism_shape(a: &MatrixK) -> Result<()> {
    if !a.is_square() || a.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.is_zero() {
        return Err(Error::SingularInput("zero matrix".into()));
    }
    Ok(())
}

pub fn char_subspaces(a: &MatrixK) -> Result<CharDecomposition> {
    check_automorphism_shape(a)?;
    let desc = *a.descriptor();
    let d = a.nrows();
    let f = char_poly(a)?;
    let factors = slope_factor(&f, desc.precision() as i64)?;
    let mut bases = Vec::with_capacity(factors.len());
    for (w, h) in &factors {
        let mult = h.degree().unwrap_or(0);
        let basis = h.eval_matrix(a)?.kernel(Some(mult))?;
        bases.push((*w, basis));
    }
    let cols: Vec<Vector> = bases.iter().flat_map(|(_, b)| b.clone()).collect();
    let p = MatrixK::from_columns(desc, d, &cols)?;
    let pinv = p.inverse().map_err(|e| match e {
        Error::NotInvertible => {
            Error::PrecisionExhausted("characteristic subspaces are not independent".into())
        }
        e => e,
    })?;
    let b = pinv.mul(a)?.mul(&p)?;
    let mut pieces = Vec::with_capacity(bases.len());
    let mut start = 0;
    for (w, basis) in bases {
        let end = start + basis.len();
        for i in 0..d {
            for j in start..end {
                if (i < start || i >= end) && significance(b.get(i, j)) != Sig::Zero {
                    return Err(Error::PrecisionExhausted(format!(
                        "piece of valuation {w} is not invariant at working precision"
                    )));
                }
            }
        }
        pieces.push(CharPiece {
            valuation: w,
            block: b.block(start, end, start, end),
            basis,
        });
        start = end;
    }
    Ok(CharDecomposition {
        desc,
        dim: d,
        pieces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contractivity {
    pub contractive: bool,
    /// Distinct characteristic valuations, ascending.
    #[serde(with = "serde_rational_vec")]
    pub valuations: Vec<Q>,
}

/// Contractive iff every eigenvalue has positive valuation.
pub fn is_contractive(a: &MatrixK) -> Result<Contractivity> {
    check_automorphism_shape(a)?;
    let np = newton_polygon(&char_poly(a)?)?;
    let valuations = np.slopes();
    Ok(Contractivity {
        contractive: valuations.iter().all(|w| *w > Q::from_integer(0)),
        valuations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufield::FieldElement;
    use crate::ulinalg::vec_is_equal;

    fn f3() -> FieldDescriptor {
        FieldDescriptor::laurent(3, 1).unwrap()
    }

    #[test]
    fn diagonal_pieces() {
        let a = MatrixK::parse_strs(f3(), &[&["X", "0"], &["0", "X^2"]]).unwrap();
        let dec = char_subspaces(&a).unwrap();
        assert_eq!(dec.valuations(), vec![Q::from_integer(1), Q::from_integer(2)]);
        let e1 = vec![FieldElement::one(f3()), FieldElement::zero(f3())];
        let e2 = vec![FieldElement::zero(f3()), FieldElement::one(f3())];
        assert!(vec_is_equal(&dec.pieces[0].basis[0], &e1));
        assert!(vec_is_equal(&dec.pieces[1].basis[0], &e2));
    }

    #[test]
    fn companion_is_one_piece() {
        let a = MatrixK::parse_strs(f3(), &[&["0", "X"], &["1", "0"]]).unwrap();
        let dec = char_subspaces(&a).unwrap();
        assert_eq!(dec.pieces.len(), 1);
        assert_eq!(dec.pieces[0].valuation, Q::new(1, 2));
        assert_eq!(dec.pieces[0].dim(), 2);
        let c = is_contractive(&a).unwrap();
        assert!(c.contractive);
        assert_eq!(c.valuations, vec![Q::new(1, 2)]);
    }

    #[test]
    fn identity_is_not_contractive() {
        let id = MatrixK::identity(f3(), 2);
        let dec = char_subspaces(&id).unwrap();
        assert_eq!(dec.pieces.len(), 1);
        assert_eq!(dec.pieces[0].valuation, Q::from_integer(0));
        let c = is_contractive(&id).unwrap();
        assert!(!c.contractive);
        assert_eq!(c.valuations, vec![Q::from_integer(0)]);
    }

    #[test]
    fn singular_inputs_rejected() {
        let z = MatrixK::zeros(f3(), 2, 2);
        assert!(matches!(char_subspaces(&z), Err(Error::SingularInput(_))));
        let s = MatrixK::parse_strs(f3(), &[&["1", "0"], &["0", "0"]]).unwrap();
        assert!(matches!(char_subspaces(&s), Err(Error::SingularInput(_))));
    }

    #[test]
    fn report_json_shape() {
        let a = MatrixK::parse_strs(f3(), &[&["0", "X"], &["1", "0"]]).unwrap();
        let json = serde_json::to_string(&char_subspaces(&a).unwrap().report()).unwrap();
        assert_eq!(
            json,
            r#"{"pieces":[{"valuation":"1/2","dimension":2,"basis":[["1","0"],["0","1"]]}]}"#
        );
    }
}
