//! Valuation norms `w(sum x_i b_i) = min_i (v(x_i) + c_i)` and the norm adapted to a matrix.

use serde::{Deserialize, Serialize};

use super::decomposition::{char_subspaces, CharDecomposition, CharPiece};
use super::lattice::{Lattice, ResidueEchelon};
use super::matrix::{MatrixK, Vector};
use crate::error::{Error, Result};
use crate::ufield::{
    ceil_q, serde_rational_vec, FieldDescriptor, FieldElement, LogValue, Q,
};

#[derive(Clone, Debug)]
pub struct ValuationNorm {
    desc: FieldDescriptor,
    basis: Vec<Vector>,
    shifts: Vec<Q>,
    inverse: MatrixK,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormReport {
    pub basis: Vec<Vec<String>>,
    #[serde(with = "serde_rational_vec")]
    pub shifts: Vec<Q>,
}

impl ValuationNorm {
    pub fn new(desc: FieldDescriptor, basis: Vec<Vector>, shifts: Vec<Q>) -> Result<Self> {
        let d = basis.len();
        if shifts.len() != d || basis.iter().any(|b| b.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "{} basis vectors with {} shifts",
                d,
                shifts.len()
            )));
        }
        let inverse = MatrixK::from_columns(desc, d, &basis)?.inverse()?;
        Ok(ValuationNorm {
            desc,
            basis,
            shifts,
            inverse,
        })
    }

    /// Standard basis with the given shifts.
    pub fn with_shifts(desc: FieldDescriptor, shifts: Vec<Q>) -> Self {
        let d = shifts.len();
        let basis = (0..d).map(|i| super::matrix::unit_vector(desc, d, i)).collect();
        ValuationNorm {
            desc,
            basis,
            shifts,
            inverse: MatrixK::identity(desc, d),
        }
    }

    /// The sup norm of the standard basis.
    pub fn standard(desc: FieldDescriptor, d: usize) -> Self {
        Self::with_shifts(desc, vec![Q::from_integer(0); d])
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn shifts(&self) -> &[Q] {
        &self.shifts
    }

    pub fn coordinates(&self, v: &[FieldElement]) -> Result<Vector> {
        self.inverse.mul_vec(v)
    }

    /// `w(v)`; `+inf` only for the zero vector.
    pub fn norm(&self, v: &[FieldElement]) -> Result<LogValue> {
        let x = self.coordinates(v)?;
        let mut best = LogValue::Infinity;
        for (xi, c) in x.iter().zip(&self.shifts) {
            if let Some(val) = xi.valuation() {
                best = best.min(LogValue::from_int(val) + *c);
            }
        }
        for (xi, c) in x.iter().zip(&self.shifts) {
            if let (None, Some(n)) = (xi.valuation(), xi.precision()) {
                if LogValue::from_int(n) + *c <= best {
                    return Err(Error::PrecisionExhausted(format!(
                        "norm undecidable: a coordinate is O(pi^{n})"
                    )));
                }
            }
        }
        Ok(best)
    }

    /// Finite norm, as a rational.
    pub fn norm_q(&self, v: &[FieldElement]) -> Result<Q> {
        self.norm(v)?
            .finite()
            .ok_or_else(|| Error::SingularInput("norm of the zero vector".into()))
    }

    pub fn report(&self) -> NormReport {
        NormReport {
            basis: self
                .basis
                .iter()
                .map(|b| b.iter().map(|x| x.to_string()).collect())
                .collect(),
            shifts: self.shifts.clone(),
        }
    }
}

/// Residue digits of the coordinates of `g` with respect to `m0`.
fn residue_coordinates(m0: &Lattice, g: &[FieldElement]) -> Result<Vec<u32>> {
    m0.coordinates(g)?
        .iter()
        .map(|x| {
            x.residue().ok_or_else(|| {
                Error::PrecisionExhausted("lattice generator is not integral over M_0".into())
            })
        })
        .collect()
}

/// Basis and shifts (in `[0, 1)`) of a norm on one piece, in piece coordinates.
fn piece_norm(desc: FieldDescriptor, piece: &CharPiece) -> Result<Vec<(Vector, Q)>> {
    let e = piece.dim();
    let s = piece.valuation;
    let (a, m) = (*s.numer(), *s.denom());
    let blk = &piece.block;
    let pi_pow = |k: i64| FieldElement::uniformizer_pow(desc, k);

    // T = pi^(-a) A^m has unit eigenvalues, so it preserves some lattice.
    let t = blk.pow(m as u64)?.scale(&pi_pow(-a));
    let mut lat = Lattice::standard(desc, e);
    let mut stable = false;
    for _ in 0..64 {
        let next = lat.sum(&lat.image(&t)?)?;
        if next.volume() == lat.volume() {
            stable = true;
            break;
        }
        lat = next;
    }
    if !stable {
        return Err(Error::PrecisionExhausted("lattice did not stabilize".into()));
    }

    // M_c = sum_k pi^ceil(c - k s) A^k L satisfies A M_c = M_{c+s}.
    let powers: Vec<MatrixK> = (0..m)
        .map(|k| blk.pow(k as u64))
        .collect::<Result<_>>()?;
    let generators = |c: Q| -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        for (k, ak) in powers.iter().enumerate() {
            let scale = pi_pow(ceil_q(&(c - s * Q::from_integer(k as i64))));
            for b in lat.basis() {
                out.push(ak.mul_vec(b)?.iter().map(|x| x * &scale).collect());
            }
        }
        Ok(out)
    };
    let m0 = Lattice::generated_by(desc, e, generators(Q::from_integer(0))?)?;

    // Reduce M_{j/m} into M_0 / pi M_0 and pick lifts adapted to the flag.
    let mut ech = ResidueEchelon::new(desc);
    let mut chosen: Vec<(Vector, Q)> = Vec::with_capacity(e);
    for j in (0..m).rev() {
        let gens = if j == 0 {
            m0.basis().to_vec()
        } else {
            generators(Q::new(j, m))?
        };
        for g in gens {
            if ech.rank() == e {
                break;
            }
            if ech.insert(residue_coordinates(&m0, &g)?) {
                chosen.push((g, Q::new(j, m)));
            }
        }
    }
    if chosen.len() != e {
        return Err(Error::PrecisionExhausted("adapted basis is incomplete".into()));
    }
    chosen.reverse();
    chosen.sort_by_key(|x| x.1);
    Ok(chosen)
}

/// Scale by a residue so that the first nonzero coordinate has leading digit 1.
fn canonicalize(v: Vector) -> Vector {
    let Some(lead) = v.iter().find(|x| x.valuation().is_some()) else {
        return v;
    };
    let desc = *lead.descriptor();
    let digit = lead.digit(lead.valuation().unwrap()).unwrap();
    if digit == 1 {
        return v;
    }
    let c = desc.res_inv(digit);
    v.iter().map(|x| x.scale_residue(c)).collect()
}

/// A norm in which `A` scales every characteristic piece exactly by its valuation.
pub fn adapted_norm_for(dec: &CharDecomposition) -> Result<ValuationNorm> {
    let desc = *dec.descriptor();
    let d = dec.dim();
    let mut basis = Vec::with_capacity(d);
    let mut shifts = Vec::with_capacity(d);
    for piece in &dec.pieces {
        let pm = MatrixK::from_columns(desc, d, &piece.basis)?;
        for (b, c) in piece_norm(desc, piece)? {
            basis.push(canonicalize(pm.mul_vec(&b)?));
            shifts.push(c);
        }
    }
    ValuationNorm::new(desc, basis, shifts).map_err(|e| match e {
        Error::NotInvertible => Error::PrecisionExhausted("adapted basis degenerated".into()),
        e => e,
    })
}

pub fn adapted_norm(a: &MatrixK) -> Result<ValuationNorm> {
    adapted_norm_for(&char_subspaces(a)?)
}

/// `(theta_log, Theta_log)`: the largest and smallest norm gains of `A`.
///
/// `w(Av) >= w(v) + Theta_log` and `w(A^-1 v) >= w(v) - theta_log` for all `v`.
pub fn operator_bounds(a: &MatrixK, n: &ValuationNorm) -> Result<(Q, Q)> {
    if a.nrows() != n.dim() || !a.is_square() {
        return Err(Error::DimensionMismatch("matrix and norm dimensions differ".into()));
    }
    let ainv = a.inverse()?;
    let mut big_theta: Option<Q> = None;
    let mut theta: Option<Q> = None;
    for (b, c) in n.basis.iter().zip(&n.shifts) {
        let up = n.norm(&a.mul_vec(b)?)?.finite().ok_or(Error::NotInvertible)? - c;
        let down = c - n.norm(&ainv.mul_vec(b)?)?.finite().ok_or(Error::NotInvertible)?;
        big_theta = Some(big_theta.map_or(up, |x| x.min(up)));
        theta = Some(theta.map_or(down, |x| x.max(down)));
    }
    match (theta, big_theta) {
        (Some(t), Some(bt)) => Ok((t, bt)),
        _ => Err(Error::DimensionMismatch("empty space".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufield::FieldElement;

    fn f3() -> FieldDescriptor {
        FieldDescriptor::laurent(3, 1).unwrap()
    }

    fn v(desc: FieldDescriptor, xs: &[&str]) -> Vector {
        xs.iter().map(|s| FieldElement::parse(desc, s).unwrap()).collect()
    }

    #[test]
    fn diagonal_norm() {
        let a = MatrixK::parse_strs(f3(), &[&["X", "0"], &["0", "X^2"]]).unwrap();
        let n = adapted_norm(&a).unwrap();
        assert_eq!(n.shifts(), &[Q::from_integer(0), Q::from_integer(0)]);
        assert_eq!(n.report().basis, vec![vec!["1", "0"], vec!["0", "1"]]);
        assert_eq!(operator_bounds(&a, &n).unwrap(), (Q::from_integer(2), Q::from_integer(1)));
    }

    #[test]
    fn companion_norm_matches_hand_evaluation() {
        let a = MatrixK::parse_strs(f3(), &[&["0", "X"], &["1", "0"]]).unwrap();
        let n = adapted_norm(&a).unwrap();
        assert_eq!(n.shifts(), &[Q::from_integer(0), Q::new(1, 2)]);
        assert_eq!(n.report().basis, vec![vec!["1", "0"], vec!["0", "1"]]);
        let x = v(f3(), &["1 + X", "X^-2"]);
        // w(x, y) = min(v(x), v(y) + 1/2) and A(x, y) = (X y, x).
        assert_eq!(n.norm_q(&x).unwrap(), Q::new(-3, 2));
        assert_eq!(n.norm_q(&a.mul_vec(&x).unwrap()).unwrap(), Q::from_integer(-1));
        assert_eq!(operator_bounds(&a, &n).unwrap(), (Q::new(1, 2), Q::new(1, 2)));
    }

    #[test]
    fn identity_norm() {
        let id = MatrixK::identity(f3(), 2);
        let n = adapted_norm(&id).unwrap();
        assert_eq!(n.shifts(), &[Q::from_integer(0), Q::from_integer(0)]);
        assert_eq!(operator_bounds(&id, &n).unwrap(), (Q::from_integer(0), Q::from_integer(0)));
    }
}
