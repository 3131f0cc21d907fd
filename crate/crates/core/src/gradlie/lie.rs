//! Lie algebras given by structure constants on a basis `e_0, ..., e_{d-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement};
use crate::ulinalg::{significance_of, vec_add, vec_is_zero, unit_vector, MatrixK, Sig, Vector};

/// `[e_i, e_j] = ... + c e_k`.
#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: FieldElement,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketEntryRepr {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// A Lie algebra over a local field with exact structure constants.
///
/// Entries with `i > j` are accepted and stored via antisymmetry; the dense
/// table of basis brackets is built once at construction.
#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    desc: FieldDescriptor,
    dim: usize,
    brackets: Vec<BracketEntry>,
    table: Vec<Vector>,
}

impl LieAlgebraSpec {
    pub fn new(desc: FieldDescriptor, dim: usize, entries: Vec<BracketEntry>) -> Result<Self> {
        let mut brackets: Vec<BracketEntry> = Vec::with_capacity(entries.len());
        for e in entries {
            if e.i >= dim || e.j >= dim || e.k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket index out of range in ({}, {}, {}) for dimension {dim}",
                    e.i, e.j, e.k
                )));
            }
            if e.i == e.j {
                return Err(Error::InvalidAlgebra(format!("bracket [e{0}, e{0}] must vanish", e.i)));
            }
            desc.same_field(e.c.descriptor())?;
            if !e.c.is_exact() {
                return Err(Error::InvalidAlgebra("structure constants must be exact".into()));
            }
            let (i, j, c) = if e.i < e.j { (e.i, e.j, e.c) } else { (e.j, e.i, -e.c) };
            if let Some(prev) = brackets.iter_mut().find(|b| (b.i, b.j, b.k) == (i, j, e.k)) {
                prev.c = &prev.c + &c;
            } else {
                brackets.push(BracketEntry { i, j, k: e.k, c });
            }
        }
        brackets.retain(|b| !b.c.is_zero());
        brackets.sort_by_key(|b| (b.i, b.j, b.k));
        let mut table = vec![vec![FieldElement::zero(desc); dim]; dim * dim];
        for b in &brackets {
            let c = b.c.with_descriptor(desc);
            table[b.i * dim + b.j][b.k] = &table[b.i * dim + b.j][b.k] + &c;
            table[b.j * dim + b.i][b.k] = &table[b.j * dim + b.i][b.k] - &c;
        }
        Ok(LieAlgebraSpec {
            desc,
            dim,
            brackets,
            table,
        })
    }

    pub fn abelian(desc: FieldDescriptor, dim: usize) -> Self {
        Self::new(desc, dim, Vec::new()).expect("abelian algebra is valid")
    }

    /// `[e_0, e_1] = e_2`.
    pub fn heisenberg(desc: FieldDescriptor) -> Self {
        Self::new(
            desc,
            3,
            vec![BracketEntry {
                i: 0,
                j: 1,
                k: 2,
                c: FieldElement::one(desc),
            }],
        )
        .expect("Heisenberg algebra is valid")
    }

    /// Build from `(i, j, k, c)` with `c` in element syntax.
    pub fn from_strs(desc: FieldDescriptor, dim: usize, entries: &[(usize, usize, usize, &str)]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|&(i, j, k, c)| {
                Ok(BracketEntry {
                    i,
                    j,
                    k,
                    c: FieldElement::parse(desc, c)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(desc, dim, parsed)
    }

    pub fn from_repr(desc: FieldDescriptor, dim: usize, entries: &[BracketEntryRepr]) -> Result<Self> {
        let tuples: Vec<(usize, usize, usize, &str)> =
            entries.iter().map(|e| (e.i, e.j, e.k, e.c.as_str())).collect();
        Self::from_strs(desc, dim, &tuples)
    }

    pub fn to_repr(&self) -> Vec<BracketEntryRepr> {
        self.brackets
            .iter()
            .map(|b| BracketEntryRepr {
                i: b.i,
                j: b.j,
                k: b.k,
                c: b.c.to_string(),
            })
            .collect()
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn brackets(&self) -> &[BracketEntry] {
        &self.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let mut out = vec![FieldElement::zero(self.desc); self.dim];
        for b in &self.brackets {
            let (xi, xj, yi, yj) = (&x[b.i], &x[b.j], &y[b.i], &y[b.j]);
            let coeff = &(xi * yj) - &(xj * yi);
            if !(coeff.is_zero() && coeff.is_exact()) {
                out[b.k] = &out[b.k] + &(&coeff * &b.c);
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vector(self.desc, self.dim, i)
    }

    /// Matrix of `ad x`.
    pub fn ad(&self, x: &[FieldElement]) -> MatrixK {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &self.unit(j))).collect();
        MatrixK::from_columns(self.desc, self.dim, &cols).expect("square by construction")
    }
}

fn residual_string(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Jacobi identity on every basis triple `i < j < k`.
pub fn validate_lie(l: &LieAlgebraSpec) -> Result<()> {
    let d = l.dim();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let (ei, ej, ek) = (l.unit(i), l.unit(j), l.unit(k));
                let a = l.bracket(&ei, l.basis_bracket(j, k));
                let b = l.bracket(&ej, l.basis_bracket(k, i));
                let c = l.bracket(&ek, l.basis_bracket(i, j));
                let jac = vec_add(&vec_add(&a, &b), &c);
                if !vec_is_zero(&jac) {
                    return Err(Error::JacobiViolation {
                        i,
                        j,
                        k,
                        residual: residual_string(&jac),
                    });
                }
            }
        }
    }
    Ok(())
}

/// `B [e_i, e_j] = [B e_i, B e_j]` for all `i < j`.
pub fn check_lie_automorphism(l: &LieAlgebraSpec, b: &MatrixK) -> Result<()> {
    let d = l.dim();
    if b.nrows() != d || b.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on a {d}-dimensional algebra",
            b.nrows(),
            b.ncols()
        )));
    }
    l.descriptor().same_field(b.descriptor())?;
    b.inverse()?;
    let cols = b.columns();
    for i in 0..d {
        for j in i + 1..d {
            let lhs = b.mul_vec(l.basis_bracket(i, j))?;
            let rhs = l.bracket(&cols[i], &cols[j]);
            let res: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
            match res.iter().map(significance_of).max_by_key(|s| match s {
                Sig::Zero => 0,
                Sig::Uncertain => 1,
                Sig::Nonzero => 2,
            }) {
                None | Some(Sig::Zero) => {}
                Some(Sig::Nonzero) => {
                    return Err(Error::NotAutomorphism {
                        i,
                        j,
                        residual: residual_string(&res),
                    })
                }
                Some(Sig::Uncertain) => {
                    return Err(Error::PrecisionExhausted(format!(
                        "automorphism residual on ({i}, {j}) has too few significant digits"
                    )))
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> FieldDescriptor {
        FieldDescriptor::padic(5).unwrap()
    }

    #[test]
    fn jacobi_examples() {
        assert!(validate_lie(&LieAlgebraSpec::abelian(q5(), 3)).is_ok());
        assert!(validate_lie(&LieAlgebraSpec::heisenberg(q5())).is_ok());
        // [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=e3 happens to satisfy Jacobi:
        // the cyclic sum on (e1, e2, e3) is [e1,e3] - [e2,e2] + [e3,e1] = 0.
        let l = LieAlgebraSpec::from_strs(q5(), 3, &[(0, 1, 0, "1"), (0, 2, 1, "1"), (1, 2, 2, "1")]).unwrap();
        assert!(validate_lie(&l).is_ok());
        let bad = LieAlgebraSpec::from_strs(q5(), 3, &[(0, 1, 2, "1"), (0, 2, 2, "1"), (1, 2, 0, "1")]).unwrap();
        match validate_lie(&bad) {
            Err(Error::JacobiViolation { i: 0, j: 1, k: 2, residual }) => assert_eq!(residual, "(-1, 0, 0)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn automorphism_examples() {
        let h = LieAlgebraSpec::heisenberg(q5());
        let ok = MatrixK::parse_strs(q5(), &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "25"]]).unwrap();
        assert!(check_lie_automorphism(&h, &ok).is_ok());
        let bad = MatrixK::parse_strs(q5(), &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "5"]]).unwrap();
        assert!(matches!(
            check_lie_automorphism(&h, &bad),
            Err(Error::NotAutomorphism { i: 0, j: 1, .. })
        ));
        let any = MatrixK::parse_strs(q5(), &[&["1", "2", "0"], &["3", "1", "0"], &["0", "4", "7"]]).unwrap();
        assert!(check_lie_automorphism(&LieAlgebraSpec::abelian(q5(), 3), &any).is_ok());
    }

    #[test]
    fn antisymmetric_entries() {
        let l = LieAlgebraSpec::from_strs(q5(), 3, &[(0, 1, 2, "1"), (2, 0, 0, "2"), (2, 1, 1, "-2")]).unwrap();
        assert!(validate_lie(&l).is_ok());
        let e = |i| l.unit(i);
        assert!(crate::ulinalg::vec_is_equal(&l.bracket(&e(0), &e(2)), &crate::ulinalg::vec_scale(&FieldElement::from_int(q5(), -2), &e(0))));
    }
}
