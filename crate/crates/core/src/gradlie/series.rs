//! Spectral filtrations, lower central series and the bracket constant.

use serde::{Deserialize, Serialize};

use super::lie::{check_lie_automorphism, LieAlgebraSpec};
use crate::error::{Error, Result};
use crate::ufield::{fmt_rational, LogValue, Q};
use crate::ulinalg::{char_subspaces, CharDecomposition, MatrixK, Subspace, ValuationNorm, Vector};

/// An ascending chain `F_1 ⊂ ... ⊂ F_m = g`.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub chain: Vec<Subspace>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub dims: Vec<usize>,
    pub chain: Vec<Vec<Vec<String>>>,
}

impl Filtration {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(|s| s.dim()).collect()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn report(&self) -> FiltrationReport {
        FiltrationReport {
            dims: self.dims(),
            chain: self
                .chain
                .iter()
                .map(|s| s.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
        }
    }
}

pub(crate) fn filtration_from_decomposition(
    l: &LieAlgebraSpec,
    b: &MatrixK,
    dec: &CharDecomposition,
) -> Result<Filtration> {
    let desc = *l.descriptor();
    let d = l.dim();
    let vals = dec.valuations();
    if vals.iter().any(|w| *w <= Q::from_integer(0)) {
        let s: Vec<String> = vals.iter().map(fmt_rational).collect();
        return Err(Error::NotContractive(format!("[{}]", s.join(", "))));
    }
    // F_j collects the j pieces of largest valuation.
    let mut chain = Vec::with_capacity(dec.pieces.len());
    let mut acc: Vec<Vector> = Vec::new();
    for piece in dec.pieces.iter().rev() {
        acc.extend(piece.basis.iter().cloned());
        chain.push(Subspace::span(desc, d, &acc)?);
    }
    let zero = Subspace::zero(desc, d);
    for (j, fj) in chain.iter().enumerate() {
        let prev = if j == 0 { &zero } else { &chain[j - 1] };
        for i in 0..d {
            let ei = l.unit(i);
            for x in fj.basis() {
                if !prev.contains(&l.bracket(&ei, x))? {
                    return Err(Error::CentralityViolation(format!(
                        "[g, F_{}] is not contained in F_{j}",
                        j + 1
                    )));
                }
            }
        }
        if !fj.is_invariant(b)? {
            return Err(Error::CentralityViolation(format!("F_{} is not invariant", j + 1)));
        }
    }
    Ok(Filtration { chain })
}

/// `F_j` = sum of the `j` fastest-contracting pieces; certified central:
/// `[g, F_j] ⊆ F_{j-1}` on all basis pairs.
pub fn spectral_filtration(l: &LieAlgebraSpec, b: &MatrixK) -> Result<Filtration> {
    check_lie_automorphism(l, b)?;
    let dec = char_subspaces(b)?;
    filtration_from_decomposition(l, b, &dec)
}

#[derive(Clone, Debug)]
pub struct CentralSeries {
    /// `g = C^1 ⊇ C^2 ⊇ ...`, ending with the zero space when nilpotent.
    pub chain: Vec<Subspace>,
    /// Nilpotency class; `None` when the series stabilizes above zero.
    pub class: Option<usize>,
}

impl CentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(|s| s.dim()).collect()
    }
}

pub fn lower_central_series(l: &LieAlgebraSpec) -> Result<CentralSeries> {
    let desc = *l.descriptor();
    let d = l.dim();
    let mut chain = vec![Subspace::whole(desc, d)];
    loop {
        let last = chain.last().unwrap();
        if last.dim() == 0 {
            let class = chain.len() - 1;
            return Ok(CentralSeries { chain, class: Some(class) });
        }
        let mut gens = Vec::new();
        for i in 0..d {
            for x in last.basis() {
                gens.push(l.bracket(&l.unit(i), x));
            }
        }
        let next = Subspace::span(desc, d, &gens)?;
        if next.dim() == last.dim() {
            return Ok(CentralSeries { chain, class: None });
        }
        chain.push(next);
    }
}

/// The tight `C` with `w([x, y]) >= w(x) + w(y) + C`, or `+inf` for abelian algebras.
pub fn bracket_constant(l: &LieAlgebraSpec, n: &ValuationNorm) -> Result<LogValue> {
    if n.dim() != l.dim() {
        return Err(Error::DimensionMismatch("norm and algebra dimensions differ".into()));
    }
    let mut best = LogValue::Infinity;
    for (i, (bi, ci)) in n.basis().iter().zip(n.shifts()).enumerate() {
        for (bj, cj) in n.basis().iter().zip(n.shifts()).skip(i + 1) {
            let w = n.norm(&l.bracket(bi, bj))?;
            best = best.min(w - *ci - *cj);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufield::FieldDescriptor;
    use crate::ulinalg::adapted_norm;

    fn q5() -> FieldDescriptor {
        FieldDescriptor::padic(5).unwrap()
    }

    #[test]
    fn heisenberg_filtration() {
        let h = LieAlgebraSpec::heisenberg(q5());
        let b = MatrixK::parse_strs(q5(), &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "25"]]).unwrap();
        let f = spectral_filtration(&h, &b).unwrap();
        assert_eq!(f.dims(), vec![1, 3]);
        assert!(f.chain[0].contains(&h.unit(2)).unwrap());
    }

    #[test]
    fn semidirect_linearization_filtration() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let a = LieAlgebraSpec::abelian(f3, 3);
        let b = MatrixK::parse_strs(f3, &[&["X^4", "0", "0"], &["0", "X", "0"], &["0", "0", "X"]]).unwrap();
        let f = spectral_filtration(&a, &b).unwrap();
        assert_eq!(f.dims(), vec![1, 3]);
        assert!(f.chain[0].contains(&a.unit(0)).unwrap());
        let one = LieAlgebraSpec::abelian(f3, 1);
        let x = MatrixK::parse_strs(f3, &[&["X"]]).unwrap();
        assert_eq!(spectral_filtration(&one, &x).unwrap().dims(), vec![1]);
    }

    #[test]
    fn central_series_classes() {
        assert_eq!(lower_central_series(&LieAlgebraSpec::heisenberg(q5())).unwrap().class, Some(2));
        assert_eq!(lower_central_series(&LieAlgebraSpec::abelian(q5(), 3)).unwrap().class, Some(1));
        let sl2 = LieAlgebraSpec::from_strs(q5(), 3, &[(0, 1, 2, "1"), (2, 0, 0, "2"), (2, 1, 1, "-2")]).unwrap();
        let cs = lower_central_series(&sl2).unwrap();
        assert_eq!(cs.class, None);
        assert_eq!(cs.dims(), vec![3]);
    }

    #[test]
    fn bracket_constants() {
        let h = LieAlgebraSpec::heisenberg(q5());
        let std = ValuationNorm::standard(q5(), 3);
        assert_eq!(bracket_constant(&h, &std).unwrap(), LogValue::from_int(0));
        assert_eq!(
            bracket_constant(&LieAlgebraSpec::abelian(q5(), 3), &std).unwrap(),
            LogValue::Infinity
        );
        let b = MatrixK::parse_strs(q5(), &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "25"]]).unwrap();
        let n = adapted_norm(&b).unwrap();
        assert_eq!(n.shifts(), &[Q::from_integer(0); 3]);
        assert_eq!(bracket_constant(&h, &n).unwrap(), LogValue::from_int(0));
    }
}
