//! Groups from nilpotent Lie algebras via the Baker-Campbell-Hausdorff series.
//!
//! The series is generated from Dynkin's formula with exact rational
//! coefficients and truncated at the nilpotency class, where it is a
//! polynomial and the group law is exactly associative.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gradlie::{check_lie_automorphism, lower_central_series, validate_lie, LieAlgebraSpec};
use crate::ufield::{fmt_rational, FieldElement};
use crate::ulinalg::{is_contractive, vec_add, MatrixK, Vector};

/// Right-nested bracket words: letter 0 is `x`, letter 1 is `y`.
pub type Word = Vec<u8>;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn compositions(pairs: usize, total: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if pairs == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if total < pairs {
        return;
    }
    for size in 1..=total - (pairs - 1) {
        for r in 0..=size {
            cur.push((r, size - r));
            compositions(pairs - 1, total - size, cur, out);
            cur.pop();
        }
    }
}

fn dynkin_uncached(class: usize) -> BTreeMap<Word, BigRational> {
    let mut out: BTreeMap<Word, BigRational> = BTreeMap::new();
    for total in 1..=class {
        for n in 1..=total {
            let mut all = Vec::new();
            compositions(n, total, &mut Vec::new(), &mut all);
            for pairs in all {
                let mut den = BigInt::from(n * total);
                let mut word = Word::with_capacity(total);
                for &(r, s) in &pairs {
                    den *= factorial(r) * factorial(s);
                    word.extend(std::iter::repeat_n(0, r));
                    word.extend(std::iter::repeat_n(1, s));
                }
                let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                *out.entry(word).or_insert_with(BigRational::zero) += BigRational::new(sign, den);
            }
        }
    }
    out.retain(|w, c| !c.is_zero() && (w.len() < 2 || w[w.len() - 1] != w[w.len() - 2]));
    out
}

/// Dynkin coefficients of all words of length at most `class`, cached per class.
pub fn dynkin_terms(class: usize) -> BTreeMap<Word, BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<usize, BTreeMap<Word, BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(class).or_insert_with(|| dynkin_uncached(class)).clone()
}

/// Compare the truncated Dynkin series with the hand-expanded
/// `x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12` in the free nilpotent
/// Lie algebra of class 3 on two generators. Valid for `class <= 3`.
pub fn bch_cross_check(class: usize) -> bool {
    assert!(class <= 3);
    // basis x, y, [x,y], [x,[x,y]], [y,[x,y]]
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let bracket = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); 5];
        let c01 = &a[0] * &b[1] - &a[1] * &b[0];
        let c02 = &a[0] * &b[2] - &a[2] * &b[0];
        let c12 = &a[1] * &b[2] - &a[2] * &b[1];
        out[2] = c01;
        out[3] = c02;
        out[4] = c12;
        out
    };
    let letter = |l: u8| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); 5];
        v[l as usize] = BigRational::one();
        v
    };
    let mut sum = vec![BigRational::zero(); 5];
    for (word, c) in dynkin_terms(class) {
        let mut v = letter(*word.last().unwrap());
        for &l in word[..word.len() - 1].iter().rev() {
            v = bracket(&letter(l), &v);
        }
        for (s, x) in sum.iter_mut().zip(&v) {
            *s += c.clone() * x;
        }
    }
    let full = [q(1, 1), q(1, 1), q(1, 2), q(1, 12), q(-1, 12)];
    let degree = [1, 1, 2, 3, 3];
    (0..5).all(|i| {
        let want = if degree[i] <= class { full[i].clone() } else { BigRational::zero() };
        sum[i] == want
    })
}

#[derive(Clone, Debug)]
struct Term {
    word: Word,
    coeff: FieldElement,
}

/// A nilpotent Lie algebra with the BCH group law and a contractive
/// Lie automorphism, which is then also a group automorphism.
#[derive(Clone, Debug)]
pub struct BchGroup {
    lie: LieAlgebraSpec,
    class: usize,
    automorphism: MatrixK,
    terms: Vec<Term>,
}

/// Nilpotency class and Dynkin terms, checking that every denominator is a unit.
fn law_terms(lie: &LieAlgebraSpec) -> Result<(usize, Vec<(Word, BigRational)>)> {
    let desc = *lie.descriptor();
    if !desc.is_padic() {
        return Err(Error::UnsupportedField(format!("BCH groups need characteristic 0, got {desc}")));
    }
    validate_lie(lie)?;
    let class = lower_central_series(lie)?.class.ok_or(Error::NotNilpotent)?;
    let p = BigInt::from(desc.p());
    let terms: Vec<(Word, BigRational)> = dynkin_terms(class.max(1)).into_iter().collect();
    for (_, c) in &terms {
        if c.denom().is_multiple_of(&p) {
            return Err(Error::DenominatorNotUnit {
                den: c.denom().to_string(),
                p: desc.p(),
            });
        }
    }
    Ok((class, terms))
}

impl BchGroup {
    pub fn lie(&self) -> &LieAlgebraSpec {
        &self.lie
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn automorphism(&self) -> &MatrixK {
        &self.automorphism
    }

    /// Number of nonzero Dynkin words used by the law.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn law(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let mut acc = vec_add(x, y);
        for t in self.terms.iter().filter(|t| t.word.len() >= 2) {
            let pick = |l: u8| if l == 0 { x } else { y };
            let mut v = self.lie.bracket(pick(t.word[t.word.len() - 2]), pick(t.word[t.word.len() - 1]));
            for &l in t.word[..t.word.len() - 2].iter().rev() {
                if v.iter().all(|c| c.is_zero() && c.is_exact()) {
                    break;
                }
                v = self.lie.bracket(pick(l), &v);
            }
            for (a, c) in acc.iter_mut().zip(&v) {
                if !(c.is_zero() && c.is_exact()) {
                    *a = &*a + &(&t.coeff * c);
                }
            }
        }
        acc
    }
}

/// Integrate `(L, B)` to the BCH group on `L` with automorphism `B`.
pub fn bch_integrate(lie: &LieAlgebraSpec, b: &MatrixK) -> Result<BchGroup> {
    let desc = *lie.descriptor();
    let (class, raw) = law_terms(lie)?;
    check_lie_automorphism(lie, b)?;
    let c = is_contractive(b)?;
    if !c.contractive {
        let s: Vec<String> = c.valuations.iter().map(fmt_rational).collect();
        return Err(Error::NotContractive(format!("[{}]", s.join(", "))));
    }
    let terms = raw
        .into_iter()
        .map(|(word, q)| {
            Ok(Term {
                word,
                coeff: FieldElement::from_ratio(desc, q.numer().clone(), q.denom().clone())?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BchGroup {
        lie: lie.clone(),
        class,
        automorphism: b.clone(),
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgroups::{Group, GroupElement};
    use crate::ufield::FieldDescriptor;

    #[test]
    fn low_degree_coefficients() {
        let t = dynkin_terms(2);
        let half = BigRational::new(1.into(), 2.into());
        // [x,y]/2 appears as x y -> 1/4 and y x -> -1/4
        let xy = t[&vec![0, 1]].clone();
        let yx = t[&vec![1, 0]].clone();
        assert_eq!(xy - yx, half);
        assert_eq!(t[&vec![0]], BigRational::one());
    }

    #[test]
    fn cross_check_up_to_class_three() {
        for c in 1..=3 {
            assert!(bch_cross_check(c), "class {c}");
        }
    }

    #[test]
    fn heisenberg_product_of_generators() {
        let q5 = FieldDescriptor::padic(5).unwrap();
        let l = LieAlgebraSpec::heisenberg(q5);
        let b = MatrixK::parse_strs(q5, &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "25"]]).unwrap();
        let g = Group::Bch(Box::new(bch_integrate(&l, &b).unwrap()));
        let e1 = GroupElement::bch(l.unit(0));
        let e2 = GroupElement::bch(l.unit(1));
        let prod = g.op(&e1, &e2).unwrap();
        let half = FieldElement::from_ratio(q5, 1.into(), 2.into()).unwrap();
        assert!(prod.payload()[0].is_one() && prod.payload()[1].is_one());
        assert!(prod.payload()[2].is_equal(&half));
        assert!(g.op(&prod, &g.inv(&prod).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn rejections() {
        let q2 = FieldDescriptor::padic(2).unwrap();
        let l = LieAlgebraSpec::heisenberg(q2);
        let b = MatrixK::parse_strs(q2, &[&["2", "0", "0"], &["0", "2", "0"], &["0", "0", "4"]]).unwrap();
        assert!(matches!(bch_integrate(&l, &b), Err(Error::DenominatorNotUnit { p: 2, .. })));

        let q5 = FieldDescriptor::padic(5).unwrap();
        let l = LieAlgebraSpec::heisenberg(q5);
        let id = MatrixK::identity(q5, 3);
        assert!(matches!(bch_integrate(&l, &id), Err(Error::NotContractive(_))));
        let bad = MatrixK::parse_strs(q5, &[&["5", "0", "0"], &["0", "5", "0"], &["0", "0", "5"]]).unwrap();
        assert!(matches!(bch_integrate(&l, &bad), Err(Error::NotAutomorphism { .. })));
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let l = LieAlgebraSpec::abelian(f3, 1);
        let b = MatrixK::parse_strs(f3, &[&["X"]]).unwrap();
        assert!(matches!(bch_integrate(&l, &b), Err(Error::UnsupportedField(_))));
    }
}
