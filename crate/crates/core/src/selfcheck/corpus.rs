//! Generated test corpora: graded nilpotent Lie algebras and conjugates of
//! matrices with known characteristic valuations.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gradlie::{automorphism_from_gradation, BracketEntry, Gradation, LieAlgebraSpec};
use crate::ufield::sample::{random_exact, random_unit_at};
use crate::ufield::{FieldDescriptor, FieldElement, Q};
use crate::ulinalg::{unit_vector, MatrixK, Vector};

/// The three corpus fields `Q_5`, `Q_7`, `F_3((X))`.
pub fn corpus_fields(precision: u32) -> Result<Vec<FieldDescriptor>> {
    Ok(vec![
        FieldDescriptor::padic(5)?.with_precision(precision),
        FieldDescriptor::padic(7)?.with_precision(precision),
        FieldDescriptor::laurent(3, 1)?.with_precision(precision),
    ])
}

/// A random exact matrix of determinant one: a product of elementary
/// matrices with small integral entries, conjugated by a permutation.
pub fn random_unimodular<R: Rng>(desc: FieldDescriptor, n: usize, rng: &mut R) -> MatrixK {
    let mut p = MatrixK::identity(desc, n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = if desc.is_padic() {
            FieldElement::from_int(desc, rng.gen_range(-2..=2))
        } else {
            random_exact(desc, rng, 0, 2)
        };
        for k in 0..n {
            let v = p.get(i, k) + &(&c * p.get(j, k));
            p.set(i, k, v);
        }
    }
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    let mut q = MatrixK::identity(desc, n);
    if a != b {
        let one = FieldElement::one(desc);
        let zero = FieldElement::zero(desc);
        q.set(a, a, zero.clone());
        q.set(b, b, zero);
        q.set(a, b, one.clone());
        q.set(b, a, one);
    }
    q.mul(&p).and_then(|x| x.mul(&q)).expect("square")
}

/// Subsets of the strictly upper triangular matrix units of `gl_k` that are
/// closed under `[E_ij, E_jl] = E_il`, i.e. subalgebras of `n_k`.
pub fn closed_unit_sets(k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        let s: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, p)| *p)
            .collect();
        let closed = s
            .iter()
            .all(|&(i, j)| s.iter().filter(|&&(a, _)| a == j).all(|&(_, l)| s.contains(&(i, l))));
        if closed {
            out.push(s);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct GradedCase {
    pub name: String,
    pub lie: LieAlgebraSpec,
    pub gradation: Gradation,
    pub theta: FieldElement,
    pub automorphism: MatrixK,
}

/// The subalgebra spanned by `units`, graded by `deg E_ij = w_j - w_i`, in
/// the basis obtained from the matrix units by a unimodular change `p`.
fn graded_case(
    desc: FieldDescriptor,
    units: &[(usize, usize)],
    weights: &[i64],
    p: &MatrixK,
    theta: FieldElement,
    name: String,
) -> Result<GradedCase> {
    let d = units.len();
    // [E_ij, E_kl] = d_jk E_il - d_li E_kj; the second term is the first one
    // for the pair taken in the other order.
    let mut entries = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let c = units.iter().position(|&u| u == (i, l)).expect("closed set");
                entries.push(BracketEntry { i: a, j: b, k: c, c: FieldElement::one(desc) });
            }
        }
    }
    let base = LieAlgebraSpec::new(desc, d, entries)?;
    let pinv = p.inverse()?;
    let cols = p.columns();
    let mut changed = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let v = pinv.mul_vec(&base.bracket(&cols[a], &cols[b]))?;
            for (k, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    changed.push(BracketEntry { i: a, j: b, k, c });
                }
            }
        }
    }
    let lie = LieAlgebraSpec::new(desc, d, changed)?;
    let mut layers: BTreeMap<u64, Vec<Vector>> = BTreeMap::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        let n = (weights[j] - weights[i]) as u64;
        layers.entry(n).or_default().push(pinv.mul_vec(&unit_vector(desc, d, a))?);
    }
    let gradation = Gradation { m: 1, layers };
    let automorphism = automorphism_from_gradation(&lie, &gradation, &theta)?;
    Ok(GradedCase {
        name,
        lie,
        gradation,
        theta,
        automorphism,
    })
}

/// At least `count` graded nilpotent Lie algebras of dimension at most 6
/// over the corpus fields, each with the automorphism `theta^n` on layer `n`
/// for `theta` a uniformizer or its square.
pub fn graded_corpus(seed: u64, precision: u32, count: usize) -> Result<Vec<GradedCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = corpus_fields(precision)?;
    let weight_sets: [&[i64]; 3] = [&[0, 1, 2, 3], &[0, 1, 3, 4], &[0, 2, 3, 5]];
    // Mostly non-abelian algebras, with an abelian one every fifth case.
    let (mut nonabelian, mut abelian): (Vec<(usize, Vec<(usize, usize)>)>, Vec<_>) = (Vec::new(), Vec::new());
    for k in [3, 4] {
        for s in closed_unit_sets(k) {
            if s.len() < 2 {
                continue;
            }
            let bracket = s.iter().any(|&(_, j)| s.iter().any(|&(a, _)| a == j));
            if bracket {
                nonabelian.push((k, s));
            } else {
                abelian.push((k, s));
            }
        }
    }
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let (k, units) = if idx % 5 == 4 {
            &abelian[idx / 5 * 3 % abelian.len()]
        } else {
            &nonabelian[idx * 7 % nonabelian.len()]
        };
        let desc = fields[idx % fields.len()];
        let weights = weight_sets[idx / fields.len() % weight_sets.len()];
        let theta = FieldElement::uniformizer_pow(desc, 1 + (idx % 2) as i64);
        let p = random_unimodular(desc, units.len(), &mut rng);
        let name = format!("n{k}{units:?} over {desc}, weights {weights:?}, theta {theta}");
        out.push(graded_case(desc, units, weights, &p, theta, name)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MatrixCase {
    pub name: String,
    pub matrix: MatrixK,
    /// Characteristic valuations with multiplicity, ascending.
    pub valuations: Vec<Q>,
}

/// `t^m - c` as a companion matrix.
fn companion(desc: FieldDescriptor, m: usize, c: &FieldElement) -> MatrixK {
    let mut a = MatrixK::zeros(desc, m, m);
    for i in 1..m {
        a.set(i, i - 1, FieldElement::one(desc));
    }
    a.set(0, m - 1, c.clone());
    a
}

/// Conjugates of block-diagonal matrices whose blocks are scalars `pi^a u`
/// and companion matrices of `t^m - pi^a u`, so the characteristic
/// valuations are known in advance.
pub fn diagonal_corpus(seed: u64, precision: u32, count: usize) -> Result<Vec<MatrixCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd1a9);
    let fields = corpus_fields(precision)?;
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let desc = fields[idx % fields.len()];
        let d = if rng.gen_bool(0.1) { 1 } else { rng.gen_range(2..=4) };
        let mut blocks: Vec<MatrixK> = Vec::new();
        let mut vals = Vec::new();
        let mut used = 0;
        while used < d {
            let room = d - used;
            let m = if room >= 2 && rng.gen_bool(0.4) { rng.gen_range(2..=room.min(3)) } else { 1 };
            let a = rng.gen_range(-1..=3);
            let u = random_unit_at(desc, &mut rng, 0, 2);
            let c = &FieldElement::uniformizer_pow(desc, a) * &u;
            blocks.push(companion(desc, m, &c));
            vals.extend(std::iter::repeat_n(Q::new(a, m as i64), m));
            used += m;
        }
        let mut dmat = MatrixK::zeros(desc, d, d);
        let mut off = 0;
        for b in &blocks {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    dmat.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.nrows();
        }
        let p = random_unimodular(desc, d, &mut rng);
        let matrix = p.mul(&dmat)?.mul(&p.inverse()?)?;
        vals.sort();
        out.push(MatrixCase {
            name: format!("case {idx} over {desc}: {dmat}"),
            matrix,
            valuations: vals,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_sets_of_n3() {
        // subalgebras spanned by matrix units in n_3
        let sets = closed_unit_sets(3);
        assert!(sets.contains(&vec![(0, 1), (0, 2), (1, 2)]));
        assert!(!sets.contains(&vec![(0, 1), (1, 2)]));
        assert_eq!(sets.len(), 6);
    }

    #[test]
    fn unimodular_inverse_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for desc in corpus_fields(32).unwrap() {
            let p = random_unimodular(desc, 4, &mut rng);
            let inv = p.inverse().unwrap();
            assert!(inv.is_exact());
            assert!(p.mul(&inv).unwrap().is_equal(&MatrixK::identity(desc, 4)));
        }
    }

    #[test]
    fn corpora_build() {
        assert_eq!(graded_corpus(0, 32, 6).unwrap().len(), 6);
        let m = diagonal_corpus(0, 32, 6).unwrap();
        assert!(m.iter().all(|c| c.matrix.is_exact() && c.valuations.len() == c.matrix.nrows()));
    }
}
