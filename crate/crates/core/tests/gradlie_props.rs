use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use contractible::gradlie::{
    automorphism_from_gradation, gradation_from_automorphism, lower_central_series, spectral_filtration,
    BracketEntry, Gradation, LieAlgebraSpec,
};
use contractible::ufield::sample::random_exact;
use contractible::ufield::{FieldDescriptor, FieldElement};
use contractible::ulinalg::{char_subspaces, is_contractive, MatrixK, Subspace, Vector};
use contractible::{Error, ErrorClass};

fn field(k: usize) -> FieldDescriptor {
    match k {
        0 => FieldDescriptor::padic(5).unwrap(),
        1 => FieldDescriptor::padic(7).unwrap(),
        _ => FieldDescriptor::laurent(3, 1).unwrap(),
    }
}

/// A graded nilpotent algebra on `e_0 .. e_(d-1)`: brackets `[e_i, e_j] = e_k`
/// and basis weights depending on two free weights `a`, `b`.
struct Model {
    name: &'static str,
    dim: usize,
    brackets: &'static [(usize, usize, usize)],
    weights: fn(u64, u64) -> Vec<u64>,
}

const MODELS: [Model; 6] = [
    Model { name: "heisenberg", dim: 3, brackets: &[(0, 1, 2)], weights: |a, b| vec![a, b, a + b] },
    Model { name: "filiform4", dim: 4, brackets: &[(0, 1, 2), (0, 2, 3)], weights: |a, b| vec![a, b, a + b, 2 * a + b] },
    Model {
        name: "filiform5",
        dim: 5,
        brackets: &[(0, 1, 2), (0, 2, 3), (0, 3, 4)],
        weights: |a, b| vec![a, b, a + b, 2 * a + b, 3 * a + b],
    },
    Model {
        name: "heisenberg5",
        dim: 5,
        brackets: &[(0, 1, 4), (2, 3, 4)],
        weights: |a, b| vec![a, b, b, a, a + b],
    },
    Model {
        name: "free-2-step-3",
        dim: 5,
        brackets: &[(0, 1, 2), (0, 2, 3), (1, 2, 4)],
        weights: |a, b| vec![a, b, a + b, 2 * a + b, a + 2 * b],
    },
    Model { name: "abelian", dim: 4, brackets: &[], weights: |a, b| vec![a, b, a, a + b] },
];

fn standard(desc: FieldDescriptor, m: &Model) -> LieAlgebraSpec {
    let one = FieldElement::one(desc);
    let entries = m.brackets.iter().map(|&(i, j, k)| BracketEntry { i, j, k, c: one.clone() }).collect();
    LieAlgebraSpec::new(desc, m.dim, entries).unwrap()
}

/// Structure constants in the basis given by the columns of `p`.
fn change_basis(l: &LieAlgebraSpec, p: &MatrixK) -> LieAlgebraSpec {
    let desc = *l.descriptor();
    let pinv = p.inverse().unwrap();
    let cols = p.columns();
    let mut entries = Vec::new();
    for a in 0..l.dim() {
        for b in a + 1..l.dim() {
            let c = pinv.mul_vec(&l.bracket(&cols[a], &cols[b])).unwrap();
            for (k, ck) in c.into_iter().enumerate() {
                if !ck.is_zero() {
                    entries.push(BracketEntry { i: a, j: b, k, c: ck });
                }
            }
        }
    }
    LieAlgebraSpec::new(desc, l.dim(), entries).unwrap()
}

fn unimodular(desc: FieldDescriptor, d: usize, rng: &mut ChaCha8Rng) -> MatrixK {
    let mut l = MatrixK::identity(desc, d);
    let mut u = MatrixK::identity(desc, d);
    for i in 0..d {
        for j in 0..i {
            l.set(i, j, random_exact(desc, rng, 0, 2));
            u.set(j, i, random_exact(desc, rng, 0, 2));
        }
    }
    l.mul(&u).unwrap()
}

struct Case {
    lie: LieAlgebraSpec,
    /// Weight of each model basis vector.
    weights: Vec<u64>,
    theta: FieldElement,
    b: MatrixK,
    /// New coordinates of the model basis vectors.
    model_basis: Vec<Vector>,
}

/// The model algebra in a random basis, with the automorphism acting as
/// `theta^w` on weight-`w` basis vectors.
fn case(k: usize, model: usize, a: u64, b: u64, t: i64, seed: u64) -> Case {
    let desc = field(k);
    let m = &MODELS[model];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (m.weights)(a, b);
    let p = unimodular(desc, m.dim, &mut rng);
    let u = FieldElement::from_int(desc, rng.gen_range(1..desc.p() as i64));
    let theta = &FieldElement::uniformizer_pow(desc, t) * &u;
    let d = MatrixK::diag(desc, &weights.iter().map(|&w| theta.pow(w)).collect::<Vec<_>>());
    // in the basis given by the columns of P the automorphism D reads P^-1 D P
    let pinv = p.inverse().unwrap();
    Case {
        lie: change_basis(&standard(desc, m), &p),
        weights,
        theta,
        b: pinv.mul(&d).unwrap().mul(&p).unwrap(),
        model_basis: pinv.columns(),
    }
}

fn expected_dims(c: &Case) -> BTreeMap<u64, usize> {
    let v = c.theta.valuation().unwrap() as u64;
    let mut out = BTreeMap::new();
    for w in &c.weights {
        *out.entry(w * v).or_insert(0) += 1;
    }
    out
}

fn model_gradation(c: &Case) -> Gradation {
    let mut layers: BTreeMap<u64, Vec<Vector>> = BTreeMap::new();
    for (a, w) in c.weights.iter().enumerate() {
        layers.entry(*w).or_default().push(c.model_basis[a].clone());
    }
    Gradation { m: 1, layers }
}

fn is_zero_vec(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contractive_automorphisms_give_gradations(
        k in 0usize..3, model in 0usize..6, a in 1u64..=3, b in 1u64..=3, t in 1i64..=2, seed in any::<u64>()
    ) {
        let c = case(k, model, a, b, t, seed);
        prop_assert!(is_contractive(&c.b).unwrap().contractive);
        let g = gradation_from_automorphism(&c.lie, &c.b).unwrap();
        g.validate(&c.lie).unwrap();
        prop_assert_eq!(g.m, 1);
        prop_assert_eq!(g.layer_dims(), expected_dims(&c), "{}", MODELS[model].name);
    }

    #[test]
    fn gradations_give_contractive_automorphisms(
        k in 0usize..3, model in 0usize..6, a in 1u64..=3, b in 1u64..=3, seed in any::<u64>(), t in 1i64..=3
    ) {
        let c = case(k, model, a, b, 1, seed);
        let g = model_gradation(&c);
        g.validate(&c.lie).unwrap();
        let desc = *c.lie.descriptor();
        let theta = FieldElement::uniformizer_pow(desc, t);
        let b2 = automorphism_from_gradation(&c.lie, &g, &theta).unwrap();
        prop_assert!(is_contractive(&b2).unwrap().contractive);
        let back = gradation_from_automorphism(&c.lie, &b2).unwrap();
        let want: BTreeMap<u64, usize> = g.layer_dims().into_iter().map(|(n, d)| (n * t as u64, d)).collect();
        prop_assert_eq!(back.layer_dims(), want);
        for (n, layer) in &g.layers {
            let got = Subspace::span(desc, c.lie.dim(), &back.layers[&(n * t as u64)]).unwrap();
            prop_assert!(got.equals(&Subspace::span(desc, c.lie.dim(), layer).unwrap()).unwrap());
        }
    }

    #[test]
    fn graded_algebras_are_nilpotent(
        k in 0usize..3, model in 0usize..6, a in 1u64..=3, b in 1u64..=3, seed in any::<u64>()
    ) {
        let c = case(k, model, a, b, 1, seed);
        let g = gradation_from_automorphism(&c.lie, &c.b).unwrap();
        let lcs = lower_central_series(&c.lie).unwrap();
        prop_assert!(lcs.class.unwrap() <= g.layers.len());
    }

    #[test]
    fn spectral_filtration_is_central(
        k in 0usize..3, model in 0usize..6, a in 1u64..=3, b in 1u64..=3, seed in any::<u64>()
    ) {
        let c = case(k, model, a, b, 1, seed);
        let desc = *c.lie.descriptor();
        let d = c.lie.dim();
        let f = spectral_filtration(&c.lie, &c.b).unwrap();
        let zero = Subspace::zero(desc, d);
        for (j, fj) in f.chain.iter().enumerate() {
            let prev = if j == 0 { &zero } else { &f.chain[j - 1] };
            for i in 0..d {
                for x in fj.basis() {
                    prop_assert!(prev.contains(&c.lie.bracket(&c.lie.unit(i), x)).unwrap());
                }
            }
        }
        prop_assert!(f.chain.last().unwrap().dim() == d);

        let distinct = char_subspaces(&c.b).unwrap().pieces.len();
        let class = lower_central_series(&c.lie).unwrap().class.unwrap();
        prop_assert!(class <= f.len());
        prop_assert!(f.len() <= distinct);
    }

    #[test]
    fn brackets_add_valuations(
        k in 0usize..3, model in 0usize..6, a in 1u64..=3, b in 1u64..=3, seed in any::<u64>()
    ) {
        let c = case(k, model, a, b, 1, seed);
        let desc = *c.lie.descriptor();
        let d = c.lie.dim();
        let dec = char_subspaces(&c.b).unwrap();
        for p in &dec.pieces {
            for q in &dec.pieces {
                let target = dec
                    .piece(p.valuation + q.valuation)
                    .map(|r| Subspace::span(desc, d, &r.basis).unwrap())
                    .unwrap_or_else(|| Subspace::zero(desc, d));
                for x in &p.basis {
                    for y in &q.basis {
                        let z = c.lie.bracket(x, y);
                        prop_assert!(is_zero_vec(&z) || target.contains(&z).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn grading_violations_are_reported() {
    let q5 = field(0);
    let l = standard(q5, &MODELS[0]);
    let e = |i: usize| l.unit(i);
    let bad = Gradation {
        m: 1,
        layers: BTreeMap::from([(1, vec![e(0), e(1)]), (3, vec![e(2)])]),
    };
    let err = bad.validate(&l).unwrap_err();
    assert_eq!(err.class(), ErrorClass::CheckFailure, "{err}");

    let good = Gradation {
        m: 1,
        layers: BTreeMap::from([(1, vec![e(0), e(1)]), (2, vec![e(2)])]),
    };
    let unit = FieldElement::from_int(q5, 2);
    assert!(matches!(automorphism_from_gradation(&l, &good, &unit), Err(Error::NotContracting(_))));
}

#[test]
fn non_contractive_automorphisms_have_no_gradation() {
    let q5 = field(0);
    let l = standard(q5, &MODELS[0]);
    let b = MatrixK::parse_strs(q5, &[&["5", "0", "0"], &["0", "1/5", "0"], &["0", "0", "1"]]).unwrap();
    assert!(matches!(gradation_from_automorphism(&l, &b), Err(Error::NotContractive(_))));
}
