use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use contractible::ufield::sample::random_exact;
use contractible::ufield::{FieldDescriptor, FieldElement, Q};
use contractible::ulinalg::{
    adapted_norm_for, char_poly, char_subspaces, is_contractive, newton_polygon, slope_factor, vec_add, vec_scale,
    MatrixK, Poly, Subspace, Vector,
};

fn field(k: usize) -> FieldDescriptor {
    match k {
        0 => FieldDescriptor::padic(5).unwrap(),
        1 => FieldDescriptor::padic(7).unwrap(),
        _ => FieldDescriptor::laurent(3, 1).unwrap(),
    }
}

/// Unit lower times unit upper triangular, integral entries: determinant 1.
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
    a: MatrixK,
    /// Eigenvalue valuations, one per column of `p`.
    vals: Vec<i64>,
    eigenvalues: Vec<FieldElement>,
    p: MatrixK,
}

/// `P diag(pi^a_i u_i) P^-1` with `a_i` drawn from `lo..=hi`.
fn diagonal_case(desc: FieldDescriptor, d: usize, lo: i64, hi: i64, seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vals: Vec<i64> = (0..d).map(|_| rng.gen_range(lo..=hi)).collect();
    let eigenvalues: Vec<FieldElement> = vals
        .iter()
        .map(|&a| {
            let u = FieldElement::from_int(desc, rng.gen_range(1..desc.p() as i64));
            &FieldElement::uniformizer_pow(desc, a) * &u
        })
        .collect();
    let p = unimodular(desc, d, &mut rng);
    let a = p.mul(&MatrixK::diag(desc, &eigenvalues)).unwrap().mul(&p.inverse().unwrap()).unwrap();
    Case { a, vals, eigenvalues, p }
}

/// Companion matrix of `t^m - pi^a`, a single slope `a/m`.
fn companion(desc: FieldDescriptor, m: usize, a: i64) -> MatrixK {
    let mut c = MatrixK::zeros(desc, m, m);
    for i in 1..m {
        c.set(i, i - 1, FieldElement::one(desc));
    }
    c.set(0, m - 1, FieldElement::uniformizer_pow(desc, a));
    c
}

fn block_diag(desc: FieldDescriptor, blocks: &[MatrixK]) -> MatrixK {
    let d: usize = blocks.iter().map(MatrixK::nrows).sum();
    let mut out = MatrixK::zeros(desc, d, d);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                out.set(at + i, at + j, b.get(i, j).clone());
            }
        }
        at += b.nrows();
    }
    out
}

fn random_vector_in(basis: &[Vector], desc: FieldDescriptor, rng: &mut ChaCha8Rng) -> Vector {
    let d = basis[0].len();
    let mut v = vec![FieldElement::zero(desc); d];
    for b in basis {
        let lo = rng.gen_range(-2..=2);
        v = vec_add(&v, &vec_scale(&random_exact(desc, rng, lo, 3), b));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pieces_match_known_eigenvectors(seed in any::<u64>(), k in 0usize..3, d in 1usize..=3) {
        let desc = field(k);
        let c = diagonal_case(desc, d, -1, 3, seed);
        let dec = char_subspaces(&c.a).unwrap();
        let mut want = c.vals.clone();
        want.sort();
        let got: Vec<Q> = dec.valuations_with_multiplicity();
        prop_assert_eq!(got, want.iter().map(|&a| Q::from_integer(a)).collect::<Vec<_>>());
        for piece in &dec.pieces {
            let cols: Vec<Vector> = (0..d)
                .filter(|&i| Q::from_integer(c.vals[i]) == piece.valuation)
                .map(|i| c.p.column(i))
                .collect();
            let known = Subspace::span(desc, d, &cols).unwrap();
            let found = Subspace::span(desc, d, &piece.basis).unwrap();
            prop_assert!(known.equals(&found).unwrap());
        }
    }

    #[test]
    fn pieces_form_a_direct_sum(seed in any::<u64>(), k in 0usize..3, d in 1usize..=4) {
        let c = diagonal_case(field(k), d, -1, 3, seed);
        let dec = char_subspaces(&c.a).unwrap();
        prop_assert_eq!(dec.pieces.iter().map(|p| p.dim()).sum::<usize>(), d);
        prop_assert!(dec.basis_matrix().unwrap().inverse().is_ok());
    }

    #[test]
    fn char_poly_of_diagonal_conjugate(seed in any::<u64>(), k in 0usize..3, d in 1usize..=4) {
        let desc = field(k);
        let c = diagonal_case(desc, d, -1, 3, seed);
        let want = c.eigenvalues.iter().fold(Poly::constant(FieldElement::one(desc)), |acc, l| acc.mul(&Poly::linear(l)));
        prop_assert!(char_poly(&c.a).unwrap().is_equal(&want));
    }

    #[test]
    fn slope_factors_are_pure_and_multiply_back(seed in any::<u64>(), k in 0usize..3) {
        let desc = field(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks: Vec<MatrixK> = (0..rng.gen_range(1..=3))
            .map(|_| companion(desc, rng.gen_range(1..=2), rng.gen_range(-1..=3)))
            .collect();
        let p = unimodular(desc, blocks.iter().map(MatrixK::nrows).sum(), &mut rng);
        let a = p.mul(&block_diag(desc, &blocks)).unwrap().mul(&p.inverse().unwrap()).unwrap();
        let f = char_poly(&a).unwrap();
        let target = desc.precision() as i64;
        let factors = slope_factor(&f, target).unwrap();
        let mut prod = Poly::constant(FieldElement::one(desc));
        for (slope, g) in &factors {
            let np = newton_polygon(g).unwrap();
            prop_assert_eq!(np.segments.len(), 1);
            prop_assert_eq!(np.segments[0].slope, *slope);
            prod = prod.mul(g);
        }
        let diff = prod.sub(&f);
        for c in diff.coeffs() {
            prop_assert!(c.is_zero(), "coefficient {} survives", c);
        }
    }

    #[test]
    fn adapted_norm_scales_each_piece(seed in any::<u64>(), k in 0usize..3, d in 1usize..=3) {
        let desc = field(k);
        let c = diagonal_case(desc, d, -1, 3, seed);
        let dec = char_subspaces(&c.a).unwrap();
        let norm = adapted_norm_for(&dec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for piece in &dec.pieces {
            for _ in 0..100 {
                let v = random_vector_in(&piece.basis, desc, &mut rng);
                if v.iter().all(FieldElement::is_zero) {
                    continue;
                }
                let before = norm.norm_q(&v).unwrap();
                let after = norm.norm_q(&c.a.mul_vec(&v).unwrap()).unwrap();
                prop_assert_eq!(after, before + piece.valuation);
            }
        }
    }

    #[test]
    fn contractive_orbits_decay(seed in any::<u64>(), k in 0usize..3, d in 1usize..=3) {
        let desc = field(k);
        let c = diagonal_case(desc, d, 1, 3, seed);
        prop_assert!(is_contractive(&c.a).unwrap().contractive);
        let dec = char_subspaces(&c.a).unwrap();
        let norm = adapted_norm_for(&dec).unwrap();
        let slope = dec.valuations()[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        for _ in 0..20 {
            let v: Vector = (0..d).map(|_| random_exact(desc, &mut rng, -1, 3)).collect();
            if v.iter().all(FieldElement::is_zero) {
                continue;
            }
            let w0 = norm.norm_q(&v).unwrap();
            let mut x = v;
            for n in 1..=50i64 {
                x = c.a.mul_vec(&x).unwrap();
                prop_assert!(norm.norm_q(&x).unwrap() - w0 >= slope * n);
            }
        }
    }
}

#[test]
fn identity_and_expanding_maps_are_not_contractive() {
    let q5 = field(0);
    let id = MatrixK::identity(q5, 2);
    assert!(!is_contractive(&id).unwrap().contractive);
    let mixed = MatrixK::parse_strs(q5, &[&["5", "0"], &["0", "1/5"]]).unwrap();
    let c = is_contractive(&mixed).unwrap();
    assert!(!c.contractive);
    assert_eq!(c.valuations, vec![Q::from_integer(-1), Q::from_integer(1)]);
}
