//! Full-rank lattices (finitely generated `O`-submodules) of `K^e`.

use super::matrix::{significance, MatrixK, Sig, Vector};
use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement};

/// Stored by a triangular basis: `basis[k]` vanishes above row `k`.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    desc: FieldDescriptor,
    basis: Vec<Vector>,
}

fn exact_zero(x: &FieldElement) -> bool {
    x.is_zero() && x.is_exact()
}

/// Whether `x` lies in the valuation ring.
#[cfg(test)]
fn is_integral(x: &FieldElement) -> Result<bool> {
    match (x.valuation(), x.precision()) {
        (Some(v), _) => Ok(v >= 0),
        (None, None) => Ok(true),
        (None, Some(n)) if n >= 0 => Ok(true),
        (None, Some(n)) => Err(Error::PrecisionExhausted(format!(
            "lattice membership undecidable: coordinate is O(pi^{n})"
        ))),
    }
}

impl Lattice {
    pub fn standard(desc: FieldDescriptor, e: usize) -> Self {
        Lattice {
            desc,
            basis: (0..e).map(|i| super::matrix::unit_vector(desc, e, i)).collect(),
        }
    }

    /// The lattice generated by `gens`, which must span `K^e`.
    pub fn generated_by(desc: FieldDescriptor, e: usize, gens: Vec<Vector>) -> Result<Self> {
        let mut pool = gens;
        let mut basis = Vec::with_capacity(e);
        for r in 0..e {
            let mut best: Option<(i64, usize)> = None;
            let mut uncertain = false;
            for (i, g) in pool.iter().enumerate() {
                match significance(&g[r]) {
                    Sig::Nonzero => {
                        let v = g[r].valuation().unwrap();
                        if best.is_none_or(|(bv, _)| v < bv) {
                            best = Some((v, i));
                        }
                    }
                    Sig::Uncertain => uncertain = true,
                    Sig::Zero => {}
                }
            }
            let Some((_, i)) = best else {
                return Err(Error::PrecisionExhausted(if uncertain {
                    "lattice pivot known to too few digits".into()
                } else {
                    "generators do not span a full-rank lattice".into()
                }));
            };
            let mut pivot = pool.swap_remove(i);
            let inv = pivot[r].inv()?;
            for k in 0..r {
                pivot[k] = FieldElement::zero(desc);
            }
            for g in pool.iter_mut() {
                if g[r].is_zero() {
                    g[r] = FieldElement::zero(desc);
                    continue;
                }
                let f = &g[r] * &inv;
                for k in r + 1..e {
                    if !exact_zero(&pivot[k]) {
                        g[k] = &g[k] - &(&f * &pivot[k]);
                    }
                }
                g[r] = FieldElement::zero(desc);
            }
            basis.push(pivot);
        }
        Ok(Lattice { desc, basis })
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// `sum_k v(pivot_k)`: the index, up to sign, relative to the standard lattice.
    pub fn volume(&self) -> i64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(k, b)| b[k].valuation().expect("pivot is nonzero"))
            .sum()
    }

    /// Coordinates of `v` in the triangular basis.
    pub fn coordinates(&self, v: &[FieldElement]) -> Result<Vector> {
        let mut rest = v.to_vec();
        let e = self.basis.len();
        let mut out = Vec::with_capacity(e);
        for (k, b) in self.basis.iter().enumerate() {
            let a = rest[k].checked_div(&b[k])?;
            if !exact_zero(&a) {
                for i in k + 1..e {
                    if !exact_zero(&b[i]) {
                        rest[i] = &rest[i] - &(&a * &b[i]);
                    }
                }
            }
            out.push(a);
        }
        Ok(out)
    }

    #[cfg(test)]
    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        for a in self.coordinates(v)? {
            if !is_integral(&a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::generated_by(self.desc, self.basis.len(), gens)
    }

    pub fn image(&self, m: &MatrixK) -> Result<Lattice> {
        let gens = self.basis.iter().map(|b| m.mul_vec(b)).collect::<Result<_>>()?;
        Lattice::generated_by(self.desc, self.basis.len(), gens)
    }
}

/// Incremental row echelon form over the residue field.
pub(crate) struct ResidueEchelon {
    desc: FieldDescriptor,
    rows: Vec<(usize, Vec<u32>)>,
}

impl ResidueEchelon {
    pub fn new(desc: FieldDescriptor) -> Self {
        ResidueEchelon {
            desc,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add `v` if it is independent of the rows so far; reports whether it was.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let d = &self.desc;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = d.res_sub(*x, d.res_mul(c, y));
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            None => false,
            Some(p) => {
                let inv = d.res_inv(v[p]);
                for x in v.iter_mut() {
                    *x = d.res_mul(*x, inv);
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}
