//! Dense matrices over a local field, with valuation-pivoted elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement, MIN_SIGNIFICANT_DIGITS};

pub type Vector = Vec<FieldElement>;

const EXACT_INVERSE_MAX_DIM: usize = 12;

/// How much an entry can be trusted by a rank or membership decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sig {
    Zero,
    Nonzero,
    /// Nonzero, but with fewer significant digits than the safety margin.
    Uncertain,
}

pub(crate) fn significance(x: &FieldElement) -> Sig {
    if x.is_zero() {
        return Sig::Zero;
    }
    match x.relative_precision() {
        Some(r) if r < MIN_SIGNIFICANT_DIGITS => Sig::Uncertain,
        _ => Sig::Nonzero,
    }
}

#[derive(Clone, Debug)]
pub struct MatrixK {
    desc: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl MatrixK {
    pub fn zeros(desc: FieldDescriptor, rows: usize, cols: usize) -> Self {
        MatrixK {
            desc,
            rows,
            cols,
            data: vec![FieldElement::zero(desc); rows * cols],
        }
    }

    pub fn identity(desc: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(desc, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(desc));
        }
        m
    }

    pub fn diag(desc: FieldDescriptor, entries: &[FieldElement]) -> Self {
        let mut m = Self::zeros(desc, entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(desc: FieldDescriptor, rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            for x in row {
                desc.same_field(x.descriptor())?;
                data.push(x.with_descriptor(desc));
            }
        }
        Ok(MatrixK {
            desc,
            rows: r,
            cols: c,
            data,
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(desc: FieldDescriptor, rows: usize, cols: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(desc, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            if v.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    v.len()
                )));
            }
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Parse a row-major array of element strings.
    pub fn parse(desc: FieldDescriptor, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| FieldElement::parse(desc, s))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(desc, parsed)
    }

    pub fn parse_strs(desc: FieldDescriptor, rows: &[&[&str]]) -> Result<Self> {
        let owned: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        Self::parse(desc, &owned)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.desc, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// The block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut b = Self::zeros(self.desc, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                b.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        b
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        self.desc.same_field(&other.desc)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.desc, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero(self.desc);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() && a.is_exact() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        if let Some(x) = v.first() {
            self.desc.same_field(x.descriptor())?;
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero(self.desc);
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if a.is_zero() && a.is_exact() {
                        continue;
                    }
                    acc = &acc + &(a * x);
                }
                acc
            })
            .collect())
    }

    fn zip(&self, other: &Self, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Result<Self> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        Ok(MatrixK {
            desc: self.desc,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        MatrixK {
            desc: self.desc,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        MatrixK {
            desc: self.desc,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.desc, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Every entry is zero at its precision.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_equal(&self, other: &Self) -> bool {
        self.desc == other.desc
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.is_equal(b))
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(|x| x.is_exact())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if self.is_exact() && n <= EXACT_INVERSE_MAX_DIM {
            if let Some(inv) = self.exact_inverse()? {
                return Ok(inv);
            }
        }
        let mut rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| {
                    if i == j {
                        FieldElement::one(self.desc)
                    } else {
                        FieldElement::zero(self.desc)
                    }
                }));
                r
            })
            .collect();
        let piv = gauss_jordan(self.desc, &mut rows, n, None)?;
        if piv.len() < n {
            return Err(Error::NotInvertible);
        }
        let mut inv = Self::zeros(self.desc, n, n);
        for (r, &c) in piv.iter().enumerate() {
            for j in 0..n {
                inv.set(c, j, rows[r][n + j].clone());
            }
        }
        Ok(inv)
    }

    /// `A^-1 = -(A^(n-1) + c_(n-1) A^(n-2) + ... + c_1) / c_0` from the
    /// characteristic polynomial; exact whenever `det A` is an exact monomial.
    fn exact_inverse(&self) -> Result<Option<Self>> {
        let f = super::charpoly::char_poly(self)?;
        let c0 = f.coeff(0);
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_c0 = c0.inv()?;
        if !inv_c0.is_exact() {
            return Ok(None);
        }
        let n = self.rows;
        let mut acc = Self::zeros(self.desc, n, n);
        let id = Self::identity(self.desc, n);
        for c in f.coeffs().iter().skip(1).rev() {
            acc = acc.mul(self)?.add(&id.scale(c))?;
        }
        Ok(Some(acc.scale(&-inv_c0)))
    }

    /// Solve `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vector> {
        self.inverse()?.mul_vec(b)
    }

    /// Kernel basis. With `expected` set, exactly `cols - expected` pivots are
    /// taken and the leftover block must vanish at the available precision.
    pub fn kernel(&self, expected: Option<usize>) -> Result<Vec<Vector>> {
        let mut rows = self.rows_vec();
        let max_rank = expected.map(|k| self.cols.saturating_sub(k));
        let piv = gauss_jordan(self.desc, &mut rows, self.cols, max_rank)?;
        if let Some(r) = max_rank {
            if piv.len() != r {
                return Err(Error::PrecisionExhausted(format!(
                    "expected rank {r}, found {}",
                    piv.len()
                )));
            }
            for row in rows.iter().skip(r) {
                for x in row {
                    if significance(x) != Sig::Zero {
                        return Err(Error::PrecisionExhausted(
                            "residual block does not vanish at working precision".into(),
                        ));
                    }
                }
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|j| !piv.contains(j)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(self.desc); self.cols];
                v[f] = FieldElement::one(self.desc);
                for (r, &c) in piv.iter().enumerate() {
                    v[c] = -&rows[r][f];
                }
                v
            })
            .collect())
    }

    pub fn rank(&self) -> Result<usize> {
        let mut rows = self.rows_vec();
        Ok(gauss_jordan(self.desc, &mut rows, self.cols, None)?.len())
    }
}

/// Gauss-Jordan elimination in place on the first `active` columns.
///
/// The pivot is an entry of minimal valuation among the trustworthy ones;
/// pivot rows end up first, scaled to a leading one. Returns the pivot column
/// of each pivot row.
pub(crate) fn gauss_jordan(
    desc: FieldDescriptor,
    rows: &mut [Vector],
    active: usize,
    max_rank: Option<usize>,
) -> Result<Vec<usize>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    while r < nrows && max_rank.is_none_or(|m| r < m) {
        let mut best: Option<(i64, usize, usize)> = None;
        let mut uncertain = false;
        for j in (0..active).filter(|j| !pivots.contains(j)) {
            for (i, row) in rows.iter().enumerate().skip(r) {
                match significance(&row[j]) {
                    Sig::Nonzero => {
                        let v = row[j].valuation().unwrap();
                        if best.is_none_or(|(bv, _, _)| v < bv) {
                            best = Some((v, i, j));
                        }
                    }
                    Sig::Uncertain => uncertain = true,
                    Sig::Zero => {}
                }
            }
        }
        let Some((_, i, j)) = best else {
            if uncertain {
                return Err(Error::PrecisionExhausted(
                    "rank undecidable: remaining entries have too few significant digits".into(),
                ));
            }
            break;
        };
        rows.swap(r, i);
        let inv = rows[r][j].inv()?;
        for c in 0..ncols {
            rows[r][c] = &rows[r][c] * &inv;
        }
        rows[r][j] = FieldElement::one(desc);
        let pivot_row = rows[r].clone();
        for (i2, row) in rows.iter_mut().enumerate() {
            if i2 == r {
                continue;
            }
            let f = row[j].clone();
            if f.is_zero() && f.is_exact() {
                continue;
            }
            for c in 0..ncols {
                if c == j {
                    row[c] = FieldElement::zero(desc);
                } else if !(pivot_row[c].is_zero() && pivot_row[c].is_exact()) {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    Ok(pivots)
}

impl fmt::Display for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

pub fn vec_add(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &FieldElement, a: &[FieldElement]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(a: &[FieldElement]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn vec_is_equal(a: &[FieldElement], b: &[FieldElement]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_equal(y))
}

/// The `i`-th standard basis vector.
pub fn unit_vector(desc: FieldDescriptor, n: usize, i: usize) -> Vector {
    (0..n)
        .map(|k| {
            if k == i {
                FieldElement::one(desc)
            } else {
                FieldElement::zero(desc)
            }
        })
        .collect()
}

pub fn vec_to_strings(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> FieldDescriptor {
        FieldDescriptor::padic(5).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let a = MatrixK::parse_strs(q5(), &[&["1", "5", "2"], &["0", "25", "3"], &["7", "1", "1"]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_equal(&MatrixK::identity(q5(), 3)));
        assert!(inv.mul(&a).unwrap().is_equal(&MatrixK::identity(q5(), 3)));
    }

    #[test]
    fn unimodular_inverse_is_exact() {
        let a = MatrixK::parse_strs(q5(), &[&["1", "3", "2"], &["0", "1", "7"], &["0", "0", "-1"]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(inv.is_exact());
        assert!(a.mul(&inv).unwrap().is_equal(&MatrixK::identity(q5(), 3)));
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let b = MatrixK::parse_strs(f3, &[&["X", "1 + X^-1"], &["0", "X^2"]]).unwrap();
        let binv = b.inverse().unwrap();
        assert!(binv.is_exact());
        assert!(binv.mul(&b).unwrap().is_equal(&MatrixK::identity(f3, 2)));
    }

    #[test]
    fn singular_matrices() {
        let a = MatrixK::parse_strs(q5(), &[&["1", "2"], &["2", "4"]]).unwrap();
        assert_eq!(a.inverse().unwrap_err(), Error::NotInvertible);
        assert_eq!(a.rank().unwrap(), 1);
        let k = a.kernel(None).unwrap();
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&a.mul_vec(&k[0]).unwrap()));
    }

    #[test]
    fn laurent_kernel_with_expected_dimension() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let a = MatrixK::parse_strs(f3, &[&["X", "X^2"], &["1", "X"]]).unwrap();
        let k = a.kernel(Some(1)).unwrap();
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&a.mul_vec(&k[0]).unwrap()));
        assert!(a.kernel(Some(2)).is_err());
    }

    #[test]
    fn power_matches_repeated_product() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let a = MatrixK::parse_strs(f3, &[&["0", "X"], &["1", "0"]]).unwrap();
        let a2 = a.pow(2).unwrap();
        assert!(a2.is_equal(&MatrixK::identity(f3, 2).scale(&FieldElement::uniformizer(f3))));
        assert!(a.pow(5).unwrap().is_equal(&a2.mul(&a2).unwrap().mul(&a).unwrap()));
    }
}
