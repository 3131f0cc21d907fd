//! Field descriptors and residue-field arithmetic.
//!
//! A descriptor names one of the local fields `Q_p` or `F_q((X))` with
//! `q = p^f`. Residue-field elements are packed into a `u32` as base-`p`
//! digits: the packed value `sum c_i p^i` stands for `sum c_i w^i`, where `w`
//! is the class of `t` in `F_p[t] / (m(t))` and `m` is the lexicographically
//! smallest monic irreducible of degree `f`.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported residue extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 6;
/// Default number of uniformizer digits kept for inexact results.
pub const DEFAULT_PRECISION: u32 = 64;
/// Divisions by elements known to fewer significant digits are refused.
pub const MIN_SIGNIFICANT_DIGITS: i64 = 8;

const MAX_RESIDUE_SIZE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Padic,
    Laurent,
}

/// Serialized form of a descriptor, as used in spec files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub p: u32,
    #[serde(default = "one_u32")]
    pub f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct FieldDescriptor {
    kind: FieldKind,
    p: u32,
    f: u32,
    /// Monic irreducible modulus, low degree first; `modulus[f] == 1`.
    modulus: [u32; MAX_EXTENSION_DEGREE + 1],
    precision: u32,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.p == other.p && self.f == other.f
    }
}

impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.p.hash(state);
        self.f.hash(state);
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Padic => write!(f, "Q_{}", self.p),
            FieldKind::Laurent if self.f == 1 => write!(f, "F_{}((X))", self.p),
            FieldKind::Laurent => write!(f, "F_{}^{}((X))", self.p, self.f),
        }
    }
}

impl TryFrom<FieldSpec> for FieldDescriptor {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        let d = match spec.kind {
            FieldKind::Padic => {
                if spec.f != 1 {
                    return Err(Error::InvalidDescriptor(
                        "p-adic descriptors have f = 1".into(),
                    ));
                }
                Self::padic(spec.p)?
            }
            FieldKind::Laurent => Self::laurent(spec.p, spec.f)?,
        };
        Ok(match spec.precision {
            Some(n) => d.with_precision(n),
            None => d,
        })
    }
}

impl From<FieldDescriptor> for FieldSpec {
    fn from(d: FieldDescriptor) -> Self {
        FieldSpec {
            kind: d.kind,
            p: d.p,
            f: d.f,
            precision: (d.precision != DEFAULT_PRECISION).then_some(d.precision),
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldDescriptor {
    /// The p-adic field `Q_p`.
    pub fn padic(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        let mut modulus = [0; MAX_EXTENSION_DEGREE + 1];
        modulus[1] = 1;
        Ok(FieldDescriptor {
            kind: FieldKind::Padic,
            p,
            f: 1,
            modulus,
            precision: DEFAULT_PRECISION,
        })
    }

    /// The Laurent series field `F_{p^f}((X))`.
    pub fn laurent(p: u32, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        if f == 0 || f as usize > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidDescriptor(format!(
                "extension degree {f} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        if f > 1 && (p as u64).checked_pow(f).is_none_or(|q| q > MAX_RESIDUE_SIZE) {
            return Err(Error::InvalidDescriptor(format!(
                "residue field of size {p}^{f} is too large"
            )));
        }
        let modulus = smallest_irreducible(p, f as usize);
        Ok(FieldDescriptor {
            kind: FieldKind::Laurent,
            p,
            f,
            modulus,
            precision: DEFAULT_PRECISION,
        })
    }

    pub fn with_precision(mut self, precision: u32) -> Self {
        self.precision = precision.max(1);
        self
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Working precision: digits kept by divisions of exact elements.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Residue field size `q`; also the log-scale base `a` with `|x| = q^{-v(x)}`.
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    pub fn characteristic(&self) -> u32 {
        match self.kind {
            FieldKind::Padic => 0,
            FieldKind::Laurent => self.p,
        }
    }

    pub fn is_padic(&self) -> bool {
        self.kind == FieldKind::Padic
    }

    pub fn is_laurent(&self) -> bool {
        self.kind == FieldKind::Laurent
    }

    /// Coefficients of the residue modulus, low degree first (length `f + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus[..=self.f as usize]
    }

    pub(crate) fn same_field(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.to_string(), other.to_string()))
        }
    }

    /// Descriptor for the result of a binary operation: the larger working precision wins.
    pub(crate) fn merge(&self, other: &Self) -> Self {
        if other.precision > self.precision {
            *other
        } else {
            *self
        }
    }

    // ---- residue field -------------------------------------------------

    fn unpack(&self, a: u32) -> [u32; MAX_EXTENSION_DEGREE] {
        let mut out = [0; MAX_EXTENSION_DEGREE];
        let mut a = a;
        for c in out.iter_mut().take(self.f as usize) {
            *c = a % self.p;
            a /= self.p;
        }
        out
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter()
            .take(self.f as usize)
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d)
    }

    /// Reduce an integer into the prime field.
    pub fn res_from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn res_add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut z = [0; MAX_EXTENSION_DEGREE];
        for i in 0..self.f as usize {
            z[i] = (x[i] + y[i]) % self.p;
        }
        self.pack(&z)
    }

    pub fn res_neg(&self, a: u32) -> u32 {
        if self.f == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let x = self.unpack(a);
        let mut z = [0; MAX_EXTENSION_DEGREE];
        for i in 0..self.f as usize {
            z[i] = (self.p - x[i]) % self.p;
        }
        self.pack(&z)
    }

    pub fn res_sub(&self, a: u32, b: u32) -> u32 {
        self.res_add(a, self.res_neg(b))
    }

    pub fn res_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.f == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let f = self.f as usize;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
        for i in 0..f {
            for j in 0..f {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for deg in (f..2 * f - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..f].iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[deg - f + i] = (prod[deg - f + i] + p - sub) % p;
            }
        }
        let mut z = [0u32; MAX_EXTENSION_DEGREE];
        for i in 0..f {
            z[i] = prod[i] as u32;
        }
        self.pack(&z)
    }

    pub fn res_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.res_mul(acc, base);
            }
            base = self.res_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn res_inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.res_pow(a, self.q() - 2)
    }

    /// The generator `w` of the residue field over `F_p` (equal to 1 when f = 1).
    pub fn res_generator(&self) -> u32 {
        if self.f == 1 {
            1
        } else {
            self.p
        }
    }

    /// Base-`p` coordinates of a residue element in the basis `1, w, ..., w^{f-1}`.
    pub fn res_coordinates(&self, a: u32) -> Vec<u32> {
        self.unpack(a)[..self.f as usize].to_vec()
    }

    pub fn res_from_coordinates(&self, c: &[u32]) -> u32 {
        self.pack(c)
    }
}

fn poly_rem_fp(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    // den monic
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dd;
            for i in 0..dd {
                r[shift + i] = (r[shift + i] + p - lead * den[i] as u64 % p) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn is_irreducible_fp(poly: &[u32], p: u32) -> bool {
    let n = poly.len() - 1;
    for k in 1..=n / 2 {
        let count = (p as u64).pow(k as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(k + 1);
            let mut t = idx;
            for _ in 0..k {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            if poly_rem_fp(poly, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, f: usize) -> [u32; MAX_EXTENSION_DEGREE + 1] {
    let mut out = [0; MAX_EXTENSION_DEGREE + 1];
    if f == 1 {
        out[1] = 1;
        return out;
    }
    let q = (p as u64).pow(f as u32);
    for idx in 0..q {
        let mut poly = Vec::with_capacity(f + 1);
        let mut t = idx;
        for _ in 0..f {
            poly.push((t % p as u64) as u32);
            t /= p as u64;
        }
        poly.push(1);
        if is_irreducible_fp(&poly, p) {
            out[..=f].copy_from_slice(&poly);
            return out;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
