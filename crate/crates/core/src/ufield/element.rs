//! Elements of `Q_p` and `F_q((X))` with absolute precision tracking.
//!
//! An element is `pi^val * (unit)` known modulo `pi^prec`, where `pi` is `p`
//! or `X`. Exact elements (`prec == None`) are finite expansions: integers,
//! `p`-power fractions, and Laurent polynomials. Inexact elements arise only
//! from divisions, from parsing `O(...)` terms, or from explicit truncation.
//!
//! Precision propagation follows the usual ultrametric rules:
//! `prec(x + y) = min(prec x, prec y)` and
//! `prec(x * y) = min(v(x) + prec y, v(y) + prec x)`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::descriptor::{FieldDescriptor, FieldKind, MIN_SIGNIFICANT_DIGITS};
use super::logvalue::LogValue;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FieldElement {
    desc: FieldDescriptor,
    /// Valuation; meaningful only when the body is nonzero.
    val: i64,
    body: Body,
    /// Absolute precision; `None` for exact elements.
    prec: Option<i64>,
}

#[derive(Clone, Debug)]
enum Body {
    /// Unit part, prime to `p`; reduced into `[0, p^(prec - val))` when inexact.
    Padic(BigInt),
    /// Residue digits starting at position `val`; first digit nonzero.
    Laurent(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub(crate) fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

pub(crate) fn pow_p(p: u32, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    num_traits::pow(BigInt::from(p), k as usize)
}

impl FieldElement {
    fn empty_body(desc: &FieldDescriptor) -> Body {
        match desc.kind() {
            FieldKind::Padic => Body::Padic(BigInt::zero()),
            FieldKind::Laurent => Body::Laurent(Vec::new()),
        }
    }

    /// Exact zero.
    pub fn zero(desc: FieldDescriptor) -> Self {
        FieldElement {
            body: Self::empty_body(&desc),
            desc,
            val: 0,
            prec: None,
        }
    }

    /// The class `O(pi^prec)`: zero known modulo `pi^prec`.
    pub fn zero_class(desc: FieldDescriptor, prec: i64) -> Self {
        FieldElement {
            body: Self::empty_body(&desc),
            desc,
            val: 0,
            prec: Some(prec),
        }
    }

    pub fn one(desc: FieldDescriptor) -> Self {
        Self::from_int(desc, 1)
    }

    pub fn from_int(desc: FieldDescriptor, n: i64) -> Self {
        Self::from_bigint(desc, BigInt::from(n))
    }

    pub fn from_bigint(desc: FieldDescriptor, n: BigInt) -> Self {
        match desc.kind() {
            FieldKind::Padic => FieldElement {
                desc,
                val: 0,
                body: Body::Padic(n),
                prec: None,
            }
            .normalize(),
            FieldKind::Laurent => {
                let r = n.mod_floor(&BigInt::from(desc.p())).to_u32().unwrap();
                Self::monomial(desc, r, 0)
            }
        }
    }

    /// `c * pi^exp` for a residue digit `c` (a packed residue element for Laurent fields).
    pub fn monomial(desc: FieldDescriptor, c: u32, exp: i64) -> Self {
        let body = match desc.kind() {
            FieldKind::Padic => Body::Padic(BigInt::from(c)),
            FieldKind::Laurent => Body::Laurent(vec![c]),
        };
        FieldElement {
            desc,
            val: exp,
            body,
            prec: None,
        }
        .normalize()
    }

    /// The uniformizer `p` or `X`.
    pub fn uniformizer(desc: FieldDescriptor) -> Self {
        Self::monomial(desc, 1, 1)
    }

    pub fn uniformizer_pow(desc: FieldDescriptor, k: i64) -> Self {
        Self::monomial(desc, 1, k)
    }

    /// The residue generator `w` as a constant series (Laurent fields with f > 1).
    pub fn residue_generator(desc: FieldDescriptor) -> Self {
        Self::monomial(desc, desc.res_generator(), 0)
    }

    /// Element with the given base-`p` (or residue) digits from position `val`.
    pub fn from_digits(
        desc: FieldDescriptor,
        val: i64,
        digits: &[u32],
        prec: Option<i64>,
    ) -> Self {
        let body = match desc.kind() {
            FieldKind::Padic => {
                let p = BigInt::from(desc.p());
                let u = digits
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, &d| acc * &p + BigInt::from(d));
                Body::Padic(u)
            }
            FieldKind::Laurent => Body::Laurent(digits.to_vec()),
        };
        FieldElement {
            desc,
            val,
            body,
            prec,
        }
        .normalize()
    }

    /// The rational `num/den` in `Q_p` (or its image in `F_q((X))`).
    ///
    /// Exact when the denominator is `+-p^k`; otherwise expanded to working precision.
    pub fn from_ratio(desc: FieldDescriptor, num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = Self::from_bigint(desc, num);
        let d = Self::from_bigint(desc, den);
        n.checked_div(&d)
    }

    fn normalize(mut self) -> Self {
        let p = self.desc.p();
        match &mut self.body {
            Body::Padic(u) => {
                if u.is_zero() {
                    self.val = 0;
                    return self;
                }
                let pb = BigInt::from(p);
                loop {
                    let (q, r) = u.div_rem(&pb);
                    if !r.is_zero() {
                        break;
                    }
                    *u = q;
                    self.val += 1;
                }
                if let Some(n) = self.prec {
                    if self.val >= n {
                        *u = BigInt::zero();
                        self.val = 0;
                    } else {
                        *u = u.mod_floor(&pow_p(p, n - self.val));
                    }
                }
            }
            Body::Laurent(d) => {
                match d.iter().position(|&c| c != 0) {
                    None => {
                        d.clear();
                        self.val = 0;
                    }
                    Some(k) => {
                        d.drain(..k);
                        self.val += k as i64;
                    }
                }
                if !d.is_empty() {
                    if let Some(n) = self.prec {
                        let len = n - self.val;
                        if len <= 0 {
                            d.clear();
                            self.val = 0;
                        } else {
                            d.truncate(len as usize);
                        }
                    }
                    while d.last() == Some(&0) {
                        d.pop();
                    }
                }
            }
        }
        self
    }

    // ---- accessors --------------------------------------------------------

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    /// Zero, or zero at the available precision.
    pub fn is_zero(&self) -> bool {
        match &self.body {
            Body::Padic(u) => u.is_zero(),
            Body::Laurent(d) => d.is_empty(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// `None` for (exact or approximate) zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// A lower bound for the valuation: the valuation, or the precision of a zero class.
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        if self.is_zero() {
            self.prec
        } else {
            Some(self.val)
        }
    }

    /// Absolute precision `N` (known modulo `pi^N`); `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// Number of known digits past the leading one; `None` when exact.
    pub fn relative_precision(&self) -> Option<i64> {
        if self.is_zero() {
            return self.prec.map(|_| 0);
        }
        self.prec.map(|n| n - self.val)
    }

    /// Log-scale absolute value; zero classes count as `+inf`.
    pub fn log_value(&self) -> LogValue {
        match self.valuation() {
            Some(v) => LogValue::from_int(v),
            None => LogValue::Infinity,
        }
    }

    /// Residue digit at absolute position `pos`, or `None` past the precision.
    pub fn digit(&self, pos: i64) -> Option<u32> {
        if let Some(n) = self.prec {
            if pos >= n {
                return None;
            }
        }
        if self.is_zero() || pos < self.val {
            return Some(0);
        }
        let k = pos - self.val;
        match &self.body {
            Body::Padic(u) => {
                let p = self.desc.p();
                let r = u.mod_floor(&pow_p(p, k + 1));
                Some((r / pow_p(p, k)).to_u32().unwrap())
            }
            Body::Laurent(d) => Some(d.get(k as usize).copied().unwrap_or(0)),
        }
    }

    /// Laurent digits `(val, digits)`; `None` for p-adic elements.
    pub fn laurent_digits(&self) -> Option<(i64, &[u32])> {
        match &self.body {
            Body::Laurent(d) => Some((self.val, d)),
            Body::Padic(_) => None,
        }
    }

    /// p-adic unit part; `None` for Laurent elements.
    pub fn padic_unit(&self) -> Option<&BigInt> {
        match &self.body {
            Body::Padic(u) => Some(u),
            Body::Laurent(_) => None,
        }
    }

    /// Highest exponent carrying a nonzero digit of an exact Laurent polynomial.
    pub fn laurent_degree(&self) -> Option<i64> {
        match &self.body {
            Body::Laurent(d) if !d.is_empty() => Some(self.val + d.len() as i64 - 1),
            _ => None,
        }
    }

    /// Residue class of an integral element.
    pub fn residue(&self) -> Option<u32> {
        match self.valuation_lower_bound() {
            Some(v) if v < 0 => None,
            _ => self.digit(0),
        }
    }

    /// Same value under a descriptor with a different working precision.
    pub fn with_descriptor(&self, desc: FieldDescriptor) -> Self {
        debug_assert_eq!(desc, self.desc);
        let mut out = self.clone();
        out.desc = desc;
        out
    }

    /// Forget everything at or beyond `pi^n`.
    pub fn truncate(&self, n: i64) -> Self {
        let prec = min_prec(self.prec, Some(n));
        if prec == self.prec {
            return self.clone();
        }
        let mut out = self.clone();
        out.prec = prec;
        out.normalize()
    }

    /// Treat an approximate value as exact (its current representative).
    pub fn to_exact(&self) -> Self {
        let mut out = self.clone();
        out.prec = None;
        out.normalize()
    }

    // ---- arithmetic ------------------------------------------------------

    fn add_impl(&self, other: &Self) -> Self {
        let desc = self.desc.merge(&other.desc);
        let prec = min_prec(self.prec, other.prec);
        if self.is_zero() {
            let mut out = other.clone();
            out.desc = desc;
            out.prec = prec;
            return out.normalize();
        }
        if other.is_zero() {
            let mut out = self.clone();
            out.desc = desc;
            out.prec = prec;
            return out.normalize();
        }
        let m = self.val.min(other.val);
        let body = match (&self.body, &other.body) {
            (Body::Padic(a), Body::Padic(b)) => {
                let p = desc.p();
                let a = a * pow_p(p, self.val - m);
                let b = b * pow_p(p, other.val - m);
                Body::Padic(a + b)
            }
            (Body::Laurent(a), Body::Laurent(b)) => {
                let mut end = (self.val + a.len() as i64).max(other.val + b.len() as i64);
                if let Some(n) = prec {
                    end = end.min(n);
                }
                let len = (end - m).max(0) as usize;
                let mut out = vec![0u32; len];
                for (i, &c) in a.iter().enumerate() {
                    let k = (self.val - m) as usize + i;
                    if k < len {
                        out[k] = c;
                    }
                }
                for (i, &c) in b.iter().enumerate() {
                    let k = (other.val - m) as usize + i;
                    if k < len {
                        out[k] = desc.res_add(out[k], c);
                    }
                }
                Body::Laurent(out)
            }
            _ => unreachable!("descriptor kinds checked"),
        };
        FieldElement {
            desc,
            val: m,
            body,
            prec,
        }
        .normalize()
    }

    fn neg_impl(&self) -> Self {
        let mut out = self.clone();
        match &mut out.body {
            Body::Padic(u) => *u = -std::mem::take(u),
            Body::Laurent(d) => {
                for c in d.iter_mut() {
                    *c = self.desc.res_neg(*c);
                }
            }
        }
        out.normalize()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let desc = self.desc.merge(&other.desc);
        let exact_zero = |x: &Self| x.is_zero() && x.prec.is_none();
        if exact_zero(self) || exact_zero(other) {
            return Self::zero(desc);
        }
        let vx = self.valuation_lower_bound().unwrap();
        let vy = other.valuation_lower_bound().unwrap();
        let prec = min_prec(self.prec.map(|n| n + vy), other.prec.map(|n| n + vx));
        if self.is_zero() || other.is_zero() {
            return Self::zero_class(desc, prec.expect("zero class has a precision"));
        }
        let val = self.val + other.val;
        let body = match (&self.body, &other.body) {
            (Body::Padic(a), Body::Padic(b)) => Body::Padic(a * b),
            (Body::Laurent(a), Body::Laurent(b)) => {
                let mut len = a.len() + b.len() - 1;
                if let Some(n) = prec {
                    len = len.min((n - val).max(0) as usize);
                }
                let mut out = vec![0u32; len];
                for (i, &x) in a.iter().enumerate().take(len) {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate().take(len - i) {
                        if y != 0 {
                            out[i + j] = desc.res_add(out[i + j], desc.res_mul(x, y));
                        }
                    }
                }
                Body::Laurent(out)
            }
            _ => unreachable!("descriptor kinds checked"),
        };
        FieldElement {
            desc,
            val,
            body,
            prec,
        }
        .normalize()
    }

    /// Multiplicative inverse.
    ///
    /// Exact monomials invert exactly; other exact elements are expanded to
    /// the working precision; approximate elements keep their relative precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(match self.prec {
                None => Error::DivisionByZero,
                Some(n) => Error::PrecisionExhausted(format!(
                    "inverting an element indistinguishable from zero (O(pi^{n}))"
                )),
            });
        }
        let rel = match self.relative_precision() {
            Some(r) if r < MIN_SIGNIFICANT_DIGITS => {
                return Err(Error::PrecisionExhausted(format!(
                    "divisor known to only {r} significant digits"
                )))
            }
            Some(r) => r,
            None => {
                if let Some(inv) = self.exact_monomial_inverse() {
                    return Ok(inv);
                }
                self.desc.precision() as i64
            }
        };
        let desc = self.desc;
        let body = match &self.body {
            Body::Padic(u) => {
                let m = pow_p(desc.p(), rel);
                let u = u.mod_floor(&m);
                Body::Padic(u.modinv(&m).expect("unit is invertible"))
            }
            Body::Laurent(a) => {
                let r = rel as usize;
                let inv0 = desc.res_inv(a[0]);
                let mut b = vec![0u32; r];
                b[0] = inv0;
                for n in 1..r {
                    let mut s = 0u32;
                    for i in 1..=n.min(a.len() - 1) {
                        if a[i] != 0 && b[n - i] != 0 {
                            s = desc.res_add(s, desc.res_mul(a[i], b[n - i]));
                        }
                    }
                    b[n] = desc.res_neg(desc.res_mul(inv0, s));
                }
                Body::Laurent(b)
            }
        };
        Ok(FieldElement {
            desc,
            val: -self.val,
            body,
            prec: Some(-self.val + rel),
        }
        .normalize())
    }

    fn exact_monomial_inverse(&self) -> Option<Self> {
        match &self.body {
            Body::Padic(u) if u.abs().is_one() => Some(FieldElement {
                desc: self.desc,
                val: -self.val,
                body: Body::Padic(u.clone()),
                prec: None,
            }),
            Body::Laurent(d) if d.len() == 1 => {
                Some(Self::monomial(self.desc, self.desc.res_inv(d[0]), -self.val))
            }
            _ => None,
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.desc.same_field(&other.desc)?;
        let merged = self.desc.merge(&other.desc);
        let inv = other.with_descriptor(merged).inv()?;
        Ok(self.mul_impl(&inv))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.desc.same_field(&other.desc)?;
        Ok(self.add_impl(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.desc.same_field(&other.desc)?;
        Ok(self.add_impl(&other.neg_impl()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.desc.same_field(&other.desc)?;
        Ok(self.mul_impl(other))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.desc);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }

    /// Scale by a residue digit (an element of the constant subfield).
    pub fn scale_residue(&self, c: u32) -> Self {
        self.mul_impl(&Self::monomial(self.desc, c, 0))
    }

    /// Equality on all digits both operands determine.
    pub fn is_equal(&self, other: &Self) -> bool {
        self.desc == other.desc && self.add_impl(&other.neg_impl()).is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_equal(&Self::one(self.desc))
    }
}

/// The arithmetic entry point with full error reporting.
///
/// Besides descriptor and division errors, a result that is zero only up to
/// the available precision is reported as `PrecisionExhausted`.
pub fn field_arith(x: &FieldElement, y: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    let r = match op {
        ArithOp::Add => x.try_add(y)?,
        ArithOp::Sub => x.try_sub(y)?,
        ArithOp::Mul => x.try_mul(y)?,
        ArithOp::Div => x.checked_div(y)?,
    };
    if r.is_zero() && !r.is_exact() {
        return Err(Error::PrecisionExhausted(format!(
            "result indistinguishable from zero at precision {}",
            r.prec.unwrap()
        )));
    }
    Ok(r)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.is_equal(other)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.desc, rhs.desc, "descriptor mismatch");
        self.add_impl(rhs)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.desc, rhs.desc, "descriptor mismatch");
        self.add_impl(&rhs.neg_impl())
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.desc, rhs.desc, "descriptor mismatch");
        self.mul_impl(rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_impl()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_impl()
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

/// Orders by valuation; zero classes sort last.
pub fn cmp_valuation(a: &FieldElement, b: &FieldElement) -> Ordering {
    a.log_value().cmp(&b.log_value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldDescriptor {
        FieldDescriptor::laurent(3, 1).unwrap()
    }

    fn q5() -> FieldDescriptor {
        FieldDescriptor::padic(5).unwrap()
    }

    #[test]
    fn laurent_cancellation_mod_3() {
        let d = f3();
        let a = FieldElement::from_digits(d, 1, &[1, 1], None); // X + X^2
        let b = FieldElement::monomial(d, 2, 1); // 2X
        let s = field_arith(&a, &b, ArithOp::Add).unwrap();
        assert_eq!(s.valuation(), Some(2));
        assert!(s.is_equal(&FieldElement::monomial(d, 1, 2)));
    }

    #[test]
    fn padic_product_valuation() {
        let d = q5();
        let five = FieldElement::from_int(d, 5);
        let r = field_arith(&five, &five, ArithOp::Mul).unwrap();
        assert_eq!(r.valuation(), Some(2));
        assert!(r.is_equal(&FieldElement::from_int(d, 25)));
    }

    #[test]
    fn freshman_dream_in_char_2() {
        let d = FieldDescriptor::laurent(2, 1).unwrap();
        let x = FieldElement::from_digits(d, 0, &[1, 1], None);
        let sq = &x * &x;
        // direct convolution: (1 + X)^2 = 1 + 2X + X^2 = 1 + X^2
        assert_eq!(sq.laurent_digits().unwrap(), (0, &[1u32, 0, 1][..]));
    }

    #[test]
    fn division_errors() {
        let d = q5();
        let one = FieldElement::one(d);
        assert_eq!(
            field_arith(&one, &FieldElement::zero(d), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            field_arith(&one, &FieldElement::zero_class(d, 10), ArithOp::Div),
            Err(Error::PrecisionExhausted(_))
        ));
        let other = FieldElement::one(FieldDescriptor::padic(7).unwrap());
        assert!(matches!(
            field_arith(&one, &other, ArithOp::Add),
            Err(Error::DescriptorMismatch(..))
        ));
        // x - x with x inexact cannot certify a nonzero result
        let x = FieldElement::from_ratio(d, 1.into(), 3.into()).unwrap();
        assert!(matches!(
            field_arith(&x, &x, ArithOp::Sub),
            Err(Error::PrecisionExhausted(_))
        ));
        // but exact cancellation is fine
        assert!(field_arith(&one, &one, ArithOp::Sub).unwrap().is_zero());
    }

    #[test]
    fn few_significant_digits_refused() {
        let d = q5();
        let x = FieldElement::from_int(d, 7).truncate(3);
        assert!(matches!(x.inv(), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn rational_expansion() {
        let d = q5();
        let third = FieldElement::from_ratio(d, 1.into(), 3.into()).unwrap();
        assert!(!third.is_exact());
        assert_eq!(third.precision(), Some(64));
        let back = &third * &FieldElement::from_int(d, 3);
        assert!(back.is_one());
        let fifth = FieldElement::from_ratio(d, 2.into(), 25.into()).unwrap();
        assert!(fifth.is_exact());
        assert_eq!(fifth.valuation(), Some(-2));
        // 5/3 has valuation 1
        let r = FieldElement::from_ratio(d, 5.into(), 3.into()).unwrap();
        assert_eq!(r.valuation(), Some(1));
    }

    #[test]
    fn laurent_inverse() {
        let d = f3();
        let x = FieldElement::from_digits(d, 0, &[1, 1], None); // 1 + X
        let inv = x.inv().unwrap();
        // 1/(1+X) = 1 - X + X^2 - ... ; in F_3: 1, 2, 1, 2, ...
        for k in 0..10 {
            assert_eq!(inv.digit(k), Some(if k % 2 == 0 { 1 } else { 2 }));
        }
        assert!((&inv * &x).is_one());
        let m = FieldElement::monomial(d, 2, 3);
        let mi = m.inv().unwrap();
        assert!(mi.is_exact());
        assert_eq!(mi.valuation(), Some(-3));
    }

    #[test]
    fn precision_rules() {
        let d = q5();
        let a = FieldElement::from_int(d, 5).truncate(10); // 5 + O(5^10)
        let b = FieldElement::from_int(d, 25).truncate(7); // 25 + O(5^7)
        assert_eq!((&a + &b).precision(), Some(7));
        // min(1 + 7, 2 + 10)
        assert_eq!((&a * &b).precision(), Some(8));
        let z = FieldElement::zero_class(d, 4);
        assert_eq!((&z * &a).precision(), Some(5));
        assert!((&z * &FieldElement::zero(d)).is_exact());
    }

    #[test]
    fn negative_padic_digits() {
        let d = q5();
        let m1 = FieldElement::from_int(d, -1);
        for k in 0..6 {
            assert_eq!(m1.digit(k), Some(4));
        }
        assert!((&m1 + &FieldElement::one(d)).is_zero());
    }

    #[test]
    fn f9_arithmetic() {
        let d = FieldDescriptor::laurent(3, 2).unwrap();
        let w = FieldElement::residue_generator(d);
        let w2 = &w * &w;
        assert!(w2.is_equal(&FieldElement::from_int(d, -1)));
    }
}
