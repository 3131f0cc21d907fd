//! Shift groups `(F_p((X)), +)` on finite windows and explicit isomorphisms
//! between contraction groups built from them.
//!
//! A windowed element is known on `[lo, hi)`: it vanishes below `lo` and its
//! digits from `hi` on (its absolute precision) are unknown. Every equality
//! is asserted on the window interior; an empty interior is an error.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::check::{all_passed, Check};
use crate::error::{Error, Result};
use crate::ufield::{coordinates, embed_subfield, from_coordinates, FieldDescriptor, FieldElement};

#[derive(Clone, Debug)]
pub struct Windowed {
    pub x: FieldElement,
    pub lo: i64,
}

impl Windowed {
    pub fn new(x: FieldElement, lo: i64) -> Self {
        Windowed { x, lo }
    }

    pub fn random<R: Rng + ?Sized>(desc: FieldDescriptor, rng: &mut R, lo: i64, width: usize) -> Self {
        let q = desc.q() as u32;
        let digits: Vec<u32> = (0..width).map(|_| rng.gen_range(0..q)).collect();
        Windowed {
            x: FieldElement::from_digits(desc, lo, &digits, Some(lo + width as i64)),
            lo,
        }
    }

    pub fn hi(&self) -> Option<i64> {
        self.x.precision()
    }

    pub fn add(&self, o: &Self) -> Self {
        Windowed::new(&self.x + &o.x, self.lo.min(o.lo))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Windowed::new(&self.x - &o.x, self.lo.min(o.lo))
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        let xk = FieldElement::uniformizer_pow(*self.x.descriptor(), k);
        Windowed::new(&self.x * &xk, self.lo + k)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Windowed::new(&self.x * c, self.lo)
    }

    /// `x(X^n)`.
    pub fn spread(&self, n: usize) -> Self {
        Windowed::new(spread(&self.x, n), self.lo * n as i64)
    }

    /// `sum_k c_(n k + r) X^k`.
    pub fn decimate(&self, n: usize, r: usize) -> Self {
        let lo = Integer::div_ceil(&(self.lo - r as i64), &(n as i64));
        Windowed::new(decimate(&self.x, n, r), lo)
    }

    fn interior(&self, o: &Self) -> Result<()> {
        let lo = self.lo.min(o.lo);
        let hi = match (self.hi(), o.hi()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match hi {
            Some(h) if h <= lo => Err(Error::WindowTooSmall(format!("empty interior [{lo}, {h})"))),
            _ => Ok(()),
        }
    }

    /// Equality on the window interior.
    pub fn equals(&self, o: &Self) -> Result<bool> {
        self.interior(o)?;
        Ok(self.x.is_equal(&o.x))
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.interior(self)?;
        Ok(self.x.is_zero())
    }
}

fn laurent_parts(x: &FieldElement) -> (i64, Vec<u32>) {
    let (v, d) = x.laurent_digits().expect("Laurent element");
    (v, d.to_vec())
}

/// `x(X^n)`: digit `k` moves to position `n k`.
pub fn spread(x: &FieldElement, n: usize) -> FieldElement {
    let desc = *x.descriptor();
    let (v, d) = laurent_parts(x);
    let mut out = vec![0u32; d.len().saturating_sub(1) * n + 1];
    for (k, c) in d.iter().enumerate() {
        out[k * n] = *c;
    }
    let n = n as i64;
    FieldElement::from_digits(desc, v * n, &out, x.precision().map(|h| h * n))
}

/// `sum_k c_(n k + r) X^k`, known for `k < ceil((hi - r) / n)`.
pub fn decimate(x: &FieldElement, n: usize, r: usize) -> FieldElement {
    let desc = *x.descriptor();
    let (v, d) = laurent_parts(x);
    let (n, r) = (n as i64, r as i64);
    let prec = x.precision().map(|h| Integer::div_ceil(&(h - r), &n));
    let k0 = Integer::div_ceil(&(v - r), &n);
    let mut out = Vec::new();
    let mut k = k0;
    loop {
        let pos = n * k + r - v;
        if pos >= d.len() as i64 {
            break;
        }
        out.push(d[pos as usize]);
        k += 1;
    }
    FieldElement::from_digits(desc, k0, &out, prec)
}

/// `sum_i X^i x_i(X^n)` for `n` parts.
pub fn interleave(parts: &[Windowed]) -> Windowed {
    let n = parts.len();
    let mut acc = parts[0].spread(n);
    for (i, x) in parts.iter().enumerate().skip(1) {
        acc = acc.add(&x.spread(n).shift(i as i64));
    }
    acc
}

pub fn deinterleave(x: &Windowed, n: usize) -> Vec<Windowed> {
    (0..n).map(|r| x.decimate(n, r)).collect()
}

/// `(x_1, ..., x_n) -> (X x_n, x_1, ..., x_(n-1))`.
pub fn cyclic_alpha(parts: &[Windowed]) -> Vec<Windowed> {
    let n = parts.len();
    let mut out = vec![parts[n - 1].shift(1)];
    out.extend(parts[..n - 1].iter().cloned());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftIsoName {
    EvenSub,
    Subfield,
    Interleave2,
    InterleaveN,
}

impl ShiftIsoName {
    pub fn parse(s: &str) -> Option<Self> {
        match s.replace('-', "_").as_str() {
            "even_sub" => Some(ShiftIsoName::EvenSub),
            "subfield" => Some(ShiftIsoName::Subfield),
            "interleave_2" => Some(ShiftIsoName::Interleave2),
            "interleave_n" => Some(ShiftIsoName::InterleaveN),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ShiftConfig {
    pub p: u32,
    /// Window width of every sample.
    pub width: usize,
    pub samples: usize,
    pub seed: u64,
    /// Number of components for `interleave_n`.
    pub n: usize,
}

impl Default for ShiftConfig {
    fn default() -> Self {
        ShiftConfig {
            p: 3,
            width: 32,
            samples: 50,
            seed: 0,
            n: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShiftIsoReport {
    pub name: ShiftIsoName,
    pub field: String,
    pub width: usize,
    pub samples: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

struct Tally {
    name: &'static str,
    ok: usize,
    total: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, ok: 0, total: 0 }
    }

    fn record(&mut self, b: bool) {
        self.total += 1;
        if b {
            self.ok += 1;
        }
    }

    fn check(self, what: &str) -> Check {
        Check::new(
            self.name,
            self.ok == self.total && self.total > 0,
            format!("{what}: {}/{} exact on window interiors", self.ok, self.total),
        )
    }
}

fn sample<R: Rng>(desc: FieldDescriptor, rng: &mut R, width: usize) -> Windowed {
    let lo = rng.gen_range(-3..=3);
    Windowed::random(desc, rng, lo, width)
}

/// Build and verify one of the named isomorphisms on random windows.
pub fn shift_isomorphisms(name: ShiftIsoName, cfg: &ShiftConfig) -> Result<ShiftIsoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let base = FieldDescriptor::laurent(cfg.p, 1)?;
    let (field, checks) = match name {
        ShiftIsoName::EvenSub => (base, even_sub(base, cfg, &mut rng)?),
        ShiftIsoName::Subfield => {
            let big = FieldDescriptor::laurent(cfg.p, 2)?;
            (big, subfield(base, big, cfg, &mut rng)?)
        }
        ShiftIsoName::Interleave2 => (base, interleave_checks(base, 2, cfg, &mut rng)?),
        ShiftIsoName::InterleaveN => (base, interleave_checks(base, cfg.n, cfg, &mut rng)?),
    };
    let passed = all_passed(&checks);
    Ok(ShiftIsoReport {
        name,
        field: field.to_string(),
        width: cfg.width,
        samples: cfg.samples,
        checks,
        passed,
    })
}

/// `G = F_p((X))` with `alpha = X^2`; `G_1` is the even-support subgroup.
/// `phi_1: G_1 -> S` keeps even digits, `phi_2: G/G_1 -> S` keeps odd digits,
/// and `S` is the one-step shift group.
fn even_sub(desc: FieldDescriptor, cfg: &ShiftConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let w = cfg.width;
    let alpha = |g: &Windowed| g.shift(2);
    let alpha_inv = |g: &Windowed| g.shift(-2);
    let sigma = |g: &Windowed| g.shift(1);
    let phi1 = |g: &Windowed| g.decimate(2, 0);
    let phi1_inv = |s: &Windowed| s.spread(2);
    let phi2 = |g: &Windowed| g.decimate(2, 1);
    let rep2 = |s: &Windowed| s.spread(2).shift(1);
    let in_g1 = |g: &Windowed| g.decimate(2, 1).is_zero();

    let mut stable = Tally::new("g1_alpha_stable");
    let mut add1 = Tally::new("factor1_additive");
    let mut int1 = Tally::new("factor1_intertwining");
    let mut rt1 = Tally::new("factor1_round_trip");
    let mut well = Tally::new("factor2_well_defined");
    let mut add2 = Tally::new("factor2_additive");
    let mut int2 = Tally::new("factor2_intertwining");
    let mut rt2 = Tally::new("factor2_round_trip");
    let mut kern = Tally::new("factor2_kernel_is_g1");
    for _ in 0..cfg.samples {
        let g = sample(desc, rng, w);
        let h = sample(desc, rng, w);
        let s = sample(desc, rng, w);
        let g1 = sample(desc, rng, w).spread(2);
        let h1 = sample(desc, rng, w).spread(2);

        stable.record(in_g1(&g1)? && in_g1(&alpha(&g1))? && in_g1(&alpha_inv(&g1))?);
        add1.record(phi1(&g1.add(&h1)).equals(&phi1(&g1).add(&phi1(&h1)))?);
        int1.record(phi1(&alpha(&g1)).equals(&sigma(&phi1(&g1)))?);
        rt1.record(phi1_inv(&phi1(&g1)).equals(&g1)? && phi1(&phi1_inv(&s)).equals(&s)?);
        well.record(phi2(&g.add(&g1)).equals(&phi2(&g))?);
        add2.record(phi2(&g.add(&h)).equals(&phi2(&g).add(&phi2(&h)))?);
        int2.record(phi2(&alpha(&g)).equals(&sigma(&phi2(&g)))?);
        rt2.record(phi2(&rep2(&s)).equals(&s)? && in_g1(&g.sub(&rep2(&phi2(&g))))?);
        kern.record(in_g1(&g.sub(&rep2(&phi2(&g))))? && phi2(&g1).is_zero()?);
    }
    Ok(vec![
        Check::new("chain", true, "1 < G_1 < G, normal since G is abelian"),
        stable.check("alpha and alpha^-1 preserve even support"),
        add1.check("phi_1(g + h) = phi_1(g) + phi_1(h)"),
        int1.check("phi_1(X^2 g) = X phi_1(g)"),
        rt1.check("phi_1^-1 phi_1 = id and phi_1 phi_1^-1 = id"),
        well.check("phi_2 is constant on G_1-cosets"),
        add2.check("phi_2(g + h) = phi_2(g) + phi_2(h)"),
        int2.check("phi_2(X^2 g) = X phi_2(g)"),
        rt2.check("phi_2 of the odd-support representative of s is s; g minus its representative lies in G_1"),
        kern.check("g lies in G_1 exactly when phi_2(g) = 0"),
    ])
}

/// `G = F_(p^2)((X))` with `alpha = X`; `G_1 = F_p((X))`. The quotient is
/// read off the `w`-coordinate.
fn subfield(base: FieldDescriptor, big: FieldDescriptor, cfg: &ShiftConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let w = cfg.width;
    let embed = |s: &Windowed| -> Result<Windowed> { Ok(Windowed::new(embed_subfield(&s.x, big)?, s.lo)) };
    let coord = |g: &Windowed, j: usize| -> Result<Windowed> { Ok(Windowed::new(coordinates(&g.x, base)?[j].clone(), g.lo)) };
    let phi2 = |g: &Windowed| coord(g, 1);
    let rep2 = |s: &Windowed| -> Result<Windowed> {
        let zero = FieldElement::zero(base).truncate(s.hi().unwrap_or(i64::MAX));
        Ok(Windowed::new(from_coordinates(&[zero, s.x.clone()], big)?, s.lo))
    };
    let in_g1 = |g: &Windowed| coord(g, 1)?.is_zero();

    let mut stable = Tally::new("g1_alpha_stable");
    let mut add1 = Tally::new("factor1_additive");
    let mut int1 = Tally::new("factor1_intertwining");
    let mut rt1 = Tally::new("factor1_round_trip");
    let mut well = Tally::new("factor2_well_defined");
    let mut add2 = Tally::new("factor2_additive");
    let mut int2 = Tally::new("factor2_intertwining");
    let mut rt2 = Tally::new("factor2_round_trip");
    let mut kern = Tally::new("factor2_kernel_is_g1");
    for _ in 0..cfg.samples {
        let g = sample(big, rng, w);
        let h = sample(big, rng, w);
        let s = sample(base, rng, w);
        let t = sample(base, rng, w);
        let g1 = embed(&s)?;

        stable.record(in_g1(&g1)? && in_g1(&g1.shift(1))? && in_g1(&g1.shift(-1))?);
        add1.record(embed(&s.add(&t))?.equals(&embed(&s)?.add(&embed(&t)?))?);
        int1.record(embed(&s.shift(1))?.equals(&embed(&s)?.shift(1))?);
        rt1.record(coord(&embed(&s)?, 0)?.equals(&s)?);
        well.record(phi2(&g.add(&g1))?.equals(&phi2(&g)?)?);
        add2.record(phi2(&g.add(&h))?.equals(&phi2(&g)?.add(&phi2(&h)?))?);
        int2.record(phi2(&g.shift(1))?.equals(&phi2(&g)?.shift(1))?);
        rt2.record(phi2(&rep2(&s)?)?.equals(&s)? && in_g1(&g.sub(&rep2(&phi2(&g)?)?))?);
        kern.record(in_g1(&g.sub(&rep2(&phi2(&g)?)?))? && phi2(&g1)?.is_zero()?);
    }
    Ok(vec![
        Check::new("chain", true, "1 < G_1 < G, normal since G is abelian"),
        stable.check("alpha and alpha^-1 preserve F_p((X))"),
        add1.check("inclusion of F_p((X)) is additive"),
        int1.check("inclusion commutes with multiplication by X"),
        rt1.check("the 1-coordinate inverts the inclusion"),
        well.check("the w-coordinate is constant on G_1-cosets"),
        add2.check("the w-coordinate is additive"),
        int2.check("w-coordinate of X g is X times the w-coordinate of g"),
        rt2.check("w-coordinate of w s is s; g minus its representative lies in G_1"),
        kern.check("g lies in G_1 exactly when its w-coordinate vanishes"),
    ])
}

/// `G = F_p((X))^n` with `alpha(x_1..x_n) = (X x_n, x_1, ..., x_(n-1))` and
/// `phi(x) = sum_i X^(i-1) x_i(X^n)`, so `phi alpha = sigma phi`.
fn interleave_checks(desc: FieldDescriptor, n: usize, cfg: &ShiftConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let w = cfg.width;
    let mut add = Tally::new("additive");
    let mut int = Tally::new("intertwining");
    let mut rt = Tally::new("round_trip");
    let mut rt_inv = Tally::new("inverse_round_trip");
    let tuple = |rng: &mut ChaCha8Rng| -> Vec<Windowed> {
        (0..n).map(|_| sample(desc, rng, w)).collect()
    };
    let eq_tuple = |a: &[Windowed], b: &[Windowed]| -> Result<bool> {
        for (x, y) in a.iter().zip(b) {
            if !x.equals(y)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for _ in 0..cfg.samples {
        let x = tuple(rng);
        let y = tuple(rng);
        let sum: Vec<Windowed> = x.iter().zip(&y).map(|(a, b)| a.add(b)).collect();
        add.record(interleave(&sum).equals(&interleave(&x).add(&interleave(&y)))?);
        int.record(interleave(&cyclic_alpha(&x)).equals(&interleave(&x).shift(1))?);
        rt.record(eq_tuple(&deinterleave(&interleave(&x), n), &x)?);
        let s = sample(desc, rng, w);
        rt_inv.record(interleave(&deinterleave(&s, n)).equals(&s)?);
    }
    let mut checks = vec![
        add.check("phi(x + y) = phi(x) + phi(y)"),
        int.check("phi(alpha x) = X phi(x)"),
        rt.check("phi^-1 phi = id"),
        rt_inv.check("phi phi^-1 = id"),
    ];
    if n == 2 {
        let one_plus_x = FieldElement::parse(desc, "1 + X")?;
        let x = FieldElement::parse(desc, "X")?;
        let got = interleave(&[Windowed::new(one_plus_x, 0), Windowed::new(x, 1)]);
        let want = FieldElement::parse(desc, "1 + X^2 + X^3")?;
        checks.push(Check::new(
            "example",
            got.x.is_equal(&want),
            format!("phi(1 + X, X) = {}", got.x),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldDescriptor {
        FieldDescriptor::laurent(3, 1).unwrap()
    }

    #[test]
    fn spread_and_decimate() {
        let x = FieldElement::parse(f3(), "X^-1 + 2 + X^3").unwrap();
        let s = spread(&x, 2);
        assert!(s.is_equal(&FieldElement::parse(f3(), "X^-2 + 2 + X^6").unwrap()));
        assert!(decimate(&s, 2, 0).is_equal(&x));
        assert!(decimate(&s, 2, 1).is_zero());
        let w = FieldElement::from_digits(f3(), 0, &[1, 2, 1, 1, 2], Some(5));
        let odd = decimate(&w, 2, 1);
        assert_eq!(odd.precision(), Some(2));
        assert!(odd.is_equal(&FieldElement::parse(f3(), "2 + X").unwrap()));
    }

    #[test]
    fn interleave_example() {
        let a = Windowed::new(FieldElement::parse(f3(), "1 + X").unwrap(), 0);
        let b = Windowed::new(FieldElement::parse(f3(), "X").unwrap(), 1);
        let got = interleave(&[a, b]);
        assert_eq!(got.x.to_string(), "1 + X^2 + X^3");
    }

    #[test]
    fn all_isomorphisms_verify() {
        let cfg = ShiftConfig {
            samples: 10,
            ..ShiftConfig::default()
        };
        for name in [ShiftIsoName::EvenSub, ShiftIsoName::Subfield, ShiftIsoName::Interleave2, ShiftIsoName::InterleaveN] {
            let r = shift_isomorphisms(name, &cfg).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn tiny_windows_are_rejected() {
        let cfg = ShiftConfig {
            width: 1,
            samples: 20,
            ..ShiftConfig::default()
        };
        assert!(matches!(
            shift_isomorphisms(ShiftIsoName::EvenSub, &cfg),
            Err(Error::WindowTooSmall(_))
        ));
    }
}
