//! Characteristic polynomials (Berkowitz), Newton polygons and slope factorization.

use serde::{Deserialize, Serialize};

use super::matrix::MatrixK;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::ufield::{fmt_rational, serde_rational, FieldElement, Q};

/// `det(t - A)` by the division-free Berkowitz recursion.
pub fn char_poly(a: &MatrixK) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "characteristic polynomial of a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let desc = *a.descriptor();
    let n = a.nrows();
    let one = FieldElement::one(desc);
    // Coefficients of the running characteristic polynomial, highest degree first.
    let mut vect = vec![one.clone()];
    for r in 0..n {
        let mut col = vec![one.clone(), -a.get(r, r)];
        let mut v: Vec<FieldElement> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for _ in 0..r {
            let mut rv = FieldElement::zero(desc);
            for (j, x) in v.iter().enumerate() {
                rv = &rv + &(a.get(r, j) * x);
            }
            col.push(-rv);
            v = (0..r)
                .map(|i| {
                    let mut acc = FieldElement::zero(desc);
                    for (j, x) in v.iter().enumerate() {
                        acc = &acc + &(a.get(i, j) * x);
                    }
                    acc
                })
                .collect();
        }
        vect = (0..r + 2)
            .map(|i| {
                let mut acc = FieldElement::zero(desc);
                for (j, x) in vect.iter().enumerate().take(i + 1) {
                    acc = &acc + &(&col[i - j] * x);
                }
                acc
            })
            .collect();
    }
    vect.reverse();
    Ok(Poly::new(desc, vect))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    /// Common valuation of the roots on this segment.
    #[serde(with = "serde_rational")]
    pub slope: Q,
    pub multiplicity: usize,
}

/// Root valuations with multiplicities, slopes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn slopes(&self) -> Vec<Q> {
        self.segments.iter().map(|s| s.slope).collect()
    }

    /// Every root valuation, repeated by multiplicity, ascending.
    pub fn valuations_with_multiplicity(&self) -> Vec<Q> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.slope, s.multiplicity))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.multiplicity).sum()
    }
}

impl std::fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("({}, {})", fmt_rational(&s.slope), s.multiplicity))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Lower convex hull of points sorted by abscissa, collinear points dropped.
pub(crate) fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

/// Hull vertices of `f`, after checking that undetermined coefficients cannot
/// change the hull.
fn hull_vertices(f: &Poly) -> Result<Vec<(i64, i64)>> {
    let d = f.degree().ok_or_else(|| Error::SingularInput("zero polynomial".into()))?;
    if !f.is_monic() {
        return Err(Error::SingularInput("polynomial is not monic".into()));
    }
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Err(match c0.precision() {
            None => Error::SingularInput("zero constant term".into()),
            Some(n) => Error::PrecisionExhausted(format!("constant term is O(pi^{n})")),
        });
    }
    let mut points = Vec::new();
    let mut bounds = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        match (c.valuation(), c.precision()) {
            (Some(v), _) => points.push((i as i64, v)),
            (None, Some(n)) => bounds.push((i as i64, n)),
            (None, None) => {}
        }
    }
    let hull = lower_hull(&points);
    for (x, n) in bounds {
        let w = hull.windows(2).find(|w| w[0].0 <= x && x <= w[1].0).expect("x within [0, d]");
        let (a, b) = (w[0], w[1]);
        // Strictly above the hull: n > a.1 + (b.1 - a.1) (x - a.0) / (b.0 - a.0).
        if (n - a.1) * (b.0 - a.0) <= (b.1 - a.1) * (x - a.0) {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of t^{x} is O(pi^{n}) and could move the Newton polygon"
            )));
        }
    }
    debug_assert_eq!(hull.last().map(|p| p.0), Some(d as i64));
    Ok(hull)
}

fn segment_slope(a: (i64, i64), b: (i64, i64)) -> Q {
    Q::new(a.1 - b.1, b.0 - a.0)
}

pub fn newton_polygon(f: &Poly) -> Result<NewtonPolygon> {
    let hull = hull_vertices(f)?;
    let mut segments: Vec<Segment> = hull
        .windows(2)
        .map(|w| Segment {
            slope: segment_slope(w[0], w[1]),
            multiplicity: (w[1].0 - w[0].0) as usize,
        })
        .collect();
    segments.reverse();
    Ok(NewtonPolygon { segments })
}

const MAX_HENSEL_STEPS: usize = 40;

/// Factor `f = S * Q` with `S` monic of degree `k` carrying the roots of
/// valuation above the vertex at `k`, by coupled Newton iteration.
fn hensel_split(f: &Poly, k: usize, m: i64) -> Result<(Poly, Poly)> {
    let desc = *f.descriptor();
    let d = f.degree().unwrap();
    let ck = f.coeff(k);
    let inv_ck = ck.inv()?;
    let one = FieldElement::one(desc);
    let mut s = Poly::new(
        desc,
        (0..k).map(|i| (&f.coeff(i) * &inv_ck).truncate(m)).chain([one.clone()]).collect(),
    );
    let mut q = Poly::new(desc, (k..=d).map(|i| f.coeff(i)).collect());
    let mut u = Poly::constant(inv_ck.truncate(m));
    let two = Poly::constant(FieldElement::from_int(desc, 2));
    for _ in 0..MAX_HENSEL_STEPS {
        let e = f.sub(&s.mul(&q)).truncate(m).trim_zero_classes();
        if e.is_zero() {
            return Ok((s, q));
        }
        let (a, b) = e.divrem_monic(&s)?;
        let ds = u.mul(&b).truncate(m).divrem_monic(&s)?.1;
        let (w, _) = q.mul(&ds).truncate(m).divrem_monic(&s)?;
        let dq = a.sub(&w);
        s = s.add(&ds).truncate(m);
        q = q.add(&dq).truncate(m);
        let qu = q.mul(&u).truncate(m).divrem_monic(&s)?.1;
        u = u.mul(&two.sub(&qu)).truncate(m).divrem_monic(&s)?.1.trim_zero_classes();
    }
    Err(Error::PrecisionExhausted(format!(
        "slope factorization did not converge in {MAX_HENSEL_STEPS} steps"
    )))
}

/// Split a monic polynomial into factors of pure Newton slope.
///
/// Returns `(slope, factor)` pairs with slopes increasing. The product of the
/// factors agrees with `f` modulo `pi^target`.
pub fn slope_factor(f: &Poly, target: i64) -> Result<Vec<(Q, Poly)>> {
    let np = newton_polygon(f)?;
    if np.segments.len() == 1 {
        return Ok(vec![(np.segments[0].slope, f.clone())]);
    }
    let spread: i64 = f
        .coeffs()
        .iter()
        .filter_map(|c| c.valuation_lower_bound())
        .map(|v| v.abs())
        .sum();
    let mut pad = 16 + 2 * spread;
    let mut last = None;
    for _ in 0..3 {
        match try_slope_factor(f, target, spread, pad) {
            Err(e @ Error::PrecisionExhausted(_)) => {
                last = Some(e);
                pad *= 2;
            }
            other => return other,
        }
    }
    Err(last.unwrap())
}

fn try_slope_factor(f: &Poly, target: i64, spread: i64, pad: i64) -> Result<Vec<(Q, Poly)>> {
    let desc = *f.descriptor();
    let m = target + pad;
    let wp = (m + 2 * spread + 16).max(desc.precision() as i64);
    let work = desc.with_precision(u32::try_from(wp).map_err(|_| {
        Error::PrecisionExhausted("working precision out of range".into())
    })?);
    let mut g = f.with_descriptor(work);
    let mut factors = Vec::new();
    loop {
        let hull = hull_vertices(&g)?;
        if hull.len() == 2 {
            factors.push((segment_slope(hull[0], hull[1]), g));
            break;
        }
        let k = hull[1].0 as usize;
        let (s, q) = hensel_split(&g, k, m)?;
        factors.push((segment_slope(hull[0], hull[1]), s));
        g = q;
    }
    let mut prod = Poly::constant(FieldElement::one(work));
    for (_, h) in &factors {
        prod = prod.mul(h);
    }
    let diff = f.with_descriptor(work).sub(&prod);
    if diff
        .coeffs()
        .iter()
        .any(|c| c.valuation_lower_bound().is_some_and(|v| v < target))
    {
        return Err(Error::PrecisionExhausted(format!(
            "slope factors do not reproduce the polynomial modulo pi^{target}"
        )));
    }
    let keep = target + spread;
    let mut out = Vec::with_capacity(factors.len());
    for (slope, h) in factors.into_iter().rev() {
        let h = h.truncate(keep).with_descriptor(desc);
        let np = newton_polygon(&h)?;
        if np.segments.len() != 1 || np.segments[0].slope != slope {
            return Err(Error::PrecisionExhausted(format!(
                "slope-{} factor is not pure at the available precision",
                fmt_rational(&slope)
            )));
        }
        out.push((slope, h));
    }
    Ok(out)
}
