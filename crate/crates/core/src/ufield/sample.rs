//! Random exact elements for property checks and demo sampling.

use num_bigint::BigInt;
use rand::Rng;

use super::descriptor::{FieldDescriptor, FieldKind};
use super::element::FieldElement;

/// A random exact element supported on positions `lo .. lo + width`.
pub fn random_exact<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    rng: &mut R,
    lo: i64,
    width: usize,
) -> FieldElement {
    let q = desc.q() as u32;
    let digits: Vec<u32> = match desc.kind() {
        FieldKind::Padic => (0..width).map(|_| rng.gen_range(0..desc.p())).collect(),
        FieldKind::Laurent => (0..width).map(|_| rng.gen_range(0..q)).collect(),
    };
    let x = FieldElement::from_digits(desc, lo, &digits, None);
    if desc.kind() == FieldKind::Padic && rng.gen_bool(0.5) {
        -x
    } else {
        x
    }
}

/// As [`random_exact`], but nonzero with valuation exactly `lo`.
pub fn random_unit_at<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    rng: &mut R,
    lo: i64,
    width: usize,
) -> FieldElement {
    let lead = FieldElement::monomial(desc, rng.gen_range(1..desc.p()), lo);
    if width <= 1 {
        return lead;
    }
    let tail = random_exact(desc, rng, lo + 1, width - 1);
    &lead + &tail
}

/// A random small integer as an exact field element.
pub fn random_small_int<R: Rng + ?Sized>(desc: FieldDescriptor, rng: &mut R, bound: i64) -> FieldElement {
    FieldElement::from_bigint(desc, BigInt::from(rng.gen_range(-bound..=bound)))
}
