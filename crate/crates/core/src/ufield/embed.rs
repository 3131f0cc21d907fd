//! The residue-subfield embedding `F_p((X)) -> F_{p^f}((X))` and the
//! coordinate map of `F_{p^f}((X))` as a free module of rank `f` over `F_p((X))`
//! with basis `1, w, ..., w^{f-1}`.

use super::descriptor::FieldDescriptor;
use super::element::FieldElement;
use crate::error::{Error, Result};

fn check_pair(base: &FieldDescriptor, ext: &FieldDescriptor) -> Result<()> {
    if !base.is_laurent() || !ext.is_laurent() || base.f() != 1 || base.p() != ext.p() {
        return Err(Error::DescriptorMismatch(base.to_string(), ext.to_string()));
    }
    Ok(())
}

fn rebuild(desc: FieldDescriptor, src: &FieldElement, digit: impl Fn(u32) -> u32) -> FieldElement {
    match src.laurent_digits() {
        Some((val, ds)) if !ds.is_empty() => {
            let mapped: Vec<u32> = ds.iter().map(|&c| digit(c)).collect();
            FieldElement::from_digits(desc, val, &mapped, src.precision())
        }
        _ => match src.precision() {
            Some(n) => FieldElement::zero_class(desc, n),
            None => FieldElement::zero(desc),
        },
    }
}

/// Embed an element of `F_p((X))` into `F_{p^f}((X))`.
pub fn embed_subfield(x: &FieldElement, target: FieldDescriptor) -> Result<FieldElement> {
    check_pair(x.descriptor(), &target)?;
    Ok(rebuild(target, x, |c| c))
}

/// Coordinates of `x` in the basis `1, w, ..., w^{f-1}` over `F_p((X))`.
pub fn coordinates(x: &FieldElement, base: FieldDescriptor) -> Result<Vec<FieldElement>> {
    let ext = *x.descriptor();
    check_pair(&base, &ext)?;
    Ok((0..ext.f() as usize)
        .map(|j| rebuild(base, x, |c| ext.res_coordinates(c)[j]))
        .collect())
}

/// Inverse of [`coordinates`].
pub fn from_coordinates(coords: &[FieldElement], target: FieldDescriptor) -> Result<FieldElement> {
    if coords.len() != target.f() as usize {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for an extension of degree {}",
            coords.len(),
            target.f()
        )));
    }
    let w = FieldElement::residue_generator(target);
    let mut acc = FieldElement::zero(target);
    let mut wj = FieldElement::one(target);
    for c in coords {
        let e = embed_subfield(c, target)?;
        acc = &acc + &(&wj * &e);
        wj = &wj * &w;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_keeps_expansion() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let f9 = FieldDescriptor::laurent(3, 2).unwrap();
        let x = FieldElement::parse(f3, "1 + X").unwrap();
        let y = embed_subfield(&x, f9).unwrap();
        assert_eq!(y.to_string(), "1 + X");
        assert!(embed_subfield(&x, FieldDescriptor::laurent(5, 2).unwrap()).is_err());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let f9 = FieldDescriptor::laurent(3, 2).unwrap();
        let a = FieldElement::parse(f3, "2 + X^2 + 2*X^5").unwrap();
        let b = FieldElement::parse(f3, "X^-1 + 1").unwrap();
        let ea = embed_subfield(&a, f9).unwrap();
        let eb = embed_subfield(&b, f9).unwrap();
        assert!(embed_subfield(&(&a * &b), f9).unwrap().is_equal(&(&ea * &eb)));
        assert!(embed_subfield(&(&a + &b), f9).unwrap().is_equal(&(&ea + &eb)));
    }

    #[test]
    fn coordinates_of_w_times_x() {
        let f3 = FieldDescriptor::laurent(3, 1).unwrap();
        let f9 = FieldDescriptor::laurent(3, 2).unwrap();
        let x = FieldElement::parse(f9, "w*X").unwrap();
        let c = coordinates(&x, f3).unwrap();
        assert!(c[0].is_zero());
        assert_eq!(c[1].to_string(), "X");
        assert!(from_coordinates(&c, f9).unwrap().is_equal(&x));
    }
}
