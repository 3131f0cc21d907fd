//! Exponents of characteristic-`p` groups by exact exponentiation.

use super::group::{Group, GroupElement};
use crate::error::{Error, Result};

/// Largest `k` tried, so exponents up to `p^8` are detected.
pub const TORSION_CAP_LOG: u32 = 8;

/// Smallest `p^k` with `g^(p^k) = 1` for every sample.
pub fn torsion_exponent(group: &Group, samples: &[GroupElement]) -> Result<u64> {
    let desc = group.descriptor();
    if desc.characteristic() == 0 {
        return Err(Error::UnsupportedField(format!("torsion exponents need characteristic p, got {desc}")));
    }
    let p = desc.p() as u64;
    let mut e = 1u64;
    for g in samples {
        let mut h = g.clone();
        let mut k = 0u32;
        while !h.is_identity() {
            if k == TORSION_CAP_LOG {
                return Err(Error::NotTorsion(format!("{p}^{TORSION_CAP_LOG} for {g}")));
            }
            h = group.pow(&h, p)?;
            k += 1;
        }
        e = e.max(p.pow(k));
    }
    Ok(e)
}
