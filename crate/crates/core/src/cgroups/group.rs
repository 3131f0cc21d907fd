//! Group elements and group laws for the concrete contraction groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bch::BchGroup;
use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement};
use crate::ulinalg::{vec_add, vec_is_equal, vec_to_strings, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupTag {
    /// `(K^n, +)`.
    Additive(usize),
    /// `(F_p((X)), +)` on finite windows, the shift group `C_p^(-N) x C_p^(N_0)`.
    Shift,
    /// `K^2 x_beta K` with `beta_z(x, y) = (x + z^p y, y)`.
    Semidirect,
    /// A nilpotent Lie algebra of the given dimension with the BCH law.
    Bch(usize),
}

impl GroupTag {
    pub fn arity(&self) -> usize {
        match self {
            GroupTag::Additive(n) | GroupTag::Bch(n) => *n,
            GroupTag::Shift => 1,
            GroupTag::Semidirect => 3,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Additive(n) => write!(f, "Additive({n})"),
            GroupTag::Shift => f.write_str("Shift"),
            GroupTag::Semidirect => f.write_str("Semidirect"),
            GroupTag::Bch(n) => write!(f, "Bch({n})"),
        }
    }
}

/// A tagged payload. Shift elements carry one Laurent series whose absolute
/// precision is the right edge of the window; everything left of the first
/// stored digit is zero.
#[derive(Clone, Debug)]
pub struct GroupElement {
    tag: GroupTag,
    payload: Vector,
}

impl GroupElement {
    pub fn new(tag: GroupTag, payload: Vector) -> Result<Self> {
        if payload.len() != tag.arity() {
            return Err(Error::DimensionMismatch(format!(
                "{tag} expects {} coordinates, got {}",
                tag.arity(),
                payload.len()
            )));
        }
        if matches!(tag, GroupTag::Shift | GroupTag::Semidirect) {
            if let Some(x) = payload.first() {
                if !x.descriptor().is_laurent() {
                    return Err(Error::UnsupportedField(format!("{tag} needs a Laurent field")));
                }
            }
        }
        if tag == GroupTag::Shift && payload[0].is_exact() {
            return Err(Error::WindowTooSmall("shift elements need a finite right edge".into()));
        }
        Ok(GroupElement { tag, payload })
    }

    pub fn additive(v: Vector) -> Self {
        GroupElement {
            tag: GroupTag::Additive(v.len()),
            payload: v,
        }
    }

    /// Coefficients `digits` on the window `[lo, lo + len)`.
    pub fn shift_window(desc: FieldDescriptor, lo: i64, digits: &[u32]) -> Result<Self> {
        let x = FieldElement::from_digits(desc, lo, digits, Some(lo + digits.len() as i64));
        Self::new(GroupTag::Shift, vec![x])
    }

    pub fn semidirect(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        Self::new(GroupTag::Semidirect, vec![x, y, z])
    }

    pub fn bch(v: Vector) -> Self {
        GroupElement {
            tag: GroupTag::Bch(v.len()),
            payload: v,
        }
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn payload(&self) -> &[FieldElement] {
        &self.payload
    }

    pub fn descriptor(&self) -> Option<&FieldDescriptor> {
        self.payload.first().map(|x| x.descriptor())
    }

    pub fn with_payload(&self, payload: Vector) -> Self {
        GroupElement {
            tag: self.tag,
            payload,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.payload.iter().all(|x| x.is_zero())
    }

    /// Equality on every digit both sides determine.
    pub fn is_equal(&self, other: &Self) -> bool {
        self.tag == other.tag && vec_is_equal(&self.payload, &other.payload)
    }

    pub fn to_strings(&self) -> Vec<String> {
        vec_to_strings(&self.payload)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// A group structure on tagged payloads.
#[derive(Clone, Debug)]
pub enum Group {
    Additive { desc: FieldDescriptor, dim: usize },
    Shift { desc: FieldDescriptor },
    Semidirect { desc: FieldDescriptor },
    Bch(Box<BchGroup>),
}

impl Group {
    pub fn additive(desc: FieldDescriptor, dim: usize) -> Self {
        Group::Additive { desc, dim }
    }

    pub fn shift(desc: FieldDescriptor) -> Result<Self> {
        if !desc.is_laurent() {
            return Err(Error::UnsupportedField("shift groups live over F_q((X))".into()));
        }
        Ok(Group::Shift { desc })
    }

    pub fn semidirect(desc: FieldDescriptor) -> Result<Self> {
        if !desc.is_laurent() {
            return Err(Error::UnsupportedField("the semidirect group lives over F_q((X))".into()));
        }
        Ok(Group::Semidirect { desc })
    }

    pub fn tag(&self) -> GroupTag {
        match self {
            Group::Additive { dim, .. } => GroupTag::Additive(*dim),
            Group::Shift { .. } => GroupTag::Shift,
            Group::Semidirect { .. } => GroupTag::Semidirect,
            Group::Bch(g) => GroupTag::Bch(g.lie().dim()),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Group::Additive { desc, .. } | Group::Shift { desc } | Group::Semidirect { desc } => *desc,
            Group::Bch(g) => *g.lie().descriptor(),
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.tag != self.tag() {
            return Err(Error::TagMismatch(format!("{} in a {} group", g.tag, self.tag())));
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        let desc = self.descriptor();
        let tag = self.tag();
        GroupElement {
            tag,
            payload: vec![FieldElement::zero(desc); tag.arity()],
        }
    }

    pub fn op(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let payload = match self {
            Group::Additive { .. } | Group::Shift { .. } => vec_add(&g.payload, &h.payload),
            Group::Semidirect { desc } => {
                let (x, y, z) = (&g.payload[0], &g.payload[1], &g.payload[2]);
                let (a, b, c) = (&h.payload[0], &h.payload[1], &h.payload[2]);
                let zp = z.pow(desc.p() as u64);
                vec![&(x + a) + &(&zp * b), y + b, z + c]
            }
            Group::Bch(grp) => grp.law(&g.payload, &h.payload),
        };
        Ok(g.with_payload(payload))
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let payload = match self {
            Group::Semidirect { desc } => {
                let (x, y, z) = (&g.payload[0], &g.payload[1], &g.payload[2]);
                let zp = z.pow(desc.p() as u64);
                vec![&(&zp * y) - x, -y, -z]
            }
            _ => g.payload.iter().map(|x| -x).collect(),
        };
        Ok(g.with_payload(payload))
    }

    /// `g h g^-1 h^-1`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let gh = self.op(g, h)?;
        let gi = self.inv(g)?;
        let hi = self.inv(h)?;
        self.op(&self.op(&gh, &gi)?, &hi)
    }

    /// `g^n` by repeated squaring.
    pub fn pow(&self, g: &GroupElement, mut n: u64) -> Result<GroupElement> {
        self.check(g)?;
        let mut acc = self.identity();
        let mut base = g.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.op(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.op(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

pub fn group_op(group: &Group, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    group.op(g, h)
}

pub fn group_inv(group: &Group, g: &GroupElement) -> Result<GroupElement> {
    group.inv(g)
}

pub fn commutator(group: &Group, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    group.commutator(g, h)
}
