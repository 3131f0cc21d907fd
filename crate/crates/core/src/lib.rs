//! Contraction groups and contractive automorphisms over local fields, computed exactly.
//!
//! * [`ufield`]: arithmetic in `Q_p` and `F_q((X))` with precision tracking.
//! * [`ulinalg`]: characteristic polynomials, Newton polygons, slope
//!   factorization, characteristic-subspace decompositions and adapted norms.
//! * [`gradlie`]: Lie algebras from structure constants, `N`-gradations,
//!   spectral filtrations and central series.
//! * [`cgroups`]: concrete contraction groups, ball subgroups, torsion,
//!   shift-group isomorphisms, morphism extension and BCH integration.

pub mod error;
pub mod ufield;
pub mod ulinalg;
pub mod gradlie;
pub mod cgroups;
pub mod selfcheck;

pub use error::{Error, ErrorClass, Result};
