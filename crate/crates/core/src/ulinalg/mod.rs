//! Linear algebra over a local field: characteristic polynomials, Newton
//! polygons, slope factorization, characteristic subspaces and adapted norms.

mod charpoly;
mod decomposition;
mod lattice;
mod matrix;
mod norm;
mod poly;
mod subspace;

pub use charpoly::{char_poly, newton_polygon, slope_factor, NewtonPolygon, Segment};
pub use decomposition::{
    char_subspaces, is_contractive, CharDecomposition, CharPiece, Contractivity,
    DecompositionReport, PieceReport,
};
pub use matrix::{
    unit_vector, vec_add, vec_is_equal, vec_is_zero, vec_scale, vec_sub, vec_to_strings, MatrixK,
    Vector,
};
pub(crate) use matrix::{significance as significance_of, Sig};
pub use norm::{adapted_norm, adapted_norm_for, operator_bounds, NormReport, ValuationNorm};
pub use poly::Poly;
pub use subspace::Subspace;
