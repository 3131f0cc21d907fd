//! Lie algebras from structure constants, `N`-gradations from contractive
//! automorphisms and back, spectral filtrations and central series.

mod gradation;
mod lie;
mod series;
mod specfile;

pub use gradation::{automorphism_from_gradation, gradation_from_automorphism, Gradation, GradationReport};
pub use lie::{check_lie_automorphism, validate_lie, BracketEntry, BracketEntryRepr, LieAlgebraSpec};
pub use series::{
    bracket_constant, lower_central_series, spectral_filtration, CentralSeries, Filtration,
    FiltrationReport,
};
pub use specfile::SpecFile;
