//! Concrete contraction groups: additive groups, shift groups, the
//! semidirect example in characteristic `p` and BCH groups of nilpotent
//! Lie algebras, with checks for balls, torsion, isomorphisms and
//! morphism extension.

mod automorphism;
mod ball;
mod bch;
mod check;
mod demos;
mod extend;
mod group;
mod shift;
mod torsion;

pub use automorphism::{
    apply_automorphism, contraction_data, contractivity_report, semidirect_alpha_matrix, ContractionData,
    ContractivityReport, GroupAutomorphismSpec, SampleTrajectory,
};
pub use ball::{ball_lemma_check, BallGroup, BallLemmaReport, BallSubgroup};
pub use bch::{bch_cross_check, bch_integrate, dynkin_terms, BchGroup, Word};
pub use check::{all_passed, Check, CheckStatus};
pub use demos::{
    automorphism_check, certificate_check, group_axioms, interleave_extension_check, run_demo, same_linearization_demo, semidirect_samples, shift_samples, DemoConfig,
    DemoReport, CONVENTION, DEMO_NAMES,
};
pub use extend::{extend_morphism, BallMap, ExtendedMorphism};
pub use group::{commutator, group_inv, group_op, Group, GroupElement, GroupTag};
pub use shift::{
    cyclic_alpha, decimate, deinterleave, interleave, shift_isomorphisms, spread, ShiftConfig, ShiftIsoName,
    ShiftIsoReport, Windowed,
};
pub use torsion::{torsion_exponent, TORSION_CAP_LOG};
