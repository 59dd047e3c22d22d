//! Decision procedures for pi_1-isomorphic maps from closed orientable
//! 3-manifolds to compact orientable 4-manifolds, built on exact integral
//! linear algebra so that every homological claim is independently checkable.
//!
//! The layers, bottom up:
//!
//! * [`matrix`], [`snf`], [`abelian`], [`fp`]: arbitrary-precision matrices,
//!   Smith normal form with change-of-basis tracking, abelian group normal
//!   forms, and mod-p linear algebra.
//! * [`chain`]: chain complexes of free abelian groups, integral and mod-p
//!   homology with explicit bases, induced maps on H_3.
//! * [`manifold`]: prime decompositions of closed orientable 3-manifolds and
//!   their homology.
//! * [`kpi1`]: the 4-skeleton of the classifying space K(pi_1, 1) built from a
//!   decomposition, with the fundamental-class image in H_3.
//! * [`group`], [`bar`]: finite group tables and the normalized bar
//!   (co)chain complexes, cup products, and integral H_4 checks.
//! * [`decision`]: the verdicts, certificates, and double covers.
//! * [`report`]: deterministic report structures shared with the CLI.

pub mod abelian;
pub mod bar;
#[cfg(doctest)]
pub mod book;
pub mod chain;
pub mod decision;
pub mod fp;
pub mod group;
pub mod kpi1;
pub mod manifold;
pub mod matrix;
pub mod report;
pub mod snf;

pub use abelian::AbelianGroup;
pub use bar::{
    bar_cochain_complex, bar_integral_homology, cup_table, h3h1_cup_check,
    verify_h3h1_cup_trivial, verify_h4_integral_trivial, BarError, CupCheck, CupTable,
    FpCochainComplex, DEFAULT_BUDGET,
};
pub use chain::{
    induced_map_on_h3, ChainComplex, ChainError, ClassVector, Coeff, ComplexHomology,
    FpComplexHomology, FpHomologyProfile, HomologyProfile, InducedH3,
};
pub use decision::{
    b1_shortcut, classify, decide_bounds_4manifold, decide_embedding_codim1,
    decide_maps_to_4manifold, odd_prime_witness, replay_certificate, two_power_cover, Answer,
    CaseTag, Certificate, CoverDescription, DecisionError, H3Witness, Question, Verdict,
};
pub use fp::{fp_rank, FpMatrix};
pub use group::{FiniteGroupTable, GroupError};
pub use kpi1::{
    build_skeleton, closed_form_h3, closed_form_h4, fundamental_class_image, injective_on_h3,
    summand_pattern, FundamentalClassImage, ImageVector, Kpi1Skeleton,
};
pub use manifold::{
    homology_of_m, piece_complex, ManifoldError, ManifoldHomology, Piece, PrimeDecomposition,
    SphericalPiece,
};
pub use matrix::IntMatrix;
pub use report::{
    classify_report, cover_report, homology_report, ring_report, run_checks, verify_report,
    CheckReport, CheckStatus, Report,
};
pub use snf::{cokernel, smith_normal_form, SnfResult};
