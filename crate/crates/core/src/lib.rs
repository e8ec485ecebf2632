//! Computational projective geometry for the six-points-on-a-conic criterion
//! on a triangle's cevians, its isogonal/isotomic/two-point corollaries,
//! Poncelet chains, and the Morley trisector configuration in which those
//! chains close after three steps.
//!
//! Every predicate is generic over [`Scalar`]: use
//! [`num_rational::BigRational`] for exact verdicts, `f64` when square roots
//! or trigonometry are involved.

pub mod cevian;
pub mod conic;
pub mod error;
pub mod io;
pub mod linalg;
pub mod morley;
pub mod poncelet;
pub mod projective;
pub mod scalar;

pub use cevian::{
    build_config, check_conditions, cevians_through_point, evaluate_conditions, isogonal_feet,
    isotomic_feet, solve_concurrency_foot, solve_sixth_foot, to_chart, CevianFeet, CevianTriple,
    Conditions, FootSlot, PartialFeet, ProofChart, Side, Theorem1Config, Triangle,
};
pub use conic::{
    conconic, conconic_multiset, conic_tangent_to_lines, conic_through_points, cotangent,
    intersect_line, tangent_lines_from, Conic, ConconicVerdict, RankClass,
};
pub use error::{Error, Result};
pub use linalg::Roots;
pub use morley::{equilateral_spread, morley_config, morley_triangle, second_morley_center, MorleyData};
pub use poncelet::{
    point_on_conic, porism_check, porism_samples, poncelet_step, sample_on_conic, trace_chain, ChainResult,
    PonceletStep, PorismReport,
};
pub use projective::{
    collinear, concurrent, join, map_from_correspondence, meet, HLine, HPoint, ProjectiveMap,
    Transform, Verdict,
};
pub use scalar::{Scalar, Tolerance};

pub use num_rational::BigRational;
