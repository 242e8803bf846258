//! Exact construction and analysis of linear reversible maps `F = phi1∘phi2`
//! arising from pairs of linear involutions: reversor sequences, chains of
//! fixed-point subspaces, periodicity certificates, normal-form
//! classification with conjugacy witnesses, and the linear spaces of
//! symmetries and reversing symmetries. Everything runs over `Q(sqrt(d))`
//! with no floating point anywhere in the analysis path.

pub mod classify;
pub mod dynamics;
pub mod error;
pub mod matrix;
pub mod revcore;
pub mod scalar;
pub mod subspace;
pub mod sylvester;
pub mod symgroups;

pub use classify::{
    classify, classify_general, classify_planar, find_conjugacy, normal_form, suspension_split,
    CaseTag, ClassificationResult, EigenFrame,
};
pub use dynamics::{
    limit_directions, orbit, periodic_certificates, reversed_orbit_check, rotation_order,
    sector_interchange, sector_map, Flavor, InterchangeReport, LimitReport, Location,
    PeriodCertificate, SectorArrangement, SectorMapResult,
};
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use revcore::{
    antipodal_subspace, compose_f, fixed_subspace, is_involution, is_reversible, is_symmetry,
    order_of, verify_chain, ChainLink, ChainReport, Family, InvolutionPair, LinkRelation,
    ReversorRef,
};
pub use scalar::Scalar;
pub use subspace::SubspaceBasis;
pub use symgroups::{coset_check, membership, reversing_space, symmetry_space, MatrixSpace, Membership};
