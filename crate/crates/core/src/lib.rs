//! Schur multipliers, 2-nilpotent multipliers, epicenters and capability of
//! finite-dimensional nilpotent Lie algebras over the rationals.
//!
//! The pipeline is: build a Hall basis of a free nilpotent Lie algebra
//! ([`freelie`]), present a nilpotent algebra ([`fdlie`]) as a quotient of
//! it, and compute the multiplier quotients with exact linear algebra
//! ([`exactlin`], [`multiplier`]). [`verify`] bundles the published
//! dimension formulas into a reproducible pass/fail table.

pub mod exactlin;
pub mod fdlie;
pub mod freelie;
pub mod multiplier;
pub mod par;
pub mod structure;
pub mod verify;

pub use exactlin::{kernel, rref, LinAlgError, Matrix, Rational, Subspace};
pub use fdlie::{
    abelian, direct_sum, heisenberg, named, quotient, recognize_derived_dim_one, series,
    LieAlgebra, LieError, SeriesReport,
};
pub use freelie::{free_nilpotent, hall_basis, witt, FreeLieError, FreeNilpotentAlgebra, HallWord};
pub use multiplier::{
    bound_report, is_capable, is_two_capable, nilpotent_multiplier, present, subideal_bracket,
    z_star, Formula, MultiplierError, MultiplierOptions, MultiplierReport, Presentation,
};
pub use structure::StructureConstants;
