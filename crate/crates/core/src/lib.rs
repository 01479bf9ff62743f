//! Exact Newton numbers of Newton polyhedra and certified lower bounds for
//! Milnor numbers of isolated hypersurface and similar complete intersection
//! singularities.
//!
//! Everything is computed over the rationals; no floating point value ever
//! enters a volume, a Newton number or a bound.
//!
//! The usual pipeline is
//!
//! ```
//! use newton_mu::rational::int;
//! use newton_mu::{gamma_minus, newton_number, SupportSet};
//!
//! let support = SupportSet::from_exponents(&["x", "y"], &[&[3, 0], &[0, 2]]).unwrap();
//! let region = gamma_minus(&support).unwrap();
//! let report = newton_number(&region).unwrap();
//! assert_eq!(report.total, int(2));
//! ```

pub mod bounds;
pub mod combinatorics;
pub mod decompose;
pub mod diagram;
pub mod family;
pub mod geometry;
pub mod higher;
pub mod hull;
pub mod json;
pub mod limits;
pub mod linalg;
pub mod newton;
pub mod oracles;
pub mod parse;
pub mod rational;
pub mod region;
pub mod subset;
pub mod support;

mod error;

pub use bounds::{
    bound_simplex, milnor_lower_bound, vanishing_check, BoundCertificate, ChainStep, StepStatus,
    VanishingVerdict,
};
pub use combinatorics::{elementary_symmetric, f_coeff, g_coeff};
pub use decompose::{decompose_difference, DecompositionPiece};
pub use diagram::{newton_diagram, CompactFacet, NewtonDiagram};
pub use error::{Error, Result};
pub use family::{family_difference, negligible_truncation_check, FamilyStep, TruncationVerdict};
pub use geometry::{simplex_volume, Point, Simplex, VolumeResult};
pub use higher::{
    r_bound, r_newton_factored, r_newton_number, sciv_milnor_bound, DegreeTuple, RNewtonReport,
};
pub use linalg::determinant;
pub use newton::{
    full_supporting_subsets, minimal_full_supporting, newton_number, newton_number_factored,
    NewtonReport,
};
pub use parse::{parse_polynomial, ParsedPolynomial};
pub use rational::Rational;
pub use region::{
    gamma_minus, is_quasi_convenient, project, restrict_region, NewtonRegion, QuasiConvenience,
};
pub use subset::CoordinateSubset;
pub use support::{
    is_convenient, restrict_support, simplex_below_diagram, standard_modification, SupportSet,
};
