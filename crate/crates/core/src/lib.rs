//! Depth-graded orbit counting for the Weyl vector of affine Kac-Moody
//! algebras, with eta-quotient and product formulas to compare against.
//!
//! ```
//! use affine_poincare::{AffineAlgebra, orbit, qseries, HveeInterp};
//!
//! let e6 = AffineAlgebra::parse("E6~1").unwrap();
//! let census = orbit::count_via_permutation_weights(&e6, 5).unwrap().census;
//! assert_eq!(census.c, vec![1, 1, 1, 1, 2, 3]);
//!
//! let eta = qseries::eta_quotient_series(&e6.eta_entry(HveeInterp::Affine).unwrap(), 5).unwrap();
//! assert_eq!(eta, orbit::census_to_series(&census));
//! ```

pub mod algebra;
pub mod error;
mod linalg;
pub mod orbit;
pub mod output;
pub mod qseries;
pub mod verify;
pub mod weight;

pub use algebra::{AffineAlgebra, AlgebraId, EtaQuotientSpec, Family, FiniteType, HveeInterp};
pub use error::{Error, Result};
pub use orbit::{DepthCensus, PermutationWeightRecord};
pub use qseries::{BottConvention, ProductConvention, QSeries};
pub use verify::{VerificationReport, VerifyOptions};
pub use weight::{AffineWeight, FiniteWeight};
