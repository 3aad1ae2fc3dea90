//! Linear codes over the four-element non-unital ring E built from
//! simplicial complexes, their Lee weight distributions, and the binary
//! codes obtained through the Gray map.
//!
//! ```
//! use ringcode_core::{analyze, ConstructionType, DefiningSetSpec, Limits, Side};
//!
//! let spec = DefiningSetSpec::from_coords(5, ConstructionType::T1, &[1, 2, 3], &[2, 3, 4], Side::Left)?;
//! let report = analyze(&spec, &Limits::default())?;
//! assert_eq!(report.enumerator, "X^128 + 14X^96Y^32 + 49X^64Y^64");
//! assert_eq!((report.gray.n, report.gray.k, report.gray.d), (128, 6, Some(32)));
//! # Ok::<(), ringcode_core::Error>(())
//! ```

pub mod analysis;
pub mod binary;
pub mod boolean;
pub mod construction;
pub mod distribution;
pub mod error;
pub mod ring;
pub mod sweep;
pub mod tables;

pub use analysis::{
    analyze, ashikhmin_barg, equidistant_check, expected_gray_params, gray_image, griesmer_check,
    griesmer_sum, lee_distribution, right_verdicts, AnalysisReport, CodeReport, Equidistance,
    ExpectedParams, GriesmerCheck, ParamsCheck, RightVerdicts, ThetaVerdict, DATABASE_OPTIMALITY,
};
pub use binary::{BinaryCode, Word};
pub use boolean::{
    chi, chi_simplex_fast, count_psi, count_psi_joint, count_psi_pair, parse_subset, psi,
    subset_from_coords, BinaryVector, JointCase, SimplexRegion, SimplicialComplex, MAX_M,
};
pub use construction::{
    kernel_size, lee_weight_formula, materialize, CodeOverE, ConstructionType, DefiningSetSpec,
    Limits, OrderedDefiningSet, Side, SpecDocument, SubsetDocument, MAX_M_ENV,
};
pub use distribution::{
    distribution_bruteforce, distribution_closed_form, distribution_formula, lee_enumerator,
    Basis, Enumerator, EnumeratorTerm, LeeDistribution,
};
pub use error::{Error, Result};
pub use ring::{RingElement, RingVector};
pub use sweep::{
    run_sweep, run_sweep_with, Check, CheckCounter, Mismatch, SubsetFilter, SweepConfig, SweepSummary,
};
