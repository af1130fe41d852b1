//! Analysis of binary sequences with period `2^n`: linear complexity,
//! k-error linear complexity and its critical points, cube decompositions,
//! and exact counts of cube-structured sequences.
//!
//! ```
//! use seqcube_core::{games_chan_lc, standard_decompose, Format, PeriodicSequence};
//!
//! let s = PeriodicSequence::parse("0,1,3,4,7,8", Format::Positions, Some(4)).unwrap();
//! assert_eq!(games_chan_lc(&s).value(), 15);
//! let d = standard_decompose(&s);
//! assert_eq!(d.cubes().len(), 3);
//! ```

pub mod bitseq;
pub mod census;
pub mod cube;
pub mod enumerate;
pub mod error;
pub mod error_complexity;
pub mod linear_complexity;

pub use bitseq::{Format, PeriodicSequence, SupportSet, MAX_EXPONENT};
pub use census::{
    count_cubes, count_sequences, count_three_cube_sequences, count_two_cube_sequences, example35_count,
    example35_spec, observed_count_by_enumeration, quad_lc_audit, verify_count_by_enumeration, BigCount,
    CountCheck, CountingSpec, QuadAudit, QuadCase,
};
pub use cube::{
    construct_cube, cube_lc, element_distance, has_unique_decomposition_hint, inter_cube_distance,
    longest_edge_in_smallest_cube, materialize, recognize_cube, standard_decompose, Cube, CubeDecomposition,
};
pub use error::{Error, Result};
pub use error_complexity::{
    celcs, classify_sequence, conjecture_scan, is_stable_klc, klc_exhaustive, klc_profile, kmin_first_decrease,
    max_klc, predict_critical_ks, CriticalPoint, CubeSummary, KlcProfile, ScanFilter, ScanOptions, ScanOutcome,
    ScanReport, ScanWitness, SearchBudget, Spectrum,
};
pub use linear_complexity::{
    games_chan_lc, lc_by_factor_multiplicity, pair_lc, quad_lc_predictor, valuation, LinearComplexity,
};
