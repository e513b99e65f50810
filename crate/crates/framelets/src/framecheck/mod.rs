//! Numerical validation of the distribution-space duality.
//!
//! Submodules: [`testfn`] (bump test functions), [`quad`] (trapezoid
//! refinement), [`pairing`] (pairings and the bracket identity),
//! [`system`] (partial sums and duality convergence), [`charact`]
//! (characterization residual grids).

pub mod charact;
pub mod pairing;
pub mod quad;
pub mod system;
pub mod testfn;

pub use charact::{
    check_characterization, check_characterization_real, check_nonstationary,
    CharacterizationReport, GridSpec, NonstatReport, ProbeVerdict, RealDilation,
};
pub use pairing::{
    bracket_integral, bracket_series, check_bracket_identity, pairing, BracketReport,
    BracketValue, CheckOpts, FreqFn, Paired,
};
pub use quad::{adaptive_trapezoid, QuadResult};
pub use system::{
    check_duality, layer_bracket, partial_sum, ConvRow, DualityReport, GeneratorPair, System,
    SystemKind,
};
pub use testfn::TestFn;
