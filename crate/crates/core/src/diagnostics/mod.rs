//! Empirical checks of the operator inequalities, energy bounds and
//! convergence properties behind the Galerkin scheme.

pub mod cauchy;
pub mod decay;
pub mod energy;
pub mod ensemble;
pub mod identities;
pub mod report;
pub mod scheme;
pub mod stats;
pub mod uniqueness;

pub use cauchy::{cauchy_study, cauchy_verification, pair_difference, CauchyReport, ConvergencePair, PairDifference};
pub use decay::{
    decay_corpus, decay_report, operator_decay_study, predicted_alpha, uniform_bound_study, uniform_corpus,
    uniform_report, DecayPair, DecayStudy, UniformBoundStudy,
};
pub use energy::{energy_functional, gn_ratio, gn_report, gn_study, GnStudy};
pub use ensemble::{
    energy_uniformity_study, ensemble_expectation, ensemble_records, tail_study, EnergyUniformity, Functional,
    TailStudy,
};
pub use identities::{
    cancellation_check, cancellation_report, identity_checks, identity_report, CancellationCheck, IdentityCheck,
    IdentityParams,
};
pub use report::{write_series_csv, SeriesPoint, VerificationReport, Verdict};
pub use scheme::{ou_check, scheme_verification, strong_order_study, OuCheck, StrongOrderStudy};
pub use stats::{fit_slope, log_log_slope, Accumulator, EnsembleStats};
pub use uniqueness::{uniqueness_check, uniqueness_verification, Comparison, UniquenessReport};
