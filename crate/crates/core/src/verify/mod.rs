//! Empirical verification harness: exponent admissibility, reproducible
//! input ensembles, ratio experiments and their reports.

mod ensemble;
mod experiments;
mod exponents;
mod report;

pub use ensemble::{Ensemble, EnsembleKind, GaborAtom};
pub use experiments::{
    default_windows, lemma31_ratio, lemma32_ratio, lemma_experiment, theorem_ratio, theorem_ratio_experiment,
    EnsembleConfig, ExperimentConfig, Lemma, Ratio, WeightsConfig, CONFIG_SCHEMA, DEFAULT_SEED,
};
pub use exponents::{check_exponents, Admissibility, ExponentTuple};
pub use report::{emit_report, GridSummary, RatioReport, ReportFormat, Stability, Trial, REPORT_SCHEMA};
