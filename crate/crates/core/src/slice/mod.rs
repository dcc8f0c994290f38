//! Rotund renormings built by flattening the Euclidean ball along slices.

mod alpha;
mod audit;
mod omega;

pub use alpha::{
    bhat_closed_form, bhat_gauge, project_alpha, slice_epsilon, slice_norm_eval,
    slice_norm_eval_by_gauge, slice_norm_oracle, AlphaTuple, SliceNormConstants,
};
pub use audit::{
    coincidence_point, flat_segment, lemma_audit, random_direction_probes, sandwich_audit,
    truncation_trend, witness_separation, LemmaReport, LemmaRow, SandwichReport, TrendPoint,
    TrendProbe,
};
pub use omega::{
    failure_report, kind_c_slice_report, make_model_omega, model_capacity, n_norm_eval,
    omega_norm_eval, omega_norm_exhaustive, omega_norm_oracle, witness_pair, FailureReport,
    FailureRow, OmegaConfig, SliceDiameterReport, TheoremKind,
};
