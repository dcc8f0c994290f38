//! A smooth, locally finitely composed norm on truncations of `c0` whose
//! dual sphere contains a segment.

mod agg;
mod audit;
mod bump;
mod dual;
mod level;
mod polyhedral;
mod schedule;

pub use agg::{exponent_for, SmoothAggNorm};
pub use audit::{
    difference_gradient, difference_step, gradient_audit, list_recursion_audit,
    polyhedral_sandwich_audit, property_ii_audit, property_iii_audit, smoothing_sandwich_audit,
    SampleAudit,
};
pub use bump::{bump_profile_closed, bump_profile_quadrature, BumpFunction};
pub use dual::{
    domination_sum, dual_functionals, dual_witness_report, witness_point, DominationAudit,
    DualWitnessReport, WitnessRow, DOMINATION_SAMPLES,
};
pub use level::{LevelComponents, LevelSetNorm};
pub use polyhedral::{functional_list, polyhedral_eval, PolyKind, PolyhedralNorm, DEPTH_CAP};
pub use schedule::{audit_schedule, build_schedule, AuditEntry, ParamSchedule, FAMILIES};
