//! Weighted quantum entropy toolkit.
//!
//! Computes the weighted entropy `S_φ(ρ) = -tr(φ ρ ln ρ)` of density
//! matrices, checks weighted subadditivity and its trace condition for
//! bipartite systems and for single qudits embedded in a 2×2 composite space,
//! and applies the nonlinear projective channel `ρ ↦ PρP / tr(PρP)`.
//!
//! Logarithms are natural throughout, so entropies are in nats.

pub mod channel;
pub mod entropy;
pub mod error;
pub mod inequality;
pub mod linalg;
pub mod states;

pub use channel::{apply_projective_channel, channel_then_check, reference_projector, Projector};
pub use entropy::{
    qutrit_mutual_information, qutrit_mutual_information_closed_form, reduced_weighted_state,
    subsystem_weighted_entropy, weighted_entropy, weighted_mutual_information,
};
pub use error::{Error, ErrorKind, Result};
pub use inequality::{
    audit_random, audit_random_with_tolerance, check_subadditivity, qutrit_condition_gap,
    qutrit_weight_condition, trace_condition, AuditRegime, AuditSummary, SubadditivityReport,
    TraceCondition,
};
pub use linalg::{CMatrix, Subsystem};
pub use states::{
    embed_ququart, embed_qutrit, product_weight, reduce_state, BipartiteState, DensityMatrix,
    QutritDiagonal, WeightMatrix,
};
