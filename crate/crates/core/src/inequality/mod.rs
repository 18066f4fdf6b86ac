//! Weighted subadditivity `S_φAB(ρ_AB) <= S_ψA(ρ_A) + S_ψB(ρ_B)` and the
//! trace condition `tr(φ_AB ρ_AB) >= tr(φ_A ρ_A) tr(φ_B ρ_B)` that guarantees it.

mod audit;

pub use audit::{
    audit_random, audit_random_with_tolerance, AuditRecord, AuditRegime, AuditSummary,
};

use serde::Serialize;

use crate::entropy::{subsystem_weighted_entropy, weighted_entropy};
use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::states::{self, product_weight, BipartiteState, WeightMatrix};

/// Slack on the trace condition when evaluated on its own.
pub const TRACE_CONDITION_SLACK: f64 = 1e-12;

/// Default tolerance for entropy gaps.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Both sides of the trace condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceCondition {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl TraceCondition {
    pub fn gap(&self) -> f64 {
        self.lhs - self.rhs
    }
}

fn check_weight_dims(phi_a: &WeightMatrix, phi_b: &WeightMatrix, s: &BipartiteState) -> Result<()> {
    let (da, db) = s.dims();
    if phi_a.dim() != da {
        return Err(Error::DimensionMismatch {
            expected: da,
            found: phi_a.dim(),
        });
    }
    if phi_b.dim() != db {
        return Err(Error::DimensionMismatch {
            expected: db,
            found: phi_b.dim(),
        });
    }
    Ok(())
}

/// `lhs = tr((φ_A ⊗ φ_B) ρ_AB)`, `rhs = tr(φ_A ρ_A) · tr(φ_B ρ_B)`.
pub fn trace_condition(
    phi_a: &WeightMatrix,
    phi_b: &WeightMatrix,
    s: &BipartiteState,
) -> Result<TraceCondition> {
    check_weight_dims(phi_a, phi_b, s)?;
    let phi_ab = phi_a.matrix().kron(phi_b.matrix());
    let lhs = phi_ab.trace_product(s.matrix())?.re;
    let ra = s.reduce(Subsystem::A)?;
    let rb = s.reduce(Subsystem::B)?;
    let rhs = phi_a.matrix().trace_product(ra.matrix())?.re
        * phi_b.matrix().trace_product(rb.matrix())?.re;
    Ok(TraceCondition {
        lhs,
        rhs,
        holds: lhs >= rhs - TRACE_CONDITION_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightCondition {
    pub value: f64,
    pub holds: bool,
}

/// `(φ1 - φ2)(χ2 - χ1) >= 0`: the trace condition for diagonal qutrit weights.
pub fn qutrit_weight_condition(phi1: f64, phi2: f64, chi1: f64, chi2: f64) -> WeightCondition {
    let value = (phi1 - phi2) * (chi2 - chi1);
    WeightCondition {
        value,
        holds: value >= 0.0,
    }
}

/// `p2 (1 - p1 - p2)(φ1 - φ2)(χ2 - χ1)`, which equals the trace-condition
/// gap `lhs - rhs` of the embedded diagonal qutrit.
pub fn qutrit_condition_gap(
    p1: f64,
    p2: f64,
    phi1: f64,
    phi2: f64,
    chi1: f64,
    chi2: f64,
) -> Result<f64> {
    let p3 = states::complement(p1, p2)?;
    Ok(p2 * p3 * qutrit_weight_condition(phi1, phi2, chi1, chi2).value)
}

/// Every scalar that enters the subadditivity inequality and its trace
/// condition, together with the verdicts at `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubadditivityReport {
    pub s_ab: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub gap: f64,
    pub condition_lhs: f64,
    pub condition_rhs: f64,
    pub condition_gap: f64,
    pub condition_holds: bool,
    pub subadditivity_holds: bool,
    pub tolerance: f64,
}

impl SubadditivityReport {
    fn from_parts(
        s_ab: f64,
        s_a: f64,
        s_b: f64,
        condition: TraceCondition,
        tolerance: f64,
    ) -> Self {
        let gap = s_a + s_b - s_ab;
        let condition_gap = condition.gap();
        Self {
            s_ab,
            s_a,
            s_b,
            gap,
            condition_lhs: condition.lhs,
            condition_rhs: condition.rhs,
            condition_gap,
            condition_holds: condition_gap >= -tolerance,
            subadditivity_holds: gap >= -tolerance,
            tolerance,
        }
    }
}

/// Evaluates both sides of the weighted subadditivity inequality with
/// `φ_AB = φ_A ⊗ φ_B` and reduced weights on the subsystems.
pub fn check_subadditivity(
    phi_a: &WeightMatrix,
    phi_b: &WeightMatrix,
    s: &BipartiteState,
    tolerance: f64,
) -> Result<SubadditivityReport> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    check_weight_dims(phi_a, phi_b, s)?;
    let phi_ab = product_weight(phi_a, phi_b)?;
    let s_ab = weighted_entropy(&phi_ab, s.rho())?;
    let s_a = subsystem_weighted_entropy(&phi_ab, s, Subsystem::A)?;
    let s_b = subsystem_weighted_entropy(&phi_ab, s, Subsystem::B)?;
    let condition = trace_condition(phi_a, phi_b, s)?;
    Ok(SubadditivityReport::from_parts(
        s_ab, s_a, s_b, condition, tolerance,
    ))
}
