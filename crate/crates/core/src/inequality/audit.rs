//! Seeded random audits of weighted subadditivity. The audit only records
//! findings; deciding whether a violation is a failure is left to the caller.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_subadditivity, qutrit_weight_condition, SubadditivityReport, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::states::{
    embed_qutrit, random_density_with_rng, random_weight_with_rng, rng_from_seed, simplex_point,
    BipartiteState, DensityMatrix, QutritDiagonal, WeightMatrix, DEFAULT_WEIGHT_RANGE,
};

/// How states and weights are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditRegime {
    /// Diagonal states with diagonal weights that satisfy the trace
    /// condition. For 2×2 the state is an embedded qutrit and the weights are
    /// resampled until `(φ1 - φ2)(χ2 - χ1) >= 0`.
    DiagonalConditionSatisfying,
    DiagonalUnconstrained,
    GeneralUnconstrained,
}

impl AuditRegime {
    pub const ALL: [AuditRegime; 3] = [
        AuditRegime::DiagonalConditionSatisfying,
        AuditRegime::DiagonalUnconstrained,
        AuditRegime::GeneralUnconstrained,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AuditRegime::DiagonalConditionSatisfying => "diagonal-condition-satisfying",
            AuditRegime::DiagonalUnconstrained => "diagonal-unconstrained",
            AuditRegime::GeneralUnconstrained => "general-unconstrained",
        }
    }
}

impl fmt::Display for AuditRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AuditRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown audit regime '{s}'")))
    }
}

/// A sample whose subadditivity check failed.
#[derive(Debug, Clone, Serialize)]
pub struct AuditRecord {
    pub index: u64,
    pub state: CMatrix,
    pub weight_a: CMatrix,
    pub weight_b: CMatrix,
    pub report: SubadditivityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSummary {
    pub seed: u64,
    pub regime: AuditRegime,
    pub dims: (usize, usize),
    pub tolerance: f64,
    pub samples: u64,
    pub min_gap: f64,
    pub min_gap_index: u64,
    /// Samples whose trace condition failed (always 0 in the
    /// condition-satisfying regime).
    pub condition_failures: u64,
    pub violations: Vec<AuditRecord>,
}

struct Sample {
    state: BipartiteState,
    weight_a: WeightMatrix,
    weight_b: WeightMatrix,
}

fn uniform_weights<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let (lo, hi) = DEFAULT_WEIGHT_RANGE;
    (0..len).map(|_| rng.random_range(lo..hi)).collect()
}

fn diagonal_sample<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> Result<Sample> {
    let state = BipartiteState::new(
        DensityMatrix::from_diagonal(&simplex_point(da * db, rng))?,
        da,
        db,
    )?;
    Ok(Sample {
        state,
        weight_a: WeightMatrix::from_diagonal(&uniform_weights(da, rng))?,
        weight_b: WeightMatrix::from_diagonal(&uniform_weights(db, rng))?,
    })
}

/// Classical trace condition for diagonal state and weights.
fn diagonal_condition_holds(s: &Sample) -> bool {
    let (da, db) = s.state.dims();
    let p = s.state.matrix().real_diagonal();
    let wa = s.weight_a.matrix().real_diagonal();
    let wb = s.weight_b.matrix().real_diagonal();
    let mut lhs = 0.0;
    let mut ea = 0.0;
    let mut eb = 0.0;
    for a in 0..da {
        for b in 0..db {
            let pab = p[a * db + b];
            lhs += wa[a] * wb[b] * pab;
            ea += wa[a] * pab;
            eb += wb[b] * pab;
        }
    }
    lhs >= ea * eb
}

fn draw_sample<R: Rng + ?Sized>(
    regime: AuditRegime,
    da: usize,
    db: usize,
    rng: &mut R,
) -> Result<Sample> {
    match regime {
        AuditRegime::DiagonalConditionSatisfying if (da, db) == (2, 2) => {
            let p = simplex_point(3, rng);
            let state = embed_qutrit(&QutritDiagonal::new(p[0], p[1], p[2])?);
            let (f, c) = loop {
                let f = uniform_weights(2, rng);
                let c = uniform_weights(2, rng);
                if qutrit_weight_condition(f[0], f[1], c[0], c[1]).holds {
                    break (f, c);
                }
            };
            Ok(Sample {
                state,
                weight_a: WeightMatrix::from_diagonal(&f)?,
                weight_b: WeightMatrix::from_diagonal(&c)?,
            })
        }
        AuditRegime::DiagonalConditionSatisfying => loop {
            let s = diagonal_sample(da, db, rng)?;
            if diagonal_condition_holds(&s) {
                break Ok(s);
            }
        },
        AuditRegime::DiagonalUnconstrained => diagonal_sample(da, db, rng),
        AuditRegime::GeneralUnconstrained => {
            let rho = random_density_with_rng(da * db, rng)?;
            Ok(Sample {
                state: BipartiteState::new(rho, da, db)?,
                weight_a: random_weight_with_rng(da, rng, DEFAULT_WEIGHT_RANGE)?,
                weight_b: random_weight_with_rng(db, rng, DEFAULT_WEIGHT_RANGE)?,
            })
        }
    }
}

struct Outcome {
    gap: f64,
    condition_holds: bool,
    violation: Option<AuditRecord>,
}

fn evaluate(
    index: u64,
    seed: u64,
    regime: AuditRegime,
    da: usize,
    db: usize,
    tolerance: f64,
) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed ^ index);
    let sample = draw_sample(regime, da, db, &mut rng)?;
    let report = check_subadditivity(&sample.weight_a, &sample.weight_b, &sample.state, tolerance)?;
    let violation = (!report.subadditivity_holds).then(|| AuditRecord {
        index,
        state: sample.state.matrix().clone(),
        weight_a: sample.weight_a.matrix().clone(),
        weight_b: sample.weight_b.matrix().clone(),
        report: report.clone(),
    });
    Ok(Outcome {
        gap: report.gap,
        condition_holds: report.condition_holds,
        violation,
    })
}

/// [`audit_random_with_tolerance`] at the default entropy tolerance.
pub fn audit_random(
    n: u64,
    da: usize,
    db: usize,
    seed: u64,
    regime: AuditRegime,
) -> Result<AuditSummary> {
    audit_random_with_tolerance(n, da, db, seed, regime, DEFAULT_TOLERANCE)
}

/// Draws `n` (state, weight) pairs and checks weighted subadditivity on
/// each. Sample `i` uses the stream seeded with `seed ^ i`, and results are
/// merged in index order, so the summary does not depend on scheduling.
pub fn audit_random_with_tolerance(
    n: u64,
    da: usize,
    db: usize,
    seed: u64,
    regime: AuditRegime,
    tolerance: f64,
) -> Result<AuditSummary> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "audit needs at least one sample".into(),
        ));
    }
    if da < 2 || db < 2 {
        return Err(Error::InvalidDimension(format!(
            "audit dimensions must both be at least 2, got {da}x{db}"
        )));
    }
    let outcomes: Vec<Outcome> = (0..n)
        .into_par_iter()
        .map(|i| evaluate(i, seed, regime, da, db, tolerance))
        .collect::<Result<_>>()?;

    let mut min_gap = f64::INFINITY;
    let mut min_gap_index = 0;
    let mut condition_failures = 0;
    let mut violations = Vec::new();
    for (i, o) in outcomes.into_iter().enumerate() {
        if o.gap < min_gap {
            min_gap = o.gap;
            min_gap_index = i as u64;
        }
        if !o.condition_holds {
            condition_failures += 1;
        }
        violations.extend(o.violation);
    }
    Ok(AuditSummary {
        seed,
        regime,
        dims: (da, db),
        tolerance,
        samples: n,
        min_gap,
        min_gap_index,
        condition_failures,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_summary() {
        let s = audit_random(1, 2, 2, 11, AuditRegime::GeneralUnconstrained).unwrap();
        assert_eq!(s.samples, 1);
        assert_eq!(s.min_gap_index, 0);
        assert!(s.min_gap.is_finite());
    }

    #[test]
    fn regime_names_round_trip() {
        for r in AuditRegime::ALL {
            assert_eq!(r.as_str().parse::<AuditRegime>().unwrap(), r);
        }
        assert!("bogus".parse::<AuditRegime>().is_err());
    }

    #[test]
    fn condition_regime_has_no_condition_failures() {
        for (da, db) in [(2, 2), (2, 3), (3, 3)] {
            let s = audit_random(300, da, db, 5, AuditRegime::DiagonalConditionSatisfying).unwrap();
            assert_eq!(s.condition_failures, 0);
            assert!(
                s.violations.is_empty(),
                "{da}x{db}: {:?}",
                s.violations.first().map(|v| v.report.gap)
            );
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = audit_random(50, 2, 2, 99, AuditRegime::DiagonalUnconstrained).unwrap();
        let b = audit_random(50, 2, 2, 99, AuditRegime::DiagonalUnconstrained).unwrap();
        assert_eq!(a.min_gap, b.min_gap);
        assert_eq!(a.min_gap_index, b.min_gap_index);
        assert_eq!(a.condition_failures, b.condition_failures);
        assert_eq!(a.violations.len(), b.violations.len());
    }

    #[test]
    fn rejects_empty_audit() {
        assert!(audit_random(0, 2, 2, 0, AuditRegime::DiagonalUnconstrained).is_err());
        assert!(audit_random(5, 1, 2, 0, AuditRegime::DiagonalUnconstrained).is_err());
    }
}
