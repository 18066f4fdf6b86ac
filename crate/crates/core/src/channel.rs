//! Nonlinear projective channel `ρ ↦ PρP / tr(PρP)`.

use crate::error::{Error, Result};
use crate::inequality::{check_subadditivity, SubadditivityReport};
use crate::linalg::{hermitian_eig, CMatrix};
use crate::states::{BipartiteState, DensityMatrix, WeightMatrix};

const PROJECTOR_TOL: f64 = 1e-10;

/// Below this `tr(PρP)` the channel is undefined on `ρ`.
pub const OVERLAP_THRESHOLD: f64 = 1e-12;

/// Hermitian idempotent matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: CMatrix,
    rank: usize,
}

impl Projector {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > PROJECTOR_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: PROJECTOR_TOL,
            });
        }
        let idem = (&matrix * &matrix).max_abs_diff(&matrix)?;
        if idem > PROJECTOR_TOL {
            return Err(Error::NotProjector(format!("|P^2 - P|_max = {idem:e}")));
        }
        let rank = hermitian_eig(&matrix)?
            .eigenvalues()
            .iter()
            .filter(|&&l| (l - 1.0).abs() <= PROJECTOR_TOL)
            .count();
        Ok(Self { matrix, rank })
    }

    /// Diagonal projector keeping the basis states flagged `true`.
    pub fn diagonal(keep: &[bool]) -> Self {
        let diag: Vec<f64> = keep.iter().map(|&k| if k { 1.0 } else { 0.0 }).collect();
        let rank = keep.iter().filter(|&&k| k).count();
        Self {
            matrix: CMatrix::from_real_diagonal(&diag),
            rank,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![true; dim])
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Rank-2 projector `diag(1, 0, 1, 0) = I_2 ⊗ |0⟩⟨0|` on the 2×2 composite
/// space. On an embedded qutrit it removes the second level and renormalizes
/// the remaining two.
pub fn reference_projector() -> Projector {
    Projector::diagonal(&[true, false, true, false])
}

/// `PρP / tr(PρP)`.
pub fn apply_projective_channel(p: &Projector, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if p.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: p.dim(),
        });
    }
    let prp = &(p.matrix() * rho.matrix()) * p.matrix();
    let overlap = prp.trace().re;
    if overlap <= OVERLAP_THRESHOLD {
        return Err(Error::VanishingOverlap(overlap));
    }
    DensityMatrix::new(prp.scale_real(1.0 / overlap))
}

/// Applies the channel and re-runs the subadditivity check with the same weights.
pub fn channel_then_check(
    p: &Projector,
    phi_a: &WeightMatrix,
    phi_b: &WeightMatrix,
    s: &BipartiteState,
    tolerance: f64,
) -> Result<(DensityMatrix, SubadditivityReport)> {
    let out = apply_projective_channel(p, s.rho())?;
    let (da, db) = s.dims();
    let transformed = BipartiteState::new(out.clone(), da, db)?;
    let report = check_subadditivity(phi_a, phi_b, &transformed, tolerance)?;
    Ok((out, report))
}
