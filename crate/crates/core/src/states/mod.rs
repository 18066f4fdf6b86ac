//! Validated density matrices, weight matrices and bipartite states, plus the
//! qutrit/ququart embedding into a 2×2 composite system.

pub mod sample;

pub use sample::{
    haar_unitary, random_density, random_density_with_rng, random_diagonal_state,
    random_diagonal_state_with_rng, random_weight, random_weight_with_rng, rng_from_seed,
    simplex_point, DEFAULT_WEIGHT_RANGE,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, CMatrix, Subsystem};

/// Default validation tolerance for Hermiticity, spectra and traces.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Tolerance on `p1 + p2 + p3 = 1` for qutrit probability triples.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, VALIDATION_TOL)
    }

    pub fn with_tolerance(matrix: CMatrix, tol: f64) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: tol,
            });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::TraceNotUnit {
                trace,
                tolerance: tol,
            });
        }
        let min_eigenvalue = hermitian_eig(&matrix)?.min_eigenvalue();
        if min_eigenvalue < -tol {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_real_diagonal(probs))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Hermitian weight matrix.
///
/// Strict construction requires positive definiteness. The relaxed mode also
/// accepts singular positive semidefinite weights (such as the products that
/// appear at the edges of weight sweeps) and marks them as degenerate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightMatrix {
    matrix: CMatrix,
    degenerate: bool,
}

impl WeightMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, VALIDATION_TOL)
    }

    pub fn with_tolerance(matrix: CMatrix, tol: f64) -> Result<Self> {
        let min_eigenvalue = Self::min_eigenvalue_checked(&matrix, tol)?;
        if min_eigenvalue <= 0.0 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
        Ok(Self {
            matrix,
            degenerate: false,
        })
    }

    /// Accepts eigenvalues down to `-VALIDATION_TOL`; anything not strictly
    /// positive definite sets the degenerate flag.
    pub fn relaxed(matrix: CMatrix) -> Result<Self> {
        let min_eigenvalue = Self::min_eigenvalue_checked(&matrix, VALIDATION_TOL)?;
        if min_eigenvalue < -VALIDATION_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self {
            matrix,
            degenerate: min_eigenvalue <= 0.0,
        })
    }

    pub fn from_diagonal(weights: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_real_diagonal(weights))
    }

    pub fn relaxed_diagonal(weights: &[f64]) -> Result<Self> {
        Self::relaxed(CMatrix::from_real_diagonal(weights))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim),
            degenerate: false,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// True when the weight was accepted by [`WeightMatrix::relaxed`] without
    /// being positive definite.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    fn min_eigenvalue_checked(matrix: &CMatrix, tol: f64) -> Result<f64> {
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: tol,
            });
        }
        Ok(hermitian_eig(matrix)?.min_eigenvalue())
    }
}

/// `φ_A ⊗ φ_B`. Strict inputs give a strict (positive definite) product.
pub fn product_weight(wa: &WeightMatrix, wb: &WeightMatrix) -> Result<WeightMatrix> {
    let k = wa.matrix.kron(&wb.matrix);
    if wa.degenerate || wb.degenerate {
        WeightMatrix::relaxed(k)
    } else {
        WeightMatrix::new(k)
    }
}

/// Density matrix on a composite space of dimension `d_a · d_b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteState {
    rho: DensityMatrix,
    da: usize,
    db: usize,
}

impl BipartiteState {
    pub fn new(rho: DensityMatrix, da: usize, db: usize) -> Result<Self> {
        if da < 2 || db < 2 {
            return Err(Error::InvalidDimension(format!(
                "bipartite factors must both be at least 2, got {da}x{db}"
            )));
        }
        if rho.dim() != da * db {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                found: rho.dim(),
            });
        }
        Ok(Self { rho, da, db })
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product(ra: &DensityMatrix, rb: &DensityMatrix) -> Result<Self> {
        let rho = DensityMatrix::new(ra.matrix().kron(rb.matrix()))?;
        Self::new(rho, ra.dim(), rb.dim())
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn matrix(&self) -> &CMatrix {
        self.rho.matrix()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.da, self.db)
    }

    pub fn subsystem_dim(&self, which: Subsystem) -> usize {
        match which {
            Subsystem::A => self.da,
            Subsystem::B => self.db,
        }
    }

    /// Reduced density matrix of the kept factor.
    pub fn reduce(&self, keep: Subsystem) -> Result<DensityMatrix> {
        let m = self.matrix().partial_trace(self.da, self.db, keep)?;
        DensityMatrix::new(m)
    }
}

/// Free-function form of [`BipartiteState::reduce`].
pub fn reduce_state(s: &BipartiteState, keep: Subsystem) -> Result<DensityMatrix> {
    s.reduce(keep)
}

/// Diagonal qutrit state given by three probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QutritDiagonal {
    p1: f64,
    p2: f64,
    p3: f64,
}

impl QutritDiagonal {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        for (name, p) in [("p1", p1), ("p2", p2), ("p3", p3)] {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidSimplex(format!(
                    "{name} = {p} is not a probability"
                )));
            }
        }
        let total = p1 + p2 + p3;
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidSimplex(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { p1, p2, p3 })
    }

    /// Completes `(p1, p2)` with `p3 = 1 - p1 - p2`. Rounding residue down
    /// to `-SIMPLEX_TOL` is clamped to zero.
    pub fn from_pair(p1: f64, p2: f64) -> Result<Self> {
        let p3 = complement(p1, p2)?;
        Self::new(p1, p2, p3)
    }

    pub fn probabilities(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p3(&self) -> f64 {
        self.p3
    }
}

/// `1 - p1 - p2` for a point of the 2-simplex, clamping rounding residue.
pub(crate) fn complement(p1: f64, p2: f64) -> Result<f64> {
    if !(p1.is_finite() && p2.is_finite()) || p1 < 0.0 || p2 < 0.0 {
        return Err(Error::InvalidSimplex(format!(
            "({p1}, {p2}) has a negative or non-finite entry"
        )));
    }
    let p3 = 1.0 - p1 - p2;
    if p3 < -SIMPLEX_TOL {
        return Err(Error::InvalidSimplex(format!(
            "p1 + p2 = {} exceeds 1",
            p1 + p2
        )));
    }
    Ok(p3.max(0.0))
}

/// Places a qutrit in the 2×2 composite space as `diag(p1, p2, p3, 0)`.
pub fn embed_qutrit(q: &QutritDiagonal) -> BipartiteState {
    embed_ququart(q.p1, q.p2, q.p3, 0.0).expect("validated qutrit embeds")
}

/// Diagonal ququart `diag(p1, p2, p3, p4)` viewed as a 2×2 composite state.
pub fn embed_ququart(p1: f64, p2: f64, p3: f64, p4: f64) -> Result<BipartiteState> {
    let probs = [p1, p2, p3, p4];
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidSimplex(format!(
            "{probs:?} has a negative or non-finite entry"
        )));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > SIMPLEX_TOL {
        return Err(Error::InvalidSimplex(format!(
            "probabilities sum to {total}"
        )));
    }
    BipartiteState::new(DensityMatrix::from_diagonal(&probs)?, 2, 2)
}
