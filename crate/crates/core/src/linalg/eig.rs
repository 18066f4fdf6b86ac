use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Eigenvalues at or below this are treated as exact zeros by matrix functions.
pub const SUPPORT_EPS: f64 = 1e-12;

/// Eigenvalues below `-NEGATIVE_EIGEN_TOL` make a matrix function argument invalid.
pub(crate) const NEGATIVE_EIGEN_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-10;
const CONVERGENCE_RATIO: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// `M = U diag(λ) U†` with ascending eigenvalues and unitary `U` whose
/// columns are the eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    vectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix of column eigenvectors.
    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `U diag(f(λ)) U†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.assemble(&values)
    }

    /// Applies `f` on the support and zero on the kernel. Fails if some
    /// eigenvalue lies below the negative noise floor.
    pub fn map_nonnegative(&self, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
        if self.min_eigenvalue() < -NEGATIVE_EIGEN_TOL {
            return Err(Error::NegativeEigenvalue(self.min_eigenvalue()));
        }
        Ok(self.map(|l| if l > SUPPORT_EPS { f(l) } else { 0.0 }))
    }

    /// Rebuilds the decomposed matrix.
    pub fn reconstruct(&self) -> CMatrix {
        self.assemble(&self.eigenvalues)
    }

    /// Orthogonal projector onto the span of eigenvectors with eigenvalue at
    /// most `SUPPORT_EPS`.
    pub fn kernel_projector(&self) -> CMatrix {
        self.map(|l| if l > SUPPORT_EPS { 0.0 } else { 1.0 })
    }

    fn assemble(&self, values: &[f64]) -> CMatrix {
        let u = &self.vectors;
        let n = u.dim();
        CMatrix::from_fn(n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &v) in values.iter().enumerate() {
                if v != 0.0 {
                    acc += u[(i, k)] * u[(j, k)].conj() * v;
                }
            }
            acc
        })
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each eigenvector is phase-fixed so that its largest-magnitude component is
/// real and positive, which makes the output deterministic.
pub fn hermitian_eig(m: &CMatrix) -> Result<SpectralDecomposition> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: HERMITIAN_TOL,
        });
    }
    let n = m.dim();
    // Work on the exactly Hermitian part.
    let mut a = CMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = CMatrix::identity(n);

    let target = CONVERGENCE_RATIO * a.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    fix_phases(&mut vectors);

    Ok(SpectralDecomposition {
        eigenvalues,
        vectors,
    })
}

/// Annihilates `a[p][q]` with `a ← J† a J`, `v ← v J`, where
/// `J = diag(1, e^{-iθ}) · R(c, s)` on the `(p, q)` plane and
/// `a[p][q] = r e^{iθ}`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.dim();
    let e_minus = phase.conj();
    // Columns: a ← a J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * e_minus * s;
        a[(k, q)] = akp * s + akq * e_minus * c;
    }
    // Rows: a ← J† a
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * e_minus * s;
        v[(k, q)] = vkp * s + vkq * e_minus * c;
    }
}

fn fix_phases(u: &mut CMatrix) {
    let n = u.dim();
    for k in 0..n {
        let mut best = 0;
        let mut best_norm = -1.0;
        for i in 0..n {
            let m = u[(i, k)].norm();
            if m > best_norm {
                best_norm = m;
                best = i;
            }
        }
        let z = u[(best, k)];
        let rot = z.conj() / z.norm();
        for i in 0..n {
            u[(i, k)] *= rot;
        }
        u[(best, k)] = Complex64::new(u[(best, k)].norm(), 0.0);
    }
}
