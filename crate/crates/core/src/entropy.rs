//! Weighted von Neumann entropy `S_φ(ρ) = -tr(φ ρ ln ρ)` and the
//! subsystem quantities built from it. All values are in nats.
//!
//! The reduced weight `ψ_X` is only ever used through the product
//! `ψ_X ρ_X = tr_other(φ_AB ρ_AB)`, so it is never formed on its own: that
//! would require inverting a possibly singular `ρ_X`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, xlogx_matrix, CMatrix, Subsystem, SUPPORT_EPS};
use crate::states::{
    self, product_weight, BipartiteState, DensityMatrix, QutritDiagonal, WeightMatrix,
};

/// Largest admissible imaginary part of a trace that is real in exact arithmetic.
pub const IMAGINARY_TOL: f64 = 1e-10;

/// Largest admissible weight of `tr_other(φ_AB ρ_AB)` on the kernel of `ρ_X`.
pub const OFF_SUPPORT_TOL: f64 = 1e-10;

fn real_trace(z: num_complex::Complex64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryTrace(z.im));
    }
    Ok(z.re)
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `S_φ(ρ) = -tr(φ ρ ln ρ)` with `0 ln 0 = 0`.
pub fn weighted_entropy(phi: &WeightMatrix, rho: &DensityMatrix) -> Result<f64> {
    check_dims(phi.dim(), rho.dim())?;
    let xlogx = xlogx_matrix(rho.matrix())?;
    Ok(-real_trace(phi.matrix().trace_product(&xlogx)?)?)
}

/// `ψ_X ρ_X = tr_other(φ_AB ρ_AB)` as a single matrix on the kept factor.
pub fn reduced_weighted_state(
    phi_ab: &WeightMatrix,
    s: &BipartiteState,
    keep: Subsystem,
) -> Result<CMatrix> {
    check_dims(s.matrix().dim(), phi_ab.dim())?;
    let (da, db) = s.dims();
    phi_ab
        .matrix()
        .matmul(s.matrix())?
        .partial_trace(da, db, keep)
}

/// `S_ψX(ρ_X) = -tr(ψ_X ρ_X ln ρ_X)` with the logarithm set to zero on the
/// kernel of `ρ_X`.
///
/// When `φ_AB` and `ρ_AB` do not commute, `tr_other(φ_AB ρ_AB)` is not
/// Hermitian and the trace can pick up an imaginary part. The real part is
/// returned, which is the same as using the Hermitian part
/// `tr_other(φ_AB ρ_AB + ρ_AB φ_AB) / 2`.
pub fn subsystem_weighted_entropy(
    phi_ab: &WeightMatrix,
    s: &BipartiteState,
    keep: Subsystem,
) -> Result<f64> {
    let weighted = reduced_weighted_state(phi_ab, s, keep)?;
    let reduced = s.reduce(keep)?;
    let spec = hermitian_eig(reduced.matrix())?;
    let log = spec.map_nonnegative(f64::ln)?;

    let n = spec.eigenvalues().len();
    let mut residual = 0.0f64;
    for (k, &l) in spec.eigenvalues().iter().enumerate() {
        if l > SUPPORT_EPS {
            continue;
        }
        let u = spec.eigenvector(k);
        let mut mass = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                mass += u[i].conj() * weighted[(i, j)] * u[j];
            }
        }
        residual = residual.max(mass.norm());
    }
    if residual > OFF_SUPPORT_TOL {
        return Err(Error::OffSupportResidual(residual));
    }

    Ok(-weighted.trace_product(&log)?.re)
}

/// `I = S_ψA(ρ_A) + S_ψB(ρ_B) - S_φAB(ρ_AB)` with `φ_AB = φ_A ⊗ φ_B`.
pub fn weighted_mutual_information(
    phi_a: &WeightMatrix,
    phi_b: &WeightMatrix,
    s: &BipartiteState,
) -> Result<f64> {
    let (da, db) = s.dims();
    check_dims(da, phi_a.dim())?;
    check_dims(db, phi_b.dim())?;
    let phi_ab = product_weight(phi_a, phi_b)?;
    let s_a = subsystem_weighted_entropy(&phi_ab, s, Subsystem::A)?;
    let s_b = subsystem_weighted_entropy(&phi_ab, s, Subsystem::B)?;
    let s_ab = weighted_entropy(&phi_ab, s.rho())?;
    Ok(s_a + s_b - s_ab)
}

/// Closed-form weighted mutual information of the embedded diagonal qutrit
/// `diag(p1, p2, p3, 0)` with diagonal weights `diag(φ1, φ2) ⊗ diag(χ1, χ2)`:
///
/// `I = -(φ1 χ1 p1 ln[(p1+p2)(p1+p3)/p1] + φ1 χ2 p2 ln(p1+p2) + φ2 χ1 p3 ln(p1+p3))`
///
/// where `p3 = 1 - p1 - p2`. A term whose probability factor is zero
/// contributes zero.
pub fn qutrit_mutual_information_closed_form(
    p1: f64,
    p2: f64,
    phi1: f64,
    phi2: f64,
    chi1: f64,
    chi2: f64,
) -> Result<f64> {
    let p3 = states::complement(p1, p2)?;
    let term = |coeff: f64, arg: f64| if coeff > 0.0 { coeff * arg.ln() } else { 0.0 };
    let sum = phi1 * chi1 * term(p1, (p1 + p2) * (p1 + p3) / p1)
        + phi1 * chi2 * term(p2, p1 + p2)
        + phi2 * chi1 * term(p3, p1 + p3);
    Ok(-sum)
}

/// Same as [`qutrit_mutual_information_closed_form`] for a validated triple.
pub fn qutrit_mutual_information(q: &QutritDiagonal, phi: (f64, f64), chi: (f64, f64)) -> f64 {
    qutrit_mutual_information_closed_form(q.p1(), q.p2(), phi.0, phi.1, chi.0, chi.1)
        .expect("validated qutrit lies on the simplex")
}
