//! Dense complex square matrices and the handful of operations the entropy
//! code needs: products, Kronecker products, partial traces and Hermitian
//! spectral decomposition.
//!
//! Composite indices follow the convention `i = a * d_b + b`, i.e. subsystem
//! A is the slow index. With this ordering
//! `diag(f1, f2) ⊗ diag(c1, c2) = diag(f1 c1, f1 c2, f2 c1, f2 c2)`.

mod eig;

pub use eig::{hermitian_eig, SpectralDecomposition, SUPPORT_EPS};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which factor of a bipartite system to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Dense `dim × dim` complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from separate real and imaginary row-major parts.
    pub fn from_parts(dim: usize, re: &[f64], im: Option<&[f64]>) -> Result<Self> {
        if re.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: re.len(),
            });
        }
        let data = match im {
            Some(im) => {
                if im.len() != dim * dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim * dim,
                        found: im.len(),
                    });
                }
                re.iter()
                    .zip(im)
                    .map(|(&r, &i)| Complex64::new(r, i))
                    .collect()
            }
            None => re.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        };
        Self::new(dim, data)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_real_diagonal(&vec![1.0; dim])
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// Real parts of the diagonal.
    pub fn real_diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> Result<Complex64> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        Ok(acc)
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest elementwise deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Hermitian and every eigenvalue at least `-tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match hermitian_eig(self) {
            Ok(spec) => spec.min_eigenvalue() >= -tol,
            Err(_) => false,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> Self {
        let (da, db) = (self.dim, other.dim);
        Self::from_fn(da * db, |r, c| {
            self[(r / db, c / db)] * other[(r % db, c % db)]
        })
    }

    /// Partial trace over the factor not selected by `keep`.
    pub fn partial_trace(&self, da: usize, db: usize, keep: Subsystem) -> Result<Self> {
        if da == 0 || db == 0 {
            return Err(Error::InvalidDimension(format!(
                "subsystem dimensions {da}x{db}"
            )));
        }
        if self.dim != da * db {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                found: self.dim,
            });
        }
        let out = match keep {
            Subsystem::A => Self::from_fn(da, |a1, a2| {
                (0..db).map(|b| self[(a1 * db + b, a2 * db + b)]).sum()
            }),
            Subsystem::B => Self::from_fn(db, |b1, b2| {
                (0..da).map(|a| self[(a * db + b1, a * db + b2)]).sum()
            }),
        };
        Ok(out)
    }

    fn check_same_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

// Operator forms panic on mismatched dimensions; use `matmul` for a fallible product.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
            .expect("matrix product of mismatched dimensions")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum of mismatched dimensions");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            self.dim, rhs.dim,
            "matrix difference of mismatched dimensions"
        );
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Serialized as `{"dim": n, "re": [[..]], "im": [[..]]}`.
impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |part: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..self.dim)
                .map(|i| (0..self.dim).map(|j| part(&self[(i, j)])).collect())
                .collect()
        };
        let mut st = serializer.serialize_struct("CMatrix", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("re", &rows(|z| z.re))?;
        st.serialize_field("im", &rows(|z| z.im))?;
        st.end()
    }
}

/// Free-function form of [`CMatrix::kron`].
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

/// Free-function form of [`CMatrix::partial_trace`].
pub fn partial_trace(m: &CMatrix, da: usize, db: usize, keep: Subsystem) -> Result<CMatrix> {
    m.partial_trace(da, db, keep)
}

/// Spectral `ρ ln ρ` of a Hermitian positive semidefinite matrix, with
/// `0 ln 0 = 0` for eigenvalues at or below [`SUPPORT_EPS`].
pub fn xlogx_matrix(rho: &CMatrix) -> Result<CMatrix> {
    hermitian_eig(rho)?.map_nonnegative(|x| x * x.ln())
}

/// Spectral logarithm restricted to the support: `ln λ` on eigenvalues above
/// [`SUPPORT_EPS`], zero on the (numerical) kernel.
pub fn log_on_support(rho: &CMatrix) -> Result<CMatrix> {
    hermitian_eig(rho)?.map_nonnegative(f64::ln)
}
