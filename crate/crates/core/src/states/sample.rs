//! Seeded samplers for audits and property tests. Every stream is a pure
//! function of its seed (ChaCha8).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::{DensityMatrix, WeightMatrix};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Spectrum range used by [`random_weight`] when none is given.
pub const DEFAULT_WEIGHT_RANGE: (f64, f64) = (0.05, 2.0);

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidDimension(format!(
            "sampler dimension must be at least 2, got {dim}"
        )));
    }
    Ok(())
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniform point on the probability simplex of the given length, by
/// normalized exponential spacings.
pub fn simplex_point<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|e| e / total).collect()
}

/// Haar-random unitary from Gram-Schmidt on a complex Gaussian matrix.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect();
    for k in 0..dim {
        for j in 0..k {
            let (done, rest) = cols.split_at_mut(k);
            let q = &done[j];
            let proj: Complex64 = q
                .iter()
                .zip(rest[0].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            for (x, qi) in rest[0].iter_mut().zip(q) {
                *x -= proj * qi;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    CMatrix::from_fn(dim, |i, j| cols[j][i])
}

pub fn random_diagonal_state_with_rng<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    check_dim(dim)?;
    DensityMatrix::from_diagonal(&simplex_point(dim, rng))
}

/// Diagonal state drawn uniformly from the probability simplex.
pub fn random_diagonal_state(dim: usize, seed: u64) -> Result<DensityMatrix> {
    random_diagonal_state_with_rng(dim, &mut rng_from_seed(seed))
}

pub fn random_density_with_rng<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(dim)?;
    let g = CMatrix::from_fn(dim, |_, _| complex_gaussian(rng));
    let gram = &g * &g.adjoint();
    let tr = gram.trace().re;
    DensityMatrix::new(gram.scale_real(1.0 / tr))
}

/// `G G† / tr(G G†)` for a complex Gaussian `G`.
pub fn random_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with_rng(dim, &mut rng_from_seed(seed))
}

pub fn random_weight_with_rng<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
    range: (f64, f64),
) -> Result<WeightMatrix> {
    check_dim(dim)?;
    let (lo, hi) = range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "weight spectrum range ({lo}, {hi}) must satisfy 0 < lo <= hi"
        )));
    }
    let spectrum: Vec<f64> = (0..dim)
        .map(|_| {
            if hi > lo {
                rng.random_range(lo..hi)
            } else {
                lo
            }
        })
        .collect();
    let v = haar_unitary(dim, rng);
    let m = &(&v * &CMatrix::from_real_diagonal(&spectrum)) * &v.adjoint();
    let hermitian = CMatrix::from_fn(dim, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    WeightMatrix::new(hermitian)
}

/// `V diag(u) V†` with `u` uniform in `range` and Haar-random `V`.
pub fn random_weight(dim: usize, seed: u64, range: (f64, f64)) -> Result<WeightMatrix> {
    random_weight_with_rng(dim, &mut rng_from_seed(seed), range)
}
