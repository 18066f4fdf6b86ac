//! Parameter grids of the closed-form qutrit mutual information, written as
//! CSV for external plotting.

use std::fmt::Write as _;

use rayon::prelude::*;
use wentropy_core::entropy::qutrit_mutual_information_closed_form;
use wentropy_core::Error;

use crate::format::csv_number;

/// Diagonal qutrit weights `(φ1, φ2, χ1, χ2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritWeights {
    pub phi1: f64,
    pub phi2: f64,
    pub chi1: f64,
    pub chi2: f64,
}

impl Default for QutritWeights {
    fn default() -> Self {
        Self {
            phi1: 0.75,
            phi2: 0.25,
            chi1: 1.0 / 3.0,
            chi2: 2.0 / 3.0,
        }
    }
}

/// Weight-plane region on the line `φ2 = 1 - φ1`, `χ2 = 1 - χ1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `φ1 ∈ [1/2, 1]`, `χ1 ∈ [0, 1/2]`.
    A,
    /// `φ1 ∈ [0, 1/2]`, `χ1 ∈ [1/2, 1]`.
    B,
}

impl Region {
    fn bounds(self) -> ((f64, f64), (f64, f64)) {
        match self {
            Region::A => ((0.5, 1.0), (0.0, 0.5)),
            Region::B => ((0.0, 0.5), (0.5, 1.0)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::A => "a",
            Region::B => "b",
        }
    }
}

/// Values of `I` on a rectangular grid; `None` marks masked cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axis_names: [String; 2],
    pub axes: [Vec<f64>; 2],
    /// `values[i][j]` belongs to `(axes[0][i], axes[1][j])`.
    pub values: Vec<Vec<Option<f64>>>,
    /// Comment lines written above the CSV header, without the `#`.
    pub notes: Vec<String>,
}

impl SweepGrid {
    pub fn is_masked(&self, i: usize, j: usize) -> bool {
        self.values[i][j].is_none()
    }

    pub fn unmasked_count(&self) -> usize {
        self.values.iter().flatten().filter(|v| v.is_some()).count()
    }

    pub fn min_value(&self) -> Option<f64> {
        self.values
            .iter()
            .flatten()
            .flatten()
            .copied()
            .reduce(f64::min)
    }

    /// CSV with `#` comment lines, a header row and one row per unmasked
    /// cell in row-major order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            writeln!(out, "# {note}").unwrap();
        }
        writeln!(out, "{},{},I", self.axis_names[0], self.axis_names[1]).unwrap();
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if let Some(v) = v {
                    writeln!(
                        out,
                        "{},{},{}",
                        csv_number(self.axes[0][i]),
                        csv_number(self.axes[1][j]),
                        csv_number(*v)
                    )
                    .unwrap();
                }
            }
        }
        out
    }
}

fn check_resolution(n: usize, min: usize) -> Result<(), Error> {
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be at least {min}, got {n}"
        )));
    }
    Ok(())
}

/// `n` points spanning `[lo, hi]` inclusive.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// `I(p1, p2)` at fixed weights over cell centres `p = (k + 1/2) / n`.
/// Cells with `p1 + p2 >= 1` are masked.
pub fn sweep_probabilities(n: usize, w: QutritWeights) -> Result<SweepGrid, Error> {
    check_resolution(n, 1)?;
    let axis: Vec<f64> = (0..n).map(|k| (k as f64 + 0.5) / n as f64).collect();
    let values = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    // (i + 1/2) + (j + 1/2) >= n, decided exactly in integers.
                    if i + j + 1 >= n {
                        return Ok(None);
                    }
                    qutrit_mutual_information_closed_form(
                        axis[i], axis[j], w.phi1, w.phi2, w.chi1, w.chi2,
                    )
                    .map(Some)
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SweepGrid {
        axis_names: ["p1".into(), "p2".into()],
        axes: [axis.clone(), axis],
        values,
        notes: vec![
            format!(
                "sweep prob n={n} phi1={} phi2={} chi1={} chi2={}",
                csv_number(w.phi1),
                csv_number(w.phi2),
                csv_number(w.chi1),
                csv_number(w.chi2)
            ),
            "cells at centres (k+0.5)/n; cells with p1+p2 >= 1 are masked and omitted; I in nats"
                .into(),
        ],
    })
}

/// `I(φ1, χ1)` at fixed `(p1, p2)` with `φ2 = 1 - φ1`, `χ2 = 1 - χ1`, over
/// an inclusive `n × n` grid of the region.
pub fn sweep_weights(region: Region, p1: f64, p2: f64, n: usize) -> Result<SweepGrid, Error> {
    check_resolution(n, 2)?;
    // Validates the probabilities once up front.
    qutrit_mutual_information_closed_form(p1, p2, 1.0, 1.0, 1.0, 1.0)?;
    let ((f_lo, f_hi), (c_lo, c_hi)) = region.bounds();
    let phi_axis = linspace(f_lo, f_hi, n);
    let chi_axis = linspace(c_lo, c_hi, n);
    let values = phi_axis
        .par_iter()
        .map(|&phi1| {
            chi_axis
                .iter()
                .map(|&chi1| {
                    qutrit_mutual_information_closed_form(
                        p1,
                        p2,
                        phi1,
                        1.0 - phi1,
                        chi1,
                        1.0 - chi1,
                    )
                    .map(Some)
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SweepGrid {
        axis_names: ["phi1".into(), "chi1".into()],
        axes: [phi_axis, chi_axis],
        values,
        notes: vec![
            format!("sweep weight region={} n={n} p1={} p2={}", region.name(), csv_number(p1), csv_number(p2)),
            "phi2 = 1 - phi1, chi2 = 1 - chi1; region boundaries inclusive, no masked cells; I in nats".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probability_grid_hits_example_cell() {
        for n in [5usize, 15] {
            let g = sweep_probabilities(n, QutritWeights::default()).unwrap();
            let k = (0..n)
                .find(|&k| (g.axes[0][k] - 0.1).abs() < 1e-15)
                .unwrap();
            let v = g.values[k][k].unwrap();
            assert!((v - 0.072_801_263_376_340_46).abs() < 1e-15, "{v}");
        }
    }

    #[test]
    fn probability_grid_mask_count() {
        for n in [1usize, 2, 3, 10, 97] {
            let g = sweep_probabilities(n, QutritWeights::default()).unwrap();
            assert_eq!(g.unmasked_count(), n * (n - 1) / 2);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        g.is_masked(i, j),
                        g.axes[0][i] + g.axes[1][j] >= 1.0 - 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn masked_cell_is_absent() {
        let g = sweep_probabilities(5, QutritWeights::default()).unwrap();
        // 0.5 + 0.5: centres (2 + 1/2)/5
        assert!(g.is_masked(2, 2));
        assert!(!g
            .to_csv()
            .contains("\n5.0000000000000000e-1,5.0000000000000000e-1,"));
    }

    #[test]
    fn weight_grid_regions() {
        let a = sweep_weights(Region::A, 0.25, 0.125, 9).unwrap();
        assert_eq!(a.axes[0].first(), Some(&0.5));
        assert_eq!(a.axes[0].last(), Some(&1.0));
        assert_eq!(a.axes[1].first(), Some(&0.0));
        assert_eq!(a.axes[1].last(), Some(&0.5));
        assert_eq!(a.unmasked_count(), 81);
        assert!(a.min_value().unwrap() >= -1e-9);
        let b = sweep_weights(Region::B, 0.25, 0.125, 9).unwrap();
        assert!(b.min_value().unwrap() >= -1e-9);
        assert_eq!(b.axes[0].last(), Some(&0.5));
    }

    #[test]
    fn weight_grid_rejects_bad_inputs() {
        assert!(sweep_weights(Region::A, 0.7, 0.5, 9).is_err());
        assert!(sweep_weights(Region::A, 0.2, 0.2, 1).is_err());
        assert!(sweep_probabilities(0, QutritWeights::default()).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = sweep_weights(Region::A, 0.25, 0.125, 2).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# sweep weight region=a n=2"));
        assert!(lines[1].starts_with('#'));
        assert_eq!(lines[2], "phi1,chi1,I");
        assert_eq!(lines.len(), 3 + 4);
        assert!(lines[3].starts_with("5.0000000000000000e-1,0.0000000000000000e0,"));
        assert!(!csv.contains('\r'));
    }
}
