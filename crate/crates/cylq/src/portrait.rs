//! Semi-classical portraits: the autocorrelation distribution
//! Tr(M^w(m,theta) M^w) of a weight, and the lattice convolution that maps a
//! classical observable f to its smoothed image f-check.

use crate::core::{
    AngleGrid, ClassicalObservable, Error, OperatorMatrix, PhasePoint, Result, Weight, TAU,
};
use crate::fourier::{dft, idft};
use crate::quantize::{build_m, QuantizationContext};
use num_complex::Complex64;

/// Whether the weight's base operator is a density operator (positive,
/// unit-trace), which makes the autocorrelation distribution a genuine
/// probability density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortraitStatus {
    Density,
    /// Positivity claims do not apply; values are reported raw.
    NonDensity,
}

/// One-time positivity scan of the weight's base operator, cached on the
/// weight.
pub fn weight_is_density(w: &Weight, grid: AngleGrid) -> Result<bool> {
    if let Some(&cached) = w.density_cache().get() {
        return Ok(cached);
    }
    let n_check = w.m_max.clamp(8, 20);
    let m = build_m(w, n_check, grid)?;
    let min_ev = m
        .hermitian_eigenvalues()
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let is_density = min_ev > -1e-10;
    let _ = w.density_cache().set(is_density);
    Ok(is_density)
}

/// Autocorrelation distribution
///   D(m, theta) = (1/2pi) sum_{|m'| <= M} int dtheta' |w(m', theta')|^2 e^{i (m theta' - m' theta)},
/// evaluated spectrally (|w|^2 is 2pi-periodic for both weight types, so the
/// grid mean is exact per row). Returns the raw complex value together with
/// the density status; for density weights the value is real and
/// non-negative up to rounding.
pub fn autocorrelation_distribution(
    w: &Weight,
    p: PhasePoint,
    grid: AngleGrid,
) -> Result<(Complex64, PortraitStatus)> {
    let status = if weight_is_density(w, grid)? {
        PortraitStatus::Density
    } else {
        PortraitStatus::NonDensity
    };
    let mm = w.m_max as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for mp in -mm..=mm {
        let mean: Complex64 = grid
            .points()
            .map(|t| {
                Complex64::new(w.eval(mp, t).norm_sqr(), 0.0)
                    * Complex64::from_polar(1.0, p.m as f64 * t)
            })
            .sum::<Complex64>()
            / grid.size() as f64;
        s += Complex64::from_polar(1.0, -(mp as f64) * p.theta()) * mean;
    }
    Ok((s, status))
}

/// Table of the semi-classical portrait f-check = f convolved with the
/// autocorrelation distribution over the cylinder:
///   f-check(m, theta) = (1/2pi) sum_{m'} int dtheta' f(m - m', theta - theta') D(m', theta').
#[derive(Debug, Clone)]
pub struct PortraitTable {
    pub m_max: usize,
    pub grid: AngleGrid,
    /// values[m + m_max][j] = f-check(m, theta_j)
    pub values: Vec<Vec<Complex64>>,
    pub status: PortraitStatus,
}

impl PortraitTable {
    pub fn get(&self, m: i64, j: usize) -> Complex64 {
        let mm = self.m_max as i64;
        if m < -mm || m > mm {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(m + mm) as usize][j]
        }
    }

    pub fn max_imag(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max)
    }
}

/// Evaluate the portrait by spectral convolution: the theta convolution is a
/// coefficient-wise product of DFTs (exact on the grid for band-limited
/// rows), and the momentum convolution is a finite sum over the weight's
/// truncation.
pub fn portrait(
    f: &ClassicalObservable,
    w: &Weight,
    m_max: usize,
    grid: AngleGrid,
) -> Result<PortraitTable> {
    if f.grid != grid {
        return Err(Error::Precondition(
            "observable grid must match the portrait grid".into(),
        ));
    }
    let k = grid.size();
    let wmm = w.m_max as i64;
    let status = if weight_is_density(w, grid)? {
        PortraitStatus::Density
    } else {
        PortraitStatus::NonDensity
    };
    // D rows and their spectra
    let d_spectra: Vec<Vec<Complex64>> = (-wmm..=wmm)
        .map(|mp| {
            let row: Vec<Complex64> = grid
                .points()
                .map(|t| {
                    autocorr_value(w, mp, t, grid)
                })
                .collect();
            dft(&row)
        })
        .collect();
    // f rows needed: m - m' for m in [-m_max, m_max], m' in [-wmm, wmm]
    let fm = m_max as i64 + wmm;
    let f_spectra: std::collections::HashMap<i64, Vec<Complex64>> = (-fm..=fm)
        .map(|m| {
            let row: Vec<Complex64> = (0..k).map(|j| f.value(m, j)).collect();
            (m, dft(&row))
        })
        .collect();
    let mmo = m_max as i64;
    let values: Vec<Vec<Complex64>> = (-mmo..=mmo)
        .map(|m| {
            let mut acc = vec![Complex64::new(0.0, 0.0); k];
            for mp in -wmm..=wmm {
                let fs = &f_spectra[&(m - mp)];
                let ds = &d_spectra[(mp + wmm) as usize];
                for (a, (b, c)) in acc.iter_mut().zip(fs.iter().zip(ds.iter())) {
                    // mean-convolution multiplies coefficients with a 2pi
                    // factor absorbed by the (1/2pi) measure
                    *a += b * c * TAU;
                }
            }
            // the measure (1/2pi) int dtheta' = mean; the coefficient
            // product already encodes the mean convolution
            let mut out = idft(&acc);
            for v in &mut out {
                *v /= TAU;
            }
            out
        })
        .collect();
    Ok(PortraitTable {
        m_max,
        grid,
        values,
        status,
    })
}

/// D(m', theta) without the density scan (internal helper).
fn autocorr_value(w: &Weight, m: i64, theta: f64, grid: AngleGrid) -> Complex64 {
    let mm = w.m_max as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for mp in -mm..=mm {
        let mean: Complex64 = grid
            .points()
            .map(|t| {
                Complex64::new(w.eval(mp, t).norm_sqr(), 0.0)
                    * Complex64::from_polar(1.0, m as f64 * t)
            })
            .sum::<Complex64>()
            / grid.size() as f64;
        s += Complex64::from_polar(1.0, -(mp as f64) * theta) * mean;
    }
    s
}

/// Trace route: the portrait of an operator at a phase point,
/// A-check(p) = Tr(A U(p) M^w U(p)^dag), using the context's cached base
/// operator.
pub fn portrait_of_operator(
    a: &OperatorMatrix,
    ctx: &QuantizationContext,
    p: PhasePoint,
) -> Result<Complex64> {
    if a.n_max() > ctx.n_max {
        return Err(Error::Precondition(
            "operator truncation exceeds the context".into(),
        ));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for k in a.indices() {
        for l in a.indices() {
            let mv = ctx.m_matrix.get(l - p.m, k - p.m);
            if mv.norm() > 0.0 {
                s += a.get(k, l)
                    * Complex64::from_polar(1.0, -((l - k) as f64) * p.theta())
                    * mv;
            }
        }
    }
    Ok(s)
}
