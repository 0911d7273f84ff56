//! Transforms between grid samples and Fourier coefficients, periodic
//! quadrature, discrete Fourier analysis helpers, and periodization of line
//! functions onto the circle.

use crate::core::{AngleGrid, Error, FourierState, Result, TAU};
use num_complex::Complex64;

/// Samples of a circle function on a uniform angle grid.
#[derive(Debug, Clone)]
pub struct CircleSamples {
    pub grid: AngleGrid,
    pub values: Vec<Complex64>,
}

impl CircleSamples {
    pub fn new(grid: AngleGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::Precondition(format!(
                "sample vector length {} does not match grid size {}",
                values.len(),
                grid.size()
            )));
        }
        Ok(CircleSamples { grid, values })
    }

    pub fn from_fn(grid: AngleGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        CircleSamples { grid, values }
    }
}

/// Evaluate psi(theta_k) = sum_n psi_hat(n) e^{i n theta_k} / sqrt(2 pi).
pub fn synthesize(psi: &FourierState, grid: AngleGrid) -> Result<CircleSamples> {
    grid.check_size(2 * psi.n_max() + 1)?;
    let norm = 1.0 / TAU.sqrt();
    let values = grid
        .points()
        .map(|t| {
            psi.indices()
                .map(|n| psi.get(n) * Complex64::from_polar(1.0, n as f64 * t))
                .sum::<Complex64>()
                * norm
        })
        .collect();
    Ok(CircleSamples { grid, values })
}

/// Recover coefficients psi_hat(n) = (2 pi / K) sum_k conj(e_n(theta_k)) s_k;
/// exact for inputs band-limited within the grid.
pub fn analyze(s: &CircleSamples, n_max: usize) -> Result<FourierState> {
    s.grid.check_size(2 * n_max + 1)?;
    let k = s.grid.size();
    let scale = TAU / k as f64 / TAU.sqrt();
    let nm = n_max as i64;
    let coeffs = (-nm..=nm)
        .map(|n| {
            s.values
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -(n as f64) * s.grid.theta(j)))
                .sum::<Complex64>()
                * scale
        })
        .collect();
    FourierState::new(n_max, coeffs)
}

/// Trapezoid quadrature (2 pi / K) sum_k values[k] — spectrally exact for
/// band-limited periodic integrands.
pub fn integrate(s: &CircleSamples) -> Complex64 {
    s.values.iter().sum::<Complex64>() * s.grid.weight()
}

/// Partial periodization (Per f)(x) = 2 pi sum_{|n| <= n_terms} f(x + 2 pi n).
/// The caller chooses n_terms so the tail is below its tolerance.
pub fn periodize(f: impl Fn(f64) -> Complex64, x: f64, n_terms: u64) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("periodize argument must be finite, got {x}")));
    }
    if n_terms == 0 {
        return Err(Error::Precondition("n_terms must be at least 1".into()));
    }
    let mut s = f(x);
    for n in 1..=n_terms as i64 {
        s += f(x + TAU * n as f64) + f(x - TAU * n as f64);
    }
    Ok(s * TAU)
}

/// Discrete Fourier coefficients c_j = (1/K) sum_k v_k e^{-i j theta_k},
/// returned in FFT index order (entry jj holds frequency `freq_of(jj, K)`).
/// Direct summation with a precomputed twiddle table: deterministic and exact
/// to rounding at the sizes this crate targets.
pub fn dft(values: &[Complex64]) -> Vec<Complex64> {
    let k = values.len();
    let tw: Vec<Complex64> = (0..k)
        .map(|t| Complex64::from_polar(1.0, -TAU * t as f64 / k as f64))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); k];
    for (jj, o) in out.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for (t, v) in values.iter().enumerate() {
            s += v * tw[(jj * t) % k];
        }
        *o = s / k as f64;
    }
    out
}

/// Inverse of `dft`: v_k = sum_j c_j e^{i j theta_k}.
pub fn idft(coeffs: &[Complex64]) -> Vec<Complex64> {
    let k = coeffs.len();
    let tw: Vec<Complex64> = (0..k)
        .map(|t| Complex64::from_polar(1.0, TAU * t as f64 / k as f64))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); k];
    for (t, o) in out.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for (jj, c) in coeffs.iter().enumerate() {
            s += c * tw[(jj * t) % k];
        }
        *o = s;
    }
    out
}

/// Signed frequency of FFT-order index jj for length k.
pub fn freq_of(jj: usize, k: usize) -> i64 {
    if jj <= k / 2 {
        jj as i64
    } else {
        jj as i64 - k as i64
    }
}

/// FFT-order index of signed frequency j for length k.
pub fn idx_of(j: i64, k: usize) -> usize {
    j.rem_euclid(k as i64) as usize
}

/// Closed form of the half-frequency integral
/// c(j, s) = int_0^{2pi} e^{i j theta} e^{-i s theta / 2} dtheta
/// for integer j, s: equal to 2 pi delta_{j, s/2} for even s and
/// 4i / (2j - s) for odd s.
pub fn half_freq_integral(j: i64, s: i64) -> Complex64 {
    if s.rem_euclid(2) == 0 {
        if 2 * j == s {
            Complex64::new(TAU, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    } else {
        Complex64::new(0.0, 4.0 / (2 * j - s) as f64)
    }
}
