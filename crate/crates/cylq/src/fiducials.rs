//! Catalog of fiducial vectors on the circle, their special functions, and
//! closed-form reproducing kernels.

use crate::core::{Error, FourierState, PhasePoint, Result};
use num_complex::Complex64;

/// Named fiducial families. Parameters are validated on use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FiducialKind {
    Constant,
    Basis(i64),
    /// Coefficients proportional to e^{-sigma^2 n^2 / 2}.
    PeriodizedGaussian(f64),
    /// Flat coefficients on |k| <= n.
    Dirichlet(usize),
    /// Triangular coefficients 1 - |k|/(n+1) on |k| <= n.
    Fejer(usize),
    /// Coefficients proportional to I_n(lambda).
    VonMises(f64),
    /// Coefficients proportional to r^{|n|}.
    Poisson(f64),
}

impl FiducialKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FiducialKind::PeriodizedGaussian(s) if s <= 0.0 || s.is_nan() => {
                Err(Error::Domain(format!(
                    "gaussian width must be positive, got {s}"
                )))
            }
            FiducialKind::VonMises(l) if l <= 0.0 || l.is_nan() => Err(Error::Domain(format!(
                "von Mises concentration must be positive, got {l}"
            ))),
            FiducialKind::Poisson(r) if r <= 0.0 || r >= 1.0 || r.is_nan() => Err(Error::Domain(format!(
                "Poisson parameter must lie in (0,1), got {r}"
            ))),
            _ => Ok(()),
        }
    }
}

/// ln(n!)
fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Modified Bessel function of the first kind I_n(x) for integer order and
/// x >= 0, by the ascending power series (all terms positive, numerically
/// stable; relative accuracy ~1e-15 at the argument sizes used here).
pub fn bessel_i(n: i64, x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::Domain(format!("bessel_i needs x >= 0, got {x}")));
    }
    let n = n.unsigned_abs();
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let half = x / 2.0;
    // leading term (x/2)^n / n! via logs to dodge overflow at large n
    let ln_t0 = n as f64 * half.ln() - ln_factorial(n);
    if ln_t0 < -745.0 {
        return Ok(0.0);
    }
    let mut term = ln_t0.exp();
    let mut sum = term;
    let q = half * half;
    for k in 1..1000u64 {
        term *= q / (k as f64 * (k as f64 + n as f64));
        sum += term;
        if term < sum.abs() * 1e-17 {
            break;
        }
    }
    Ok(sum)
}

/// Third Jacobi theta function theta3(x, q) = sum_n q^{n^2} e^{2 pi i n x},
/// real for real x, summed until the tail is below 1e-15.
pub fn theta3(x: f64, q: f64) -> Result<f64> {
    if q < 0.0 {
        return Err(Error::Domain(format!("theta3 nome must be nonnegative, got {q}")));
    }
    if q >= 1.0 {
        return Err(Error::Domain(format!("theta3 diverges for q >= 1, got {q}")));
    }
    let mut s = 1.0;
    for n in 1..100_000u64 {
        let qn = q.powf((n * n) as f64);
        s += 2.0 * qn * (std::f64::consts::TAU * n as f64 * x).cos();
        if qn < 1e-16 {
            break;
        }
    }
    Ok(s)
}

/// Unnormalized coefficient of the family at index n.
fn raw_coeff(kind: FiducialKind, n: i64) -> Result<f64> {
    Ok(match kind {
        FiducialKind::Constant => {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        }
        FiducialKind::Basis(n0) => {
            if n == n0 {
                1.0
            } else {
                0.0
            }
        }
        FiducialKind::PeriodizedGaussian(s) => (-s * s * (n * n) as f64 / 2.0).exp(),
        FiducialKind::Dirichlet(ord) => {
            if n.unsigned_abs() as usize <= ord {
                1.0
            } else {
                0.0
            }
        }
        FiducialKind::Fejer(ord) => {
            if n.unsigned_abs() as usize <= ord {
                1.0 - n.unsigned_abs() as f64 / (ord as f64 + 1.0)
            } else {
                0.0
            }
        }
        FiducialKind::VonMises(lam) => bessel_i(n, lam)?,
        FiducialKind::Poisson(r) => r.powi(n.unsigned_abs().min(i32::MAX as u64) as i32),
    })
}

/// Build the L^2-normalized fiducial state on the truncation [-n_max, n_max].
/// Errors if mass at the truncation edge shows the truncation is too small.
pub fn make_fiducial(kind: FiducialKind, n_max: usize) -> Result<FourierState> {
    kind.validate()?;
    let nm = n_max as i64;
    let mut coeffs = Vec::with_capacity(2 * n_max + 1);
    for n in -nm..=nm {
        coeffs.push(Complex64::new(raw_coeff(kind, n)?, 0.0));
    }
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-300 {
        return Err(Error::Precondition("fiducial has zero norm on this truncation".into()));
    }
    let edge = coeffs[0].norm().max(coeffs[2 * n_max].norm()) / norm;
    if edge > 1e-12 {
        return Err(Error::TailMass(format!(
            "relative coefficient {edge:.3e} at |n| = {n_max}; increase the truncation"
        )));
    }
    FourierState::new_normalized(n_max, coeffs)
}

/// The unimodular kernel prefactor A(m, m', theta, theta')
/// = e^{i [m (theta - theta') - (m - m') theta'] / 2}.
#[derive(Debug, Clone, Copy)]
pub struct KernelPrefactor {
    pub value: Complex64,
}

impl KernelPrefactor {
    pub fn new(p: PhasePoint, pp: PhasePoint) -> Self {
        let (m, t) = (p.m as f64, p.theta());
        let (mp, tp) = (pp.m as f64, pp.theta());
        KernelPrefactor {
            value: Complex64::from_polar(1.0, (m * (t - tp) - (m - mp) * tp) / 2.0),
        }
    }
}

/// Closed-form reproducing kernel <phi_p | phi_p'> for families where the
/// coefficient sum has a closed expression. All forms reduce to
/// A * sum_i w(i) w(i + mu) e^{i Delta i} with mu = m - m', Delta = theta -
/// theta', for the family's normalized real coefficients w.
pub fn closed_kernel(kind: FiducialKind, p: PhasePoint, pp: PhasePoint) -> Result<Complex64> {
    kind.validate()?;
    let a = KernelPrefactor::new(p, pp).value;
    let mu = p.m - pp.m;
    let delta = p.theta() - pp.theta();
    let phase = |x: f64| Complex64::from_polar(1.0, x);
    match kind {
        FiducialKind::Constant => Ok(if mu == 0 { a } else { Complex64::new(0.0, 0.0) }),
        FiducialKind::Basis(n0) => Ok(if mu == 0 {
            a * phase(n0 as f64 * delta)
        } else {
            Complex64::new(0.0, 0.0)
        }),
        FiducialKind::Dirichlet(ord) => {
            let n = ord as i64;
            let lo = (-n).max(-n - mu);
            let hi = n.min(n - mu);
            if lo > hi {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let len = (hi - lo + 1) as f64;
            let z = phase(delta);
            let s = if (z - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
                Complex64::new(len, 0.0)
            } else {
                phase(delta * lo as f64) * (z.powi((hi - lo + 1) as i32) - 1.0) / (z - 1.0)
            };
            Ok(a * s / (2.0 * n as f64 + 1.0))
        }
        FiducialKind::Fejer(ord) => {
            let n = ord as i64;
            let w = |i: i64| -> f64 {
                if i.unsigned_abs() as i64 <= n {
                    1.0 - i.unsigned_abs() as f64 / (n as f64 + 1.0)
                } else {
                    0.0
                }
            };
            let z: f64 = (-n..=n).map(|i| w(i) * w(i)).sum();
            let mut s = Complex64::new(0.0, 0.0);
            for i in -n..=n {
                s += w(i) * w(i + mu) * phase(delta * i as f64);
            }
            Ok(a * s / z)
        }
        FiducialKind::VonMises(lam) => {
            // the Bessel-argument form with a compensating half-angle phase:
            // A e^{-i mu Delta / 2} I_mu(2 lam cos(Delta/2)) / I_0(2 lam)
            let c = (delta / 2.0).cos();
            let (num, sign) = if c >= 0.0 {
                (bessel_i(mu, 2.0 * lam * c)?, 1.0)
            } else {
                // I_mu(-x) = (-1)^mu I_mu(x) for integer mu
                (
                    bessel_i(mu, -2.0 * lam * c)?,
                    if mu.rem_euclid(2) == 0 { 1.0 } else { -1.0 },
                )
            };
            Ok(a * phase(-mu as f64 * delta / 2.0) * sign * num / bessel_i(0, 2.0 * lam)?)
        }
        FiducialKind::PeriodizedGaussian(sig) => {
            // theta-like sums, summed to a 1e-15 tail
            let bound = (10.0 / sig).ceil() as i64 + 2;
            let mut num = Complex64::new(0.0, 0.0);
            let mut den = 0.0;
            for i in -bound..=bound {
                let wi = (-sig * sig * (i * i) as f64 / 2.0).exp();
                den += wi * wi;
                let wip = (-sig * sig * ((i + mu) * (i + mu)) as f64 / 2.0).exp();
                num += wi * wip * phase(delta * i as f64);
            }
            Ok(a * num / den)
        }
        FiducialKind::Poisson(_) => Err(Error::NotAvailable(
            "no closed kernel for the Poisson family; use the numeric kernel".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::TAU;
    use crate::fourier::{integrate, CircleSamples};
    use crate::gabor::kernel_numeric;
    use crate::core::AngleGrid;

    const KINDS: [FiducialKind; 6] = [
        FiducialKind::Constant,
        FiducialKind::Basis(1),
        FiducialKind::PeriodizedGaussian(1.0),
        FiducialKind::Dirichlet(3),
        FiducialKind::Fejer(3),
        FiducialKind::VonMises(2.0),
    ];

    #[test]
    fn catalog_unit_norms() {
        for kind in KINDS {
            let phi = make_fiducial(kind, 16).unwrap();
            assert!((phi.norm() - 1.0).abs() < 1e-12, "{kind:?}");
        }
        // the geometric tail of the Poisson family needs a deeper truncation
        let phi = make_fiducial(FiducialKind::Poisson(0.5), 48).unwrap();
        assert!((phi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tail_mass_guard() {
        assert!(matches!(
            make_fiducial(FiducialKind::Poisson(0.999), 8),
            Err(Error::TailMass(_))
        ));
        // finite families need the order strictly inside the truncation
        assert!(make_fiducial(FiducialKind::Dirichlet(8), 8).is_err());
        assert!(make_fiducial(FiducialKind::Dirichlet(7), 8).is_ok());
    }

    #[test]
    fn theta3_examples() {
        assert_eq!(theta3(0.0, 0.0).unwrap(), 1.0);
        let q = 0.3;
        let alt = theta3(0.5, q).unwrap();
        let mut expect = 1.0;
        for n in 1..50i32 {
            expect += 2.0 * (-1.0f64).powi(n) * q.powi(n * n);
        }
        assert!((alt - expect).abs() < 1e-14);
        let q = (-1.0f64).exp();
        let mut brute = 1.0;
        for n in 1..50i32 {
            brute += 2.0 * q.powi(n * n);
        }
        assert!((theta3(0.0, q).unwrap() - brute).abs() < 1e-14);
        assert!(theta3(0.0, 1.0).is_err());
    }

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(3, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(-2, 1.5).unwrap(), bessel_i(2, 1.5).unwrap());
        // addition theorem sum I_n(x)^2 = I_0(2x), with the right side
        // cross-checked by quadrature of (1/2pi) int e^{2x cos g} dg
        let x = 2.0;
        let s: f64 = (-20i64..=20)
            .map(|n| bessel_i(n, x).unwrap().powi(2))
            .sum();
        assert!((s - bessel_i(0, 2.0 * x).unwrap()).abs() < 1e-12);
        let g = AngleGrid::new(256).unwrap();
        let quad = integrate(&CircleSamples::from_fn(g, |t| {
            Complex64::new((2.0 * x * t.cos()).exp(), 0.0)
        }))
        .re / TAU;
        assert!((quad - bessel_i(0, 2.0 * x).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn gaussian_coefficients() {
        let sig = 1.0;
        let phi = make_fiducial(FiducialKind::PeriodizedGaussian(sig), 10).unwrap();
        let ratio = phi.get(0).re;
        for n in -6i64..=6 {
            let expect = ratio * (-sig * sig * (n * n) as f64 / 2.0).exp();
            assert!((phi.get(n).re - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_kernel_examples() {
        let p = PhasePoint::new(2, 0.9);
        let pp0 = PhasePoint::new(2, 0.4);
        let ppm = PhasePoint::new(1, 0.4);
        // constant fiducial: A delta_{m m'}
        let a = KernelPrefactor::new(p, pp0).value;
        let v = closed_kernel(FiducialKind::Constant, p, pp0).unwrap();
        assert!((v - a).norm() < 1e-14);
        assert!(closed_kernel(FiducialKind::Constant, p, ppm).unwrap().norm() < 1e-14);
        // basis(n): extra e^{i n Delta}
        let v = closed_kernel(FiducialKind::Basis(1), p, pp0).unwrap();
        assert!((v - a * Complex64::from_polar(1.0, 0.5)).norm() < 1e-13);
        // Dirichlet coincidence limit: kernel at p = p' is the unit norm
        let v = closed_kernel(FiducialKind::Dirichlet(3), p, p).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        // Poisson has no closed form
        assert!(matches!(
            closed_kernel(FiducialKind::Poisson(0.5), p, pp0),
            Err(Error::NotAvailable(_))
        ));
    }

    #[test]
    fn closed_kernels_match_numeric() {
        let pts: Vec<PhasePoint> = vec![
            PhasePoint::new(0, 0.0),
            PhasePoint::new(1, 1.3),
            PhasePoint::new(-2, 2.9),
            PhasePoint::new(3, 4.4),
            PhasePoint::new(-1, 5.8),
        ];
        for kind in KINDS {
            let phi = make_fiducial(kind, 24).unwrap();
            let mut worst: f64 = 0.0;
            for &p in &pts {
                for &pp in &pts {
                    let num = kernel_numeric(&phi, p, pp);
                    let clo = closed_kernel(kind, p, pp).unwrap();
                    worst = worst.max((num - clo).norm());
                }
            }
            assert!(worst < 1e-10, "{kind:?}: {worst:.3e}");
        }
    }

    #[test]
    fn kernel_hermitian_symmetry() {
        let pts: Vec<PhasePoint> = (0..5)
            .map(|i| PhasePoint::new(i - 2, 0.3 + 1.1 * i as f64))
            .collect();
        for kind in KINDS {
            for &p in &pts {
                for &pp in &pts {
                    let v = closed_kernel(kind, p, pp).unwrap();
                    let w = closed_kernel(kind, pp, p).unwrap();
                    assert!((v - w.conj()).norm() < 1e-10, "{kind:?}");
                }
            }
        }
    }

    #[test]
    fn von_mises_form_arbitration() {
        // two printed candidates for the von Mises kernel disagree; the
        // numeric overlap picks the Bessel-argument form with the extra
        // half-angle phase. The product form I_mu(2 lam) cos(Delta/2) is
        // kept here to document that it fails.
        let lam = 2.0;
        let phi = make_fiducial(FiducialKind::VonMises(lam), 24).unwrap();
        let p = PhasePoint::new(2, 1.1);
        let pp = PhasePoint::new(-1, 3.7);
        let num = kernel_numeric(&phi, p, pp);
        let winner = closed_kernel(FiducialKind::VonMises(lam), p, pp).unwrap();
        let mu = (p.m - pp.m) as f64;
        let delta = p.theta() - pp.theta();
        let a = KernelPrefactor::new(p, pp).value;
        let product_form = a * bessel_i(p.m - pp.m, 2.0 * lam).unwrap() * (delta / 2.0).cos()
            / bessel_i(0, 2.0 * lam).unwrap();
        let bare_bessel_form = a * bessel_i(p.m - pp.m, 2.0 * lam * (delta / 2.0).cos()).unwrap()
            / bessel_i(0, 2.0 * lam).unwrap();
        let _ = mu;
        assert!((num - winner).norm() < 1e-12);
        assert!((num - product_form).norm() > 1e-3);
        assert!((num - bare_bessel_form).norm() > 1e-3);
    }
}
