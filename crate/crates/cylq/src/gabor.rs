//! The Weyl operator U(m, theta) on the circle, coherent states
//! phi_{(m,theta)} = U(m,theta) phi, the Gabor transform and its inverse,
//! and numeric reproducing kernels.
//!
//! Coefficient-space action (exact shift-and-phase):
//!   (U(m,theta) psi)^hat(k) = e^{-i m theta / 2} e^{-i (k - m) theta} psi_hat(k - m).
//! All inner products are finite coefficient sums, never grid quadratures,
//! so frame identities hold to rounding.

use crate::core::{
    AngleGrid, Error, FourierState, OperatorMatrix, PhasePoint, Result,
};
use num_complex::Complex64;

/// Apply U(p) to a state; the band-limit grows by |m|.
pub fn weyl_apply(p: PhasePoint, psi: &FourierState) -> FourierState {
    let out_max = psi.n_max() + p.m.unsigned_abs() as usize;
    let mut out = FourierState::zero(out_max);
    let half = Complex64::from_polar(1.0, -p.m as f64 * p.theta() / 2.0);
    for k in out.indices().collect::<Vec<_>>() {
        let km = k - p.m;
        if km.unsigned_abs() as usize <= psi.n_max() {
            let v = half * Complex64::from_polar(1.0, -(km as f64) * p.theta()) * psi.get(km);
            out.set(k, v);
        }
    }
    out
}

/// Matrix of U(p) on the truncated basis: [U]_{k,l} = e^{-i m theta/2}
/// e^{-i l theta} delta_{k, l+m} — a single shifted diagonal.
pub fn weyl_matrix(p: PhasePoint, n_max: usize) -> OperatorMatrix {
    let mut u = OperatorMatrix::zero(n_max);
    let half = Complex64::from_polar(1.0, -p.m as f64 * p.theta() / 2.0);
    let nm = n_max as i64;
    for l in -nm..=nm {
        let k = l + p.m;
        if k >= -nm && k <= nm {
            u.set(k, l, half * Complex64::from_polar(1.0, -(l as f64) * p.theta()));
        }
    }
    u
}

/// Phase-space table of inner products against transported fiducials.
#[derive(Debug, Clone)]
pub struct GaborTable {
    pub m_max: usize,
    pub grid: AngleGrid,
    /// values[m + m_max][j] = <phi_{(m, theta_j)} | psi>
    pub values: Vec<Vec<Complex64>>,
}

impl GaborTable {
    pub fn get(&self, m: i64, j: usize) -> Complex64 {
        let mm = self.m_max as i64;
        if m < -mm || m > mm {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(m + mm) as usize][j]
        }
    }

    /// Squared phase-space norm with the cylinder measure (1/2pi) sum_m int dtheta.
    pub fn norm_sqr(&self) -> f64 {
        let k = self.grid.size() as f64;
        self.values
            .iter()
            .map(|row| row.iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            / k
    }
}

/// Gabor transform Psi(m, theta_j) = <U(m, theta_j) phi, psi> over
/// m in [-m_max, m_max] and all grid nodes.
pub fn gabor_transform(
    phi: &FourierState,
    psi: &FourierState,
    m_max: usize,
    grid: AngleGrid,
) -> GaborTable {
    let mm = m_max as i64;
    let rows = crate::core::parallel_map_rows(2 * m_max + 1, |row| {
        let m = row as i64 - mm;
        grid.points()
            .map(|t| {
                // <U(m,t) phi, psi> = e^{i m t/2} sum_k e^{i (k-m) t} conj(phi_hat(k-m)) psi_hat(k)
                let mut s = Complex64::new(0.0, 0.0);
                for k in psi.indices() {
                    let km = k - m;
                    if km.unsigned_abs() as usize <= phi.n_max() {
                        s += Complex64::from_polar(1.0, km as f64 * t)
                            * phi.get(km).conj()
                            * psi.get(k);
                    }
                }
                s * Complex64::from_polar(1.0, m as f64 * t / 2.0)
            })
            .collect::<Vec<_>>()
    });
    GaborTable {
        m_max,
        grid,
        values: rows,
    }
}

/// Invert the transform on its range:
/// psi = (1/2pi) sum_m int dtheta Psi(m, theta) U(m, theta) phi,
/// evaluated on the truncation n_max(phi) + m_max.
pub fn gabor_reconstruct(phi: &FourierState, t: &GaborTable) -> Result<FourierState> {
    if (phi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(
            "reconstruction requires a unit-norm fiducial".into(),
        ));
    }
    let out_max = phi.n_max() + t.m_max;
    let mut out = FourierState::zero(out_max);
    let kf = t.grid.size() as f64;
    let mm = t.m_max as i64;
    for m in -mm..=mm {
        let row = &t.values[(m + mm) as usize];
        for (j, psi_mj) in row.iter().enumerate() {
            let th = t.grid.theta(j);
            let half = Complex64::from_polar(1.0, -m as f64 * th / 2.0);
            for k in out.indices().collect::<Vec<_>>() {
                let km = k - m;
                if km.unsigned_abs() as usize <= phi.n_max() {
                    let v = psi_mj
                        * half
                        * Complex64::from_polar(1.0, -(km as f64) * th)
                        * phi.get(km)
                        / kf;
                    out.set(k, out.get(k) + v);
                }
            }
        }
    }
    Ok(out)
}

/// Numeric reproducing kernel <phi_p | phi_p'> as a coefficient-space inner
/// product of the two transported fiducials.
pub fn kernel_numeric(phi: &FourierState, p: PhasePoint, pp: PhasePoint) -> Complex64 {
    weyl_apply(p, phi).inner(&weyl_apply(pp, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::TAU;
    use crate::fiducials::{make_fiducial, FiducialKind};
    use crate::fourier::{dft, idx_of};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(n_max: usize, rng: &mut ChaCha8Rng) -> FourierState {
        let coeffs: Vec<Complex64> = (0..2 * n_max + 1)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        FourierState::new_normalized(n_max, coeffs).unwrap()
    }

    #[test]
    fn weyl_apply_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = random_state(4, &mut rng);
        let id = weyl_apply(PhasePoint::new(0, 0.0), &psi);
        for n in psi.indices() {
            assert!((id.get(n) - psi.get(n)).norm() < 1e-15);
        }
        let sh = weyl_apply(PhasePoint::new(2, 0.0), &psi);
        for n in psi.indices() {
            assert!((sh.get(n + 2) - psi.get(n)).norm() < 1e-15);
        }
        let u = weyl_apply(PhasePoint::new(-3, 2.2), &psi);
        assert!((u.norm() - psi.norm()).abs() < 1e-14);
    }

    #[test]
    fn weyl_matrix_unitary_and_composition() {
        let p = PhasePoint::new(2, 1.7);
        let n_max = 8;
        let u = weyl_matrix(p, n_max);
        let prod = u.mul(&u.adjoint());
        // surviving indices: rows |k| <= n_max with |k - m| <= n_max
        for k in -6i64..=6 {
            assert!((prod.get(k + 2, k + 2) - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }
        assert_eq!(
            weyl_matrix(PhasePoint::new(0, 0.0), 3),
            OperatorMatrix::identity(3)
        );

        // composition U(m,t) U(m',t') = e^{+i(m t' - m' t)/2} U(m+m', t+t')
        // on interior indices; the opposite cocycle sign also circulates, but
        // this is the one the coefficient action satisfies
        let pp = PhasePoint::new(-1, 0.9);
        let lhs = weyl_matrix(p, n_max).mul(&weyl_matrix(pp, n_max));
        let phase = Complex64::from_polar(
            1.0,
            (p.m as f64 * pp.theta() - pp.m as f64 * p.theta()) / 2.0,
        );
        let rhs = weyl_matrix(
            PhasePoint::new(p.m + pp.m, p.theta() + pp.theta()),
            n_max,
        )
        .scaled(phase);
        // note: theta reduction of t + t' can flip the half-angle branch;
        // compare with the unreduced angle composition instead
        let sum_theta = p.theta() + pp.theta();
        let branch = if sum_theta >= TAU {
            // reduced representative differs by 2pi: extra (-1)^{m+m'}
            if (p.m + pp.m).rem_euclid(2) == 1 {
                -1.0
            } else {
                1.0
            }
        } else {
            1.0
        };
        let rhs = rhs.scaled(Complex64::new(branch, 0.0));
        for k in -4i64..=4 {
            for l in -4i64..=4 {
                assert!(
                    (lhs.get(k, l) - rhs.get(k, l)).norm() < 1e-13,
                    "k={k} l={l}"
                );
            }
        }
    }

    #[test]
    fn weyl_conjugation_phase() {
        // U(m',t') U(m,t) U(m',t')^dag = e^{i(m' t - m t')} U(m,t) on
        // interior indices
        let n_max = 10;
        let p = PhasePoint::new(1, 0.8);
        let pp = PhasePoint::new(-2, 2.1);
        let u = weyl_matrix(p, n_max);
        let v = weyl_matrix(pp, n_max);
        let lhs = v.mul(&u).mul(&v.adjoint());
        let phase = Complex64::from_polar(
            1.0,
            pp.m as f64 * p.theta() - p.m as f64 * pp.theta(),
        );
        let rhs = u.scaled(phase);
        for k in -5i64..=5 {
            for l in -5i64..=5 {
                assert!((lhs.get(k, l) - rhs.get(k, l)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn truncated_trace_of_weyl() {
        let n_max = 16;
        let id = weyl_matrix(PhasePoint::new(0, 0.0), n_max);
        assert!(
            (id.trace().re / (2 * n_max + 1) as f64 - 1.0).abs() < 1e-14
        );
        // theta-average of the trace vanishes for m != 0
        let grid = AngleGrid::new(64).unwrap();
        for m in [1i64, 3, -2] {
            let avg: Complex64 = grid
                .points()
                .map(|t| weyl_matrix(PhasePoint::new(m, t), n_max).trace())
                .sum::<Complex64>()
                / grid.size() as f64;
            assert!(avg.norm() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn transform_of_basis_fiducial() {
        let e0 = FourierState::basis(0, 0).unwrap();
        let grid = AngleGrid::new(16).unwrap();
        let t = gabor_transform(&e0, &e0, 3, grid);
        for m in -3i64..=3 {
            for j in 0..grid.size() {
                let expect = if m == 0 { 1.0 } else { 0.0 };
                assert!((t.get(m, j) - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn isometry_and_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phi = make_fiducial(FiducialKind::VonMises(2.0), 16).unwrap();
        let grid = AngleGrid::new(256).unwrap();
        for _ in 0..3 {
            let psi = random_state(16, &mut rng);
            let t = gabor_transform(&phi, &psi, 48, grid);
            assert!((t.norm_sqr() - 1.0).abs() < 1e-10);
            let rec = gabor_reconstruct(&phi, &t).unwrap();
            let err: f64 = (-(rec.n_max() as i64)..=rec.n_max() as i64)
                .map(|n| (rec.get(n) - psi.get(n)).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-10, "reconstruction error {err:.3e}");
        }
    }

    #[test]
    fn reconstruction_with_basis_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = FourierState::basis(0, 0).unwrap();
        let psi = random_state(6, &mut rng);
        let grid = AngleGrid::new(32).unwrap();
        let t = gabor_transform(&phi, &psi, 6, grid);
        let rec = gabor_reconstruct(&phi, &t).unwrap();
        for n in psi.indices() {
            assert!((rec.get(n) - psi.get(n)).norm() < 1e-12);
        }
        // zero table -> zero state
        let zt = GaborTable {
            m_max: 2,
            grid,
            values: vec![vec![Complex64::new(0.0, 0.0); grid.size()]; 5],
        };
        assert!(gabor_reconstruct(&phi, &zt).unwrap().norm() < 1e-15);
    }

    #[test]
    fn reproducing_property() {
        // Psi(p) = (1/2pi) sum_{m'} int dtheta' K(p, p') Psi(p')
        let phi = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let psi = random_state(6, &mut rng);
        let grid = AngleGrid::new(128).unwrap();
        let m_max = 20usize;
        let t = gabor_transform(&phi, &psi, m_max, grid);
        let p = PhasePoint::new(1, grid.theta(17));
        let mut acc = Complex64::new(0.0, 0.0);
        for m in -(m_max as i64)..=m_max as i64 {
            for j in 0..grid.size() {
                let pp = PhasePoint::new(m, grid.theta(j));
                acc += kernel_numeric(&phi, p, pp) * t.get(m, j);
            }
        }
        acc /= grid.size() as f64;
        let direct = t.get(p.m, 17);
        assert!((acc - direct).norm() < 1e-7, "{acc} vs {direct}");
    }

    #[test]
    fn transform_covariance_modulus() {
        // |(Gabor of U(p) psi)(q)| = |(Gabor of psi)(q - p)| at grid-aligned
        // translations
        let phi = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = random_state(5, &mut rng);
        let grid = AngleGrid::new(64).unwrap();
        let j0 = 9usize;
        let p = PhasePoint::new(2, grid.theta(j0));
        let t0 = gabor_transform(&phi, &psi, 12, grid);
        let t1 = gabor_transform(&phi, &weyl_apply(p, &psi), 12, grid);
        for m in -9i64..=9 {
            for j in 0..grid.size() {
                let a = t1.get(m, j).norm();
                let b = t0
                    .get(m - p.m, (j + grid.size() - j0) % grid.size())
                    .norm();
                assert!((a - b).abs() < 1e-10, "m={m} j={j}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn isometry_defect_monotone_in_m_max() {
        let phi = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = random_state(8, &mut rng);
        let grid = AngleGrid::new(128).unwrap();
        let defect = |m_max: usize| -> f64 {
            (gabor_transform(&phi, &psi, m_max, grid).norm_sqr() - 1.0).abs()
        };
        let (d1, d2, d3) = (defect(8), defect(16), defect(24));
        assert!(d1 >= d2 && d2 >= d3, "{d1:.3e} {d2:.3e} {d3:.3e}");
        assert!(d3 < 1e-10);
    }

    #[test]
    fn kernel_numeric_examples() {
        let phi = make_fiducial(FiducialKind::Dirichlet(3), 5).unwrap();
        let p = PhasePoint::new(1, 2.2);
        assert!((kernel_numeric(&phi, p, p) - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        // spot-check the Fourier data of a self-transform row against dft
        let grid = AngleGrid::new(32).unwrap();
        let t = gabor_transform(&phi, &phi, 4, grid);
        let row0 = &t.values[4];
        let c = dft(row0);
        // row m=0: Psi(0,theta) = sum_k |phi_hat(k)|^2 e^{i k theta}
        for k in -5i64..=5 {
            let expect = phi.get(k).norm_sqr();
            assert!((c[idx_of(k, 32)] - Complex64::new(expect, 0.0)).norm() < 1e-13);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn weyl_apply_preserves_norm(
            seed in 0u64..1000,
            m in -5i64..5,
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random_state(5, &mut rng);
            let u = weyl_apply(PhasePoint::new(m, theta), &psi);
            prop_assert!((u.norm() - 1.0).abs() < 1e-13);
        }
    }
}
