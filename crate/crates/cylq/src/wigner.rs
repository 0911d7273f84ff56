//! The Wigner distribution of a state on the discrete cylinder, computed
//! three ways: the coefficient-space diagonal sum (the defining route here),
//! the transported-parity expectation, and the symplectic Fourier transform
//! of the state's self Gabor table.
//!
//! Integer-m definition:
//!   W(m, theta) = (1/2pi) sum_{n + n' = 2m} conj(psi_hat(n)) psi_hat(n') e^{i (n'-n) theta},
//! equivalently (1/2pi) sum_k e^{-2 i k theta} conj(psi_hat(m+k)) psi_hat(m-k).
//! With this reading every structural identity holds exactly: normalization
//! (1 with the measure sum_m int dtheta), the parity-expectation equality,
//! and the symplectic retrieval. Interference between coefficient pairs of
//! odd index sum lives on the half-integer lattice; see
//! `wigner_half_integer`.

use crate::core::{AngleGrid, FourierState, PhasePoint, Result, TAU};
use crate::gabor::gabor_transform;
use num_complex::Complex64;

/// Real phase-space table W[m][j] on the integer lattice.
#[derive(Debug, Clone)]
pub struct WignerTable {
    pub m_max: usize,
    pub grid: AngleGrid,
    /// values[m + m_max][j] = W(m, theta_j)
    pub values: Vec<Vec<f64>>,
}

impl WignerTable {
    pub fn get(&self, m: i64, j: usize) -> f64 {
        let mm = self.m_max as i64;
        if m < -mm || m > mm {
            0.0
        } else {
            self.values[(m + mm) as usize][j]
        }
    }

    /// sum_m int dtheta W — equals 1 for a unit-norm state once the rows
    /// cover the state's band.
    pub fn normalization(&self) -> f64 {
        let w = self.grid.weight();
        self.values
            .iter()
            .map(|row| row.iter().sum::<f64>() * w)
            .sum()
    }

    /// int dtheta W(m, theta): equals |psi_hat(m)|^2 (momentum marginal).
    pub fn momentum_marginal(&self, m: i64) -> f64 {
        let mm = self.m_max as i64;
        if m < -mm || m > mm {
            return 0.0;
        }
        let row = &self.values[(m + mm) as usize];
        row.iter().sum::<f64>() * self.grid.weight()
    }
}

fn wigner_complex(psi: &FourierState, m: i64, theta: f64) -> Complex64 {
    let nm = psi.n_max() as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for k in -2 * nm..=2 * nm {
        let (a, b) = (m + k, m - k);
        if a.abs() <= nm && b.abs() <= nm {
            s += Complex64::from_polar(1.0, -2.0 * k as f64 * theta)
                * psi.get(a).conj()
                * psi.get(b);
        }
    }
    s / TAU
}

/// Wigner value at an integer lattice point by the diagonal sum.
pub fn wigner(psi: &FourierState, p: PhasePoint) -> f64 {
    let v = wigner_complex(psi, p.m, p.theta());
    assert!(
        v.im.abs() < 1e-12,
        "Wigner value has imaginary residue {:.3e}",
        v.im
    );
    v.re
}

/// Full table over m in [-m_max, m_max] and the grid.
pub fn wigner_table(psi: &FourierState, m_max: usize, grid: AngleGrid) -> WignerTable {
    let mm = m_max as i64;
    let values = crate::core::parallel_map_rows(2 * m_max + 1, |row| {
        let m = row as i64 - mm;
        grid.points()
            .map(|t| {
                let v = wigner_complex(psi, m, t);
                assert!(v.im.abs() < 1e-12);
                v.re
            })
            .collect::<Vec<f64>>()
    });
    WignerTable {
        m_max,
        grid,
        values,
    }
}

/// Wigner value as (1/2pi) <psi | U(p) P U(p)^dag psi> where P reflects
/// coefficients, psi_hat(n) -> psi_hat(-n).
pub fn wigner_as_parity_expectation(psi: &FourierState, p: PhasePoint) -> f64 {
    // <psi | U P U^dag psi> = <U^dag psi | P U^dag psi>; the projective
    // phase of U^dag cancels in the expectation
    let nb = psi.n_max() + p.m.unsigned_abs() as usize;
    let mut ud = FourierState::zero(nb);
    for k in (-(nb as i64))..=(nb as i64) {
        let src = k + p.m;
        if src.unsigned_abs() as usize <= psi.n_max() {
            // (U^dag psi)^hat(k) = e^{-i m theta/2} e^{i (k+m) theta} psi_hat(k+m)
            let v = Complex64::from_polar(1.0, -p.m as f64 * p.theta() / 2.0)
                * Complex64::from_polar(1.0, src as f64 * p.theta())
                * psi.get(src);
            ud.set(k, v);
        }
    }
    let mut reflected = FourierState::zero(nb);
    for k in (-(nb as i64))..=(nb as i64) {
        reflected.set(k, ud.get(-k));
    }
    let v = ud.inner(&reflected) / TAU;
    assert!(v.im.abs() < 1e-11, "imaginary residue {:.3e}", v.im);
    v.re
}

/// Wigner table from the symplectic Fourier transform of the state's self
/// Gabor table Psi(m', theta') = <psi_{(m',theta')} | psi>:
///   W(m, theta) = (1/(2pi)^2) sum_{m'} int dtheta' e^{i (m' theta - m theta')} Psi(m', theta').
/// The theta'-integral of the half-angle phase depends on the branch
/// convention; integrating over the double cover [0, 4pi) (the consistent
/// reading) cancels every odd-m' row and doubles the even ones, so the sum
/// below runs over even m' only, with plain single-period integrals.
pub fn wigner_from_gabor(psi: &FourierState, m_max: usize, grid: AngleGrid) -> Result<WignerTable> {
    let nm = psi.n_max();
    let table = gabor_transform(psi, psi, 2 * nm, grid);
    let k = grid.size();
    // integ[(m' index, m index)] = (1/2pi) int dtheta' e^{-i m theta'} Psi(m', theta')
    // (for even m' the integrand is 2pi-periodic: grid mean is exact)
    let mm_out = m_max as i64;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(2 * m_max + 1);
    // precompute per even m' the mean against e^{-i m theta}
    let mut even_ms: Vec<i64> = Vec::new();
    for mp in -(2 * nm as i64)..=(2 * nm as i64) {
        if mp.rem_euclid(2) == 0 {
            even_ms.push(mp);
        }
    }
    let mut integ = std::collections::HashMap::new();
    for &mp in &even_ms {
        let row = &table.values[(mp + 2 * nm as i64) as usize];
        for m in -mm_out..=mm_out {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, v) in row.iter().enumerate() {
                s += v * Complex64::from_polar(1.0, -(m as f64) * grid.theta(j));
            }
            integ.insert((mp, m), s / k as f64);
        }
    }
    for m in -mm_out..=mm_out {
        let row: Vec<f64> = grid
            .points()
            .map(|t| {
                let mut s = Complex64::new(0.0, 0.0);
                for &mp in &even_ms {
                    s += Complex64::from_polar(1.0, mp as f64 * t) * integ[&(mp, m)];
                }
                let v = s / TAU;
                assert!(v.im.abs() < 1e-10, "imaginary residue {:.3e}", v.im);
                v.re
            })
            .collect();
        rows.push(row);
    }
    Ok(WignerTable {
        m_max,
        grid,
        values: rows,
    })
}

/// Diagnostic value on the half-integer lattice: for odd s = 2m the
/// interference terms absent from the integer table,
///   W_{s/2}(theta) = (1/2pi) sum_{n + n' = s} conj(psi_hat(n)) psi_hat(n') e^{i (n'-n) theta}.
/// Together with the integer rows this restores the exact angle marginal
/// sum_{m in Z/2} W(m, theta) = |psi(theta)|^2. An extension beyond the
/// integer-lattice transform.
pub fn wigner_half_integer(psi: &FourierState, s: i64, theta: f64) -> f64 {
    assert!(s.rem_euclid(2) == 1, "use the integer table for even index sums");
    let nm = psi.n_max() as i64;
    let mut v = Complex64::new(0.0, 0.0);
    for n in -nm..=nm {
        let np = s - n;
        if np.abs() <= nm {
            v += psi.get(n).conj()
                * psi.get(np)
                * Complex64::from_polar(1.0, (np - n) as f64 * theta);
        }
    }
    let v = v / TAU;
    assert!(v.im.abs() < 1e-12);
    v.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::synthesize;
    use crate::gabor::weyl_apply;
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
    fn eigenstate_rows() {
        let e2 = FourierState::basis(4, 2).unwrap();
        let grid = AngleGrid::new(32).unwrap();
        let t = wigner_table(&e2, 4, grid);
        for m in -4i64..=4 {
            for j in 0..grid.size() {
                let expect = if m == 2 { 1.0 / TAU } else { 0.0 };
                assert!((t.get(m, j) - expect).abs() < 1e-14, "m={m}");
            }
        }
        assert!(t.values.iter().flatten().all(|&v| v >= -1e-15));
        assert!((t.normalization() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_and_marginals_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let grid = AngleGrid::new(64).unwrap();
        for _ in 0..4 {
            let psi = random_state(6, &mut rng);
            let t = wigner_table(&psi, 12, grid);
            assert!((t.normalization() - 1.0).abs() < 1e-12);
            for m in -6i64..=6 {
                assert!(
                    (t.momentum_marginal(m) - psi.get(m).norm_sqr()).abs() < 1e-13,
                    "m={m}"
                );
            }
        }
    }

    #[test]
    fn superposition_integer_rows_and_half_integer_interference() {
        // (e0 + e1)/sqrt(2): integer rows are flat 1/(4pi); the cross term
        // sits at index sum 1 and goes negative on half the circle
        let mut psi = FourierState::zero(1);
        let a = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        psi.set(0, a);
        psi.set(1, a);
        let grid = AngleGrid::new(32).unwrap();
        let t = wigner_table(&psi, 3, grid);
        for j in 0..grid.size() {
            assert!((t.get(0, j) - 1.0 / (2.0 * TAU)).abs() < 1e-14);
            assert!((t.get(1, j) - 1.0 / (2.0 * TAU)).abs() < 1e-14);
        }
        assert!((t.normalization() - 1.0).abs() < 1e-13);
        // W_{1/2}(theta) = cos(theta) / (2pi)
        let mut saw_negative = false;
        for t in grid.points() {
            let v = wigner_half_integer(&psi, 1, t);
            assert!((v - t.cos() / TAU).abs() < 1e-13);
            if v < -1e-3 {
                saw_negative = true;
            }
        }
        assert!(saw_negative);
    }

    #[test]
    fn half_integer_rows_restore_angle_marginal() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let psi = random_state(4, &mut rng);
        let grid = AngleGrid::new(32).unwrap();
        let samples = synthesize(&psi, grid).unwrap();
        let nm = psi.n_max() as i64;
        for (j, th) in grid.points().enumerate() {
            let mut total = 0.0;
            for s in -2 * nm..=2 * nm {
                if s.rem_euclid(2) == 0 {
                    total += wigner(&psi, PhasePoint::new(s / 2, th));
                } else {
                    total += wigner_half_integer(&psi, s, th);
                }
            }
            assert!(
                (total - samples.values[j].norm_sqr()).abs() < 1e-12,
                "theta={th}"
            );
        }
    }

    #[test]
    fn parity_route_examples() {
        let e0 = FourierState::basis(2, 0).unwrap();
        assert!(
            (wigner_as_parity_expectation(&e0, PhasePoint::new(0, 0.0)) - 1.0 / TAU).abs()
                < 1e-14
        );
        let e1 = FourierState::basis(2, 1).unwrap();
        let p = PhasePoint::new(1, 0.0);
        assert!((wigner_as_parity_expectation(&e1, p) - 1.0 / TAU).abs() < 1e-14);
        assert!((wigner(&e1, p) - 1.0 / TAU).abs() < 1e-14);
    }

    #[test]
    fn symplectic_route_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let grid = AngleGrid::new(64).unwrap();
        for _ in 0..3 {
            let psi = random_state(4, &mut rng);
            let direct = wigner_table(&psi, 4, grid);
            let sympl = wigner_from_gabor(&psi, 4, grid).unwrap();
            let mut worst: f64 = 0.0;
            for m in -4i64..=4 {
                for j in 0..grid.size() {
                    worst = worst.max((direct.get(m, j) - sympl.get(m, j)).abs());
                }
            }
            assert!(worst < 1e-12, "route disagreement {worst:.3e}");
        }
        // e0 row
        let e0 = FourierState::basis(2, 0).unwrap();
        let t = wigner_from_gabor(&e0, 2, grid).unwrap();
        for j in 0..grid.size() {
            assert!((t.get(0, j) - 1.0 / TAU).abs() < 1e-13);
        }
    }

    #[test]
    fn covariance_under_weyl_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let psi = random_state(4, &mut rng);
        let grid = AngleGrid::new(64).unwrap();
        let j0 = 11usize;
        let p = PhasePoint::new(2, grid.theta(j0));
        let shifted = weyl_apply(p, &psi);
        for m in -3i64..=3 {
            for j in 0..grid.size() {
                let lhs = wigner(&shifted, PhasePoint::new(m + p.m, grid.theta((j + j0) % grid.size())));
                let rhs = wigner(&psi, PhasePoint::new(m, grid.theta(j)));
                assert!((lhs - rhs).abs() < 1e-12, "m={m} j={j}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn parity_route_equals_diagonal_sum(
            seed in 0u64..500,
            m in -4i64..4,
            theta in 0.0f64..std::f64::consts::TAU,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random_state(4, &mut rng);
            let p = PhasePoint::new(m, theta);
            prop_assert!((wigner(&psi, p) - wigner_as_parity_expectation(&psi, p)).abs() < 1e-11);
        }
    }
}
