//! Verification suite: the library's exact identities packaged as named
//! checks with pinned tolerances, runnable from the CLI (`cylq verify`) or
//! from the acceptance integration test.

use crate::core::{
    AngleGrid, ClassicalObservable, FourierState, PhasePoint, Result, Weight, TAU,
};
use crate::fiducials::{closed_kernel, make_fiducial, FiducialKind};
use crate::fourier::{dft, idx_of, synthesize, CircleSamples};
use crate::gabor::{gabor_reconstruct, gabor_transform, kernel_numeric};
use crate::portrait::{autocorrelation_distribution, portrait, portrait_of_operator};
use crate::quantize::{
    build_m, covariance_defect, quantize, quantize_angle_only, quantize_momentum_only,
    resolution_defect, weight_from_state, weight_roundtrip_extrapolated, QuantizationContext,
};
use crate::wigner::{wigner, wigner_as_parity_expectation, wigner_from_gabor, wigner_table};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// One verified identity: the measured defect, the tolerance it must beat,
/// and a human-readable note with sub-results.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub note: String,
}

fn check(name: &str, value: f64, tolerance: f64, note: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        value,
        tolerance,
        pass: value.is_finite() && value < tolerance,
        note,
    }
}

/// Full verification report for serialized output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub fitted_constants: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub all_pass: bool,
}

pub fn acceptance_criteria() -> Result<Vec<CheckResult>> {
    Ok(criteria_and_constants(1.0)?.0)
}

/// Same checks with every tolerance multiplied by `tol_scale` (a scale < 1
/// tightens them; useful for exercising the failure path).
pub fn acceptance_criteria_with_scale(tol_scale: f64) -> Result<Vec<CheckResult>> {
    Ok(criteria_and_constants(tol_scale)?.0)
}

pub fn run_report(tol_scale: f64) -> Result<Report> {
    let (checks, fitted_constants) = criteria_and_constants(tol_scale)?;
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(Report {
        checks,
        fitted_constants,
        notes: vec![
            "von Mises kernel: the Bessel-argument form with compensating half-angle phase, \
             A e^{-i mu Delta/2} I_mu(2 lambda cos(Delta/2)) / I_0(2 lambda), is the form that \
             matches the numeric kernel; the product form fails at the 1e-3 level."
                .to_string(),
            "coherent-state momentum symbols carry a negative first-moment term: \
             A_m = L - <m> I and A_{m^2} = L^2 - 2<m> L + <m^2> I; the positive sign fails \
             by 2<m> (see the cs-closed-forms note)."
                .to_string(),
            format!(
                "Gaussian kernel global constant: fitted here vs the display value \
                 {:.16} quoted with the closed form (cf. 1/sqrt(pi) = {:.16}).",
                0.564_131_226_218_841_8,
                1.0 / std::f64::consts::PI.sqrt()
            ),
        ],
        all_pass,
    })
}

fn random_state(n_max: usize, rng: &mut ChaCha8Rng) -> FourierState {
    let coeffs: Vec<Complex64> = (0..2 * n_max + 1)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    FourierState::new_normalized(n_max, coeffs).expect("random coefficients are finite")
}

fn criteria_and_constants(tol_scale: f64) -> Result<(Vec<CheckResult>, BTreeMap<String, f64>)> {
    let mut out = Vec::new();
    let mut constants = BTreeMap::new();

    // --- 1 & 2: frame isometry and reconstruction -------------------------
    // von Mises(2) fiducial, N = 16, M = 48, K = 256, 10 random states.
    {
        let phi = make_fiducial(FiducialKind::VonMises(2.0), 16)?;
        let grid = AngleGrid::new(256)?;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut iso_worst: f64 = 0.0;
        let mut rec_worst: f64 = 0.0;
        for _ in 0..10 {
            let psi = random_state(16, &mut rng);
            let table = gabor_transform(&phi, &psi, 48, grid);
            iso_worst = iso_worst.max((table.norm_sqr() - 1.0).abs());
            let rec = gabor_reconstruct(&phi, &table)?;
            let mut d: f64 = 0.0;
            for n in rec.indices() {
                d = d.max((rec.get(n) - psi.get(n)).norm());
            }
            rec_worst = rec_worst.max(d);
        }
        out.push(check(
            "frame-isometry",
            iso_worst,
            1e-8 * tol_scale,
            "worst | ||Psi||^2_Gamma - ||psi||^2 | over 10 random states, \
             von Mises(2) fiducial, N=16 M=48 K=256"
                .into(),
        ));
        out.push(check(
            "reconstruction",
            rec_worst,
            1e-8 * tol_scale,
            "worst coefficient error of the analysis/synthesis round trip, same sizes".into(),
        ));
    }

    // --- 3: reproducing kernels vs closed forms ---------------------------
    {
        let points = [
            PhasePoint::new(0, 0.0),
            PhasePoint::new(1, 0.9),
            PhasePoint::new(-2, 2.2),
            PhasePoint::new(3, 4.0),
            PhasePoint::new(-1, 5.6),
        ];
        // (kind, truncation, fitted constant allowed)
        let families: [(FiducialKind, usize, bool, &str); 6] = [
            (FiducialKind::Constant, 8, false, "constant"),
            (FiducialKind::Basis(1), 8, false, "basis"),
            (FiducialKind::Dirichlet(3), 8, false, "dirichlet"),
            (FiducialKind::PeriodizedGaussian(1.0), 24, true, "gaussian"),
            (FiducialKind::Fejer(3), 8, true, "fejer"),
            (FiducialKind::VonMises(2.0), 24, true, "von_mises"),
        ];
        let mut worst: f64 = 0.0;
        let mut note = String::from("worst |numeric - c*closed| on a 5x5 phase-point sample; ");
        for (kind, n_max, fitted, label) in families {
            let phi = make_fiducial(kind, n_max)?;
            let mut num = Vec::new();
            let mut clo = Vec::new();
            for &p in &points {
                for &pp in &points {
                    num.push(kernel_numeric(&phi, p, pp));
                    clo.push(closed_kernel(kind, p, pp)?);
                }
            }
            let c = if fitted {
                let den: f64 = clo.iter().map(|v| v.norm_sqr()).sum();
                let s: Complex64 = num.iter().zip(&clo).map(|(n, c)| n * c.conj()).sum();
                (s / den).re
            } else {
                1.0
            };
            let d = num
                .iter()
                .zip(&clo)
                .map(|(n, cl)| (n - cl * c).norm())
                .fold(0.0, f64::max);
            worst = worst.max(d);
            if fitted {
                constants.insert(format!("kernel_constant_{label}"), c);
                note.push_str(&format!("{label}: c={c:.12}, defect {d:.2e}; "));
            } else {
                note.push_str(&format!("{label}: exact, defect {d:.2e}; "));
            }
        }
        note.push_str("von Mises closed form: half-angle-phase Bessel-argument variant");
        out.push(check("reproducing-kernels", worst, 1e-8 * tol_scale, note));
    }

    // --- 4: weight round trip --------------------------------------------
    {
        let thetas = [0.7, 1.9, 3.1, 4.3, 5.5];
        // parity weight, conditionally convergent at odd m: extrapolated trace
        let grid = AngleGrid::new(256)?;
        let m_par = build_m(&Weight::parity(4), 61, grid)?;
        let mut worst: f64 = 0.0;
        for m in -2i64..=2 {
            for &t in &thetas {
                let v = weight_roundtrip_extrapolated(&m_par, PhasePoint::new(m, t), 24, 55);
                worst = worst.max((v - Complex64::new(1.0, 0.0)).norm());
            }
        }
        let parity_worst = worst;
        // CS weight: the trace series terminates, round trip is exact
        let psi = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 8)?;
        let w_cs = weight_from_state(&psi)?;
        let m_cs = build_m(&w_cs, 24, AngleGrid::new(128)?)?;
        for m in -2i64..=2 {
            for &t in &thetas {
                let v = weight_roundtrip_extrapolated(&m_cs, PhasePoint::new(m, t), 18, 24);
                worst = worst.max((v - w_cs.eval(m, t)).norm());
            }
        }
        out.push(check(
            "weight-round-trip",
            worst,
            1e-8 * tol_scale,
            format!(
                "weight recovered from its base operator at 25 lattice points per family; \
                 parity (epsilon-extrapolated trace) {parity_worst:.2e}, coherent-state exact"
            ),
        ));
    }

    // --- 5: parity-weight closed forms ------------------------------------
    let parity_ctx = QuantizationContext::new(Weight::parity(32), 16, AngleGrid::new(160)?)?;
    {
        let ctx = &parity_ctx;
        let nm = ctx.n_max as i64;
        let a_m = quantize_momentum_only(|m| Complex64::new(m as f64, 0.0), 16, ctx)?;
        let a_m2 = quantize_momentum_only(|m| Complex64::new((m * m) as f64, 0.0), 16, ctx)?;
        let mut worst: f64 = 0.0;
        for k in -nm..=nm {
            for l in -nm..=nm {
                let dm = if k == l { k as f64 } else { 0.0 };
                let dm2 = if k == l { (k * k) as f64 } else { 0.0 };
                worst = worst.max((a_m.get(k, l) - Complex64::new(dm, 0.0)).norm());
                worst = worst.max((a_m2.get(k, l) - Complex64::new(dm2, 0.0)).norm());
            }
        }
        let cos_s = CircleSamples::from_fn(ctx.grid, |t| Complex64::new(t.cos(), 0.0));
        let sin_s = CircleSamples::from_fn(ctx.grid, |t| Complex64::new(t.sin(), 0.0));
        let a_cos = quantize_angle_only(&cos_s, ctx)?;
        let a_sin = quantize_angle_only(&sin_s, ctx)?;
        for k in -nm..=nm {
            for l in -nm..=nm {
                let d = k - l;
                let ec = if d.abs() == 1 {
                    Complex64::new(0.5, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                let es = match d {
                    1 => Complex64::new(0.0, -0.5),
                    -1 => Complex64::new(0.0, 0.5),
                    _ => Complex64::new(0.0, 0.0),
                };
                worst = worst.max((a_cos.get(k, l) - ec).norm());
                worst = worst.max((a_sin.get(k, l) - es).norm());
            }
        }
        out.push(check(
            "parity-closed-forms",
            worst,
            1e-10 * tol_scale,
            "A_m = diag(n), A_{m^2} = diag(n^2), A_cos/A_sin the exact Toeplitz \
             multiplication matrices, N=16"
                .into(),
        ));
    }

    // --- 6: coherent-state closed forms -----------------------------------
    {
        let mut rng = ChaCha8Rng::seed_from_u64(2025);
        let mut coeffs: Vec<Complex64> = (0..17)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        coeffs[8 + 2] += Complex64::new(3.0, 0.0); // bias so <m> != 0
        let psi = FourierState::new_normalized(8, coeffs)?;
        let mean_m: f64 = psi.indices().map(|j| j as f64 * psi.get(j).norm_sqr()).sum();
        let mean_m2: f64 = psi
            .indices()
            .map(|j| (j * j) as f64 * psi.get(j).norm_sqr())
            .sum();
        let ctx = QuantizationContext::new(weight_from_state(&psi)?, 12, AngleGrid::new(96)?)?;
        let a_m = quantize_momentum_only(|m| Complex64::new(m as f64, 0.0), 20, &ctx)?;
        let a_m2 = quantize_momentum_only(|m| Complex64::new((m * m) as f64, 0.0), 20, &ctx)?;
        let mut worst: f64 = 0.0;
        let mut plus_defect: f64 = 0.0;
        for k in a_m.indices() {
            let kk = k as f64;
            worst = worst.max((a_m.get(k, k) - Complex64::new(kk - mean_m, 0.0)).norm());
            plus_defect =
                plus_defect.max((a_m.get(k, k) - Complex64::new(kk + mean_m, 0.0)).norm());
            worst = worst.max(
                (a_m2.get(k, k) - Complex64::new(kk * kk - 2.0 * mean_m * kk + mean_m2, 0.0))
                    .norm(),
            );
        }
        out.push(check(
            "cs-closed-forms",
            worst,
            1e-8 * tol_scale,
            format!(
                "A_m = L - <m> I and A_{{m^2}} = L^2 - 2<m> L + <m^2> I with <m> = {mean_m:.6}; \
                 the opposite first-moment sign misses by {plus_defect:.3e}"
            ),
        ));
    }

    // --- 7: unit quantizes to the identity --------------------------------
    {
        let phi = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 8)?;
        let cs_ctx = QuantizationContext::new(weight_from_state(&phi)?, 12, AngleGrid::new(160)?)?;
        let d_par = resolution_defect(&parity_ctx, parity_ctx.weight.m_max);
        let d_cs = resolution_defect(&cs_ctx, cs_ctx.weight.m_max);
        out.push(check(
            "unit-to-identity",
            d_par.max(d_cs),
            1e-8 * tol_scale,
            format!(
                "truncated resolution sum vs identity on interior indices; \
                 parity {d_par:.2e}, coherent-state {d_cs:.2e}"
            ),
        ));
    }

    // --- 8: covariance -----------------------------------------------------
    {
        let ctx = &parity_ctx;
        let mut rng = ChaCha8Rng::seed_from_u64(2026);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let g: Vec<Complex64> = (0..7)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, 0.0))
                .collect();
            let h_state = random_state(4, &mut rng);
            let h = synthesize(&h_state, ctx.grid)?.values;
            let f = ClassicalObservable::separable(3, ctx.grid, g, h)?;
            for _ in 0..5 {
                let m0 = rng.gen_range(-2i64..=2);
                let j0 = rng.gen_range(0..ctx.grid.size());
                let p = PhasePoint::new(m0, ctx.grid.theta(j0));
                worst = worst.max(covariance_defect(&f, ctx, p)?);
            }
        }
        out.push(check(
            "covariance",
            worst,
            1e-8 * tol_scale,
            "operator-norm defect of transport-vs-translate, 5 random separable \
             observables x 5 random phase points, parity weight"
                .into(),
        ));
    }

    // --- 9: Wigner identities ----------------------------------------------
    {
        let grid = AngleGrid::new(160)?;
        let mut rng = ChaCha8Rng::seed_from_u64(2027);
        let mut norm_defect: f64 = 0.0;
        let mut route_defect: f64 = 0.0;
        let sample = [(0i64, 5usize), (2, 40), (-3, 111)];
        for _ in 0..10 {
            let psi = random_state(12, &mut rng);
            let table = wigner_table(&psi, 24, grid);
            norm_defect = norm_defect.max((table.normalization() - 1.0).abs());
            let sympl = wigner_from_gabor(&psi, 4, grid)?;
            for &(m, j) in &sample {
                let p = PhasePoint::new(m, grid.theta(j));
                let w1 = wigner(&psi, p);
                let w2 = wigner_as_parity_expectation(&psi, p);
                let w3 = sympl.get(m, j);
                route_defect = route_defect
                    .max((w1 - w2).abs())
                    .max((w1 - w3).abs());
            }
        }
        let mut eig_defect: f64 = 0.0;
        for n in [0i64, 3, -5] {
            let e = FourierState::basis(6, n)?;
            let table = wigner_table(&e, 10, grid);
            for m in -10i64..=10 {
                for j in 0..grid.size() {
                    let expect = if m == n { 1.0 / TAU } else { 0.0 };
                    eig_defect = eig_defect.max((table.get(m, j) - expect).abs());
                }
            }
        }
        let ratio = (norm_defect / 1e-10)
            .max(eig_defect / 1e-10)
            .max(route_defect / 1e-7);
        out.push(check(
            "wigner-identities",
            ratio,
            tol_scale,
            format!(
                "worst defect-to-tolerance ratio; normalization {norm_defect:.2e} (tol 1e-10), \
                 eigenstate rows {eig_defect:.2e} (tol 1e-10), three-route agreement \
                 {route_defect:.2e} (tol 1e-7)"
            ),
        ));
    }

    // --- 10: portraits ------------------------------------------------------
    {
        let grid = AngleGrid::new(128)?;
        let phi = make_fiducial(FiducialKind::VonMises(2.0), 16)?;
        let w_cs = weight_from_state(&phi)?;
        // unity maps to unity, both weights
        let mut unity_defect: f64 = 0.0;
        for w in [Weight::parity(12), weight_from_state(&phi)?] {
            let gm = 2 + w.m_max;
            let f = ClassicalObservable::momentum_only(
                gm,
                grid,
                vec![Complex64::new(1.0, 0.0); 2 * gm + 1],
            )?;
            let t = portrait(&f, &w, 2, grid)?;
            for m in -2i64..=2 {
                for j in 0..grid.size() {
                    unity_defect = unity_defect.max((t.get(m, j) - Complex64::new(1.0, 0.0)).norm());
                }
            }
        }
        // parity portrait reproduces band-limited f once the weight truncation
        // exceeds the band
        let w_par = Weight::parity(24);
        let mut rng = ChaCha8Rng::seed_from_u64(2028);
        let table: Vec<Vec<Complex64>> = (0..7)
            .map(|_| {
                let a = rng.gen::<f64>() - 0.5;
                let b = rng.gen::<f64>() - 0.5;
                grid.points()
                    .map(|t| Complex64::new(a * (2.0 * t).cos() + b * t.sin(), 0.0))
                    .collect()
            })
            .collect();
        let f = ClassicalObservable::general(3, grid, table)?;
        let t = portrait(&f, &w_par, 3, grid)?;
        let mut repro_defect: f64 = 0.0;
        for m in -3i64..=3 {
            for j in 0..grid.size() {
                repro_defect = repro_defect.max((t.get(m, j) - f.value(m, j)).norm());
            }
        }
        // convolution route vs trace route, coherent-state weight; the
        // operator truncation must cover the transported base-operator
        // support, n_max >= state width + portrait momentum reach
        let phi_g = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 8)?;
        let w_g = weight_from_state(&phi_g)?;
        let ctx = QuantizationContext::new(weight_from_state(&phi_g)?, 12, grid)?;
        let table2: Vec<Vec<Complex64>> = (0..5)
            .map(|_| {
                let a = rng.gen::<f64>() - 0.5;
                let b = rng.gen::<f64>() - 0.5;
                grid.points()
                    .map(|t| Complex64::new(0.3 + a * t.cos() + b * (2.0 * t).sin(), 0.0))
                    .collect()
            })
            .collect();
        let f2 = ClassicalObservable::general(2, grid, table2)?;
        let a_f2 = quantize(&f2, &ctx)?;
        let t2 = portrait(&f2, &w_g, 3, grid)?;
        let mut route_defect: f64 = 0.0;
        for m in -3i64..=3 {
            for &j in &[0usize, 19, 64, 101] {
                let tr = portrait_of_operator(&a_f2, &ctx, PhasePoint::new(m, grid.theta(j)))?;
                route_defect = route_defect.max((t2.get(m, j) - tr).norm());
            }
        }
        // coherent-state autocorrelation: nonnegative, unit mass
        let (_, status) = autocorrelation_distribution(&w_cs, PhasePoint::new(0, 0.0), grid)?;
        let k = grid.size();
        let wmm = w_cs.m_max as i64;
        let spectra: Vec<Vec<Complex64>> = (-wmm..=wmm)
            .map(|mp| {
                let row: Vec<Complex64> = grid
                    .points()
                    .map(|th| Complex64::new(w_cs.eval(mp, th).norm_sqr(), 0.0))
                    .collect();
                dft(&row)
            })
            .collect();
        let mut min_val = f64::INFINITY;
        let mut mass = 0.0;
        for mi in 0..k {
            // D(m, theta_j) = sum_{m'} e^{-i m' theta_j} mean(|w(m',.)|^2 e^{i m theta})
            let m = crate::fourier::freq_of(mi, k);
            for j in 0..k {
                let mut s = Complex64::new(0.0, 0.0);
                for mp in -wmm..=wmm {
                    s += Complex64::from_polar(1.0, -(mp as f64) * grid.theta(j))
                        * spectra[(mp + wmm) as usize][idx_of(-m, k)];
                }
                min_val = min_val.min(s.re);
                mass += s.re / k as f64;
            }
        }
        let neg_excess = (-min_val).max(0.0);
        let mass_defect = (mass - 1.0).abs();
        let ratio = (unity_defect / 1e-9)
            .max(repro_defect / 1e-6)
            .max(route_defect / 1e-8)
            .max(neg_excess / 1e-9)
            .max(mass_defect / 1e-9);
        out.push(check(
            "portraits",
            ratio,
            tol_scale,
            format!(
                "worst defect-to-tolerance ratio; unity {unity_defect:.2e} (tol 1e-9), \
                 parity band-limited reproduction {repro_defect:.2e} (tol 1e-6), \
                 convolution-vs-trace {route_defect:.2e} (tol 1e-8), coherent-state \
                 negativity {neg_excess:.2e} and mass defect {mass_defect:.2e} (tol 1e-9); \
                 status {status:?}"
            ),
        ));
    }

    // --- 11: fast paths vs the general path (master check) ------------------
    {
        let phi = make_fiducial(FiducialKind::PeriodizedGaussian(1.0), 8)?;
        let grid = AngleGrid::new(96)?;
        let ctx = QuantizationContext::new(weight_from_state(&phi)?, 12, grid)?;
        let mut rng = ChaCha8Rng::seed_from_u64(2029);
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let f = match i % 3 {
                0 => {
                    let gm = 18usize;
                    let g: Vec<Complex64> = (0..2 * gm + 1)
                        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, 0.0))
                        .collect();
                    ClassicalObservable::momentum_only(gm, grid, g)?
                }
                1 => {
                    let h = synthesize(&random_state(3, &mut rng), grid)?.values;
                    ClassicalObservable::angle_only(grid, h)?
                }
                _ => {
                    let g: Vec<Complex64> = (0..7)
                        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, 0.0))
                        .collect();
                    let h = synthesize(&random_state(3, &mut rng), grid)?.values;
                    ClassicalObservable::separable(3, grid, g, h)?
                }
            };
            let fast = quantize(&f, &ctx)?;
            // the same observable as an explicit table, quantized entrywise;
            // angle-only tables must cover the full momentum reach of the
            // cached base operator
            let gm = if f.momentum_bounded() {
                f.m_max
            } else {
                ctx.n_max + phi.n_max()
            };
            let table: Vec<Vec<Complex64>> = (0..2 * gm + 1)
                .map(|r| {
                    let m = r as i64 - gm as i64;
                    (0..grid.size()).map(|j| f.value(m, j)).collect()
                })
                .collect();
            let gen = quantize(&ClassicalObservable::general(gm, grid, table)?, &ctx)?;
            worst = worst.max(fast.max_abs_diff(&gen));
        }
        out.push(check(
            "fast-paths-vs-general",
            worst,
            1e-8 * tol_scale,
            "momentum-only, angle-only, and separable quantizers vs the general \
             entrywise kernel on 10 random observables, coherent-state weight"
                .into(),
        ));
    }

    Ok((out, constants))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_tolerances_flip_failures() {
        // a wildly tightened tolerance must fail at least one check without
        // erroring; sanity for the CLI failure path (slow: full suite twice
        // would be wasteful, so only the cheap criterion subset is exercised
        // via the public API once in the acceptance test)
        let checks = acceptance_criteria_with_scale(1e-18).unwrap();
        assert!(checks.iter().any(|c| !c.pass));
        assert_eq!(checks.len(), 11);
    }
}
