//! Weight-function quantization: the base operator M^w, its Weyl transports,
//! the linear map f -> A_f, fast paths for structured observables, and the
//! defect functionals used by the verification suite.
//!
//! Matrix elements of the base operator:
//!   [M]_{k,l} = (1/2pi) int_0^{2pi} w(k - l, theta) e^{-i (k + l) theta / 2} dtheta.
//! The integrand carries genuine half-angle phases; it is first periodicized
//! (for half-angle weights by the factor e^{i m theta / 2}), expanded in an
//! exact DFT, and finished with the closed half-frequency integrals — no
//! trapezoid error enters.

use crate::core::{
    AngleGrid, ClassicalObservable, Error, FourierState, ObservableData, OperatorMatrix,
    PhasePoint, Result, ThetaParity, Weight, TAU,
};
use crate::fourier::{dft, freq_of, half_freq_integral, idx_of};
use num_complex::Complex64;

/// Build the matrix of M^w on the truncation [-n_max, n_max].
pub fn build_m(w: &Weight, n_max: usize, grid: AngleGrid) -> Result<OperatorMatrix> {
    grid.check_size(2 * n_max + 2)?;
    let nm = n_max as i64;
    let rows = crate::core::parallel_map_rows(4 * n_max + 1, |row| {
        let m = row as i64 - 2 * nm; // matrix offset k - l
        let samples: Vec<Complex64> = grid
            .points()
            .map(|t| {
                let v = w.eval(m, t);
                match w.theta_parity {
                    ThetaParity::Periodic => v,
                    ThetaParity::HalfAngle => v * Complex64::from_polar(1.0, m as f64 * t / 2.0),
                }
            })
            .collect();
        let c = dft(&samples);
        // entries on the diagonal k - l = m
        let mut out: Vec<(i64, i64, Complex64)> = Vec::new();
        for k in -nm..=nm {
            let l = k - m;
            if l < -nm || l > nm {
                continue;
            }
            // after periodicization the remaining phase is e^{-i s_eff theta/2}
            let s_eff = match w.theta_parity {
                ThetaParity::Periodic => k + l,
                ThetaParity::HalfAngle => k + l + m, // = 2k, always even
            };
            let mut val = Complex64::new(0.0, 0.0);
            for (jj, cj) in c.iter().enumerate() {
                if cj.norm() < 1e-18 {
                    continue;
                }
                val += cj * half_freq_integral(freq_of(jj, grid.size()), s_eff);
            }
            out.push((k, l, val / TAU));
        }
        out
    });
    let mut m = OperatorMatrix::zero(n_max);
    for row in rows {
        for (k, l, v) in row {
            m.set(k, l, v);
        }
    }
    Ok(m)
}

/// Transported operator U(p) M U(p)^dag on the same truncation:
/// [U M U^dag]_{k,l} = e^{-i (k - l) theta} M_{k-m, l-m} (zero where the
/// shifted indices leave the truncation).
pub fn transport_m(m_op: &OperatorMatrix, p: PhasePoint) -> OperatorMatrix {
    let mut out = OperatorMatrix::zero(m_op.n_max());
    for k in m_op.indices() {
        for l in m_op.indices() {
            let v = m_op.get(k - p.m, l - p.m);
            if v.norm() > 0.0 {
                out.set(
                    k,
                    l,
                    Complex64::from_polar(1.0, -((k - l) as f64) * p.theta()) * v,
                );
            }
        }
    }
    out
}

/// Trace of U(p)^dag M over the truncated basis — recovers the weight when M
/// was built from it. Equals e^{i m theta/2} sum_k e^{i k theta} M_{k+m, k}.
pub fn weight_from_operator(m_op: &OperatorMatrix, p: PhasePoint) -> Complex64 {
    weight_from_operator_partial(m_op, p, m_op.n_max())
}

/// Same trace, restricted to |k| <= n_basis (used for sequence acceleration).
pub fn weight_from_operator_partial(
    m_op: &OperatorMatrix,
    p: PhasePoint,
    n_basis: usize,
) -> Complex64 {
    let nb = n_basis as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for k in -nb..=nb {
        let v = m_op.get(k + p.m, k);
        if v.norm() > 0.0 {
            s += Complex64::from_polar(1.0, k as f64 * p.theta()) * v;
        }
    }
    s * Complex64::from_polar(1.0, p.m as f64 * p.theta() / 2.0)
}

/// Coherent-state weight w_psi(m, theta) = <U(m,theta) psi | psi> of a
/// unit-norm state; normalized, symmetric, half-angle type.
pub fn weight_from_state(psi: &FourierState) -> Result<Weight> {
    if (psi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!(
            "coherent-state weight needs a unit-norm state, got norm {}",
            psi.norm()
        )));
    }
    let psi = psi.clone();
    let m_max = 2 * psi.n_max();
    let eval = move |m: i64, t: f64| -> Complex64 {
        // <U(m,t) psi, psi> = e^{i m t/2} sum_k e^{i(k-m)t} conj(psi_hat(k-m)) psi_hat(k)
        let mut s = Complex64::new(0.0, 0.0);
        for k in psi.indices() {
            let km = k - m;
            if km.unsigned_abs() as usize <= psi.n_max() {
                s += Complex64::from_polar(1.0, km as f64 * t) * psi.get(km).conj() * psi.get(k);
            }
        }
        s * Complex64::from_polar(1.0, m as f64 * t / 2.0)
    };
    Weight::new(Box::new(eval), m_max, true, true, ThetaParity::HalfAngle)
}

/// A weight together with its cached base operator, sized so that every
/// transport needed by quantization stays inside the cache.
pub struct QuantizationContext {
    pub weight: Weight,
    pub n_max: usize,
    pub grid: AngleGrid,
    /// M^w on the enlarged truncation n_max + weight.m_max.
    pub m_matrix: OperatorMatrix,
}

impl QuantizationContext {
    pub fn new(weight: Weight, n_max: usize, grid: AngleGrid) -> Result<Self> {
        grid.check_size(AngleGrid::min_size(n_max, weight.m_max))?;
        let n_big = n_max + weight.m_max;
        let m_matrix = build_m(&weight, n_big, grid)?;
        // Hermiticity of M follows from weight symmetry only when the
        // integrand w(m,theta) e^{-i(k+l)theta/2} is 2pi-periodic, i.e. for
        // half-angle weights. Periodic weights (parity among them) pick up an
        // anti-hermitian branch part on the odd-(k+l) entries.
        if weight.symmetric && weight.theta_parity == ThetaParity::HalfAngle {
            let d = m_matrix.hermitian_defect();
            if d > 1e-10 {
                return Err(Error::Precondition(format!(
                    "symmetric weight produced a non-hermitian base operator (defect {d:.3e})"
                )));
            }
        }
        let tr = m_matrix.trace();
        let w00 = weight.eval(0, 0.0);
        if (tr - w00).norm() > 1e-8 {
            return Err(Error::Precondition(format!(
                "trace of base operator {tr} deviates from w(0,0) = {w00}"
            )));
        }
        Ok(QuantizationContext {
            weight,
            n_max,
            grid,
            m_matrix,
        })
    }
}

/// Quantize a classical observable: A_f = (1/2pi) sum_m int f(m, theta)
/// U(m,theta) M U(m,theta)^dag dtheta. Structured variants dispatch to exact
/// fast paths; the general path evaluates the entrywise kernel
/// [A]_{k,l} = sum_m Fhat(m, k-l) M_{k-m, l-m} with
/// Fhat(m, j) = (1/2pi) int f(m, theta) e^{-i j theta} dtheta.
pub fn quantize(f: &ClassicalObservable, ctx: &QuantizationContext) -> Result<OperatorMatrix> {
    if f.grid != ctx.grid {
        return Err(Error::Precondition(
            "observable grid must match the quantization context grid".into(),
        ));
    }
    match &f.data {
        ObservableData::MomentumOnly { g } => {
            let g = g.clone();
            let mm = f.m_max as i64;
            quantize_momentum_only(
                move |m| {
                    if m < -mm || m > mm {
                        Complex64::new(0.0, 0.0)
                    } else {
                        g[(m + mm) as usize]
                    }
                },
                f.m_max,
                ctx,
            )
        }
        ObservableData::AngleOnly { h } => {
            let s = crate::fourier::CircleSamples::new(ctx.grid, h.clone())?;
            quantize_angle_only(&s, ctx)
        }
        ObservableData::Separable { g, h } => {
            let hc = dft(h);
            let mut a = OperatorMatrix::zero(ctx.n_max);
            let mm = f.m_max as i64;
            let k = ctx.grid.size();
            for kk in a.indices().collect::<Vec<_>>() {
                for l in a.indices().collect::<Vec<_>>() {
                    let d = kk - l;
                    if d.unsigned_abs() as usize * 2 >= k {
                        continue;
                    }
                    let hd = hc[idx_of(d, k)];
                    let mut s = Complex64::new(0.0, 0.0);
                    for m in -mm..=mm {
                        s += g[(m + mm) as usize] * ctx.m_matrix.get(kk - m, l - m);
                    }
                    a.set(kk, l, hd * s);
                }
            }
            Ok(a)
        }
        ObservableData::General { table } => {
            let mm = f.m_max as i64;
            let k = ctx.grid.size();
            let nm = ctx.n_max as i64;
            let rows = crate::core::parallel_map_rows(2 * f.m_max + 1, |row| {
                let m = row as i64 - mm;
                let c = dft(&table[row]);
                let mut part = OperatorMatrix::zero(ctx.n_max);
                for kk in -nm..=nm {
                    for l in -nm..=nm {
                        let d = kk - l;
                        if d.unsigned_abs() as usize * 2 >= k {
                            continue;
                        }
                        let v = ctx.m_matrix.get(kk - m, l - m);
                        if v.norm() > 0.0 {
                            part.add_to(kk, l, c[idx_of(d, k)] * v);
                        }
                    }
                }
                part
            });
            let mut a = OperatorMatrix::zero(ctx.n_max);
            for part in rows {
                a = a_add(a, part);
            }
            Ok(a)
        }
    }
}

fn a_add(mut a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix {
    for k in b.indices().collect::<Vec<_>>() {
        for l in b.indices().collect::<Vec<_>>() {
            a.add_to(k, l, b.get(k, l));
        }
    }
    a
}

/// Momentum-only observable f(m, theta) = g(m): the quantized operator is
/// diagonal, [A]_{k,k} = sum_m g(m) [M]_{k-m, k-m}.
pub fn quantize_momentum_only(
    g: impl Fn(i64) -> Complex64,
    g_m_max: usize,
    ctx: &QuantizationContext,
) -> Result<OperatorMatrix> {
    let mut a = OperatorMatrix::zero(ctx.n_max);
    let mm = g_m_max as i64;
    for k in a.indices().collect::<Vec<_>>() {
        let mut s = Complex64::new(0.0, 0.0);
        for m in -mm..=mm {
            s += g(m) * ctx.m_matrix.get(k - m, k - m);
        }
        a.set(k, k, s);
    }
    Ok(a)
}

/// Angle-only observable f(m, theta) = h(theta): the full (untruncated)
/// momentum sum collapses and the operator is the Toeplitz matrix
/// [A]_{k,l} = hhat(k - l) w(k - l, 0) with hhat(d) = (1/2pi) int h e^{-i d theta}.
pub fn quantize_angle_only(
    h: &crate::fourier::CircleSamples,
    ctx: &QuantizationContext,
) -> Result<OperatorMatrix> {
    if h.grid != ctx.grid {
        return Err(Error::Precondition(
            "sample grid must match the quantization context grid".into(),
        ));
    }
    let c = dft(&h.values);
    let k = ctx.grid.size();
    let mut a = OperatorMatrix::zero(ctx.n_max);
    for kk in a.indices().collect::<Vec<_>>() {
        for l in a.indices().collect::<Vec<_>>() {
            let d = kk - l;
            if d.unsigned_abs() as usize * 2 >= k {
                continue;
            }
            a.set(kk, l, c[idx_of(d, k)] * ctx.weight.eval(d, 0.0));
        }
    }
    Ok(a)
}

/// Operator-norm distance, on the interior indices |k| <= n_max/2, between
/// the transport of quantize(f) and the quantization of the translated
/// observable. Zero (to rounding) when the context caches enough of M.
pub fn covariance_defect(
    f: &ClassicalObservable,
    ctx: &QuantizationContext,
    p: PhasePoint,
) -> Result<f64> {
    let a1 = quantize(f, ctx)?;
    let a2 = quantize(&f.translate(p)?, ctx)?;
    let d = transport_m(&a1, p).sub(&a2);
    Ok(d.interior(ctx.n_max / 2).spectral_norm())
}

/// Distance from the identity of the truncated resolution sum
/// (1/2pi) sum_{|m| <= m_max} int U(m,theta) M U(m,theta)^dag dtheta,
/// evaluated on the interior third of the indices. The exact theta-average
/// kills all off-diagonal entries, leaving sum_m [M]_{k-m, k-m} on the
/// diagonal.
pub fn resolution_defect(ctx: &QuantizationContext, m_max: usize) -> f64 {
    let bound = (ctx.n_max / 3) as i64;
    let mm = m_max as i64;
    let mut worst: f64 = 0.0;
    for k in -bound..=bound {
        let mut s = Complex64::new(0.0, 0.0);
        for m in -mm..=mm {
            s += ctx.m_matrix.get(k - m, k - m);
        }
        worst = worst.max((s - Complex64::new(1.0, 0.0)).norm());
    }
    worst
}

/// Wynn epsilon-algorithm acceleration of a slowly (conditionally)
/// convergent sequence; returns the best even-column estimate.
pub fn wynn_epsilon(seq: &[Complex64]) -> Complex64 {
    let n = seq.len();
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut e0 = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut e1: Vec<Complex64> = seq.to_vec();
    let mut best = seq[n - 1];
    for step in 0..n.saturating_sub(1) {
        let mut e2 = Vec::with_capacity(e1.len().saturating_sub(1));
        for i in 0..e1.len() - 1 {
            let d = e1[i + 1] - e1[i];
            if d.norm() < 1e-300 {
                e2.push(e0[i + 1]);
            } else {
                e2.push(e0[i + 1] + d.inv());
            }
        }
        e0 = std::mem::take(&mut e1);
        e1 = e2;
        if e1.is_empty() {
            break;
        }
        if step % 2 == 1 {
            best = e1[e1.len() / 2];
        }
    }
    best
}

/// Weight round trip with sequence acceleration: partial traces
/// Tr_{|k| <= n} [U(p)^dag M] over n in [n_lo, n_hi], extrapolated by the
/// epsilon algorithm. Needed for weights whose trace series converges only
/// conditionally (the parity weight at odd m).
pub fn weight_roundtrip_extrapolated(
    m_op: &OperatorMatrix,
    p: PhasePoint,
    n_lo: usize,
    n_hi: usize,
) -> Complex64 {
    let seq: Vec<Complex64> = (n_lo..=n_hi)
        .map(|n| weight_from_operator_partial(m_op, p, n))
        .collect();
    // short-circuit sequences that have already converged
    let n = seq.len();
    if n >= 2 && (seq[n - 1] - seq[n - 2]).norm() < 1e-13 {
        return seq[n - 1];
    }
    wynn_epsilon(&seq)
}
