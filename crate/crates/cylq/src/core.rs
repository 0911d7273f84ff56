//! Shared domain types for phase-space analysis on the discrete cylinder
//! Z x S^1: states as truncated Fourier coefficient vectors, dense operator
//! matrices on that basis, phase points, angle grids, and weight functions.
//!
//! Index convention: everything is addressed by the signed Fourier index
//! n in [-n_max, n_max]; array offsets never leak into call sites.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

pub const TAU: f64 = 2.0 * PI;

/// Tolerance for exact algebraic identities (phases, index shifts).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Tolerance for results involving one quadrature.
pub const TOL_QUAD: f64 = 1e-10;
/// Tolerance for results involving two nested quadratures.
pub const TOL_DOUBLE_QUAD: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("grid of {size} nodes is too small: at least {min} required")]
    GridTooSmall { size: usize, min: usize },
    #[error("truncation tail too large: {0}")]
    TailMass(String),
    #[error("no closed form available: {0}")]
    NotAvailable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Reduce an angle to its canonical representative in [0, 2pi).
pub fn reduce_angle(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("angle must be finite, got {x}")));
    }
    let mut r = x.rem_euclid(TAU);
    if r >= TAU {
        r = 0.0;
    }
    Ok(r)
}

/// A point (m, theta) of the discrete cylinder. The angle is stored as its
/// canonical representative in [0, 2pi); the half-angle phase e^{-im theta/2}
/// used by the Weyl operator is single-valued in that representative (a 2pi
/// shift flips its sign for odd m — a fixed branch convention).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub m: i64,
    theta: f64,
}

impl PhasePoint {
    pub fn new(m: i64, theta: f64) -> Self {
        let theta = reduce_angle(theta).expect("phase point angle must be finite");
        PhasePoint { m, theta }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// A circle function represented by Fourier coefficients psi_hat(n) of the
/// orthonormal basis e_n(gamma) = e^{i n gamma} / sqrt(2 pi), truncated to
/// the symmetric range n in [-n_max, n_max].
#[derive(Debug, Clone, PartialEq)]
pub struct FourierState {
    n_max: usize,
    coeffs: Vec<Complex64>,
}

impl FourierState {
    pub fn new(n_max: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * n_max + 1 {
            return Err(Error::Precondition(format!(
                "coefficient vector length {} does not match 2*{n_max}+1",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        Ok(FourierState { n_max, coeffs })
    }

    /// Construct and scale to unit norm.
    pub fn new_normalized(n_max: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::new(n_max, coeffs)?;
        let norm = s.norm();
        if norm < 1e-300 {
            return Err(Error::Precondition("cannot normalize the zero state".into()));
        }
        for c in &mut s.coeffs {
            *c /= norm;
        }
        Ok(s)
    }

    pub fn zero(n_max: usize) -> Self {
        FourierState {
            n_max,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * n_max + 1],
        }
    }

    /// Basis state e_n.
    pub fn basis(n_max: usize, n: i64) -> Result<Self> {
        if n.unsigned_abs() as usize > n_max {
            return Err(Error::Precondition(format!(
                "basis index {n} outside truncation {n_max}"
            )));
        }
        let mut s = Self::zero(n_max);
        s.set(n, Complex64::new(1.0, 0.0));
        Ok(s)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Coefficient at signed index n; zero outside the truncation.
    pub fn get(&self, n: i64) -> Complex64 {
        let nm = self.n_max as i64;
        if n < -nm || n > nm {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + nm) as usize]
        }
    }

    pub fn set(&mut self, n: i64, v: Complex64) {
        let nm = self.n_max as i64;
        assert!(n >= -nm && n <= nm, "index {n} outside truncation {nm}");
        self.coeffs[(n + nm) as usize] = v;
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let nm = self.n_max as i64;
        -nm..=nm
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self | other>, antilinear in self, over the index overlap.
    pub fn inner(&self, other: &FourierState) -> Complex64 {
        let nm = self.n_max.min(other.n_max) as i64;
        (-nm..=nm)
            .map(|n| self.get(n).conj() * other.get(n))
            .sum()
    }

    pub fn scale(&mut self, a: Complex64) {
        for c in &mut self.coeffs {
            *c *= a;
        }
    }
}

/// The norm sqrt(sum |psi_hat(n)|^2).
pub fn state_norm(psi: &FourierState) -> f64 {
    psi.norm()
}

/// Uniform grid theta_k = 2 pi k / K on the circle; trapezoid quadrature
/// weight 2 pi / K per node (spectrally exact for band-limited integrands).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleGrid {
    size: usize,
}

impl AngleGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Precondition("grid size must be positive".into()));
        }
        Ok(AngleGrid { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn theta(&self, k: usize) -> f64 {
        TAU * k as f64 / self.size as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.size).map(move |k| self.theta(k))
    }

    pub fn weight(&self) -> f64 {
        TAU / self.size as f64
    }

    /// Minimal grid size combining state band-limit N and weight momentum
    /// truncation M so that all products (including half-angle phases after
    /// periodicization) are alias-free.
    pub fn min_size(n_max: usize, m_max: usize) -> usize {
        2 * (2 * n_max + m_max) + 1
    }

    pub fn check_size(&self, min: usize) -> Result<()> {
        if self.size < min {
            Err(Error::GridTooSmall {
                size: self.size,
                min,
            })
        } else {
            Ok(())
        }
    }

    /// Index of a grid node equal to `theta`, if theta lies on the grid.
    pub fn node_index(&self, theta: f64) -> Option<usize> {
        let step = TAU / self.size as f64;
        let j = (theta / step).round();
        let j = j.rem_euclid(self.size as f64) as usize % self.size;
        if (reduce_angle(theta).ok()? - self.theta(j)).abs() < 1e-12
            || (reduce_angle(theta).ok()? - self.theta(j) - TAU).abs() < 1e-12
            || (reduce_angle(theta).ok()? - self.theta(j) + TAU).abs() < 1e-12
        {
            Some(j)
        } else {
            None
        }
    }
}

/// Dense complex matrix A[k][l] = <e_k | A e_l> on the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n_max: usize,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zero(n_max: usize) -> Self {
        let side = 2 * n_max + 1;
        OperatorMatrix {
            n_max,
            entries: vec![Complex64::new(0.0, 0.0); side * side],
        }
    }

    pub fn identity(n_max: usize) -> Self {
        let mut a = Self::zero(n_max);
        for k in a.indices() {
            a.set(k, k, Complex64::new(1.0, 0.0));
        }
        a
    }

    pub fn from_entries(n_max: usize, entries: Vec<Complex64>) -> Result<Self> {
        let side = 2 * n_max + 1;
        if entries.len() != side * side {
            return Err(Error::Precondition(format!(
                "entry vector length {} does not match ({side})^2",
                entries.len()
            )));
        }
        Ok(OperatorMatrix { n_max, entries })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn side(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let nm = self.n_max as i64;
        -nm..=nm
    }

    fn off(&self, k: i64, l: i64) -> Option<usize> {
        let nm = self.n_max as i64;
        if k < -nm || k > nm || l < -nm || l > nm {
            None
        } else {
            Some(((k + nm) as usize) * self.side() + (l + nm) as usize)
        }
    }

    /// Entry at signed indices; zero outside the truncation.
    pub fn get(&self, k: i64, l: i64) -> Complex64 {
        match self.off(k, l) {
            Some(o) => self.entries[o],
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn set(&mut self, k: i64, l: i64, v: Complex64) {
        let o = self.off(k, l).expect("index outside truncation");
        self.entries[o] = v;
    }

    pub fn add_to(&mut self, k: i64, l: i64, v: Complex64) {
        let o = self.off(k, l).expect("index outside truncation");
        self.entries[o] += v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.indices().map(|k| self.get(k, k)).sum()
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        let mut a = Self::zero(self.n_max);
        for k in self.indices() {
            for l in self.indices() {
                a.set(k, l, self.get(l, k).conj());
            }
        }
        a
    }

    pub fn mul(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.n_max, other.n_max, "matrix sizes must match");
        let mut out = Self::zero(self.n_max);
        for k in self.indices() {
            for l in self.indices() {
                let mut s = Complex64::new(0.0, 0.0);
                for j in self.indices() {
                    s += self.get(k, j) * other.get(j, l);
                }
                out.set(k, l, s);
            }
        }
        out
    }

    pub fn sub(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.n_max, other.n_max, "matrix sizes must match");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scaled(&self, a: Complex64) -> OperatorMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= a;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        assert_eq!(self.n_max, other.n_max, "matrix sizes must match");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for k in self.indices() {
            for l in self.indices() {
                d = d.max((self.get(k, l) - self.get(l, k).conj()).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Restriction to |k|, |l| <= bound.
    pub fn interior(&self, bound: usize) -> OperatorMatrix {
        let bound = bound.min(self.n_max);
        let mut out = Self::zero(bound);
        let b = bound as i64;
        for k in -b..=b {
            for l in -b..=b {
                out.set(k, l, self.get(k, l));
            }
        }
        out
    }

    /// Spectral norm by power iteration on A^dag A with a deterministic
    /// start vector.
    pub fn spectral_norm(&self) -> f64 {
        let side = self.side();
        let mut v: Vec<Complex64> = (0..side)
            .map(|i| Complex64::new(1.0, 0.3 * ((i % 7) as f64 - 3.0)))
            .collect();
        let nv = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in &mut v {
            *c /= nv;
        }
        let mut sigma2: f64 = 0.0;
        for _ in 0..300 {
            // w = A v; u = A^dag w
            let w: Vec<Complex64> = (0..side)
                .map(|r| (0..side).map(|c| self.entries[r * side + c] * v[c]).sum())
                .collect();
            let u: Vec<Complex64> = (0..side)
                .map(|c| (0..side).map(|r| self.entries[r * side + c].conj() * w[r]).sum())
                .collect();
            let nu = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if nu < 1e-300 {
                return 0.0;
            }
            let new = nu;
            for (vi, ui) in v.iter_mut().zip(u.iter()) {
                *vi = ui / nu;
            }
            if (new - sigma2).abs() <= 1e-14 * new.max(1.0) {
                sigma2 = new;
                break;
            }
            sigma2 = new;
        }
        sigma2.sqrt()
    }

    /// Eigenvalues of a hermitian matrix, ascending. Computed by cyclic
    /// Jacobi on the real-symmetric embedding [[Re, -Im], [Im, Re]], whose
    /// spectrum is that of the hermitian matrix with doubled multiplicity.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.side();
        let d = 2 * n;
        let mut a = vec![0.0f64; d * d];
        for r in 0..n {
            for c in 0..n {
                let z = self.entries[r * n + c];
                a[r * d + c] = z.re;
                a[r * d + (c + n)] = -z.im;
                a[(r + n) * d + c] = z.im;
                a[(r + n) * d + (c + n)] = z.re;
            }
        }
        jacobi_eigenvalues(&mut a, d);
        let mut evs = (0..d).map(|i| a[i * d + i]).collect::<Vec<_>>();
        evs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        // keep one copy of each doubled eigenvalue
        evs.into_iter().step_by(2).collect()
    }
}

/// Cyclic Jacobi sweeps on a symmetric matrix stored row-major; on return the
/// diagonal holds the eigenvalues.
fn jacobi_eigenvalues(a: &mut [f64], n: usize) {
    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() < 1e-13 {
            return;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
}

/// Behavior of a weight under theta -> theta + 2pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaParity {
    /// w(m, theta + 2pi) = w(m, theta).
    Periodic,
    /// w(m, theta + 2pi) = (-1)^m w(m, theta) — the coherent-state family.
    HalfAngle,
}

/// A weight function w(m, theta) on the cylinder, with its momentum
/// truncation and symmetry metadata.
pub struct Weight {
    eval: Box<dyn Fn(i64, f64) -> Complex64 + Send + Sync>,
    pub m_max: usize,
    pub normalized: bool,
    pub symmetric: bool,
    pub theta_parity: ThetaParity,
    density: OnceLock<bool>,
}

impl Weight {
    pub fn new(
        eval: Box<dyn Fn(i64, f64) -> Complex64 + Send + Sync>,
        m_max: usize,
        normalized: bool,
        symmetric: bool,
        theta_parity: ThetaParity,
    ) -> Result<Self> {
        let w = Weight {
            eval,
            m_max,
            normalized,
            symmetric,
            theta_parity,
            density: OnceLock::new(),
        };
        if normalized {
            let v = w.eval(0, 0.0);
            if (v - Complex64::new(1.0, 0.0)).norm() > TOL_ALGEBRAIC {
                return Err(Error::Precondition(format!(
                    "weight flagged normalized but w(0,0) = {v}"
                )));
            }
        }
        if symmetric {
            let mm = m_max.min(6) as i64;
            for m in -mm..=mm {
                for j in 0..8 {
                    let g = TAU * (j as f64 + 0.31) / 8.0;
                    let lhs = w.eval(-m, g).conj();
                    let rhs = w.eval(m, -g);
                    if (lhs - rhs).norm() > TOL_QUAD {
                        return Err(Error::Precondition(format!(
                            "weight flagged symmetric but conj(w(-{m},g)) != w({m},-g) at g={g}"
                        )));
                    }
                }
            }
        }
        Ok(w)
    }

    /// The constant weight w == 1 (angular parity family).
    pub fn parity(m_max: usize) -> Self {
        Weight::new(
            Box::new(|_m, _t| Complex64::new(1.0, 0.0)),
            m_max,
            true,
            true,
            ThetaParity::Periodic,
        )
        .expect("parity weight is normalized and symmetric")
    }

    pub fn eval(&self, m: i64, theta: f64) -> Complex64 {
        (self.eval)(m, theta)
    }

    pub(crate) fn density_cache(&self) -> &OnceLock<bool> {
        &self.density
    }
}

impl std::fmt::Debug for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Weight")
            .field("m_max", &self.m_max)
            .field("normalized", &self.normalized)
            .field("symmetric", &self.symmetric)
            .field("theta_parity", &self.theta_parity)
            .finish()
    }
}

/// A classical observable f(m, theta) on the cylinder lattice, sampled on an
/// angle grid, tagged by structure so quantization can take fast paths.
#[derive(Debug, Clone)]
pub struct ClassicalObservable {
    pub m_max: usize,
    pub grid: AngleGrid,
    pub data: ObservableData,
}

#[derive(Debug, Clone)]
pub enum ObservableData {
    /// table[m + m_max][j] = f(m, theta_j); dimensions (2 m_max + 1) x K.
    General { table: Vec<Vec<Complex64>> },
    /// f(m, theta) = g(m) h(theta); g indexed on [-m_max, m_max].
    Separable {
        g: Vec<Complex64>,
        h: Vec<Complex64>,
    },
    /// f(m, theta) = g(m), supported on [-m_max, m_max].
    MomentumOnly { g: Vec<Complex64> },
    /// f(m, theta) = h(theta) for every m.
    AngleOnly { h: Vec<Complex64> },
}

impl ClassicalObservable {
    pub fn general(m_max: usize, grid: AngleGrid, table: Vec<Vec<Complex64>>) -> Result<Self> {
        if table.len() != 2 * m_max + 1 || table.iter().any(|r| r.len() != grid.size()) {
            return Err(Error::Precondition(format!(
                "general table must be ({}) x ({})",
                2 * m_max + 1,
                grid.size()
            )));
        }
        Ok(ClassicalObservable {
            m_max,
            grid,
            data: ObservableData::General { table },
        })
    }

    pub fn separable(
        m_max: usize,
        grid: AngleGrid,
        g: Vec<Complex64>,
        h: Vec<Complex64>,
    ) -> Result<Self> {
        if g.len() != 2 * m_max + 1 {
            return Err(Error::Precondition("g length must be 2*m_max+1".into()));
        }
        if h.len() != grid.size() {
            return Err(Error::Precondition("h length must match grid".into()));
        }
        Ok(ClassicalObservable {
            m_max,
            grid,
            data: ObservableData::Separable { g, h },
        })
    }

    pub fn momentum_only(m_max: usize, grid: AngleGrid, g: Vec<Complex64>) -> Result<Self> {
        if g.len() != 2 * m_max + 1 {
            return Err(Error::Precondition("g length must be 2*m_max+1".into()));
        }
        Ok(ClassicalObservable {
            m_max,
            grid,
            data: ObservableData::MomentumOnly { g },
        })
    }

    pub fn angle_only(grid: AngleGrid, h: Vec<Complex64>) -> Result<Self> {
        if h.len() != grid.size() {
            return Err(Error::Precondition("h length must match grid".into()));
        }
        Ok(ClassicalObservable {
            m_max: 0,
            grid,
            data: ObservableData::AngleOnly { h },
        })
    }

    /// g(m), zero outside the support (general/angle-only variants have no g).
    fn g_at(g: &[Complex64], m_max: usize, m: i64) -> Complex64 {
        let mm = m_max as i64;
        if m < -mm || m > mm {
            Complex64::new(0.0, 0.0)
        } else {
            g[(m + mm) as usize]
        }
    }

    /// Value f(m, theta_j) at a lattice node.
    pub fn value(&self, m: i64, j: usize) -> Complex64 {
        let mm = self.m_max as i64;
        match &self.data {
            ObservableData::General { table } => {
                if m < -mm || m > mm {
                    Complex64::new(0.0, 0.0)
                } else {
                    table[(m + mm) as usize][j]
                }
            }
            ObservableData::Separable { g, h } => Self::g_at(g, self.m_max, m) * h[j],
            ObservableData::MomentumOnly { g } => Self::g_at(g, self.m_max, m),
            ObservableData::AngleOnly { h } => h[j],
        }
    }

    /// Whether the momentum support is bounded ([-m_max, m_max]).
    pub fn momentum_bounded(&self) -> bool {
        !matches!(self.data, ObservableData::AngleOnly { .. })
    }

    /// Translated observable (V f)(n, phi) = f(n - m0, phi - theta0). The
    /// angle part must be a grid node so the sampled representation stays
    /// exact.
    pub fn translate(&self, p: PhasePoint) -> Result<ClassicalObservable> {
        let k = self.grid.size();
        let j0 = self.grid.node_index(p.theta()).ok_or_else(|| {
            Error::Precondition(format!(
                "translation angle {} must lie on the {k}-node grid",
                p.theta()
            ))
        })?;
        let rot = |h: &Vec<Complex64>| -> Vec<Complex64> {
            (0..k).map(|j| h[(j + k - j0) % k]).collect()
        };
        let m0 = p.m;
        let new_mmax = self.m_max + m0.unsigned_abs() as usize;
        let shift_g = |g: &Vec<Complex64>| -> Vec<Complex64> {
            let nm = new_mmax as i64;
            (-nm..=nm)
                .map(|m| Self::g_at(g, self.m_max, m - m0))
                .collect()
        };
        let data = match &self.data {
            ObservableData::General { table } => {
                let nm = new_mmax as i64;
                let new_table = (-nm..=nm)
                    .map(|m| {
                        let src = m - m0;
                        let mm = self.m_max as i64;
                        if src < -mm || src > mm {
                            vec![Complex64::new(0.0, 0.0); k]
                        } else {
                            rot(&table[(src + mm) as usize])
                        }
                    })
                    .collect();
                ObservableData::General { table: new_table }
            }
            ObservableData::Separable { g, h } => ObservableData::Separable {
                g: shift_g(g),
                h: rot(h),
            },
            ObservableData::MomentumOnly { g } => ObservableData::MomentumOnly { g: shift_g(g) },
            ObservableData::AngleOnly { h } => ObservableData::AngleOnly { h: rot(h) },
        };
        Ok(ClassicalObservable {
            m_max: match &self.data {
                ObservableData::AngleOnly { .. } => 0,
                _ => new_mmax,
            },
            grid: self.grid,
            data,
        })
    }
}

/// Deterministic parallel map over row indices 0..n. Thread count comes from
/// CYLQ_THREADS (default 1); results are assembled in index order, so the
/// output is independent of scheduling.
pub fn parallel_map_rows<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_count().min(n.max(1));
    if threads <= 1 {
        return (0..n).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(n);
            if lo >= hi {
                break;
            }
            let f = &f;
            handles.push(scope.spawn(move || (lo, (lo..hi).map(f).collect::<Vec<T>>())));
        }
        for h in handles {
            let (lo, vals) = h.join().expect("worker thread panicked");
            for (i, v) in vals.into_iter().enumerate() {
                out[lo + i] = Some(v);
            }
        }
    });
    out.into_iter().map(|v| v.unwrap()).collect()
}

/// Parallelism cap from the CYLQ_THREADS environment variable.
pub fn thread_count() -> usize {
    std::env::var("CYLQ_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_angle_basics() {
        assert_eq!(reduce_angle(0.0).unwrap(), 0.0);
        assert!(reduce_angle(TAU).unwrap().abs() < 1e-15);
        assert!((reduce_angle(-PI / 2.0).unwrap() - 3.0 * PI / 2.0).abs() < 1e-15);
        assert!(reduce_angle(f64::NAN).is_err());
        assert!(reduce_angle(f64::INFINITY).is_err());
    }

    #[test]
    fn phase_point_idempotent() {
        let p = PhasePoint::new(3, 1.234567);
        let q = PhasePoint::new(3, p.theta());
        assert_eq!(p.theta().to_bits(), q.theta().to_bits());
    }

    #[test]
    fn state_norm_examples() {
        let e0 = FourierState::basis(2, 0).unwrap();
        assert_eq!(state_norm(&e0), 1.0);
        assert_eq!(state_norm(&FourierState::zero(3)), 0.0);
        let mut s = FourierState::zero(1);
        s.set(1, Complex64::new(0.6, 0.0));
        s.set(-1, Complex64::new(0.0, 0.8));
        assert!((state_norm(&s) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn operator_matrix_basics() {
        let mut a = OperatorMatrix::zero(1);
        a.set(-1, 1, Complex64::new(0.0, 2.0));
        assert_eq!(a.get(-1, 1), Complex64::new(0.0, 2.0));
        assert_eq!(a.get(5, 0), Complex64::new(0.0, 0.0));
        let i = OperatorMatrix::identity(2);
        assert_eq!(i.trace(), Complex64::new(5.0, 0.0));
        assert!(i.is_hermitian(1e-14));
        assert!((i.spectral_norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hermitian_eigenvalues_known() {
        let mut a = OperatorMatrix::zero(0);
        a.set(0, 0, Complex64::new(1.0, 0.0));
        let evs = a.hermitian_eigenvalues();
        assert!((evs[0] - 1.0).abs() < 1e-10);

        // hermitian 3x3 with known spectrum: diag(-1, 0, 2) conjugated by a
        // phase; eigenvalues are preserved under the unitary similarity
        let mut m = OperatorMatrix::zero(1);
        m.set(-1, -1, Complex64::new(-1.0, 0.0));
        m.set(1, 1, Complex64::new(2.0, 0.0));
        m.set(-1, 1, Complex64::new(0.0, 0.5));
        m.set(1, -1, Complex64::new(0.0, -0.5));
        // eigenvalues of [[-1, i/2], [-i/2, 2]] oplus [0]:
        // (1 +- sqrt(9+1))/2 = 0.5 +- sqrt(2.5)
        let evs = m.hermitian_eigenvalues();
        let lo = 0.5 - 2.5f64.sqrt();
        let hi = 0.5 + 2.5f64.sqrt();
        assert!((evs[0] - lo).abs() < 1e-10, "{evs:?}");
        assert!((evs[1] - 0.0).abs() < 1e-10, "{evs:?}");
        assert!((evs[2] - hi).abs() < 1e-10, "{evs:?}");
    }

    #[test]
    fn weight_flag_validation() {
        let w = Weight::parity(4);
        assert!(w.normalized && w.symmetric);
        let bad = Weight::new(
            Box::new(|_m, _t| Complex64::new(2.0, 0.0)),
            2,
            true,
            false,
            ThetaParity::Periodic,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn observable_translate_grid_only() {
        let grid = AngleGrid::new(8).unwrap();
        let h: Vec<Complex64> = grid.points().map(|t| Complex64::new(t.cos(), 0.0)).collect();
        let f = ClassicalObservable::angle_only(grid, h).unwrap();
        assert!(f.translate(PhasePoint::new(0, 0.1)).is_err());
        let g = f.translate(PhasePoint::new(0, grid.theta(3))).unwrap();
        // rotated samples: g(theta_j) = h(theta_{j-3})
        assert!((g.value(0, 3) - f.value(0, 0)).norm() < 1e-15);
    }

    #[test]
    fn parallel_map_deterministic() {
        let a = parallel_map_rows(17, |i| i * i);
        assert_eq!(a, (0..17).map(|i| i * i).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn reduce_angle_in_range(x in -1e6f64..1e6f64) {
            let r = reduce_angle(x).unwrap();
            prop_assert!((0.0..TAU).contains(&r));
            // congruence mod 2pi
            let d = (x - r) / TAU;
            prop_assert!((d - d.round()).abs() < 1e-6);
        }

        #[test]
        fn inner_product_conjugate_symmetric(
            re in proptest::collection::vec(-1.0f64..1.0, 5),
            im in proptest::collection::vec(-1.0f64..1.0, 5),
        ) {
            let coeffs: Vec<Complex64> = re.iter().zip(im.iter())
                .map(|(&a, &b)| Complex64::new(a, b)).collect();
            let s = FourierState::new(2, coeffs).unwrap();
            let e = FourierState::basis(2, 1).unwrap();
            let lhs = s.inner(&e);
            let rhs = e.inner(&s).conj();
            prop_assert!((lhs - rhs).norm() < 1e-14);
        }
    }
}
