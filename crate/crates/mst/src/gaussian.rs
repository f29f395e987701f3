//! The mST state model: covariance matrices, Gibbs matrices, symplectic
//! data, entropies and reduced states.
//!
//! Conventions. The canonical internal quadrature ordering is
//! [`QuadratureOrdering::BlockXP`] (all x first, then all p), in which every
//! mST matrix is a direct sum of two `A(x, y)` blocks. The mode-major
//! [`QuadratureOrdering::Interleaved`] ordering (x1 p1 x2 p2 ...) is
//! available via [`CovarianceMatrix::reordered`]; the Giedke partition of
//! the separability tests needs it. Two normalizations coexist in the
//! literature: `alpha` with vacuum I/2 and `gamma = 2 alpha` with vacuum I;
//! a [`CovarianceMatrix`] carries its own tag and converts exactly.

use nalgebra::{Complex, DMatrix};

use crate::structmat::{direct_sum, AMatrix, DenseSym};
use crate::{Error, Result};

/// An m-mode squeezed thermal state, parameterized by the squeezing `r >= 0`
/// and the thermal mean photon number `N >= 0` per mode.
///
/// Derived coordinates: `v = N/(N+1)` and `lambda = tanh r`, both in [0, 1),
/// and `t = 2N+1`, `s = e^{2r}`, both >= 1. Noise dominance `v >= lambda` is
/// equivalent to `t >= s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MstState {
    m: usize,
    r: f64,
    nbar: f64,
}

impl MstState {
    pub fn new(m: usize, r: f64, nbar: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "mST state needs at least 2 modes, got m = {m}"
            )));
        }
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "squeezing must be finite and nonnegative, got r = {r}"
            )));
        }
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "thermal photon number must be finite and nonnegative, got N = {nbar}"
            )));
        }
        Ok(Self { m, r, nbar })
    }

    /// Construct from the `(lambda, v)` coordinates: `r = atanh(lambda)`,
    /// `N = v/(1-v)`.
    pub fn from_lambda_v(m: usize, lambda: f64, v: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in [0, 1), got {lambda}"
            )));
        }
        if !(0.0..1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "v must lie in [0, 1), got {v}"
            )));
        }
        Self::new(m, lambda.atanh(), v / (1.0 - v))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Thermal mean photon number per mode.
    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// `v = N/(N+1)`.
    pub fn v(&self) -> f64 {
        self.nbar / (self.nbar + 1.0)
    }

    /// `lambda = tanh r`.
    pub fn lambda(&self) -> f64 {
        self.r.tanh()
    }

    /// `t = 2N + 1`.
    pub fn t(&self) -> f64 {
        2.0 * self.nbar + 1.0
    }

    /// `s = e^{2r}`.
    pub fn s(&self) -> f64 {
        (2.0 * self.r).exp()
    }

    pub fn is_pure(&self) -> bool {
        self.nbar == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureOrdering {
    /// x1 .. xm p1 .. pm
    BlockXP,
    /// x1 p1 x2 p2 .. xm pm
    Interleaved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Vacuum covariance I/2.
    Alpha,
    /// `gamma = 2 alpha`; vacuum covariance I.
    Gamma,
}

/// Symplectic form for `m` modes in the given ordering. BlockXP uses
/// `[[0, -I], [I, 0]]`; Interleaved uses the per-mode `[[0, -1], [1, 0]]`
/// blocks, which is the same form conjugated by the reordering permutation.
pub fn symplectic_form(m: usize, ordering: QuadratureOrdering) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    match ordering {
        QuadratureOrdering::BlockXP => {
            for k in 0..m {
                j[(k, m + k)] = -1.0;
                j[(m + k, k)] = 1.0;
            }
        }
        QuadratureOrdering::Interleaved => {
            for k in 0..m {
                j[(2 * k, 2 * k + 1)] = -1.0;
                j[(2 * k + 1, 2 * k)] = 1.0;
            }
        }
    }
    j
}

/// 2m×2m real symmetric covariance matrix with explicit ordering and
/// normalization tags.
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    m: usize,
    ordering: QuadratureOrdering,
    normalization: Normalization,
    mat: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(
        m: usize,
        ordering: QuadratureOrdering,
        normalization: Normalization,
        mat: DMatrix<f64>,
    ) -> Result<Self> {
        if mat.nrows() != 2 * m || mat.ncols() != 2 * m {
            return Err(Error::DimensionMismatch(mat.nrows(), 2 * m));
        }
        DenseSym::new(mat.clone())?;
        Ok(Self {
            m,
            ordering,
            normalization,
            mat,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ordering(&self) -> QuadratureOrdering {
        self.ordering
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Same matrix re-expressed in `target` ordering (an exact entry
    /// permutation).
    pub fn reordered(&self, target: QuadratureOrdering) -> CovarianceMatrix {
        if self.ordering == target {
            return self.clone();
        }
        let m = self.m;
        // Maps an interleaved coordinate index to its BlockXP position.
        let to_blockxp = |idx: usize| -> usize {
            if idx % 2 == 0 {
                idx / 2
            } else {
                m + idx / 2
            }
        };
        let n = 2 * m;
        let mat = match target {
            QuadratureOrdering::Interleaved => {
                DMatrix::from_fn(n, n, |a, b| self.mat[(to_blockxp(a), to_blockxp(b))])
            }
            QuadratureOrdering::BlockXP => {
                let mut out = DMatrix::zeros(n, n);
                for a in 0..n {
                    for b in 0..n {
                        out[(to_blockxp(a), to_blockxp(b))] = self.mat[(a, b)];
                    }
                }
                out
            }
        };
        CovarianceMatrix {
            m,
            ordering: target,
            normalization: self.normalization,
            mat,
        }
    }

    /// Same matrix in `target` normalization (`gamma = 2 alpha`, exact).
    pub fn with_normalization(&self, target: Normalization) -> CovarianceMatrix {
        if self.normalization == target {
            return self.clone();
        }
        let factor = match target {
            Normalization::Gamma => 2.0,
            Normalization::Alpha => 0.5,
        };
        CovarianceMatrix {
            m: self.m,
            ordering: self.ordering,
            normalization: target,
            mat: &self.mat * factor,
        }
    }
}

/// Covariance matrix of an mST state: BlockXP ordering, alpha normalization,
/// `alpha_x = (N+1/2) A(s, 1/s)` and `alpha_p = (N+1/2) A(1/s, s)`.
pub fn mst_covariance(state: &MstState) -> CovarianceMatrix {
    let scale = state.nbar + 0.5;
    let s = state.s();
    let ax = AMatrix::new(state.m, s, 1.0 / s).expect("valid state");
    let ap = AMatrix::new(state.m, 1.0 / s, s).expect("valid state");
    let mat = direct_sum(&(ax.dense() * scale), &(ap.dense() * scale));
    CovarianceMatrix {
        m: state.m,
        ordering: QuadratureOrdering::BlockXP,
        normalization: Normalization::Alpha,
        mat,
    }
}

/// Matrix in the exponential (Gibbs) form of the mST density operator, in
/// BlockXP ordering: `M = log(1/v) [A(1/s, s) ⊕ A(s, 1/s)]`. Positive
/// definite for N > 0; undefined for pure states.
#[derive(Debug, Clone)]
pub struct GibbsMatrix {
    m: usize,
    mat: DMatrix<f64>,
}

impl GibbsMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }
}

pub fn mst_gibbs_matrix(state: &MstState) -> Result<GibbsMatrix> {
    if state.is_pure() {
        return Err(Error::PureStateNoGibbs);
    }
    let log_inv_v = -state.v().ln();
    let s = state.s();
    let mx = AMatrix::new(state.m, 1.0 / s, s).expect("valid state");
    let mp = AMatrix::new(state.m, s, 1.0 / s).expect("valid state");
    let mat = direct_sum(&(mx.dense() * log_inv_v), &(mp.dense() * log_inv_v));
    Ok(GibbsMatrix { m: state.m, mat })
}

/// Symplectic transform that diagonalizes the mST covariance:
/// `S = A(e^r, e^-r) ⊕ A(e^-r, e^r)` in BlockXP ordering, satisfying
/// `S J S^T = J` and `alpha = (N + 1/2) S S^T`.
pub fn mst_symplectic(state: &MstState) -> DMatrix<f64> {
    let er = state.r.exp();
    let sx = AMatrix::new(state.m, er, 1.0 / er).expect("valid state");
    let sp = AMatrix::new(state.m, 1.0 / er, er).expect("valid state");
    direct_sum(&sx.dense(), &sp.dense())
}

/// Symplectic spectrum of a covariance matrix: the m positive eigenvalues of
/// `i J alpha`, ascending, in alpha normalization (vacuum value 1/2).
///
/// Computed from the Hermitian matrix `alpha^{1/2} (iJ) alpha^{1/2}`, whose
/// spectrum is `{±nu_k}`; this stays within symmetric/Hermitian eigensolves.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<Vec<f64>> {
    let alpha = cm.with_normalization(Normalization::Alpha);
    let sym = DenseSym::new(alpha.mat.clone())?;
    let eig = nalgebra::linalg::SymmetricEigen::new(sym.matrix().clone());
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if eig.eigenvalues.iter().any(|&v| v < -1e-12 * scale.max(1.0)) {
        return Err(Error::NotPositiveDefinite);
    }
    let sqrt_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|v| v.max(0.0).sqrt()));
    let sqrt_alpha = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();

    let j = symplectic_form(cm.m, alpha.ordering);
    let i_j = j.map(|v| Complex::new(0.0, v));
    let sqrt_alpha_c = sqrt_alpha.map(|v| Complex::new(v, 0.0));
    let herm = &sqrt_alpha_c * i_j * &sqrt_alpha_c;

    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev.split_off(cm.m))
}

/// Bosonic entropy function `g(x) = (x+1) log(x+1) - x log x` in nats; the
/// von Neumann entropy of a thermal mode with mean photon number `x`.
/// `g(0) = 0` by continuity.
pub fn bosonic_g(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "bosonic entropy needs x >= 0, got {x}"
        )));
    }
    Ok(g(x))
}

pub(crate) fn g(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (x + 1.0) * (x + 1.0).ln() - x * x.ln()
}

/// Von Neumann entropy of the mST state in nats: `m g(N)`.
pub fn von_neumann_entropy(state: &MstState) -> f64 {
    state.m as f64 * g(state.nbar)
}

/// Diagonal single-mode reduced covariance matrix (alpha normalization).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeCM {
    a_x: f64,
    a_p: f64,
}

impl SingleModeCM {
    pub fn a_x(&self) -> f64 {
        self.a_x
    }

    pub fn a_p(&self) -> f64 {
        self.a_p
    }

    /// Symplectic eigenvalue `nu = sqrt(a_x a_p) >= 1/2`.
    pub fn nu(&self) -> f64 {
        (self.a_x * self.a_p).sqrt()
    }

    /// Entropy of the reduced mode, `g(nu - 1/2)`, in nats.
    pub fn entropy(&self) -> f64 {
        g(self.nu() - 0.5)
    }
}

/// Reduced state of a single mode, all others traced out. By symmetry the
/// result is mode-independent: the diagonal entries of the mST covariance,
/// `a_x = (N+1/2)(s + (m-1)/s)/m` and `a_p = (N+1/2)(1/s + (m-1)s)/m`.
pub fn reduced_state(state: &MstState, mode: usize) -> Result<SingleModeCM> {
    if mode >= state.m {
        return Err(Error::ModeOutOfRange {
            mode,
            modes: state.m,
        });
    }
    let m = state.m as f64;
    let scale = state.nbar + 0.5;
    let s = state.s();
    Ok(SingleModeCM {
        a_x: scale * (s + (m - 1.0) / s) / m,
        a_p: scale * (1.0 / s + (m - 1.0) * s) / m,
    })
}
