//! Structured `A(x, y)` matrices and small dense eigen utilities.
//!
//! `A(x, y)` is the m×m matrix with every diagonal entry `(x + (m-1)y)/m`
//! and every off-diagonal entry `(x - y)/m`. Equivalently it acts as `x` on
//! the uniform vector and as `y` on its orthogonal complement, so products,
//! inverses and traces are exact in the two parameters. All mST covariance
//! and Gibbs matrices are direct sums of such blocks, which keeps the whole
//! state model closed-form.

use nalgebra::{Complex, DMatrix};

use crate::{Error, Result};

/// Relative tolerance for the symmetry/Hermiticity checks on wrapped input.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Default absolute tolerance on the smallest eigenvalue in PSD checks.
/// Every matrix in this crate is O(1)-scaled, so an absolute cut is safe.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// The m×m two-parameter matrix `A(x, y)`: eigenvalue `x` on the uniform
/// vector, `y` (multiplicity m−1) on its complement.
///
/// Stored parametrically; products and inverses stay exact. Densify with
/// [`AMatrix::dense`] only where a concrete array is needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AMatrix {
    m: usize,
    x: f64,
    y: f64,
}

impl AMatrix {
    pub fn new(m: usize, x: f64, y: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "A(x,y) needs at least 2 modes, got m = {m}"
            )));
        }
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "A(x,y) parameters must be finite, got ({x}, {y})"
            )));
        }
        Ok(Self { m, x, y })
    }

    /// `A(1, 1)`, the m×m identity.
    pub fn identity(m: usize) -> Result<Self> {
        Self::new(m, 1.0, 1.0)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Exact product: `A(x,y) A(u,v) = A(xu, yv)`.
    pub fn mul(&self, rhs: &AMatrix) -> Result<AMatrix> {
        if self.m != rhs.m {
            return Err(Error::DimensionMismatch(self.m, rhs.m));
        }
        AMatrix::new(self.m, self.x * rhs.x, self.y * rhs.y)
    }

    /// Exact inverse `A(1/x, 1/y)`; singular when either parameter is zero.
    pub fn inverse(&self) -> Result<AMatrix> {
        if self.x == 0.0 || self.y == 0.0 {
            return Err(Error::Singular);
        }
        AMatrix::new(self.m, 1.0 / self.x, 1.0 / self.y)
    }

    /// Trace `x + (m-1) y`.
    pub fn trace(&self) -> f64 {
        self.x + (self.m as f64 - 1.0) * self.y
    }

    /// Dense m×m form.
    pub fn dense(&self) -> DMatrix<f64> {
        let m = self.m as f64;
        let diag = (self.x + (m - 1.0) * self.y) / m;
        let off = (self.x - self.y) / m;
        DMatrix::from_fn(self.m, self.m, |i, j| if i == j { diag } else { off })
    }
}

fn max_abs(mat: &DMatrix<f64>) -> f64 {
    mat.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Dense real symmetric matrix, symmetry-checked on construction.
#[derive(Debug, Clone)]
pub struct DenseSym {
    mat: DMatrix<f64>,
}

impl DenseSym {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch(mat.nrows(), mat.ncols()));
        }
        let scale = max_abs(&mat).max(1.0);
        let mut worst = 0.0f64;
        for i in 0..mat.nrows() {
            for j in (i + 1)..mat.ncols() {
                worst = worst.max((mat[(i, j)] - mat[(j, i)]).abs());
            }
        }
        if worst > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric(worst));
        }
        Ok(Self { mat })
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.mat.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }
}

/// Dense complex Hermitian matrix, checked on construction. Houses the
/// `gamma - iJ` style shifted matrices of the PPT tests.
#[derive(Debug, Clone)]
pub struct DenseHerm {
    mat: DMatrix<Complex<f64>>,
}

impl DenseHerm {
    pub fn new(mat: DMatrix<Complex<f64>>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch(mat.nrows(), mat.ncols()));
        }
        let scale = mat
            .iter()
            .fold(0.0f64, |acc, z| acc.max(z.norm()))
            .max(1.0);
        let mut worst = 0.0f64;
        for i in 0..mat.nrows() {
            for j in i..mat.ncols() {
                worst = worst.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if worst > SYMMETRY_TOL * scale {
            return Err(Error::NotHermitian(worst));
        }
        Ok(Self { mat })
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex<f64>> {
        &self.mat
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.mat.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }
}

/// True iff the smallest eigenvalue of `h` is at least `-tol`.
pub fn herm_psd_check(h: &DenseHerm, tol: f64) -> bool {
    h.min_eigenvalue() >= -tol
}

/// Block-diagonal direct sum of two dense matrices.
pub fn direct_sum(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = DMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn assert_mat_eq(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) {
        assert_eq!(a.shape(), b.shape());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_abs_diff_eq!(x, y, epsilon = tol);
        }
    }

    #[test]
    fn identity_is_neutral() {
        let id = AMatrix::identity(4).unwrap();
        let a = AMatrix::new(4, 0.7, -1.3).unwrap();
        assert_eq!(id.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_mat_eq(&id.dense(), &DMatrix::identity(4, 4), 0.0);
    }

    #[test]
    fn squeezer_product() {
        // A(e^r, e^-r) squared gives A(e^2r, e^-2r).
        let r = 0.8f64;
        let s = AMatrix::new(3, r.exp(), (-r).exp()).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_abs_diff_eq!(sq.x(), (2.0 * r).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(sq.y(), (-2.0 * r).exp(), epsilon = 1e-15);
    }

    #[test]
    fn inverse_reciprocates_parameters() {
        let a = AMatrix::new(5, 2.0, 0.5).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.x(), 0.5);
        assert_eq!(inv.y(), 2.0);
        assert_eq!(a.mul(&inv).unwrap(), AMatrix::identity(5).unwrap());
        assert_eq!(
            AMatrix::identity(3).unwrap().inverse().unwrap(),
            AMatrix::identity(3).unwrap()
        );
    }

    #[test]
    fn inverse_rejects_zero_parameter() {
        let a = AMatrix::new(3, 0.0, 1.0).unwrap();
        assert!(matches!(a.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn dense_inverse_matches_parametric() {
        let a = AMatrix::new(3, 1.7, -0.4).unwrap();
        let dense_inv = a.dense().try_inverse().unwrap();
        assert_mat_eq(&a.inverse().unwrap().dense(), &dense_inv, 1e-12);
    }

    #[test]
    fn trace_values() {
        assert_abs_diff_eq!(AMatrix::identity(3).unwrap().trace(), 3.0);
        assert_abs_diff_eq!(AMatrix::new(2, 0.3, 0.9).unwrap().trace(), 1.2);
        let r = 0.5f64;
        let a = AMatrix::new(3, (2.0 * r).exp(), (-2.0 * r).exp()).unwrap();
        assert_abs_diff_eq!(a.trace(), 1f64.exp() + 2.0 * (-1f64).exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(a.trace(), a.dense().trace(), epsilon = 1e-14);
    }

    #[test]
    fn spectrum_is_x_and_y() {
        let a = AMatrix::new(4, 2.5, -0.3).unwrap();
        let sym = DenseSym::new(a.dense()).unwrap();
        let ev = sym.eigenvalues();
        let mut expected: Vec<f64> = vec![-0.3, -0.3, -0.3, 2.5];
        expected.sort_by(|p, q| p.total_cmp(q));
        for (got, want) in ev.iter().zip(expected.iter()) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let a = AMatrix::new(3, 1.0, 2.0).unwrap();
        let b = AMatrix::new(4, 1.0, 2.0).unwrap();
        assert!(matches!(
            a.mul(&b),
            Err(Error::DimensionMismatch(3, 4))
        ));
    }

    #[test]
    fn psd_check_on_small_matrices() {
        let id = DenseHerm::new(DMatrix::from_diagonal_element(
            3,
            3,
            Complex::new(1.0, 0.0),
        ))
        .unwrap();
        assert!(herm_psd_check(&id, 1e-9));

        let ind = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::new(1.0, 0.0),
            Complex::new(-0.1, 0.0),
        ]));
        let ind = DenseHerm::new(ind).unwrap();
        assert!(!herm_psd_check(&ind, 1e-9));
    }

    #[test]
    fn hermiticity_is_enforced() {
        let mut m = DMatrix::from_element(2, 2, Complex::new(0.0, 0.0));
        m[(0, 1)] = Complex::new(1.0, 2.0);
        m[(1, 0)] = Complex::new(1.0, 2.0); // should be the conjugate
        assert!(matches!(DenseHerm::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn symmetry_is_enforced() {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = 1.0;
        m[(1, 0)] = 1.0 + 1e-6;
        assert!(matches!(DenseSym::new(m), Err(Error::NotSymmetric(_))));
    }

    proptest! {
        #[test]
        fn product_rule_matches_dense(
            m in prop::sample::select(vec![2usize, 3, 5]),
            x in 0.2f64..5.0, y in 0.2f64..5.0,
            u in 0.2f64..5.0, v in 0.2f64..5.0,
        ) {
            let a = AMatrix::new(m, x, y).unwrap();
            let b = AMatrix::new(m, u, v).unwrap();
            let prod = a.mul(&b).unwrap().dense();
            let dense = a.dense() * b.dense();
            for (p, q) in prod.iter().zip(dense.iter()) {
                prop_assert!((p - q).abs() < 1e-12);
            }
        }

        #[test]
        fn double_inverse_returns_parameters(
            m in 2usize..8,
            x in 0.1f64..10.0, y in 0.1f64..10.0,
        ) {
            // double reciprocal is exact only to the last ulp
            let a = AMatrix::new(m, x, y).unwrap();
            let back = a.inverse().unwrap().inverse().unwrap();
            prop_assert_eq!(a.m(), back.m());
            prop_assert!((a.x() - back.x()).abs() <= 4e-16 * a.x().abs());
            prop_assert!((a.y() - back.y()).abs() <= 4e-16 * a.y().abs());
        }

        #[test]
        fn spectrum_multiset(
            m in 2usize..7,
            x in -3.0f64..3.0, y in -3.0f64..3.0,
        ) {
            let a = AMatrix::new(m, x, y).unwrap();
            let ev = DenseSym::new(a.dense()).unwrap().eigenvalues();
            let mut expected: Vec<f64> = std::iter::once(x)
                .chain(std::iter::repeat(y).take(m - 1))
                .collect();
            expected.sort_by(|p, q| p.total_cmp(q));
            for (got, want) in ev.iter().zip(expected.iter()) {
                prop_assert!((got - want).abs() < 1e-10);
            }
        }
    }
}
