//! Exact linear-algebraic geometry: orthonormal frames for k-planes,
//! projections, Grassmannian charts and the Gram-determinant calculus.
//!
//! All operations here are deterministic; randomness lives in [`crate::randgeo`].

use crate::{Error, Result};
use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

/// Entrywise tolerance for orthonormality checks.
pub const ORTHO_TOL: f64 = 1e-10;

/// Relative singular-value cutoff below which inputs count as rank deficient.
pub const RANK_TOL: f64 = 1e-8;

/// Guard on the number of k-subsets enumerated by [`gram_minor_sum`].
pub const MINOR_SUM_GUARD: u128 = 1_000_000;

/// A k-dimensional linear subspace of R^n, stored as an orthonormal n-by-k
/// frame. The frame is one representative of the right-O(k) equivalence
/// class; operations that must be well defined on the class go through the
/// projector `frame * frame^T`.
#[derive(Debug, Clone)]
pub struct Subspace {
    frame: DMatrix<f64>,
}

impl Subspace {
    /// Wrap an n-by-k matrix whose columns are already orthonormal.
    pub fn from_frame(frame: DMatrix<f64>) -> Result<Self> {
        let (n, k) = frame.shape();
        if k < 1 || k >= n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= k < n, got n={n}, k={k}"
            )));
        }
        let gram = frame.transpose() * &frame;
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - want).abs() > ORTHO_TOL {
                    return Err(Error::InvalidInput(format!(
                        "frame columns not orthonormal: (F^T F)[{i},{j}] = {}",
                        gram[(i, j)]
                    )));
                }
            }
        }
        Ok(Subspace { frame })
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn plane_dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    /// The orthogonal projector onto the subspace, independent of the
    /// frame representative.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.frame * self.frame.transpose()
    }

    /// An orthonormal frame for the orthogonal complement, n-by-(n-k).
    ///
    /// Built by Gram-Schmidt against the frame, seeding from the standard
    /// basis; deterministic for a given frame.
    pub fn complement(&self) -> DMatrix<f64> {
        let n = self.ambient_dim();
        let k = self.plane_dim();
        let mut basis: Vec<DVector<f64>> =
            (0..k).map(|j| self.frame.column(j).into_owned()).collect();
        let mut comp: Vec<DVector<f64>> = Vec::with_capacity(n - k);
        for i in 0..n {
            if comp.len() == n - k {
                break;
            }
            let mut v = DVector::zeros(n);
            v[i] = 1.0;
            for b in &basis {
                let c = b.dot(&v);
                v -= b * c;
            }
            let norm = v.norm();
            if norm > 1e-8 {
                v /= norm;
                basis.push(v.clone());
                comp.push(v);
            }
        }
        DMatrix::from_columns(&comp)
    }
}

/// QR orthonormalization with the sign convention that the diagonal of the
/// triangular factor is nonnegative, which makes the factorization unique
/// (and the Haar construction in `randgeo` correct).
pub fn qr_orthonormalize(m: &DMatrix<f64>) -> DMatrix<f64> {
    let qr = m.clone().qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..r.nrows().min(r.ncols()) {
        if r[(j, j)] < 0.0 {
            for i in 0..q.nrows() {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Chart coordinates for the dense open cell of G_{k,n} where the leading
/// k-by-k block of a spanning row matrix is invertible: the plane is the row
/// span of (E_k | A) with A the k-by-(n-k) coordinate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub n: usize,
    pub k: usize,
    /// k-by-(n-k) coordinate matrix.
    pub a: DMatrix<f64>,
}

impl ChartPoint {
    pub fn new(n: usize, k: usize, a: DMatrix<f64>) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= k < n, got n={n}, k={k}"
            )));
        }
        if a.shape() != (k, n - k) {
            return Err(Error::DimensionMismatch(format!(
                "chart coordinates must be {}x{}, got {}x{}",
                k,
                n - k,
                a.nrows(),
                a.ncols()
            )));
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite chart coordinate".into()));
        }
        Ok(ChartPoint { n, k, a })
    }
}

/// An affine k-plane P(x, theta) = x + theta with x in the orthogonal
/// complement of theta; the pair (x, theta) is a point of the parameter
/// space of all affine k-planes.
#[derive(Debug, Clone)]
pub struct AffineKPlane {
    pub theta: Subspace,
    pub base: DVector<f64>,
}

impl AffineKPlane {
    pub fn new(theta: Subspace, base: DVector<f64>) -> Result<Self> {
        if base.len() != theta.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "base point has dim {}, ambient dim is {}",
                base.len(),
                theta.ambient_dim()
            )));
        }
        let residual = theta.frame().transpose() * &base;
        if residual.amax() > ORTHO_TOL * base.norm().max(1.0) {
            return Err(Error::InvalidInput(format!(
                "base point not orthogonal to the plane (residual {})",
                residual.amax()
            )));
        }
        Ok(AffineKPlane { theta, base })
    }
}

fn check_equal_dims(vs: &[DVector<f64>]) -> Result<usize> {
    let k = vs.len();
    if k == 0 {
        return Err(Error::InvalidInput("empty vector list".into()));
    }
    let n = vs[0].len();
    if vs.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(
            "vectors have unequal dimensions".into(),
        ));
    }
    if n < k {
        return Err(Error::InvalidInput(format!(
            "need ambient dim >= count, got n={n}, k={k}"
        )));
    }
    Ok(n)
}

/// Gram matrix: entry (l, m) is the inner product of v_l and v_m.
pub fn gram_matrix(vs: &[DVector<f64>]) -> Result<DMatrix<f64>> {
    check_equal_dims(vs)?;
    let k = vs.len();
    Ok(DMatrix::from_fn(k, k, |i, j| vs[i].dot(&vs[j])))
}

/// Gram determinant; its square root is the k-volume of the parallelepiped
/// spanned by the inputs. Tiny negatives from round-off on the PSD matrix
/// are clamped to zero.
pub fn gram_det(vs: &[DVector<f64>]) -> Result<f64> {
    let g = gram_matrix(vs)?;
    let det = g.determinant();
    if det < 0.0 {
        // round-off on a PSD matrix
        return Ok(0.0);
    }
    Ok(det)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Cauchy-Binet expansion of the Gram determinant: the sum of the squares of
/// all k-by-k minors of the matrix whose rows are the inputs.
pub fn gram_minor_sum(vs: &[DVector<f64>]) -> Result<f64> {
    let n = check_equal_dims(vs)?;
    let k = vs.len();
    if binomial(n as u128, k as u128) > MINOR_SUM_GUARD {
        return Err(Error::SizeGuard(format!(
            "C({n},{k}) exceeds the minor-sum guard of {MINOR_SUM_GUARD}"
        )));
    }
    let mut sum = 0.0;
    for cols in (0..n).combinations(k) {
        let minor = DMatrix::from_fn(k, k, |i, j| vs[i][cols[j]]);
        let d = minor.determinant();
        sum += d * d;
    }
    Ok(sum)
}

/// The element of G_{k,n} containing the given linearly independent vectors.
pub fn span_subspace(xs: &[DVector<f64>]) -> Result<Subspace> {
    let n = check_equal_dims(xs)?;
    let k = xs.len();
    if k >= n {
        return Err(Error::InvalidInput(format!(
            "need k < n, got n={n}, k={k}"
        )));
    }
    let m = DMatrix::from_columns(xs);
    let svals = m.clone().singular_values();
    let smax = svals.max();
    let smin = svals.min();
    if smax == 0.0 || smin < RANK_TOL * smax {
        return Err(Error::DegenerateSpan(format!(
            "smallest singular value {smin:e} below {RANK_TOL:e} of largest {smax:e}"
        )));
    }
    Subspace::from_frame(qr_orthonormalize(&m))
}

/// Orthogonal decomposition x = x_theta + x_perp with x_theta in the plane.
pub fn project(x: &DVector<f64>, theta: &Subspace) -> Result<(DVector<f64>, DVector<f64>)> {
    if x.len() != theta.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector has dim {}, ambient dim is {}",
            x.len(),
            theta.ambient_dim()
        )));
    }
    let coeffs = theta.frame().transpose() * x;
    let x_theta = theta.frame() * coeffs;
    let x_perp = x - &x_theta;
    Ok((x_theta, x_perp))
}

/// The subspace spanned by the chart rows (E_k | A).
pub fn chart_to_subspace(c: &ChartPoint) -> Result<Subspace> {
    let rows: Vec<DVector<f64>> = (0..c.k)
        .map(|i| {
            let mut v = DVector::zeros(c.n);
            v[i] = 1.0;
            for j in 0..c.n - c.k {
                v[c.k + j] = c.a[(i, j)];
            }
            v
        })
        .collect();
    span_subspace(&rows)
}

/// Chart coordinates a = S^{-1} T of a subspace, where S is the leading
/// k-by-k block and T the trailing k-by-(n-k) block of the spanning rows.
/// The result does not depend on the choice of spanning rows.
pub fn subspace_to_chart(theta: &Subspace) -> Result<ChartPoint> {
    let n = theta.ambient_dim();
    let k = theta.plane_dim();
    // rows of the transpose are the spanning vectors as coordinates
    let rows = theta.frame().transpose();
    let s = rows.view((0, 0), (k, k)).into_owned();
    let t = rows.view((0, k), (k, n - k)).into_owned();
    let det = s.determinant();
    if det.abs() < RANK_TOL {
        return Err(Error::ChartDomain(format!(
            "leading block singular (|det| = {:e}); plane outside this chart",
            det.abs()
        )));
    }
    let s_inv = s
        .try_inverse()
        .ok_or_else(|| Error::ChartDomain("leading block not invertible".into()))?;
    ChartPoint::new(n, k, s_inv * t)
}

/// Spherical coordinates about e1: omega = (cos t, (sin t) omega_tilde) with
/// t in [0, pi] and omega_tilde a unit vector in R^{n-1}. At the poles
/// (sin t = 0) omega_tilde defaults to the first basis vector; the pole set
/// has measure zero so any measurable choice is valid.
pub fn sphere_split(omega: &DVector<f64>) -> Result<(f64, DVector<f64>)> {
    let n = omega.len();
    if n < 2 {
        return Err(Error::InvalidInput("need ambient dim >= 2".into()));
    }
    if (omega.norm() - 1.0).abs() > ORTHO_TOL {
        return Err(Error::InvalidInput(format!(
            "input not a unit vector (norm {})",
            omega.norm()
        )));
    }
    let tail = omega.rows(1, n - 1).into_owned();
    let s = tail.norm();
    let t = s.atan2(omega[0]);
    let omega_tilde = if s < 1e-12 {
        let mut e = DVector::zeros(n - 1);
        e[0] = 1.0;
        e
    } else {
        tail / s
    };
    Ok((t, omega_tilde))
}
