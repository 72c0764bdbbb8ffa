//! Small dense matrix kernels.
//!
//! Symmetric eigenvalues use the cyclic two-sided Jacobi method and singular
//! values the one-sided (Hestenes) variant. Both stop once the off-diagonal
//! residual, measured relative to the Frobenius norm of the input, drops below
//! the tolerance, and fail after [`SWEEP_CAP`] sweeps. The matrices handled
//! here are contraction matrices, unfoldings and matrix-shaped tensors, i.e.
//! tens of rows at most.

use crate::error::{Error, Result};
use crate::tensor::{MultiIndex, Tensor};

pub const SWEEP_CAP: usize = 30;
pub const DEFAULT_TOL: f64 = 1e-12;
/// Smallest acceptable `|pivot| / max|entry|` during inversion.
pub const PIVOT_RATIO_FLOOR: f64 = 1e-10;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("matrix entry is not finite"));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m.data.fill(value);
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        Matrix::new(r, c, rows.concat())
    }

    /// Order-2 tensor viewed as a matrix.
    pub fn from_tensor(t: &Tensor) -> Result<Self> {
        if t.order() != 2 {
            return Err(Error::invalid(format!(
                "expected an order-2 tensor, got order {}",
                t.order()
            )));
        }
        Matrix::new(t.shape()[0], t.shape()[1], t.data().to_vec())
    }

    pub fn to_tensor(&self) -> Tensor {
        Tensor::from_parts(vec![self.rows, self.cols], self.data.clone())
    }

    /// `u vᵀ`.
    pub fn outer(u: &[f64], v: &[f64]) -> Self {
        let mut m = Matrix::zeros(u.len(), v.len());
        for (i, &x) in u.iter().enumerate() {
            for (j, &y) in v.iter().enumerate() {
                m.data[i * v.len() + j] = x * y;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0.0;
                for l in 0..self.cols {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.data[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, alpha: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| alpha * x).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::invalid("matrix shape mismatch"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Square matrix symmetrized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix(Matrix);

impl SymmetricMatrix {
    /// Accepts `m` when `|m[i][j] - m[j][i]| ≤ 1e-12 · max(1, max|m|)` and
    /// replaces each mirrored pair by its mean.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::invalid("symmetric matrix must be square"));
        }
        let limit = 1e-12 * m.max_abs().max(1.0);
        let asym = m.asymmetry();
        if asym > limit {
            return Err(Error::invalid(format!("matrix is not symmetric (gap {asym:e})")));
        }
        let mut m = m;
        let n = m.rows;
        for i in 0..n {
            for j in 0..i {
                let mean = 0.5 * (m.get(i, j) + m.get(j, i));
                m.set(i, j, mean);
                m.set(j, i, mean);
            }
        }
        Ok(SymmetricMatrix(m))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// Eigenvalues or singular values in descending order plus convergence data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub values: Vec<f64>,
    /// Sweeps performed.
    pub iterations: usize,
    /// Off-diagonal residual relative to the Frobenius norm of the input.
    pub offdiag_residual: f64,
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi.
pub fn sym_eig(m: &SymmetricMatrix, tol: f64) -> Result<SpectrumReport> {
    sym_eig_with_vectors(m, tol).map(|(report, _)| report)
}

/// Eigenvalues and eigenvectors (columns of the returned matrix, matching the
/// descending order of `values`).
pub fn sym_eig_with_vectors(m: &SymmetricMatrix, tol: f64) -> Result<(SpectrumReport, Matrix)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let n = m.dim();
    let mut a = m.0.clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius();
    let off = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j) * a.get(i, j);
                }
            }
        }
        s.sqrt()
    };
    let relative = |x: f64| if scale > 0.0 { x / scale } else { 0.0 };

    let mut sweeps = 0;
    let mut residual = relative(off(&a));
    while residual > tol {
        if sweeps == SWEEP_CAP {
            return Err(Error::NumericalFailure {
                message: format!("Jacobi eigenvalue sweeps did not converge in {SWEEP_CAP} sweeps"),
                residual,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, c * arp - s * arq);
                    a.set(r, q, s * arp + c * arq);
                }
                for r in 0..n {
                    let apr = a.get(p, r);
                    let aqr = a.get(q, r);
                    a.set(p, r, c * apr - s * aqr);
                    a.set(q, r, s * apr + c * aqr);
                }
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, c * vrp - s * vrq);
                    v.set(r, q, s * vrp + c * vrq);
                }
            }
        }
        residual = relative(off(&a));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).total_cmp(&a.get(i, i)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, dst, v.get(r, src));
        }
    }
    Ok((
        SpectrumReport {
            values,
            iterations: sweeps,
            offdiag_residual: residual,
        },
        vectors,
    ))
}

/// Thin singular value decomposition `m = U diag(s) Vᵀ`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × r` with orthonormal columns for the nonzero singular values.
    pub u: Matrix,
    pub s: Vec<f64>,
    /// `cols × r`.
    pub v: Matrix,
    pub report: SpectrumReport,
}

impl Svd {
    /// `Σ u_i v_iᵀ` over nonzero singular values: the maximizer of `⟨m, W⟩`
    /// over the spectral-norm unit ball.
    pub fn polar_factor(&self) -> Matrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut w = Matrix::zeros(m, n);
        let floor = self.s.first().copied().unwrap_or(0.0) * 1e-14;
        for (k, &sigma) in self.s.iter().enumerate() {
            if sigma <= floor || sigma == 0.0 {
                continue;
            }
            for i in 0..m {
                for j in 0..n {
                    let x = w.get(i, j) + self.u.get(i, k) * self.v.get(j, k);
                    w.set(i, j, x);
                }
            }
        }
        w
    }
}

/// Singular values via one-sided Jacobi.
pub fn singular_values(m: &Matrix, tol: f64) -> Result<SpectrumReport> {
    svd(m, tol).map(|s| s.report)
}

pub fn svd(m: &Matrix, tol: f64) -> Result<Svd> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if m.rows < m.cols {
        let t = svd(&m.transpose(), tol)?;
        return Ok(Svd {
            u: t.v,
            s: t.s,
            v: t.u,
            report: t.report,
        });
    }
    let (rows, n) = (m.rows, m.cols);
    // Columns of `w` are orthogonalized in place; `v` accumulates rotations.
    let mut w = m.clone();
    let mut v = Matrix::identity(n);
    // Columns below this squared norm are roundoff in a rank-deficient input;
    // their direction is noise, so they are left alone.
    let negligible = (16.0 * f64::EPSILON * m.frobenius()).powi(2);
    let mut sweeps = 0;
    let residual = loop {
        sweeps += 1;
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..rows {
                    let (x, y) = (w.get(i, p), w.get(i, q));
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || alpha <= negligible || beta <= negligible {
                    continue;
                }
                let rel = gamma.abs() / (alpha * beta).sqrt();
                worst = worst.max(rel);
                if rel <= tol * 0.01 {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let (x, y) = (w.get(i, p), w.get(i, q));
                    w.set(i, p, c * x - s * y);
                    w.set(i, q, s * x + c * y);
                }
                for i in 0..n {
                    let (x, y) = (v.get(i, p), v.get(i, q));
                    v.set(i, p, c * x - s * y);
                    v.set(i, q, s * x + c * y);
                }
            }
        }
        if worst <= tol {
            break worst;
        }
        if sweeps == SWEEP_CAP {
            return Err(Error::NumericalFailure {
                message: format!("one-sided Jacobi did not converge in {SWEEP_CAP} sweeps"),
                residual: worst,
            });
        }
    };

    let norms: Vec<f64> = (0..n)
        .map(|j| (0..rows).map(|i| w.get(i, j).powi(2)).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let mut u = Matrix::zeros(rows, n);
    let mut vs = Matrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let sigma = norms[src];
        s.push(sigma);
        for i in 0..rows {
            u.set(i, dst, if sigma > 0.0 { w.get(i, src) / sigma } else { 0.0 });
        }
        for i in 0..n {
            vs.set(i, dst, v.get(i, src));
        }
    }
    Ok(Svd {
        u,
        v: vs,
        report: SpectrumReport {
            values: s.clone(),
            iterations: sweeps,
            offdiag_residual: residual,
        },
        s,
    })
}

/// Spectral norm, nuclear norm and (square input only) spectral radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixNorms {
    pub spectral: f64,
    pub nuclear: f64,
    pub spectral_radius: Option<f64>,
}

pub fn matrix_norms(m: &Matrix) -> Result<MatrixNorms> {
    let report = singular_values(m, DEFAULT_TOL)?;
    let spectral_radius = if m.is_square() { Some(spectral_radius(m)?) } else { None };
    Ok(MatrixNorms {
        spectral: report.values[0],
        nuclear: report.values.iter().sum(),
        spectral_radius,
    })
}

pub fn nuclear_norm(m: &Matrix) -> Result<f64> {
    Ok(singular_values(m, DEFAULT_TOL)?.values.iter().sum())
}

pub fn spectral_norm(m: &Matrix) -> Result<f64> {
    Ok(singular_values(m, DEFAULT_TOL)?.values[0])
}

/// Largest eigenvalue modulus of a square matrix.
///
/// Symmetric input goes through [`sym_eig`]. Otherwise the power sequence is
/// advanced by repeated squaring with Frobenius normalization and a log-scale
/// accumulator: after `t` squarings the estimate is `‖m^(2^t)‖_F^(1/2^t)`,
/// which converges to the spectral radius for any real square matrix,
/// including complex or defective dominant eigenvalues.
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::invalid(format!(
            "spectral radius needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    if m.asymmetry() <= 1e-12 * m.max_abs().max(1.0) {
        let report = sym_eig(&SymmetricMatrix::new(m.clone())?, DEFAULT_TOL)?;
        return Ok(report.values.iter().fold(0.0, |r, x| r.max(x.abs())));
    }
    let f = m.frobenius();
    if f == 0.0 {
        return Ok(0.0);
    }
    let mut b = m.scale(1.0 / f);
    let mut log_scale = f.ln();
    let mut exponent = 1.0f64;
    for _ in 0..64 {
        let c = b.matmul(&b)?;
        let s = c.frobenius();
        if s == 0.0 {
            return Ok(0.0);
        }
        b = c.scale(1.0 / s);
        log_scale = 2.0 * log_scale + s.ln();
        exponent *= 2.0;
    }
    Ok((log_scale / exponent).exp())
}

/// Gauss-Jordan inverse with partial pivoting.
///
/// Refuses matrices whose pivot ratio `|pivot| / max|entry|` falls below
/// [`PIVOT_RATIO_FLOOR`].
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::invalid("only square matrices are invertible"));
    }
    let n = m.rows;
    let scale = m.max_abs();
    if scale == 0.0 {
        return Err(Error::invalid("zero matrix is singular"));
    }
    let mut a = m.clone();
    let mut inv = Matrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a.get(i, col).abs().total_cmp(&a.get(j, col).abs()))
            .expect("non-empty range");
        let pivot = a.get(pivot_row, col);
        if pivot.abs() / scale < PIVOT_RATIO_FLOOR {
            return Err(Error::invalid(format!(
                "matrix is numerically singular (pivot ratio {:e})",
                pivot.abs() / scale
            )));
        }
        if pivot_row != col {
            for j in 0..n {
                let (x, y) = (a.get(col, j), a.get(pivot_row, j));
                a.set(col, j, y);
                a.set(pivot_row, j, x);
                let (x, y) = (inv.get(col, j), inv.get(pivot_row, j));
                inv.set(col, j, y);
                inv.set(pivot_row, j, x);
            }
        }
        for j in 0..n {
            a.set(col, j, a.get(col, j) / pivot);
            inv.set(col, j, inv.get(col, j) / pivot);
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = a.get(i, col);
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a.set(i, j, a.get(i, j) - factor * a.get(col, j));
                inv.set(i, j, inv.get(i, j) - factor * inv.get(col, j));
            }
        }
    }
    Ok(inv)
}

/// Mode-`mode` unfolding: rows indexed by that mode, columns by the remaining
/// modes in row-major order.
pub fn unfold(t: &Tensor, mode: usize) -> Result<Matrix> {
    if mode >= t.order() {
        return Err(Error::invalid(format!(
            "mode {mode} out of range for order {}",
            t.order()
        )));
    }
    let rows = t.shape()[mode];
    let cols = t.len() / rows;
    let rest: Vec<usize> = (0..t.order()).filter(|&m| m != mode).collect();
    let rest_shape: Vec<usize> = rest.iter().map(|&m| t.shape()[m]).collect();
    let rest_strides = crate::tensor::strides(&rest_shape);
    let mut out = Matrix::zeros(rows, cols);
    let mut it = MultiIndex::new(t.shape());
    let mut pos = 0;
    while let Some(idx) = it.next_index() {
        let col: usize = rest.iter().zip(&rest_strides).map(|(&m, &s)| idx[m] * s).sum();
        out.data[idx[mode] * cols + col] = t.data()[pos];
        pos += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sym(rows: &[Vec<f64>]) -> SymmetricMatrix {
        SymmetricMatrix::new(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn rank_deficient_svd_converges() {
        for n in 2..=5 {
            for scale in [1.0, 1.0 / 3.0, 1.0 / 9.0, 1e-3, 7.5] {
                let s = singular_values(&Matrix::filled(n, n, scale), DEFAULT_TOL).unwrap();
                assert!((s.values[0] - scale * n as f64).abs() <= 1e-12 * scale * n as f64);
                assert!(s.values[1..].iter().all(|x| x.abs() <= 1e-12 * scale * n as f64));
            }
        }
        let m = Matrix::outer(&[0.3, -1.2, 0.7], &[2.0, 0.1, -0.4, 1.0]);
        let s = singular_values(&m, DEFAULT_TOL).unwrap();
        assert!((s.values[0] - m.frobenius()).abs() <= 1e-12 * m.frobenius());
    }

    #[test]
    fn identity_eigenvalues() {
        let r = sym_eig(&SymmetricMatrix::new(Matrix::identity(3)).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.values, vec![1.0, 1.0, 1.0]);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn all_ones_two_by_two() {
        let r = sym_eig(&sym(&[vec![1.0, 1.0], vec![1.0, 1.0]]), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(r.values[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.values[1], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn shifted_all_ones_three() {
        // 3J - I/3 has eigenvalues 9 - 1/3 and -1/3 (twice).
        let m = Matrix::filled(3, 3, 3.0)
            .sub(&Matrix::identity(3).scale(1.0 / 3.0))
            .unwrap();
        let r = sym_eig(&SymmetricMatrix::new(m).unwrap(), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(r.values[0], 26.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.values[1], -1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.values[2], -1.0 / 3.0, epsilon = 1e-12);
        assert!(r.offdiag_residual <= DEFAULT_TOL);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(SymmetricMatrix::new(m).is_err());
        assert!(SymmetricMatrix::new(Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn singular_values_of_all_ones() {
        let r = singular_values(&Matrix::filled(2, 2, 1.0), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(r.values[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.values[1], 0.0, epsilon = 1e-14);
        let r = singular_values(&Matrix::filled(3, 3, 1.0), DEFAULT_TOL).unwrap();
        assert_abs_diff_eq!(r.values.iter().sum::<f64>(), 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r.values[0], 3.0, epsilon = 1e-13);
    }

    #[test]
    fn identity_nuclear_norm_is_dimension() {
        for n in 1..6 {
            let norms = matrix_norms(&Matrix::identity(n)).unwrap();
            assert_abs_diff_eq!(norms.nuclear, n as f64, epsilon = 1e-14);
            assert_abs_diff_eq!(norms.spectral, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(norms.spectral_radius.unwrap(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn rectangular_svd_reconstructs() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![-1.0, 0.5, 4.0]]).unwrap();
        let d = svd(&m, DEFAULT_TOL).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                let x: f64 = (0..d.s.len()).map(|k| d.u.get(i, k) * d.s[k] * d.v.get(j, k)).sum();
                assert_abs_diff_eq!(x, m.get(i, j), epsilon = 1e-12);
            }
        }
        assert!(matrix_norms(&m).unwrap().spectral_radius.is_none());
        assert!(spectral_radius(&m).is_err());
    }

    #[test]
    fn radius_of_rotation_and_jordan_block() {
        // Rotation by 90 degrees scaled by 2: complex pair of modulus 2.
        let m = Matrix::from_rows(&[vec![0.0, -2.0], vec![2.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(spectral_radius(&m).unwrap(), 2.0, epsilon = 1e-12);
        let j = Matrix::from_rows(&[vec![0.5, 1.0], vec![0.0, 0.5]]).unwrap();
        assert_abs_diff_eq!(spectral_radius(&j).unwrap(), 0.5, epsilon = 1e-12);
        let nil = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(spectral_radius(&nil).unwrap(), 0.0);
    }

    #[test]
    fn inverse_round_trip_and_singular_refusal() {
        let m = Matrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]]).unwrap();
        let inv = inverse(&m).unwrap();
        let prod = m.matmul(&inv).unwrap();
        assert!(prod.sub(&Matrix::identity(3)).unwrap().frobenius() < 1e-12);
        let singular = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(inverse(&singular).is_err());
    }

    #[test]
    fn unfolding_layout() {
        let t = Tensor::from_fn(&[2, 3, 2], |i| (i[0] * 100 + i[1] * 10 + i[2]) as f64).unwrap();
        let u = unfold(&t, 1).unwrap();
        assert_eq!((u.rows(), u.cols()), (3, 4));
        // columns run over (i0, i2) row-major
        assert_eq!(u.get(2, 0), 20.0);
        assert_eq!(u.get(2, 1), 21.0);
        assert_eq!(u.get(2, 2), 120.0);
        assert!(unfold(&t, 3).is_err());
    }
}
