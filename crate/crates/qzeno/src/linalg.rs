//! Dense complex matrix kernel sized for 3/9/81-dimensional operators:
//! arithmetic, Kronecker products, subsystem embeddings, a cyclic Jacobi
//! eigensolver for Hermitian matrices, and the trace norm.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

pub const C_ZERO: Complex64 = Complex { re: 0.0, im: 0.0 };
pub const C_ONE: Complex64 = Complex { re: 1.0, im: 0.0 };

/// Tolerance for treating an input as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
const JACOBI_OFF_THRESHOLD: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C_ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C_ONE;
        }
        m
    }

    /// Builds a matrix from a row-major entry list; `entries.len()` must be `dim`².
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, data: entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        Ok(())
    }

    /// Matrix product `self * rhs`. Rows of `self` with exact-zero entries
    /// contribute nothing, so masked and sparse operators multiply cheaply.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        let mut out = vec![C_ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C_ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, r) in out_row.iter_mut().zip(rhs_row.iter()) {
                    *o += a * r;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// Matrix product `self * rhs†`, skipping exact-zero entries of `rhs`.
    pub fn mul_dagger(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        // rhs†'s column j is the conjugate of rhs's row j.
        let mut cols: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(
                (0..n)
                    .filter_map(|k| {
                        let v = rhs.data[j * n + k];
                        (v != C_ZERO).then(|| (k, v.conj()))
                    })
                    .collect(),
            );
        }
        let mut out = vec![C_ZERO; n * n];
        for i in 0..n {
            let lhs_row = &self.data[i * n..(i + 1) * n];
            for (j, col) in cols.iter().enumerate() {
                let mut acc = C_ZERO;
                for &(k, v) in col {
                    acc += lhs_row[k] * v;
                }
                out[i * n + j] = acc;
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// Conjugation `u * self * u†`.
    pub fn conjugate_with(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.mul_dagger(u)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise absolute difference; the comparison metric used by
    /// all approximate-equality tests.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on mismatched dims");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// Max deviation from Hermiticity, `max |a_ij - conj(a_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        Ok(())
    }

    pub fn max_imag_abs(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Kronecker product with `a` indexing the high-order (leftmost) subsystem.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for ia in 0..na {
        for ja in 0..na {
            let f = a.get(ia, ja);
            if f == C_ZERO {
                continue;
            }
            for ib in 0..nb {
                for jb in 0..nb {
                    out.set(ia * nb + ib, ja * nb + jb, f * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Kronecker product of several factors, leftmost factor highest-order.
pub fn tensor_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    assert!(!factors.is_empty(), "tensor_all needs at least one factor");
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = tensor(&acc, f);
    }
    acc
}

/// Lifts `op` to the full space described by `dims`, acting on the listed
/// `slots` (in the order given) and as identity elsewhere. Slot 0 is the
/// highest-order subsystem, matching [`tensor`].
pub fn embed_on_subsystems(
    op: &ComplexMatrix,
    slots: &[usize],
    dims: &[usize],
) -> Result<ComplexMatrix> {
    let mut seen = vec![false; dims.len()];
    for &s in slots {
        if s >= dims.len() {
            return Err(Error::InvalidParameter(format!(
                "slot {s} out of range for {} subsystems",
                dims.len()
            )));
        }
        if seen[s] {
            return Err(Error::InvalidParameter(format!("duplicate slot {s}")));
        }
        seen[s] = true;
    }
    let op_dim: usize = slots.iter().map(|&s| dims[s]).product();
    if op.dim() != op_dim {
        return Err(Error::DimensionMismatch(format!(
            "operator dim {} does not match product of slot dims {}",
            op.dim(),
            op_dim
        )));
    }
    let total: usize = dims.iter().product();

    // Strides of each subsystem in the full-space index (slot 0 leftmost).
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    // Strides of each listed slot inside the operator's own index.
    let mut op_strides = vec![1usize; slots.len()];
    for m in (0..slots.len().saturating_sub(1)).rev() {
        op_strides[m] = op_strides[m + 1] * dims[slots[m + 1]];
    }
    let rest: Vec<usize> = (0..dims.len()).filter(|s| !slots.contains(s)).collect();

    let mut out = ComplexMatrix::zeros(total);
    // Enumerate identity digits of the untouched subsystems once, then copy
    // each operator entry into every matching block.
    let rest_count: usize = rest.iter().map(|&s| dims[s]).product();
    for rest_idx in 0..rest_count {
        let mut base = 0usize;
        let mut rem = rest_idx;
        for &s in rest.iter().rev() {
            base += (rem % dims[s]) * strides[s];
            rem /= dims[s];
        }
        for op_row in 0..op_dim {
            let mut row = base;
            for (m, &s) in slots.iter().enumerate() {
                row += (op_row / op_strides[m] % dims[s]) * strides[s];
            }
            for op_col in 0..op_dim {
                let v = op.get(op_row, op_col);
                if v == C_ZERO {
                    continue;
                }
                let mut col = base;
                for (m, &s) in slots.iter().enumerate() {
                    col += (op_col / op_strides[m] % dims[s]) * strides[s];
                }
                out.set(row, col, v);
            }
        }
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered like `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V diag(lambda) V†`; used by reconstruction tests.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v.get(i, k) * self.eigenvalues[k] * v.get(j, k).conj())
                .sum()
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Full spectral decomposition by cyclic Jacobi rotations.
///
/// Each pivot (p, q) is first phase-rotated so the off-diagonal element is
/// real, then annihilated by a plane rotation. Stops when the off-diagonal
/// Frobenius norm drops below 1e-14 or after 100 sweeps.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    m.ensure_hermitian()?;
    let n = m.dim();
    let mut a = m.clone();
    // Symmetrize exactly so rounding in the input cannot bias the iteration.
    for i in 0..n {
        a.set(i, i, Complex64::new(a.get(i, i).re, 0.0));
        for j in (i + 1)..n {
            let avg = (a.get(i, j) + a.get(j, i).conj()).scale(0.5);
            a.set(i, j, avg);
            a.set(j, i, avg.conj());
        }
    }
    let mut v = ComplexMatrix::identity(n);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_THRESHOLD {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // Plane angle zeroing the pivot: tan is the small root of
                // t^2 - 2*tau*t - 1 = 0 with tau = (aqq - app) / (2r).
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    -tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // Column rotation J: J[p][p] = c, J[p][q] = -s,
                // J[q][p] = conj(phase)*s, J[q][q] = conj(phase)*c.
                let ph_s = phase.conj() * s;
                let ph_c = phase.conj() * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    let new_p = akp * c + akq * ph_s;
                    let new_q = -akp * s + akq * ph_c;
                    a.set(k, p, new_p);
                    a.set(p, k, new_p.conj());
                    a.set(k, q, new_q);
                    a.set(q, k, new_q.conj());
                }
                let cs2r = 2.0 * c * s * r;
                let (c2, s2) = (c * c, s * s);
                a.set(p, p, Complex64::new(app * c2 + cs2r + aqq * s2, 0.0));
                a.set(q, q, Complex64::new(app * s2 - cs2r + aqq * c2, 0.0));
                a.set(p, q, C_ZERO);
                a.set(q, p, C_ZERO);

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c + vkq * ph_s);
                    v.set(k, q, -vkp * s + vkq * ph_c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v.get(i, order[j]));
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let eigen = hermitian_eigen(m)?;
    Ok(eigen.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// d x d complex matrix with `U U† = I` within 1e-12.
#[derive(Debug, Clone)]
pub struct UnitaryOperator {
    mat: ComplexMatrix,
}

impl UnitaryOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let product = mat.mul_dagger(&mat)?;
        let deviation = product.max_abs_diff(&ComplexMatrix::identity(mat.dim()));
        if deviation > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary: |U U† - I| = {deviation:.3e}"
            )));
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Idempotent Hermitian matrix (`P² = P`, `P = P†` within 1e-12).
#[derive(Debug, Clone)]
pub struct Projector {
    mat: ComplexMatrix,
}

impl Projector {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let herm = mat.hermiticity_deviation();
        if herm > 1e-12 {
            return Err(Error::NotHermitian {
                deviation: herm,
                tolerance: 1e-12,
            });
        }
        let idem = mat.matmul(&mat)?.max_abs_diff(&mat);
        if idem > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "matrix is not idempotent: |P² - P| = {idem:.3e}"
            )));
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Rank of the projector (its trace, rounded).
    pub fn rank(&self) -> usize {
        self.mat.trace().re.round() as usize
    }
}
