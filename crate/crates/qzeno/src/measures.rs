//! Entanglement and closeness measures: partial transpose over a chosen
//! subsystem cut, negativity, fidelity to the maximally entangled state,
//! and the positive-partial-transpose test.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, hermitian_eigen};
use crate::states::{DensityMatrix, psi_plus};

/// Eigenvalues of a partial transpose above this cutoff count as
/// non-negative, so rounding noise cannot produce spurious negativity.
pub const PPT_EIGENVALUE_CUTOFF: f64 = 1e-10;

/// A bipartition of a multi-subsystem space: which global slots belong to
/// side A. Slot 0 is the highest-order (leftmost) subsystem.
#[derive(Debug, Clone)]
pub struct BipartiteSplit {
    subsystem_dims: Vec<usize>,
    a_slots: Vec<usize>,
}

impl BipartiteSplit {
    pub fn new(subsystem_dims: Vec<usize>, a_slots: Vec<usize>) -> Result<Self> {
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) {
            return Err(Error::InvalidParameter(
                "subsystem dims must be positive".into(),
            ));
        }
        let mut seen = vec![false; subsystem_dims.len()];
        for &s in &a_slots {
            if s >= subsystem_dims.len() {
                return Err(Error::InvalidParameter(format!(
                    "slot {s} out of range for {} subsystems",
                    subsystem_dims.len()
                )));
            }
            if seen[s] {
                return Err(Error::InvalidParameter(format!("duplicate slot {s}")));
            }
            seen[s] = true;
        }
        if a_slots.is_empty() || a_slots.len() == subsystem_dims.len() {
            return Err(Error::InvalidParameter(
                "side A must be a non-empty proper subset of the subsystems".into(),
            ));
        }
        Ok(Self {
            subsystem_dims,
            a_slots,
        })
    }

    /// The standard cut for a qutrit pair: transpose the first qutrit.
    pub fn qutrit_pair() -> Self {
        Self::new(vec![3, 3], vec![0]).expect("static split is valid")
    }

    /// The complementary split (side B becomes the transposed side).
    pub fn swapped(&self) -> Self {
        let b_slots: Vec<usize> = (0..self.subsystem_dims.len())
            .filter(|s| !self.a_slots.contains(s))
            .collect();
        Self::new(self.subsystem_dims.clone(), b_slots).expect("complement of a valid split")
    }

    pub fn total_dim(&self) -> usize {
        self.subsystem_dims.iter().product()
    }

    fn strides(&self) -> Vec<usize> {
        let n = self.subsystem_dims.len();
        let mut strides = vec![1usize; n];
        for s in (0..n.saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.subsystem_dims[s + 1];
        }
        strides
    }
}

/// Transposes only the side-A indices of `m`. Preserves trace and
/// Hermiticity; applied twice it is the identity.
pub fn partial_transpose(m: &ComplexMatrix, split: &BipartiteSplit) -> Result<ComplexMatrix> {
    if m.dim() != split.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix dim {} vs split total dim {}",
            m.dim(),
            split.total_dim()
        )));
    }
    let strides = split.strides();
    let dims = &split.subsystem_dims;
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for row in 0..n {
        for col in 0..n {
            // Swap the A-side digits between row and column index.
            let mut new_row = row;
            let mut new_col = col;
            for &s in &split.a_slots {
                let rd = row / strides[s] % dims[s];
                let cd = col / strides[s] % dims[s];
                new_row = new_row - rd * strides[s] + cd * strides[s];
                new_col = new_col - cd * strides[s] + rd * strides[s];
            }
            out.set(new_row, new_col, m.get(row, col));
        }
    }
    Ok(out)
}

/// Negativity of `rho` across the split: the absolute sum of negative
/// eigenvalues of the partial transpose. Cross-checked internally against
/// the trace-norm form `(||rho^T_A||_1 - 1) / 2`; disagreement beyond 1e-10
/// is reported as an error rather than silently returned.
pub fn negativity(rho: &DensityMatrix, split: &BipartiteSplit) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), split)?;
    let eigen = hermitian_eigen(&pt)?;
    let negative_sum: f64 = eigen
        .eigenvalues
        .iter()
        .filter(|&&l| l < -PPT_EIGENVALUE_CUTOFF)
        .map(|l| -l)
        .sum();
    let trace_norm: f64 = eigen.eigenvalues.iter().map(|l| l.abs()).sum();
    let from_trace_norm = (trace_norm - 1.0) / 2.0;
    if (negative_sum - from_trace_norm).abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "negativity formulas disagree: eigenvalue sum {negative_sum:.14e} vs trace norm {from_trace_norm:.14e}"
        )));
    }
    Ok(negative_sum)
}

/// Overlap `<psi+| rho |psi+>` with the maximally entangled qutrit pair.
pub fn fidelity_to_psi_plus(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 9 {
        return Err(Error::DimensionMismatch(format!(
            "fidelity target needs a 9x9 state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(psi_plus().expectation(rho.matrix())?.re)
}

/// Outcome of the Peres partial-transpose test. `Ppt` does not imply
/// separability; it only records a non-negative partial-transpose spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PptClass {
    Ppt,
    Npt,
}

pub fn classify_ppt(rho: &DensityMatrix, split: &BipartiteSplit) -> Result<PptClass> {
    let pt = partial_transpose(rho.matrix(), split)?;
    let eigen = hermitian_eigen(&pt)?;
    if eigen.eigenvalues[0] >= -PPT_EIGENVALUE_CUTOFF {
        Ok(PptClass::Ppt)
    } else {
        Ok(PptClass::Npt)
    }
}
