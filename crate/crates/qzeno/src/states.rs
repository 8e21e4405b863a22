//! Constructors for the two-qutrit state family driving the activation
//! protocol, plus the single-qutrit z-basis projectors.
//!
//! Basis convention for a qutrit pair: `|ab>` maps to index `3a + b`
//! (row-major), which fixes the layout of every printed matrix.

use crate::error::{Error, Result};
use crate::linalg::{C_ONE, C_ZERO, Complex64, ComplexMatrix, HERMITICITY_TOL, Projector, hermitian_eigen};

/// Unit-norm complex amplitude vector.
#[derive(Debug, Clone)]
pub struct PureState {
    data: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr.sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "pure state norm {} is not 1",
                norm_sqr.sqrt()
            )));
        }
        Ok(Self { data: amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.data[index]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.data
    }

    /// Outer product `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        let n = self.dim();
        let mat = ComplexMatrix::from_fn(n, |i, j| self.data[i] * self.data[j].conj());
        DensityMatrix::new(mat).expect("outer product of a unit vector is a valid state")
    }

    /// Expectation value `<psi| m |psi>`.
    pub fn expectation(&self, m: &ComplexMatrix) -> Result<Complex64> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator dim {} vs state dim {}",
                m.dim(),
                self.dim()
            )));
        }
        let n = self.dim();
        let mut acc = C_ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i].conj() * m.get(i, j) * self.data[j];
            }
        }
        Ok(acc)
    }
}

/// Hermitian, unit-trace operator. Positivity is not re-diagonalized on
/// every construction; [`DensityMatrix::min_eigenvalue`] exposes it for
/// validation and tests.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let deviation = mat.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eigen = hermitian_eigen(&self.mat)?;
        Ok(eigen.eigenvalues[0])
    }

    /// Checks positive semidefiniteness within `tol` (eigenvalues above `-tol`).
    pub fn validate_psd(&self, tol: f64) -> Result<()> {
        let min = self.min_eigenvalue()?;
        if min < -tol {
            return Err(Error::InvalidParameter(format!(
                "state has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }
}

/// Maximally entangled two-qutrit state `(|00> + |11> + |22>)/sqrt(3)`.
pub fn psi_plus() -> PureState {
    let amp = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut data = vec![C_ZERO; 9];
    data[0] = amp;
    data[4] = amp;
    data[8] = amp;
    PureState::new(data).expect("amplitudes are normalized")
}

fn diagonal_third(indices: [usize; 3]) -> DensityMatrix {
    let mut mat = ComplexMatrix::zeros(9);
    for idx in indices {
        mat.set(idx, idx, Complex64::new(1.0 / 3.0, 0.0));
    }
    DensityMatrix::new(mat).expect("rank-3 uniform diagonal is a valid state")
}

/// Uniform mixture of `|01>`, `|12>`, `|20>`.
pub fn sigma_plus() -> DensityMatrix {
    diagonal_third([1, 5, 6])
}

/// Uniform mixture of `|10>`, `|21>`, `|02>`.
pub fn sigma_minus() -> DensityMatrix {
    diagonal_third([3, 7, 2])
}

/// One-parameter two-qutrit family
/// `(2/7) |psi+><psi+| + (alpha/7) sigma_plus + ((5-alpha)/7) sigma_minus`,
/// defined for `2 <= alpha <= 5`. PPT for `alpha <= 4`, NPT above.
pub fn sigma_alpha(alpha: f64) -> Result<DensityMatrix> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} outside [2, 5]"
        )));
    }
    let pp = psi_plus().density();
    let mat = pp
        .matrix()
        .scale(Complex64::new(2.0 / 7.0, 0.0))
        .add(&sigma_plus().matrix().scale(Complex64::new(alpha / 7.0, 0.0)))?
        .add(&sigma_minus().matrix().scale(Complex64::new((5.0 - alpha) / 7.0, 0.0)))?;
    DensityMatrix::new(mat)
}

/// Free-entangled input `F |psi+><psi+| + (1-F) sigma_plus`, `0 < F < 1`.
pub fn sigma_free(fidelity: f64) -> Result<DensityMatrix> {
    if !(fidelity > 0.0 && fidelity < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "F = {fidelity} outside (0, 1)"
        )));
    }
    let pp = psi_plus().density();
    let mat = pp
        .matrix()
        .scale(Complex64::new(fidelity, 0.0))
        .add(&sigma_plus().matrix().scale(Complex64::new(1.0 - fidelity, 0.0)))?;
    DensityMatrix::new(mat)
}

/// Single-qutrit z-basis outcome projector `|level><level|`.
pub fn z_projector(level: usize) -> Result<Projector> {
    if level > 2 {
        return Err(Error::InvalidParameter(format!(
            "z-basis level {level} outside {{0, 1, 2}}"
        )));
    }
    let mut mat = ComplexMatrix::zeros(3);
    mat.set(level, level, C_ONE);
    Projector::new(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor;

    #[test]
    fn psi_plus_amplitudes() {
        let psi = psi_plus();
        let amp = 1.0 / 3f64.sqrt();
        assert!((psi.amplitude(0).re - amp).abs() < 1e-15);
        assert_eq!(psi.amplitude(1), C_ZERO);
        assert!((psi.amplitude(0).re - 0.577_350_269).abs() < 1e-9);
        let rho = psi.density();
        let overlap = psi.expectation(rho.matrix()).unwrap();
        assert!((overlap.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sigma_plus_minus_diagonals() {
        let expect = |dm: &DensityMatrix, hot: [usize; 3]| {
            for i in 0..9 {
                let want = if hot.contains(&i) { 1.0 / 3.0 } else { 0.0 };
                assert_eq!(dm.matrix().get(i, i).re, want);
            }
        };
        expect(&sigma_plus(), [1, 5, 6]);
        expect(&sigma_minus(), [3, 7, 2]);
    }

    #[test]
    fn sigma_plus_is_orthogonal_to_psi_plus() {
        let overlap = psi_plus().expectation(sigma_plus().matrix()).unwrap();
        assert!(overlap.norm() < 1e-15);
    }

    #[test]
    fn sigma_alpha_reference_entries() {
        let dm = sigma_alpha(4.0).unwrap();
        assert!((dm.matrix().get(0, 0).re - 0.095238).abs() < 5e-6);
        assert!((dm.matrix().get(1, 1).re - 0.190476).abs() < 5e-6);
        assert!((dm.matrix().get(2, 2).re - 0.047619).abs() < 5e-6);
    }

    #[test]
    fn sigma_alpha_is_exact_convex_combination() {
        let alpha = 3.3;
        let dm = sigma_alpha(alpha).unwrap();
        let pp = psi_plus().density();
        let combo = pp
            .matrix()
            .scale(Complex64::new(2.0 / 7.0, 0.0))
            .add(&sigma_plus().matrix().scale(Complex64::new(alpha / 7.0, 0.0)))
            .unwrap()
            .add(
                &sigma_minus()
                    .matrix()
                    .scale(Complex64::new((5.0 - alpha) / 7.0, 0.0)),
            )
            .unwrap();
        assert_eq!(dm.matrix(), &combo);
    }

    #[test]
    fn sigma_free_reference_entries() {
        let dm = sigma_free(0.3).unwrap();
        assert!((dm.matrix().get(0, 0).re - 0.1).abs() < 1e-12);
        assert!((dm.matrix().get(1, 1).re - 7.0 / 30.0).abs() < 1e-12);
    }

    #[test]
    fn parameter_ranges_are_strict() {
        assert!(sigma_alpha(1.9).is_err());
        assert!(sigma_alpha(5.1).is_err());
        assert!(sigma_alpha(2.0).is_ok());
        assert!(sigma_alpha(5.0).is_ok());
        assert!(sigma_free(0.0).is_err());
        assert!(sigma_free(1.0).is_err());
        assert!(sigma_free(f64::NAN).is_err());
        assert!(z_projector(3).is_err());
    }

    #[test]
    fn z_projectors_complete_and_orthogonal() {
        let p0 = z_projector(0).unwrap();
        let p1 = z_projector(1).unwrap();
        let p2 = z_projector(2).unwrap();
        let sum = p0
            .matrix()
            .add(p1.matrix())
            .unwrap()
            .add(p2.matrix())
            .unwrap();
        assert_eq!(sum, ComplexMatrix::identity(3));
        let prod = p2.matrix().matmul(p1.matrix()).unwrap();
        assert_eq!(prod, ComplexMatrix::zeros(3));
        assert_eq!(p1.matrix().get(1, 1), C_ONE);
    }

    #[test]
    fn constructors_emit_valid_states() {
        // Deterministic parameter grid standing in for random draws.
        for step in 0..200 {
            let alpha = 2.0 + 3.0 * (step as f64 + 0.5) / 200.0;
            let f = (step as f64 + 0.5) / 200.0;
            for dm in [sigma_alpha(alpha).unwrap(), sigma_free(f).unwrap()] {
                assert!(dm.matrix().is_hermitian(1e-12));
                assert!((dm.matrix().trace().re - 1.0).abs() < 1e-12);
                assert!(dm.min_eigenvalue().unwrap() > -1e-10);
            }
        }
    }

    #[test]
    fn tensor_of_states_reference_entry() {
        // Entry (0,0) of sigma_free(0.3) ⊗ sigma_alpha(4) is 0.1 * 2/21.
        let t = tensor(
            sigma_free(0.3).unwrap().matrix(),
            sigma_alpha(4.0).unwrap().matrix(),
        );
        assert_eq!(t.dim(), 81);
        assert!((t.get(0, 0).re - 0.1 * 2.0 / 21.0).abs() < 1e-12);
        assert!((t.get(0, 0).re - 0.0095238).abs() < 5e-7);
    }
}
