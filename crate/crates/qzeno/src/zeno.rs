//! The iterated rotate-measure protocol on the four-qutrit space, the final
//! z-basis measurement of the bound pair, and the multi-round driver.
//!
//! The global subsystem ordering is fixed as
//! `(A_free, B_free, A_bound, B_bound)`: the two particles of the
//! free-entangled pair first, then the two particles of the bound pair, so
//! the joint input is `fe ⊗ sigma_alpha`. Alice holds slots 0 and 2, Bob
//! slots 1 and 3. Each party's threshold projector clicks on
//! `|free_level> ⊗ |bound_level>` of its own two particles; the survival
//! projector is the product of both parties' complements.

use crate::error::{Error, Result};
use crate::linalg::{
    C_ONE, Complex64, ComplexMatrix, Projector, UnitaryOperator, embed_on_subsystems, tensor,
    tensor_all,
};
use crate::measures::{BipartiteSplit, fidelity_to_psi_plus, negativity};
use crate::states::{DensityMatrix, sigma_alpha, sigma_free};

/// Subsystem dimensions in global order (A_free, B_free, A_bound, B_bound).
pub const SUBSYSTEM_DIMS: [usize; 4] = [3, 3, 3, 3];
/// Slots held by Alice: her free particle and her bound particle.
pub const ALICE_SLOTS: [usize; 2] = [0, 2];
/// Slots held by Bob.
pub const BOB_SLOTS: [usize; 2] = [1, 3];

/// Branch probabilities below this are numerically dead ends.
pub const DEAD_END_CUTOFF: f64 = 1e-12;

const FULL_DIM: usize = 81;
const FE_DIM: usize = 9;

/// Levels watched by one party's threshold measurement: the projector
/// clicks on `|free> ⊗ |bound>` of that party's free and bound particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdPair {
    pub free: usize,
    pub bound: usize,
}

impl ThresholdPair {
    pub fn new(free: usize, bound: usize) -> Self {
        Self { free, bound }
    }

    fn validate(&self) -> Result<()> {
        if self.free > 2 || self.bound > 2 {
            return Err(Error::InvalidParameter(format!(
                "threshold levels ({}, {}) outside {{0, 1, 2}}",
                self.free, self.bound
            )));
        }
        Ok(())
    }
}

/// All free parameters of one protocol round.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    /// Fidelity of the initial free-entangled state, in (0, 1).
    pub initial_fidelity: f64,
    /// Family parameter of the bound-pair state, in [2, 5].
    pub alpha: f64,
    /// Per-iteration z-rotation angle in radians.
    pub theta: f64,
    pub alice: ThresholdPair,
    pub bob: ThresholdPair,
    /// Number of rotate-measure iterations, at least 1.
    pub iterations: usize,
    /// Accepted z-basis outcome `(a, b)` of the final bound-pair measurement.
    pub final_outcome: (usize, usize),
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_fidelity > 0.0 && self.initial_fidelity < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "F = {} outside (0, 1)",
                self.initial_fidelity
            )));
        }
        if !(2.0..=5.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} outside [2, 5]",
                self.alpha
            )));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "theta = {} is not finite",
                self.theta
            )));
        }
        self.alice.validate()?;
        self.bob.validate()?;
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("iterations must be >= 1".into()));
        }
        let (a, b) = self.final_outcome;
        if a > 2 || b > 2 {
            return Err(Error::InvalidParameter(format!(
                "final outcome ({a}, {b}) outside {{0, 1, 2}}"
            )));
        }
        Ok(())
    }

    /// Initial free-entangled state for this configuration.
    pub fn initial_state(&self) -> Result<DensityMatrix> {
        sigma_free(self.initial_fidelity)
    }
}

impl Default for ProtocolConfig {
    /// The reference parameter set of this protocol family: F = 0.3,
    /// alpha = 4, a one-degree z-rotation per iteration, both parties
    /// watching levels (0, 1), 262 iterations, and bound-pair outcome (1, 1).
    fn default() -> Self {
        Self {
            initial_fidelity: 0.3,
            alpha: 4.0,
            theta: std::f64::consts::PI / 180.0,
            alice: ThresholdPair::new(0, 1),
            bob: ThresholdPair::new(0, 1),
            iterations: 262,
            final_outcome: (1, 1),
        }
    }
}

/// Three-level rotation about the z axis, mixing levels 0 and 1 and leaving
/// level 2 fixed.
pub fn rotation_z(theta: f64) -> UnitaryOperator {
    let (s, c) = theta.sin_cos();
    let mat = ComplexMatrix::from_real(3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
        .expect("static 3x3 layout");
    UnitaryOperator::new(mat).expect("rotation matrices are unitary")
}

/// Applies the same single-particle rotation to all four qutrits.
pub fn apply_global_rotation(rho: &DensityMatrix, theta: f64) -> Result<DensityMatrix> {
    if rho.dim() != FULL_DIM {
        return Err(Error::DimensionMismatch(format!(
            "expected an 81x81 four-qutrit state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let rot = global_rotation_matrix(theta);
    DensityMatrix::new(rho.matrix().conjugate_with(&rot)?)
}

fn global_rotation_matrix(theta: f64) -> ComplexMatrix {
    let r = rotation_z(theta);
    let m = r.matrix();
    tensor_all(&[m, m, m, m])
}

fn basis_projector(level: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3);
    m.set(level, level, C_ONE);
    m
}

fn party_click_matrix(pair: ThresholdPair, slots: &[usize; 2]) -> Result<ComplexMatrix> {
    let local = tensor(&basis_projector(pair.free), &basis_projector(pair.bound));
    embed_on_subsystems(&local, slots, &SUBSYSTEM_DIMS)
}

fn survival_matrix(cfg: &ProtocolConfig) -> Result<ComplexMatrix> {
    let identity = ComplexMatrix::identity(FULL_DIM);
    let j1_alice = party_click_matrix(cfg.alice, &ALICE_SLOTS)?;
    let j1_bob = party_click_matrix(cfg.bob, &BOB_SLOTS)?;
    identity.sub(&j1_alice)?.matmul(&identity.sub(&j1_bob)?)
}

/// The three projectors of one iteration: the global survival projector and
/// each party's click projector, all lifted to the 81-dimensional space.
#[derive(Debug, Clone)]
pub struct PartyProjectors {
    pub survival: Projector,
    pub alice_click: Projector,
    pub bob_click: Projector,
}

pub fn party_projectors(cfg: &ProtocolConfig) -> Result<PartyProjectors> {
    cfg.validate()?;
    Ok(PartyProjectors {
        survival: Projector::new(survival_matrix(cfg)?)?,
        alice_click: Projector::new(party_click_matrix(cfg.alice, &ALICE_SLOTS)?)?,
        bob_click: Projector::new(party_click_matrix(cfg.bob, &BOB_SLOTS)?)?,
    })
}

/// Precomputed operators for iterating rotate-measure steps. Shared by
/// every driver so replayed trajectories agree bit for bit.
pub(crate) struct RoundKernel {
    rotation: ComplexMatrix,
    survival: ComplexMatrix,
}

impl RoundKernel {
    pub(crate) fn new(cfg: &ProtocolConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            rotation: global_rotation_matrix(cfg.theta),
            survival: survival_matrix(cfg)?,
        })
    }

    /// One rotate-project-renormalize step on a raw 81x81 state. Returns the
    /// survival probability of the threshold measurement.
    pub(crate) fn step(&self, rho: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
        let rotated = rho.conjugate_with(&self.rotation)?;
        let projected = rotated.conjugate_with(&self.survival)?;
        let survival = projected.trace().re;
        if survival < DEAD_END_CUTOFF {
            return Err(Error::DeadEnd {
                probability: survival,
            });
        }
        Ok((
            projected.scale(Complex64::new(1.0 / survival, 0.0)),
            survival,
        ))
    }
}

/// Conditions a raw four-qutrit state on finding the bound pair in the
/// z-basis outcome `(a, b)` and traces the bound pair out. The bound-pair
/// projectors are diagonal, so the conditional reduced state is the single
/// `(a, b)` block of the full matrix.
pub(crate) fn bound_pair_conditional(
    rho: &ComplexMatrix,
    outcome: (usize, usize),
) -> Result<(ComplexMatrix, f64)> {
    let (a, b) = outcome;
    if a > 2 || b > 2 {
        return Err(Error::InvalidParameter(format!(
            "outcome ({a}, {b}) outside {{0, 1, 2}}"
        )));
    }
    if rho.dim() != FULL_DIM {
        return Err(Error::DimensionMismatch(format!(
            "expected an 81x81 four-qutrit state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    // Global index = 9 * fe_index + 3a + b.
    let offset = 3 * a + b;
    let mut probability = 0.0;
    for r in 0..FE_DIM {
        probability += rho.get(9 * r + offset, 9 * r + offset).re;
    }
    if probability < DEAD_END_CUTOFF {
        return Err(Error::DeadEnd { probability });
    }
    let fe = ComplexMatrix::from_fn(FE_DIM, |r, c| {
        rho.get(9 * r + offset, 9 * c + offset) / probability
    });
    Ok((fe, probability))
}

/// One rotate-measure iteration: rotate all four particles by `cfg.theta`,
/// project onto the survival subspace, renormalize. Returns the surviving
/// state and the survival probability.
pub fn zeno_step(rho: &DensityMatrix, cfg: &ProtocolConfig) -> Result<(DensityMatrix, f64)> {
    if rho.dim() != FULL_DIM {
        return Err(Error::DimensionMismatch(format!(
            "expected an 81x81 four-qutrit state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let kernel = RoundKernel::new(cfg)?;
    let (next, survival) = kernel.step(rho.matrix())?;
    Ok((DensityMatrix::new(next)?, survival))
}

/// Measures the bound pair in the z basis, keeps outcome `(a, b)`, and
/// returns the renormalized free-pair state with the outcome probability.
pub fn measure_bound_pair(
    rho: &DensityMatrix,
    outcome: (usize, usize),
) -> Result<(DensityMatrix, f64)> {
    let (fe, probability) = bound_pair_conditional(rho.matrix(), outcome)?;
    Ok((DensityMatrix::new(fe)?, probability))
}

/// Reduced state of the free pair: partial trace over both bound slots.
pub fn free_pair_marginal(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != FULL_DIM {
        return Err(Error::DimensionMismatch(format!(
            "expected an 81x81 four-qutrit state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let fe = ComplexMatrix::from_fn(FE_DIM, |r, c| {
        (0..FE_DIM).map(|o| m.get(9 * r + o, 9 * c + o)).sum()
    });
    DensityMatrix::new(fe)
}

/// Complete record of one protocol round.
#[derive(Debug, Clone)]
pub struct RoundTrace {
    /// Survival probability of each rotate-measure iteration.
    pub survival_probabilities: Vec<f64>,
    /// Normalized post-projection four-qutrit state after each iteration.
    pub states: Vec<DensityMatrix>,
    /// Negativity of the conditional free-pair state after each iteration,
    /// evaluated non-destructively under the configured final outcome.
    pub negativities: Vec<f64>,
    /// Fidelity trajectory matching `negativities`.
    pub fidelities: Vec<f64>,
    /// Probability of the accepted outcome had the bound pair been measured
    /// at each iteration.
    pub outcome_probabilities: Vec<f64>,
    /// Probability of the accepted bound-pair outcome at the final iteration.
    pub final_outcome_probability: f64,
    /// Product of all survival probabilities and the outcome probability.
    pub cumulative_success_probability: f64,
    /// The resulting free-pair state.
    pub final_state: DensityMatrix,
}

impl RoundTrace {
    pub fn final_negativity(&self) -> f64 {
        *self.negativities.last().expect("at least one iteration")
    }

    pub fn final_fidelity(&self) -> f64 {
        *self.fidelities.last().expect("at least one iteration")
    }
}

/// Runs one full round: builds `fe_in ⊗ sigma_alpha(cfg.alpha)`, applies
/// `cfg.iterations` rotate-measure steps, then measures the bound pair,
/// recording the conditional negativity/fidelity trajectory along the way.
pub fn run_round(fe_in: &DensityMatrix, cfg: &ProtocolConfig) -> Result<RoundTrace> {
    cfg.validate()?;
    if fe_in.dim() != FE_DIM {
        return Err(Error::DimensionMismatch(format!(
            "free-pair input must be 9x9, got {}x{}",
            fe_in.dim(),
            fe_in.dim()
        )));
    }
    let kernel = RoundKernel::new(cfg)?;
    let bound = sigma_alpha(cfg.alpha)?;
    let mut rho = tensor(fe_in.matrix(), bound.matrix());
    let split = BipartiteSplit::qutrit_pair();

    let mut survival_probabilities = Vec::with_capacity(cfg.iterations);
    let mut states = Vec::with_capacity(cfg.iterations);
    let mut negativities = Vec::with_capacity(cfg.iterations);
    let mut fidelities = Vec::with_capacity(cfg.iterations);
    let mut outcome_probabilities = Vec::with_capacity(cfg.iterations);

    for _ in 0..cfg.iterations {
        let (next, survival) = kernel.step(&rho)?;
        rho = next;
        survival_probabilities.push(survival);
        states.push(DensityMatrix::new(rho.clone())?);
        let (fe, outcome_probability) = bound_pair_conditional(&rho, cfg.final_outcome)?;
        let fe = DensityMatrix::new(fe)?;
        negativities.push(negativity(&fe, &split)?);
        fidelities.push(fidelity_to_psi_plus(&fe)?);
        outcome_probabilities.push(outcome_probability);
    }

    let (final_state, final_outcome_probability) =
        measure_bound_pair(states.last().expect("iterations >= 1"), cfg.final_outcome)?;
    let cumulative_success_probability =
        survival_probabilities.iter().product::<f64>() * final_outcome_probability;

    Ok(RoundTrace {
        survival_probabilities,
        states,
        negativities,
        fidelities,
        outcome_probabilities,
        final_outcome_probability,
        cumulative_success_probability,
        final_state,
    })
}

/// Outcome of one round inside a multi-round chain.
#[derive(Debug, Clone)]
pub struct RoundSummary {
    pub state: DensityMatrix,
    pub negativity: f64,
    pub fidelity: f64,
    /// Success probability of the whole chain up to and including this round.
    pub cumulative_probability: f64,
}

/// Chains rounds, feeding each round's free-pair output into the next with
/// a fresh bound pair drawn from that round's `alpha`.
pub fn run_multi_round(
    initial_fidelity: f64,
    rounds: &[ProtocolConfig],
) -> Result<Vec<RoundSummary>> {
    if rounds.is_empty() {
        return Err(Error::InvalidParameter("round list is empty".into()));
    }
    let mut fe = sigma_free(initial_fidelity)?;
    let mut cumulative = 1.0;
    let mut summaries = Vec::with_capacity(rounds.len());
    for cfg in rounds {
        let trace = run_round(&fe, cfg)?;
        cumulative *= trace.cumulative_success_probability;
        summaries.push(RoundSummary {
            state: trace.final_state.clone(),
            negativity: trace.final_negativity(),
            fidelity: trace.final_fidelity(),
            cumulative_probability: cumulative,
        });
        fe = trace.final_state;
    }
    Ok(summaries)
}
