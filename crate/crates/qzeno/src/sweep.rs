//! Brute-force search over protocol parameters: evaluates the conditional
//! free-pair negativity for every candidate threshold pair, iteration count,
//! and final outcome, reading the whole iteration range off a single
//! trajectory per threshold pair.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::tensor;
use crate::measures::{BipartiteSplit, fidelity_to_psi_plus, negativity};
use crate::states::{DensityMatrix, sigma_alpha, sigma_free};
use crate::zeno::{ProtocolConfig, RoundKernel, ThresholdPair, bound_pair_conditional};

/// Objective values within this distance count as tied; ties resolve to the
/// smaller iteration count, then lexicographic (i, j, outcome). Symmetric
/// parameter sets produce cells equal up to rounding, so the argmax must
/// not depend on which of them accumulates the smaller floating-point
/// error.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepObjective {
    /// Maximize the conditional negativity (the default criterion).
    MaxNegativity,
    /// Maximize negativity weighted by the branch probability, for callers
    /// who care about the scheme's small success probability.
    MaxNegativityTimesProbability,
}

/// Search space of one sweep. Threshold pairs are applied symmetrically to
/// both parties.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub initial_fidelity: f64,
    pub alpha: f64,
    pub theta: f64,
    pub pairs: Vec<ThresholdPair>,
    pub k_min: usize,
    pub k_max: usize,
    pub outcomes: Vec<(usize, usize)>,
    pub objective: SweepObjective,
}

impl SweepSpec {
    /// All nine symmetric threshold pairs, iteration counts 1..=300, all
    /// nine outcomes, maximizing negativity.
    pub fn new(initial_fidelity: f64, alpha: f64, theta: f64) -> Self {
        Self {
            initial_fidelity,
            alpha,
            theta,
            pairs: Self::all_pairs(),
            k_min: 1,
            k_max: 300,
            outcomes: Self::all_outcomes(),
            objective: SweepObjective::MaxNegativity,
        }
    }

    /// Defaults around the reference protocol input (F = 0.3, alpha = 4,
    /// one-degree rotations).
    pub fn reference() -> Self {
        Self::new(0.3, 4.0, std::f64::consts::PI / 180.0)
    }

    pub fn all_pairs() -> Vec<ThresholdPair> {
        let mut pairs = Vec::with_capacity(9);
        for free in 0..3 {
            for bound in 0..3 {
                pairs.push(ThresholdPair::new(free, bound));
            }
        }
        pairs
    }

    pub fn all_outcomes() -> Vec<(usize, usize)> {
        let mut outcomes = Vec::with_capacity(9);
        for a in 0..3 {
            for b in 0..3 {
                outcomes.push((a, b));
            }
        }
        outcomes
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() || self.outcomes.is_empty() {
            return Err(Error::InvalidParameter(
                "candidate pair and outcome sets must be non-empty".into(),
            ));
        }
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(Error::InvalidParameter(format!(
                "iteration range {}..={} is invalid",
                self.k_min, self.k_max
            )));
        }
        // Range checks are shared with the protocol config.
        for &pair in &self.pairs {
            for &outcome in &self.outcomes {
                self.cell_config(pair, self.k_max, outcome).validate()?;
            }
        }
        Ok(())
    }

    fn pair_config(&self, pair: ThresholdPair) -> ProtocolConfig {
        ProtocolConfig {
            initial_fidelity: self.initial_fidelity,
            alpha: self.alpha,
            theta: self.theta,
            alice: pair,
            bob: pair,
            iterations: self.k_max,
            final_outcome: (0, 0),
        }
    }

    /// The protocol configuration reproducing one sweep cell.
    pub fn cell_config(
        &self,
        pair: ThresholdPair,
        k: usize,
        outcome: (usize, usize),
    ) -> ProtocolConfig {
        ProtocolConfig {
            iterations: k,
            final_outcome: outcome,
            ..self.pair_config(pair)
        }
    }

    fn row_capacity(&self) -> usize {
        self.pairs.len() * (self.k_max - self.k_min + 1) * self.outcomes.len()
    }
}

/// Measured values of one viable sweep cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepValue {
    pub negativity: f64,
    pub fidelity: f64,
    /// Survival chain times the outcome probability.
    pub probability: f64,
}

/// One cell of the sweep table. `value` is `None` for numerically dead
/// branches (survival chain or outcome probability below cutoff).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub pair: ThresholdPair,
    pub k: usize,
    pub outcome: (usize, usize),
    pub value: Option<SweepValue>,
}

/// Argmax cell of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepBest {
    pub pair: ThresholdPair,
    pub k: usize,
    pub outcome: (usize, usize),
    pub negativity: f64,
    pub fidelity: f64,
    pub probability: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub best: SweepBest,
    /// Full table in deterministic order: pairs in spec order, then
    /// iteration count ascending, then outcomes in spec order.
    pub rows: Vec<SweepRow>,
}

fn sweep_pair(spec: &SweepSpec, pair: ThresholdPair) -> Result<Vec<SweepRow>> {
    let kernel = RoundKernel::new(&spec.pair_config(pair))?;
    let fe = sigma_free(spec.initial_fidelity)?;
    let bound = sigma_alpha(spec.alpha)?;
    let mut rho = tensor(fe.matrix(), bound.matrix());
    let split = BipartiteSplit::qutrit_pair();

    let mut rows = Vec::with_capacity(spec.row_capacity() / spec.pairs.len());
    let mut survival_chain = 1.0;
    let mut dead = false;
    for k in 1..=spec.k_max {
        if !dead {
            match kernel.step(&rho) {
                Ok((next, survival)) => {
                    rho = next;
                    survival_chain *= survival;
                }
                Err(Error::DeadEnd { .. }) => dead = true,
                Err(e) => return Err(e),
            }
        }
        if k < spec.k_min {
            continue;
        }
        for &outcome in &spec.outcomes {
            let value = if dead {
                None
            } else {
                match bound_pair_conditional(&rho, outcome) {
                    Ok((fe_mat, outcome_probability)) => {
                        let conditional = DensityMatrix::new(fe_mat)?;
                        Some(SweepValue {
                            negativity: negativity(&conditional, &split)?,
                            fidelity: fidelity_to_psi_plus(&conditional)?,
                            probability: survival_chain * outcome_probability,
                        })
                    }
                    Err(Error::DeadEnd { .. }) => None,
                    Err(e) => return Err(e),
                }
            };
            rows.push(SweepRow {
                pair,
                k,
                outcome,
                value,
            });
        }
    }
    Ok(rows)
}

fn objective_value(objective: SweepObjective, value: &SweepValue) -> f64 {
    match objective {
        SweepObjective::MaxNegativity => value.negativity,
        SweepObjective::MaxNegativityTimesProbability => value.negativity * value.probability,
    }
}

fn tie_key(row: &SweepRow) -> (usize, usize, usize, usize, usize) {
    (
        row.k,
        row.pair.free,
        row.pair.bound,
        row.outcome.0,
        row.outcome.1,
    )
}

fn select_best(spec: &SweepSpec, rows: &[SweepRow]) -> Result<SweepBest> {
    let mut best: Option<(&SweepRow, f64)> = None;
    for row in rows {
        let Some(value) = &row.value else { continue };
        let score = objective_value(spec.objective, value);
        let replace = match &best {
            None => true,
            Some((best_row, best_score)) => {
                if score > best_score + TIE_TOLERANCE {
                    true
                } else if score < best_score - TIE_TOLERANCE {
                    false
                } else {
                    tie_key(row) < tie_key(best_row)
                }
            }
        };
        if replace {
            best = Some((row, score));
        }
    }
    let (row, _) = best.ok_or_else(|| {
        Error::Numerical("sweep produced no viable cells (all branches dead)".into())
    })?;
    let value = row.value.as_ref().expect("best cell is viable");
    Ok(SweepBest {
        pair: row.pair,
        k: row.k,
        outcome: row.outcome,
        negativity: value.negativity,
        fidelity: value.fidelity,
        probability: value.probability,
    })
}

fn assemble(spec: &SweepSpec, per_pair: Vec<Vec<SweepRow>>) -> Result<SweepResult> {
    let mut rows = Vec::with_capacity(spec.row_capacity());
    for pair_rows in per_pair {
        rows.extend(pair_rows);
    }
    let best = select_best(spec, &rows)?;
    Ok(SweepResult { best, rows })
}

/// Runs the sweep with one independent trajectory per threshold pair,
/// evaluating pairs in parallel. Cell values and row order are identical to
/// [`run_sweep_serial`].
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let per_pair: Vec<Vec<SweepRow>> = spec
        .pairs
        .par_iter()
        .map(|&pair| sweep_pair(spec, pair))
        .collect::<Result<_>>()?;
    assemble(spec, per_pair)
}

/// Single-threaded variant of [`run_sweep`].
pub fn run_sweep_serial(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let per_pair: Vec<Vec<SweepRow>> = spec
        .pairs
        .iter()
        .map(|&pair| sweep_pair(spec, pair))
        .collect::<Result<_>>()?;
    assemble(spec, per_pair)
}

/// One row of an exported trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub k: usize,
    pub negativity: f64,
    pub fidelity: f64,
    /// Survival chain up to `k` times the outcome probability at `k`.
    pub cumulative_probability: f64,
}

/// Evaluates the conditional free-pair trajectory of `cfg` for every
/// iteration count `1..=k_max` under `cfg.final_outcome`.
pub fn trajectory_export(cfg: &ProtocolConfig, k_max: usize) -> Result<Vec<TrajectoryPoint>> {
    cfg.validate()?;
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be >= 1".into()));
    }
    let kernel = RoundKernel::new(cfg)?;
    let fe = sigma_free(cfg.initial_fidelity)?;
    let bound = sigma_alpha(cfg.alpha)?;
    let mut rho = tensor(fe.matrix(), bound.matrix());
    let split = BipartiteSplit::qutrit_pair();

    let mut points = Vec::with_capacity(k_max);
    let mut survival_chain = 1.0;
    for k in 1..=k_max {
        let (next, survival) = kernel.step(&rho)?;
        rho = next;
        survival_chain *= survival;
        let (fe_mat, outcome_probability) = bound_pair_conditional(&rho, cfg.final_outcome)?;
        let conditional = DensityMatrix::new(fe_mat)?;
        points.push(TrajectoryPoint {
            k,
            negativity: negativity(&conditional, &split)?,
            fidelity: fidelity_to_psi_plus(&conditional)?,
            cumulative_probability: survival_chain * outcome_probability,
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeno::run_round;

    fn tiny_spec() -> SweepSpec {
        SweepSpec {
            pairs: vec![ThresholdPair::new(0, 1), ThresholdPair::new(1, 0)],
            k_min: 1,
            k_max: 4,
            ..SweepSpec::reference()
        }
    }

    #[test]
    fn table_has_full_cartesian_product() {
        let spec = tiny_spec();
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 2 * 4 * 9);
        // Canonical order: pair-major, then k, then outcome.
        assert_eq!(result.rows[0].pair, ThresholdPair::new(0, 1));
        assert_eq!(result.rows[0].k, 1);
        assert_eq!(result.rows[0].outcome, (0, 0));
        assert_eq!(result.rows[9].k, 2);
    }

    #[test]
    fn serial_and_parallel_tables_are_identical() {
        let spec = tiny_spec();
        let parallel = run_sweep(&spec).unwrap();
        let serial = run_sweep_serial(&spec).unwrap();
        assert_eq!(parallel.rows.len(), serial.rows.len());
        for (a, b) in parallel.rows.iter().zip(serial.rows.iter()) {
            assert_eq!(a, b);
        }
        assert_eq!(parallel.best.pair, serial.best.pair);
        assert_eq!(parallel.best.k, serial.best.k);
        assert!(parallel.best.negativity == serial.best.negativity);
    }

    #[test]
    fn best_cell_replays_through_run_round() {
        let spec = tiny_spec();
        let result = run_sweep(&spec).unwrap();
        let cfg = spec.cell_config(result.best.pair, result.best.k, result.best.outcome);
        let trace = run_round(&cfg.initial_state().unwrap(), &cfg).unwrap();
        assert!((trace.final_negativity() - result.best.negativity).abs() < 1e-12);
        assert!(
            (trace.cumulative_success_probability - result.best.probability).abs() < 1e-12
        );
    }

    #[test]
    fn trajectory_matches_sweep_cells() {
        let spec = tiny_spec();
        let result = run_sweep(&spec).unwrap();
        let pair = ThresholdPair::new(0, 1);
        let cfg = spec.cell_config(pair, 4, (1, 1));
        let points = trajectory_export(&cfg, 4).unwrap();
        for point in &points {
            let row = result
                .rows
                .iter()
                .find(|r| r.pair == pair && r.k == point.k && r.outcome == (1, 1))
                .unwrap();
            let value = row.value.as_ref().unwrap();
            assert!(point.negativity == value.negativity);
            assert!(point.cumulative_probability == value.probability);
        }
    }

    #[test]
    fn separable_region_admits_no_activation() {
        // In the separable band of the bound-pair family no cell of the
        // full search space beats the input negativity.
        let spec = SweepSpec {
            alpha: 2.5,
            ..SweepSpec::reference()
        };
        let result = run_sweep(&spec).unwrap();
        let input = crate::measures::negativity(
            &crate::states::sigma_free(0.3).unwrap(),
            &crate::measures::BipartiteSplit::qutrit_pair(),
        )
        .unwrap();
        let max_cell = result
            .rows
            .iter()
            .filter_map(|row| row.value.as_ref().map(|v| v.negativity))
            .fold(0.0, f64::max);
        assert!(
            max_cell <= input + 1e-9,
            "cell negativity {max_cell} exceeds input {input}"
        );
    }

    #[test]
    fn spec_validation() {
        let mut spec = tiny_spec();
        spec.k_min = 5;
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.pairs.clear();
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.alpha = 9.0;
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.pairs.push(ThresholdPair::new(7, 0));
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.outcomes.push((0, 5));
        assert!(spec.validate().is_err());
    }
}
