//! Closed-form recursion of the controlled-XOR activation protocol, kept as
//! an analytic baseline for comparing fidelity growth per consumed bound
//! pair.

use crate::error::{Error, Result};

/// One step of the XOR activation recursion.
#[derive(Debug, Clone, Copy)]
pub struct XorRoundResult {
    /// Fidelity of the free pair after the round.
    pub next_fidelity: f64,
    /// Probability that the round's measurement results agree.
    pub success_probability: f64,
}

fn check_params(fidelity: f64, alpha: f64) -> Result<()> {
    if !(fidelity > 0.0 && fidelity < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "F = {fidelity} outside (0, 1)"
        )));
    }
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} outside [2, 5]"
        )));
    }
    Ok(())
}

/// Fidelity update `F' = 2F / [2F + (1-F)(5-alpha)]`, succeeding with
/// probability `[2F + (1-F)(5-alpha)] / 7`.
pub fn xor_round(fidelity: f64, alpha: f64) -> Result<XorRoundResult> {
    check_params(fidelity, alpha)?;
    let weight = 2.0 * fidelity + (1.0 - fidelity) * (5.0 - alpha);
    Ok(XorRoundResult {
        next_fidelity: 2.0 * fidelity / weight,
        success_probability: weight / 7.0,
    })
}

/// Iterates [`xor_round`], feeding each round's fidelity into the next.
pub fn xor_trajectory(
    initial_fidelity: f64,
    alpha: f64,
    rounds: usize,
) -> Result<Vec<XorRoundResult>> {
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be >= 1".into()));
    }
    let mut fidelity = initial_fidelity;
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let step = xor_round(fidelity, alpha)?;
        out.push(step);
        fidelity = step.next_fidelity;
    }
    Ok(out)
}
