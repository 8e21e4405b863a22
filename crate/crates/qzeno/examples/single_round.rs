//! One full protocol round at the reference parameters: 262 one-degree
//! rotate-measure iterations on sigma_free(0.3) ⊗ sigma_alpha(4), then the
//! bound pair is measured and found in (1, 1).

use qzeno::measures::{BipartiteSplit, negativity};
use qzeno::zeno::{ProtocolConfig, run_round};

fn main() -> qzeno::Result<()> {
    let cfg = ProtocolConfig::default();
    let input = cfg.initial_state()?;
    let split = BipartiteSplit::qutrit_pair();

    println!("input negativity     : {:.6}", negativity(&input, &split)?);
    let trace = run_round(&input, &cfg)?;

    println!("first survival       : {:.6}", trace.survival_probabilities[0]);
    let min_later = trace.survival_probabilities[1..]
        .iter()
        .cloned()
        .fold(1.0, f64::min);
    println!("min later survival   : {:.6}", min_later);
    println!("outcome probability  : {:.6}", trace.final_outcome_probability);
    println!("chain probability    : {:.6}", trace.cumulative_success_probability);
    println!("final negativity     : {:.6}", trace.final_negativity());
    println!("final fidelity       : {:.6}", trace.final_fidelity());

    println!("final state:");
    print!("{}", qzeno::cli::matrix_text(trace.final_state.matrix()));
    Ok(())
}
