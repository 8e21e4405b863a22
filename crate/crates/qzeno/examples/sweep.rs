//! Full brute-force search over the symmetric threshold pairs, iteration
//! counts 1..=300 and all final outcomes, rediscovering the optimal
//! protocol parameters and the activation window.

use qzeno::sweep::{SweepSpec, run_sweep};

fn main() -> qzeno::Result<()> {
    let spec = SweepSpec::reference();
    let result = run_sweep(&spec)?;
    let best = &result.best;

    println!(
        "best cell: (i, j) = ({}, {}), k = {}, outcome = ({}, {})",
        best.pair.free, best.pair.bound, best.k, best.outcome.0, best.outcome.1
    );
    println!("  negativity  = {:.6}", best.negativity);
    println!("  fidelity    = {:.6}", best.fidelity);
    println!("  probability = {:.6}", best.probability);

    // Iteration counts where the best cell's configuration beats the input
    // negativity.
    let input_negativity = 0.110977;
    let window: Vec<usize> = result
        .rows
        .iter()
        .filter(|row| row.pair == best.pair && row.outcome == best.outcome)
        .filter(|row| {
            row.value
                .as_ref()
                .is_some_and(|v| v.negativity > input_negativity)
        })
        .map(|row| row.k)
        .collect();
    if let (Some(first), Some(last)) = (window.first(), window.last()) {
        println!("activation window: k = {first}..={last} ({} cells)", window.len());
    }
    Ok(())
}
