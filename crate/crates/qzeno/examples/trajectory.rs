//! Exports the per-iteration conditional negativity/fidelity trajectory of
//! the reference configuration as CSV (printed to stdout). The negativity
//! column dips to zero in two bands before peaking at iteration 262.

use qzeno::sweep::trajectory_export;
use qzeno::zeno::ProtocolConfig;

fn main() -> qzeno::Result<()> {
    let cfg = ProtocolConfig::default();
    let points = trajectory_export(&cfg, 300)?;
    print!("{}", qzeno::cli::trajectory_csv(&points));

    let peak = points
        .iter()
        .max_by(|a, b| a.negativity.total_cmp(&b.negativity))
        .expect("non-empty trajectory");
    eprintln!("peak negativity {:.6} at k = {}", peak.negativity, peak.k);
    Ok(())
}
