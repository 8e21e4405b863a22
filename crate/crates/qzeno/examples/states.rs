//! The two-qutrit state family: constructors, reference entries, and the
//! PPT/NPT classification across the family parameter.

use qzeno::measures::{BipartiteSplit, PptClass, classify_ppt, fidelity_to_psi_plus, negativity};
use qzeno::states::{psi_plus, sigma_alpha, sigma_free};

fn main() -> qzeno::Result<()> {
    let split = BipartiteSplit::qutrit_pair();

    let free = sigma_free(0.3)?;
    println!("sigma_free(0.3):");
    println!("  entry (0,0)  = {:.6}", free.matrix().get(0, 0).re);
    println!("  entry (1,1)  = {:.6}", free.matrix().get(1, 1).re);
    println!("  fidelity     = {:.6}", fidelity_to_psi_plus(&free)?);
    println!("  negativity   = {:.6}", negativity(&free, &split)?);

    let bound = sigma_alpha(4.0)?;
    println!("sigma_alpha(4):");
    println!("  entry (0,0)  = {:.6}", bound.matrix().get(0, 0).re);
    println!("  entry (1,1)  = {:.6}", bound.matrix().get(1, 1).re);
    println!("  negativity   = {:.6}", negativity(&bound, &split)?);

    let psi = psi_plus();
    println!("psi_plus amplitude at |00>: {:.6}", psi.amplitude(0).re);

    println!("\nclassification over the family parameter:");
    for step in 0..=12 {
        let alpha = 2.0 + step as f64 * 0.25;
        let state = sigma_alpha(alpha)?;
        let class = match classify_ppt(&state, &split)? {
            PptClass::Ppt => "PPT",
            PptClass::Npt => "NPT",
        };
        println!(
            "  alpha = {alpha:.2}  negativity = {:.6}  {class}",
            negativity(&state, &split)?
        );
    }
    Ok(())
}
