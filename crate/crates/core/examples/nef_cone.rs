//! The intersection matrix of the D_k with symmetric F-curves, the
//! contracted family spanning a face, and the consistency report.

use quasi_veronese::nefcone::{agss_family, intersection_matrix, verify_theorem_cb};

fn main() -> quasi_veronese::Result<()> {
    let n = 12;
    let m = intersection_matrix(n)?;
    println!("n={n}: {} curves, rank {}", m.curves.len(), m.rank());
    for d in [1, 2, 3, 5] {
        let fam = agss_family(n, d)?;
        println!("d={d}: {}", fam.curves.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | "));
        println!("  report passed: {}", verify_theorem_cb(n, d)?.passed());
    }
    Ok(())
}
