//! Degrees of the bundles D_k on every symmetric F-curve for one n.

use quasi_veronese::fcurves::{enumerate_sym_fcurves, fakhruddin_degree};

fn main() -> quasi_veronese::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let curves = enumerate_sym_fcurves(n);
    print!("{:>12}", "F \\ k");
    for k in 2..=n - 2 {
        print!("{k:>4}");
    }
    println!();
    for f in &curves {
        print!("{:>12}", f.to_string());
        for k in 2..=n - 2 {
            print!("{:>4}", fakhruddin_degree(n, k, f)?);
        }
        println!();
    }
    Ok(())
}
