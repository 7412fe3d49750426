//! Points on a rational normal curve of degree m-1 in P^{m-1} are
//! self-associated: the power-sum matrix vanishes.

use quasi_veronese::exactlin::rat;
use quasi_veronese::gale::{self_association_matrix, self_association_outer};

fn main() -> quasi_veronese::Result<()> {
    let ts = vec![rat(0, 1), rat(1, 1), rat(-1, 2), rat(3, 1), rat(5, 7), rat(-4, 1)];
    let s = self_association_matrix(&ts)?;
    println!("{}x{} matrix, zero: {}", s.rows(), s.cols(), s.is_zero());
    println!("outer-product form agrees: {}", self_association_outer(&ts)? == s);
    Ok(())
}
