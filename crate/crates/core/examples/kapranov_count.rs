//! Counts degree-e maps from a caterpillar curve meeting random linear
//! conditions at the marks.

use quasi_veronese::sample;
use quasi_veronese::trees::{degree_map_solve, verify_piecewise_map};
use quasi_veronese::{Error, StableTree};

fn main() -> quasi_veronese::Result<()> {
    let mut rng = sample::rng(11);
    for (n, d, e) in [(4, 1, 1), (5, 2, 2), (6, 3, 2), (7, 4, 3), (6, 2, 1)] {
        let tree = StableTree::caterpillar(n)?;
        loop {
            let cs = sample::generic_constraints(&mut rng, n, d, e)?;
            match degree_map_solve(&tree, e, &cs) {
                Ok(maps) => {
                    let ok = maps.iter().all(|m| verify_piecewise_map(&tree, &cs, m, e));
                    println!("n={n} d={d} e={e}: {} map(s), verified {ok}", maps.len());
                    break;
                }
                Err(Error::NonGenericConstraints(_)) => continue,
                Err(err) => return Err(err),
            }
        }
    }
    Ok(())
}
