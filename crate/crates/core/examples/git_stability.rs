//! Stability of points on a twisted cubic, before and after pushing
//! weight onto one point, plus the walls through the symmetric weights.

use quasi_veronese::configs::veronese_config;
use quasi_veronese::exactlin::rat;
use quasi_veronese::gitstab::{semistability, walls};
use quasi_veronese::{Linearization, Param};

fn main() -> quasi_veronese::Result<()> {
    let ts: Vec<Param> = [0, 1, 2, 3, 4, 5].into_iter().map(Param::int).collect();
    let c = veronese_config(3, &ts)?;
    let sym = Linearization::symmetric(3, 6)?;
    println!("symmetric: {:?}", semistability(&c, &sym)?.status);
    println!("walls through the symmetric point: {}", walls(&sym).len());

    let heavy = Linearization::new(3, 6, vec![rat(9, 10), rat(31, 50), rat(31, 50), rat(31, 50), rat(31, 50), rat(31, 50)])?;
    println!("heavy first point: {:?}", semistability(&c, &heavy)?.status);

    let mut m = c.matrix().clone();
    for i in 0..4 {
        m[(i, 1)] = m[(i, 0)].clone();
    }
    let degenerate = quasi_veronese::Configuration::new(m)?;
    let v = semistability(&degenerate, &sym)?;
    println!("two points collide: {:?}, witness {:?}", v.status, v.witness.map(|w| w.subset));
    Ok(())
}
