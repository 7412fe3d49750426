//! Limit configurations on a two-component curve for each degree split,
//! and which of them survive a linearization.

use quasi_veronese::exactlin::rat;
use quasi_veronese::json::ConfigJson;
use quasi_veronese::trees::{default_aux, limit_config, semistable_partitions, DegreePartition, Edge, SpecialPoint};
use quasi_veronese::{Linearization, Param, StableTree};

fn main() -> quasi_veronese::Result<()> {
    let tree = StableTree::new(
        vec![
            vec![
                SpecialPoint::mark(0, Param::int(0)),
                SpecialPoint::mark(1, Param::int(1)),
                SpecialPoint::mark(2, Param::int(2)),
                SpecialPoint::edge("e1", Param::Infinity),
            ],
            vec![
                SpecialPoint::edge("e1", Param::int(0)),
                SpecialPoint::mark(3, Param::int(1)),
                SpecialPoint::mark(4, Param::Infinity),
            ],
        ],
        vec![Edge { id: "e1".into(), a: 0, b: 1 }],
    )?;
    for deg in DegreePartition::compositions(&tree, 2) {
        let aux = default_aux(&tree, &deg)?;
        let c = limit_config(&tree, &deg, &aux)?;
        println!("degrees {deg}: {}", serde_json::to_string(&ConfigJson::from(&c)).expect("serializes"));
    }
    let l = Linearization::new(2, 5, vec![rat(7, 10), rat(7, 10), rat(7, 10), rat(9, 20), rat(9, 20)])?;
    for (deg, v) in semistable_partitions(&tree, &l)?.entries {
        println!("survives: {deg} ({:?})", v.status);
    }
    Ok(())
}
