//! Gale transform of points on a conic and the Goppa description of the
//! dual as points on a curve of complementary degree.

use quasi_veronese::configs::{on_rnc, veronese_config};
use quasi_veronese::exactlin::int;
use quasi_veronese::gale::{gale_involution_check, gale_transform, goppa_witness, GoppaWeights};
use quasi_veronese::json::ConfigJson;
use quasi_veronese::Param;

fn main() -> quasi_veronese::Result<()> {
    let ts: Vec<_> = (0..7).map(int).collect();
    let c = veronese_config(2, &ts.iter().cloned().map(Param::Finite).collect::<Vec<_>>())?;
    let g = gale_transform(&c)?;
    println!("dual in P^{}: {}", g.d(), serde_json::to_string(&ConfigJson::from(&g)).expect("serializes"));
    println!("dual lies on a rational normal curve: {}", on_rnc(&g)?);
    println!("involution: {}", gale_involution_check(&c)?);
    let lam = GoppaWeights::new(&ts)?;
    println!("weights: {}", lam.lambdas().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    println!("witness ok: {}", goppa_witness(&ts, 2)?.ok());
    Ok(())
}
