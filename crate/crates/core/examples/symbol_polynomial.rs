//! lambda -> l_lambda(alpha) at a fixed point is a polynomial whose top part
//! is the product of the classical limits of the factors.

use lie_semiclassical::limit::{default_theorem3_grid, theorem3_structure};
use lie_semiclassical::{AlgebraSpec, Generator, OrbitPoint, TensorMonomial, C64};

fn main() -> lie_semiclassical::Result<()> {
    let spec = AlgebraSpec::new(3)?;
    let point = OrbitPoint::regular(&spec, vec![C64::new(0.5, 0.0), C64::new(-0.25, 0.0), C64::new(1.0, 0.0)])?;
    let alpha = TensorMonomial::new(vec![Generator::E(1, 2), Generator::E(2, 1)]);
    let grid = default_theorem3_grid(&spec, alpha.degree());
    let report = theorem3_structure(&grid, &alpha, &point)?;
    println!("l({alpha}) over {} + {} weights", report.fit_nodes, report.heldout_nodes);
    for (exps, c) in &report.coefficients {
        println!("  lambda^({exps}): {:+.12} {:+.12}i", c[0], c[1]);
    }
    println!(
        "held-out residual {:.2e}, leading part vs product of cl {:.2e}",
        report.heldout_residual, report.leading_deviation
    );
    Ok(())
}
