//! cl_n of a degree-2 selfadjoint Hamiltonian along the ray n lambda.

use lie_semiclassical::limit::cl_sequence;
use lie_semiclassical::parser::parse_hamiltonian;
use lie_semiclassical::{AlgebraSpec, OrbitPoint, Weight, C64};

fn main() -> lie_semiclassical::Result<()> {
    let spec = AlgebraSpec::new(3)?;
    let h = parse_hamiltonian("E(1,2) ox E(2,1) + E(2,1) ox E(1,2)", &spec)?;
    let point = OrbitPoint::regular(&spec, vec![C64::new(0.5, 0.0), C64::new(-0.25, 0.0), C64::new(1.0, 0.0)])?;
    let weight = Weight::new(vec![1, 1])?;

    let report = cl_sequence(&weight, &h, &point, &[1, 2, 4, 8, 16, 32, 64], Default::default())?;
    println!("H = {h}");
    println!("limit cl(H) = {:.15}", report.limit[0]);
    println!("{:>4} {:>20} {:>12}", "n", "cl_n", "error");
    for row in &report.table {
        println!("{:>4} {:>20.15} {:>12.3e}", row.n, row.value[0], row.error);
    }
    if let Some(fit) = &report.fit {
        println!("fitted exponent {:.4} (residual {:.1e}), pass = {}", fit.exponent, fit.residual, report.pass);
    }
    Ok(())
}
