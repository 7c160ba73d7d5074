//! Build a few irreps, compare with the Weyl dimension formula and dump one
//! of them as JSON.

use lie_semiclassical::irrep::IrrepDump;
use lie_semiclassical::lie::weyl_dimension;
use lie_semiclassical::{build_irrep, AlgebraSpec, Weight};

fn main() -> lie_semiclassical::Result<()> {
    for (m, lam) in [(2, vec![4]), (3, vec![1, 0]), (3, vec![1, 1]), (3, vec![2, 1]), (4, vec![0, 1, 0])] {
        let spec = AlgebraSpec::new(m)?;
        let weight = Weight::for_spec(&spec, lam)?;
        let irrep = build_irrep(&spec, &weight)?;
        println!(
            "sl_{m} {weight}: dim {} (Weyl {}), ambient {}",
            irrep.dimension(),
            weyl_dimension(&spec, &weight)?,
            irrep.ambient_dimension()
        );
    }

    let spec = AlgebraSpec::new(3)?;
    let adjoint = build_irrep(&spec, &Weight::new(vec![1, 1])?)?;
    let mut weights = adjoint.basis_weights();
    weights.sort();
    println!("weights of the adjoint representation (E(j,j) eigenvalues): {weights:?}");

    let dump = IrrepDump::from_irrep(&build_irrep(&spec, &Weight::new(vec![1, 0])?)?);
    println!("{}", dump.to_json()?);
    Ok(())
}
