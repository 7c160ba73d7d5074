//! l(alpha) from jets and the factorized norm against nested finite
//! differences of group flows through the irrep norm.

use lie_semiclassical::limit::{l_symbol, l_symbol_by_flows};
use lie_semiclassical::{build_irrep, AlgebraSpec, Generator, OrbitPoint, TensorMonomial, Weight, C64};

fn main() -> lie_semiclassical::Result<()> {
    use Generator::{E, H};
    let spec = AlgebraSpec::new(3)?;
    let weight = Weight::new(vec![2, 1])?;
    let irrep = build_irrep(&spec, &weight)?;
    let point = OrbitPoint::regular(&spec, vec![C64::new(0.3, -0.2), C64::new(0.1, 0.4), C64::new(-0.5, 0.2)])?;
    for factors in [vec![E(1, 3)], vec![E(1, 2), E(2, 1)], vec![H(1), E(2, 3), E(3, 1)]] {
        let alpha = TensorMonomial::new(factors);
        let jets = l_symbol(&weight, &alpha, &point)?;
        let flows = l_symbol_by_flows(&irrep, &alpha, &point, 1e-2)?;
        println!("{alpha}: jets {jets:.10}  flows {flows:.10}  |diff| {:.1e}", (jets - flows).norm());
    }
    Ok(())
}
