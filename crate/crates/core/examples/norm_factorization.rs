//! The squared norm of u.v_max computed inside the irrep against the product
//! of fundamental norms.

use lie_semiclassical::harness::{sample_points, SamplerSpec};
use lie_semiclassical::norm::{norm_direct, norm_factorized};
use lie_semiclassical::{build_irrep, AlgebraSpec, Weight};

fn main() -> lie_semiclassical::Result<()> {
    let spec = AlgebraSpec::new(3)?;
    let sampler = SamplerSpec { count: 3, seed: 42, radius: 1.0 };
    for weight in Weight::all_up_to(2, 3).into_iter().filter(|w| !w.is_zero()) {
        let irrep = build_irrep(&spec, &weight)?;
        let (points, _) = sample_points(&spec, &weight, &sampler)?;
        for p in &points {
            let direct = norm_direct(&irrep, p)?;
            let factorized = norm_factorized(&weight, p)?;
            println!(
                "{weight}: direct {direct:.12e}  factorized {factorized:.12e}  ratio-1 {:+.1e}",
                direct / factorized - 1.0
            );
        }
    }
    Ok(())
}
