//! Bracket relations of the momentum map checked by flow derivatives, and
//! its equivariance under SU(3).

use lie_semiclassical::gauss::expm;
use lie_semiclassical::harness::{random_su, random_vector};
use lie_semiclassical::limit::{dirac_check, equivariance_residual, poisson_check};
use lie_semiclassical::{build_irrep, AlgebraSpec, Weight, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lie_semiclassical::Result<()> {
    let spec = AlgebraSpec::new(3)?;
    let irrep = build_irrep(&spec, &Weight::new(vec![2, 1])?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (xi, eta) = (random_su(&mut rng, 3), random_su(&mut rng, 3));
    let x = random_vector(&mut rng, irrep.dimension());

    for h in [1e-1, 5e-2, 2.5e-2, 1.25e-2, 1e-4] {
        println!("h = {h:.2e}: bracket residual {:.3e}", poisson_check(&irrep, &xi, &eta, &x, h)?);
    }
    let i = C64::new(0.0, 1.0);
    println!("Dirac form residual: {:.3e}", dirac_check(&irrep, &(&xi * i), &(&eta * i), &x, 1e-4)?);
    let k = expm(&random_su(&mut rng, 3));
    println!("equivariance residual: {:.3e}", equivariance_residual(&irrep, &k, &x)?);
    Ok(())
}
