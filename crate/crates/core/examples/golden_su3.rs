//! The first-order operator of E(1,2) over sl_3 and the symbol l(E(1,2)) at
//! the point (x21, x31, x32) = (1/2, -1/4, 1).

use lie_semiclassical::limit::l_linear_coefficients;
use lie_semiclassical::norm::NormBundle;
use lie_semiclassical::orbit::r_tilde;
use lie_semiclassical::{AlgebraSpec, Generator, OrbitPoint, Weight, C64};

fn main() -> lie_semiclassical::Result<()> {
    let spec = AlgebraSpec::new(3)?;
    let point = OrbitPoint::regular(&spec, vec![C64::new(0.5, 0.0), C64::new(-0.25, 0.0), C64::new(1.0, 0.0)])?;
    let e12 = spec.matrix(Generator::E(1, 2))?;

    let op = r_tilde(&e12, &point, &Weight::new(vec![1, 0])?, 0)?;
    for ((i, j), a) in op.pairs().iter().zip(op.vector_at_base()) {
        println!("d/dx_{i}{j}: {:+.6}", a.re);
    }
    println!("multiplier (lambda = (1,0)): {:+.6}", op.multiplier_at_base().re);

    let n = NormBundle::new(spec).all(&point)?;
    println!("N1 = {} (21/16), N2 = {} (41/16)", n[0], n[1]);

    let coeffs = l_linear_coefficients(Generator::E(1, 2), &point)?;
    println!("l(E(1,2)) = {:.6} lambda_1 + {:.6} lambda_2   (8/21, 12/41)", coeffs[0].re, coeffs[1].re);
    Ok(())
}
