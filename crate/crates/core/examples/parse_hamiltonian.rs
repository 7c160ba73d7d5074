//! Parse Hamiltonians, take formal adjoints and print the monomial decomposition.

use lie_semiclassical::irrep::rep_apply;
use lie_semiclassical::parser::parse_hamiltonian;
use lie_semiclassical::{build_irrep, AlgebraSpec, Weight};

fn main() -> lie_semiclassical::Result<()> {
    let spec = AlgebraSpec::new(3)?;
    let irrep = build_irrep(&spec, &Weight::new(vec![1, 1])?)?;
    for text in
        ["E(1,2) + E(2,1)", "(1 + 2i) * E(1,2) ox E(2,3)", "H(1) ox H(2)", "0.5 * [E(1,3), E(3,1)] + adj(1i * E(2,3))"]
    {
        let op = parse_hamiltonian(text, &spec)?;
        let adj = op.formal_adjoint();
        let img = rep_apply(&irrep, &op)?;
        println!("{text}");
        println!("  parsed:      {op}");
        println!("  adjoint:     {adj}");
        println!(
            "  selfadjoint: {}, image hermitian: {}",
            op.is_abstractly_selfadjoint(),
            (&img - img.adjoint()).norm() < 1e-12
        );
        for (c, m) in op.monomial_decomposition() {
            println!("    {c} * [{m}] (degree {})", m.degree());
        }
    }
    match parse_hamiltonian("E(1,4)", &spec) {
        Err(e) => println!("E(1,4) over sl_3: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
