#![allow(dead_code)]

use lie_semiclassical::{AbstractOperator, AlgebraSpec, Generator, TensorMonomial, C64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

pub fn random_generator<R: Rng>(rng: &mut R, spec: &AlgebraSpec) -> Generator {
    let cat = spec.catalog();
    cat[rng.gen_range(0..cat.len())]
}

/// Random operator with up to `terms` monomials of degree `1..=max_degree`.
pub fn random_operator<R: Rng>(rng: &mut R, spec: &AlgebraSpec, terms: usize, max_degree: usize) -> AbstractOperator {
    let mut op = AbstractOperator::scalar_op(*spec, if rng.gen_bool(0.5) { random_complex(rng) } else { c(0.0, 0.0) });
    for _ in 0..rng.gen_range(1..=terms) {
        let deg = rng.gen_range(1..=max_degree);
        let mono = TensorMonomial::new((0..deg).map(|_| random_generator(rng, spec)).collect());
        op = op.add(&AbstractOperator::monomial(*spec, mono, random_complex(rng))).unwrap();
    }
    op
}

/// Hermitian matrix residual `|A - A^*| / max(1, |A|)`.
pub fn hermitian_residual(a: &lie_semiclassical::CMatrix) -> f64 {
    (a - a.adjoint()).norm() / a.norm().max(1.0)
}
