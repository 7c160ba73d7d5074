mod common;

use common::{c, random_complex};
use lie_semiclassical::gauss::{expm, gauss_decompose};
use lie_semiclassical::harness::{random_su, sample_points, SamplerSpec};
use lie_semiclassical::irrep::group_apply;
use lie_semiclassical::jet::{Jet, JetSpace};
use lie_semiclassical::limit::l_symbol;
use lie_semiclassical::norm::{norm_direct, norm_factorized};
use lie_semiclassical::orbit::{apply_op, conjugate_split, r_tilde, r_tilde_in};
use lie_semiclassical::{build_irrep, AlgebraSpec, CMatrix, Generator, OrbitPoint, TensorMonomial, Weight, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(v: &[u64]) -> Weight {
    Weight::new(v.to_vec()).unwrap()
}

#[test]
fn gauss_reconstructs_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..10_000 {
        let m = 2 + i % 4;
        let g = CMatrix::from_fn(m, m, |_, _| random_complex(&mut rng));
        let f = gauss_decompose(&g).unwrap();
        assert!((f.reconstruct() - &g).norm() <= 1e-12 * g.norm().max(1.0));
        for k in 0..m {
            assert_eq!(f.lower[(k, k)], c(1.0, 0.0));
            assert_eq!(f.upper[(k, k)], c(1.0, 0.0));
        }
    }
}

#[test]
fn split_velocity_matches_finite_differences() {
    // d/dt of the lower Gauss factor of exp(t xi) u equals u A_-
    let spec = AlgebraSpec::new(3).unwrap();
    let (points, _) = sample_points(&spec, &Weight::rho(2), &SamplerSpec { count: 20, seed: 3, radius: 1.0 }).unwrap();
    let h = 1e-4;
    for p in &points {
        for g in spec.catalog() {
            let xi = spec.matrix(g).unwrap();
            let split = conjugate_split(&xi, p).unwrap();
            let lower = |t: f64| gauss_decompose(&(expm(&(&xi * c(t, 0.0))) * p.u())).unwrap();
            let (fp, fm) = (lower(h), lower(-h));
            let fd = (&fp.lower - &fm.lower) / c(2.0 * h, 0.0);
            assert!((fd - split.lower_velocity(p)).norm() < 1e-6);
            for k in 0..3 {
                let fd_d = (fp.diagonal[k] - fm.diagonal[k]) / (2.0 * h);
                assert!((fd_d - split.diagonal[(k, k)]).norm() < 1e-6);
            }
        }
    }
}

#[test]
fn split_is_complex_linear() {
    let spec = AlgebraSpec::new(3).unwrap();
    let p = OrbitPoint::regular(&spec, vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.5, -0.5)]).unwrap();
    let (a, b) = (spec.matrix(Generator::E(1, 3)).unwrap(), spec.matrix(Generator::H(2)).unwrap());
    let s = c(0.7, -1.3);
    let lhs = conjugate_split(&(&a * s + &b), &p).unwrap();
    let (sa, sb) = (conjugate_split(&a, &p).unwrap(), conjugate_split(&b, &p).unwrap());
    assert!((lhs.lower - (sa.lower * s + sb.lower)).norm() < 1e-14);
    assert!((lhs.diagonal - (sa.diagonal * s + sb.diagonal)).norm() < 1e-14);
}

#[test]
fn raising_operators_act_trivially_at_the_origin() {
    // at u = 1 the flow of a raising operator stays in U_+ and the symbol vanishes
    let spec = AlgebraSpec::new(4).unwrap();
    let origin = OrbitPoint::origin(&spec);
    let weight = w(&[1, 2, 1]);
    for g in spec.catalog().into_iter().filter(|g| g.is_raising()) {
        let op = r_tilde(&spec.matrix(g).unwrap(), &origin, &weight, 1).unwrap();
        assert!(op.vector_at_base().iter().all(|v| v.norm() == 0.0));
        assert_eq!(op.multiplier_at_base(), c(0.0, 0.0));
    }
}

#[test]
fn apply_op_obeys_product_rule() {
    let spec = AlgebraSpec::new(3).unwrap();
    let p = OrbitPoint::regular(&spec, vec![c(0.2, 0.3), c(-0.4, 0.1), c(0.6, 0.2)]).unwrap();
    let space = JetSpace::new(3, 3);
    let weight = w(&[1, 1]);
    let op = r_tilde_in(&space, &spec.matrix(Generator::E(2, 3)).unwrap(), &p, &weight).unwrap();
    let vf = op.vector_only();
    let f = &Jet::variable(&space, 0, p.coords()[0]) * &Jet::variable(&space, 2, p.coords()[2]);
    let g = Jet::variable(&space, 1, p.coords()[1]).powi(2);
    // a derivation: X(fg) = X(f) g + f X(g)
    let lhs = apply_op(&vf, &(&f * &g)).unwrap();
    let rhs = &(&apply_op(&vf, &f).unwrap() * &g) + &(&f * &apply_op(&vf, &g).unwrap());
    for (a, b) in lhs.coefficients().iter().zip(rhs.truncate(2).coefficients()) {
        assert!((a - b).norm() < 1e-13);
    }
}

#[test]
fn singular_weights_use_the_reduced_chart() {
    let spec = AlgebraSpec::new(3).unwrap();
    let weight = w(&[2, 0]);
    let (points, _) = sample_points(&spec, &weight, &SamplerSpec { count: 5, seed: 4, radius: 1.0 }).unwrap();
    let irrep = build_irrep(&spec, &weight).unwrap();
    for p in &points {
        assert_eq!(p.active_pairs(), vec![(2, 1), (3, 1)]);
        let x = irrep.group_apply_vmax(&p.u()).unwrap();
        for g in spec.catalog() {
            let oracle = x.dotc(&(irrep.generator(g).unwrap() * &x)) / x.norm_squared();
            let l = l_symbol(&weight, &TensorMonomial::single(g), p).unwrap();
            assert!((l - oracle).norm() < 1e-12);
        }
    }
    // a regular point is valid for a singular weight; a reduced point is not valid for a regular one
    let regular = OrbitPoint::regular(&spec, vec![c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0)]).unwrap();
    assert!(regular.check_weight(&weight).is_ok());
    assert!(points[0].check_weight(&w(&[1, 1])).is_err());
}

#[test]
fn symbol_is_additive_in_the_weight() {
    let spec = AlgebraSpec::new(4).unwrap();
    let (points, _) = sample_points(&spec, &Weight::rho(3), &SamplerSpec { count: 5, seed: 5, radius: 1.0 }).unwrap();
    let (a, b) = (w(&[1, 0, 2]), w(&[0, 3, 1]));
    let sum = a.add(&b).unwrap();
    for p in &points {
        for g in spec.catalog() {
            let alpha = TensorMonomial::single(g);
            let lhs = l_symbol(&sum, &alpha, p).unwrap();
            let rhs = l_symbol(&a, &alpha, p).unwrap() + l_symbol(&b, &alpha, p).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}

#[test]
fn norm_is_multiplicative_in_the_weight() {
    let spec = AlgebraSpec::new(3).unwrap();
    let p = OrbitPoint::regular(&spec, vec![c(0.4, -0.3), c(0.1, 0.9), c(-0.7, 0.2)]).unwrap();
    let (a, b) = (w(&[2, 1]), w(&[1, 3]));
    let lhs = norm_factorized(&a.add(&b).unwrap(), &p).unwrap();
    let rhs = norm_factorized(&a, &p).unwrap() * norm_factorized(&b, &p).unwrap();
    assert!((lhs / rhs - 1.0).abs() < 1e-14);
    let irrep = build_irrep(&spec, &w(&[3, 4])).unwrap();
    assert!((norm_direct(&irrep, &p).unwrap() / lhs - 1.0).abs() < 1e-10);
}

#[test]
fn group_action_matches_exponentiated_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (m, lam) in [(2, vec![3]), (3, vec![2, 1]), (4, vec![1, 0, 1])] {
        let spec = AlgebraSpec::new(m).unwrap();
        let irrep = build_irrep(&spec, &w(&lam)).unwrap();
        let x = random_su(&mut rng, m) * c(0.4, 0.0);
        let lhs = expm(&irrep.rep_of_matrix(&x).unwrap());
        let rhs = group_apply(&irrep, &expm(&x)).unwrap();
        assert!((lhs - rhs).norm() < 1e-8);
    }
}

fn point_strategy() -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b)), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_factorization_holds(coords in point_strategy(), l1 in 0u64..3, l2 in 0u64..3) {
        let spec = AlgebraSpec::new(3).unwrap();
        let weight = w(&[l1, l2]);
        let p = OrbitPoint::regular(&spec, coords).unwrap();
        let irrep = build_irrep(&spec, &weight).unwrap();
        let ratio = norm_direct(&irrep, &p).unwrap() / norm_factorized(&weight, &p).unwrap();
        prop_assert!((ratio - 1.0).abs() < 1e-10);
    }

    #[test]
    fn flows_compose(coords in point_strategy(), s in -0.5f64..0.5, t in -0.5f64..0.5) {
        // exp((s + t) xi) u = exp(s xi) exp(t xi) u, seen through the Gauss factors
        let spec = AlgebraSpec::new(3).unwrap();
        let p = OrbitPoint::regular(&spec, coords).unwrap();
        let xi = spec.matrix(Generator::E(1, 3)).unwrap() + spec.matrix(Generator::E(2, 1)).unwrap();
        let one = gauss_decompose(&(expm(&(&xi * c(s + t, 0.0))) * p.u()));
        let two = gauss_decompose(&(expm(&(&xi * c(s, 0.0))) * expm(&(&xi * c(t, 0.0))) * p.u()));
        if let (Ok(a), Ok(b)) = (one, two) {
            prop_assert!((a.lower - b.lower).norm() < 1e-9 * (1.0 + a.upper.norm()));
        }
    }
}
