//! Momentum map, classical limit and the symbol map `l`.
//!
//! Conventions (all anchored to matrix elements in the irrep):
//!
//! * `mu^xi([x]) = -2i <x, rho(xi) x> / <x, x>`;
//! * `cl(A)(x) = <x, rho(A) x> / <x, x>`, so `cl(H(k))(v_max) = lambda_k`;
//! * `cl` of a tensor monomial is the product of `cl` of its factors;
//! * `l_lambda(alpha) = N_lambda^-1 r(alpha_1) .. r(alpha_p) N_lambda`, evaluated with jets;
//! * `cl_n(H) = sum_i n^{-d(i)} l_{n lambda}(alpha_i)`, converging to `cl(H)` like `1/n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::expm;
use crate::irrep::Irrep;
use crate::jet::{Jet, JetSpace};
use crate::lie::{AlgebraSpec, Generator, Weight};
use crate::norm::norm_direct_at;
use crate::operator::{AbstractOperator, TensorMonomial};
use crate::orbit::{apply_op, jet_of_norm_in, r_tilde_in, FirstOrderOp, OrbitPoint};
use crate::wedge::{compound, derivation};
use crate::{CMatrix, CVector, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Orthonormal basis of `su(M)` (traceless skew-hermitian matrices) for the
/// pairing `<X, Y> = tr(X^* Y)`.
pub fn su_basis(m: usize) -> Vec<CMatrix> {
    let s = 1.0 / 2f64.sqrt();
    let mut out = Vec::with_capacity(m * m - 1);
    for k in 0..m {
        for l in k + 1..m {
            let mut sym = CMatrix::zeros(m, m);
            sym[(k, l)] = I * s;
            sym[(l, k)] = I * s;
            out.push(sym);
            let mut anti = CMatrix::zeros(m, m);
            anti[(k, l)] = C64::new(s, 0.0);
            anti[(l, k)] = C64::new(-s, 0.0);
            out.push(anti);
        }
    }
    for j in 1..m {
        let norm = 1.0 / ((j * (j + 1)) as f64).sqrt();
        let mut d = CMatrix::zeros(m, m);
        for i in 0..j {
            d[(i, i)] = I * norm;
        }
        d[(j, j)] = I * (-(j as f64) * norm);
        out.push(d);
    }
    out
}

fn expectation(rho: &CMatrix, x: &CVector) -> Result<C64> {
    let nn = x.norm_squared();
    if nn == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(x.dotc(&(rho * x)) / nn)
}

fn check_vector(irrep: &Irrep, x: &CVector) -> Result<()> {
    if x.len() != irrep.dimension() {
        return Err(Error::DimensionMismatch { expected: irrep.dimension(), got: x.len() });
    }
    Ok(())
}

/// `mu^xi([x]) = -2i <x, rho(xi) x> / <x, x>` for a traceless `M x M` matrix `xi`.
pub fn moment(irrep: &Irrep, xi: &CMatrix, x: &CVector) -> Result<C64> {
    check_vector(irrep, x)?;
    let rho = irrep.rep_of_matrix(xi)?;
    Ok(expectation(&rho, x)? * C64::new(0.0, -2.0))
}

/// `cl(A)(x) = <x, rho(A) x> / <x, x>` for a traceless `M x M` matrix `a`.
pub fn cl_generator(irrep: &Irrep, a: &CMatrix, x: &CVector) -> Result<C64> {
    check_vector(irrep, x)?;
    expectation(&irrep.rep_of_matrix(a)?, x)
}

/// `cl` of a degree-1 abstract operator in the irrep.
pub fn cl_abstract(irrep: &Irrep, op: &AbstractOperator, x: &CVector) -> Result<C64> {
    check_vector(irrep, x)?;
    let rho = crate::irrep::rep_apply(irrep, op)?;
    expectation(&rho, x)
}

/// Values of the momentum map on the orthonormal basis [`su_basis`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentValue {
    pub values: Vec<f64>,
}

impl MomentValue {
    pub fn at(irrep: &Irrep, x: &CVector) -> Result<Self> {
        let values =
            su_basis(irrep.spec().m()).iter().map(|xi| moment(irrep, xi, x).map(|v| v.re)).collect::<Result<_>>()?;
        Ok(Self { values })
    }

    /// Coadjoint action: `(Ad*(k) mu)^xi = mu^{k^-1 xi k}` for unitary `k`.
    pub fn coadjoint(&self, k: &CMatrix) -> Self {
        let basis = su_basis(k.nrows());
        let kinv = k.adjoint();
        let values = basis
            .iter()
            .map(|xa| {
                let moved = &kinv * xa * k;
                basis.iter().zip(&self.values).map(|(xb, mu)| xb.dotc(&moved).re * mu).sum()
            })
            .collect();
        Self { values }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// `max_a | mu^{xi_a}(k.x) - (Ad*(k) mu(x))^{xi_a} |` for `k` in `SU(M)`.
pub fn equivariance_residual(irrep: &Irrep, k: &CMatrix, x: &CVector) -> Result<f64> {
    let moved = crate::irrep::group_apply(irrep, k)? * x;
    let lhs = MomentValue::at(irrep, &moved)?;
    let rhs = MomentValue::at(irrep, x)?.coadjoint(k);
    Ok(lhs.max_abs_diff(&rhs))
}

/// Central-difference residual of the bracket identity
/// `d/dt mu^eta(exp(-t xi) x) |_{t=0} = mu^{[xi, eta]}(x)` for skew-hermitian `xi, eta`.
pub fn poisson_check(irrep: &Irrep, xi: &CMatrix, eta: &CMatrix, x: &CVector, h: f64) -> Result<f64> {
    check_vector(irrep, x)?;
    let rho_xi = irrep.rep_of_matrix(xi)?;
    let rho_eta = irrep.rep_of_matrix(eta)?;
    let mu_eta = |t: f64| -> Result<C64> {
        let y = expm(&(&rho_xi * C64::new(-t, 0.0))) * x;
        Ok(expectation(&rho_eta, &y)? * C64::new(0.0, -2.0))
    };
    let fd = (mu_eta(h)? - mu_eta(-h)?) / C64::new(2.0 * h, 0.0);
    let bracket = crate::lie::commutator(xi, eta)?;
    Ok((fd - moment(irrep, &bracket, x)?).norm())
}

/// Residual of `{cl(A), cl(B)} = 1/2 cl(i[A, B])` for hermitian `a, b`, with the
/// bracket realised as `1/2 d/dt cl(B)(exp(-i t A) x)`.
pub fn dirac_check(irrep: &Irrep, a: &CMatrix, b: &CMatrix, x: &CVector, h: f64) -> Result<f64> {
    check_vector(irrep, x)?;
    let rho_a = irrep.rep_of_matrix(a)?;
    let rho_b = irrep.rep_of_matrix(b)?;
    let cl_b = |t: f64| -> Result<C64> {
        let y = expm(&(&rho_a * C64::new(0.0, -t))) * x;
        expectation(&rho_b, &y)
    };
    let bracket = (cl_b(h)? - cl_b(-h)?) / C64::new(4.0 * h, 0.0);
    let comm = crate::lie::commutator(a, b)? * I;
    Ok((bracket - cl_generator(irrep, &comm, x)? * 0.5).norm())
}

/// `cl(xi)` at the chart point for `weight`, via the fundamental wedge
/// representations: `v_max` is a product vector, so the expectation of a
/// derivation is `sum_k lambda_k <w_k, Lambda^k(xi) w_k> / <w_k, w_k>` with
/// `w_k = u (e_1 ^ .. ^ e_k)`.
pub fn cl_on_chart(weight: &Weight, xi: &CMatrix, point: &OrbitPoint) -> Result<C64> {
    point.check_weight(weight)?;
    let u = point.u();
    let mut acc = ZERO;
    for (k, &l) in weight.fundamental().iter().enumerate() {
        if l == 0 {
            continue;
        }
        let w = compound(&u, k + 1).column(0).into_owned();
        acc += expectation(&derivation(xi, k + 1), &w)? * l as f64;
    }
    Ok(acc)
}

/// `cl(alpha) = prod_i cl(alpha_i)`; the unit monomial maps to 1.
pub fn cl_monomial(weight: &Weight, alpha: &TensorMonomial, point: &OrbitPoint) -> Result<C64> {
    let spec = point.spec();
    alpha.factors().iter().try_fold(ONE, |acc, g| Ok(acc * cl_on_chart(weight, &spec.matrix(*g)?, point)?))
}

/// `cl` extended linearly to abstract operators.
pub fn cl_operator(weight: &Weight, op: &AbstractOperator, point: &OrbitPoint) -> Result<C64> {
    op.monomial_decomposition().iter().try_fold(ZERO, |acc, (c, m)| Ok(acc + c * cl_monomial(weight, m, point)?))
}

/// Evaluates `l_lambda` of monomials at one point, caching the first-order
/// operators of each generator.
pub struct SymbolEvaluator {
    space: Arc<JetSpace>,
    point: OrbitPoint,
    weight: Weight,
    norm: Jet,
    ops: BTreeMap<Generator, FirstOrderOp>,
}

impl SymbolEvaluator {
    pub fn new(weight: &Weight, point: &OrbitPoint, max_degree: usize) -> Result<Self> {
        point.check_weight(weight)?;
        let space = JetSpace::new(point.active_pairs().len(), max_degree);
        let norm = jet_of_norm_in(&space, weight, point, true)?;
        Ok(Self { space, point: point.clone(), weight: weight.clone(), norm, ops: BTreeMap::new() })
    }

    pub fn max_degree(&self) -> usize {
        self.space.order()
    }

    fn op(&mut self, g: Generator) -> Result<&FirstOrderOp> {
        if !self.ops.contains_key(&g) {
            let xi = self.point.spec().matrix(g)?;
            let op = r_tilde_in(&self.space, &xi, &self.point, &self.weight)?;
            self.ops.insert(g, op);
        }
        Ok(&self.ops[&g])
    }

    /// `l(alpha)`: apply `r(alpha_p)` first, `r(alpha_1)` last, then divide by `N`.
    pub fn monomial(&mut self, alpha: &TensorMonomial) -> Result<C64> {
        let p = alpha.degree();
        if p > self.space.order() {
            return Err(Error::OrderExhausted);
        }
        let mut f = self.norm.truncate(p);
        for g in alpha.factors().iter().rev() {
            let op = self.op(*g)?;
            f = apply_op(op, &f)?;
        }
        // the norm jet is normalized to N(x) = 1
        Ok(f.value())
    }

    pub fn operator(&mut self, op: &AbstractOperator) -> Result<C64> {
        op.monomial_decomposition().iter().try_fold(ZERO, |acc, (c, m)| Ok(acc + c * self.monomial(m)?))
    }
}

/// `l_lambda(alpha)` at `point`.
pub fn l_symbol(weight: &Weight, alpha: &TensorMonomial, point: &OrbitPoint) -> Result<C64> {
    SymbolEvaluator::new(weight, point, alpha.degree())?.monomial(alpha)
}

/// `l_lambda` extended linearly to abstract operators.
pub fn l_operator(weight: &Weight, op: &AbstractOperator, point: &OrbitPoint) -> Result<C64> {
    SymbolEvaluator::new(weight, point, op.degree())?.operator(op)
}

/// For degree-1 `xi` the symbol is linear in the weight:
/// `l_lambda(xi) = sum_k lambda_k coeff_k`. Returns the `coeff_k`, computed
/// on the point's own chart (which must be the full chart for `M > 2`
/// unless the point is already adapted to every fundamental weight).
pub fn l_linear_coefficients(xi: Generator, point: &OrbitPoint) -> Result<Vec<C64>> {
    let rank = point.spec().rank();
    (1..=rank).map(|k| l_symbol(&Weight::fundamental_weight(rank, k), &TensorMonomial::single(xi), point)).collect()
}

/// Fourth-order central stencil offsets and weights for a first derivative.
const STENCIL: [(f64, f64); 4] = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];

/// `l_lambda(alpha)` by finite differences of group flows and the irrep norm:
/// `N^-1 d_{t_1} .. d_{t_p} N(exp(t_p alpha_p) .. exp(t_1 alpha_1) u v_max)`
/// with holomorphic (Wirtinger) derivatives `d_t = (d_re - i d_im) / 2`.
/// Independent of the jet machinery and of the factorized norm.
pub fn l_symbol_by_flows(irrep: &Irrep, alpha: &TensorMonomial, point: &OrbitPoint, h: f64) -> Result<C64> {
    let spec = irrep.spec();
    if spec != point.spec() {
        return Err(Error::SpecMismatch("irrep and point over different algebras".into()));
    }
    let mats: Vec<CMatrix> = alpha.factors().iter().map(|g| spec.matrix(*g)).collect::<Result<_>>()?;
    let u = point.u();
    let n0 = norm_direct_at(irrep, &u)?;

    fn rec(irrep: &Irrep, mats: &[CMatrix], level: usize, g: &CMatrix, h: f64) -> Result<C64> {
        if level == mats.len() {
            return Ok(C64::new(norm_direct_at(irrep, g)?, 0.0));
        }
        let mut acc = ZERO;
        for dir in [ONE, I] {
            // d_t = (d_re - i d_im) / 2
            let w_dir = if dir == ONE { C64::new(0.5, 0.0) } else { C64::new(0.0, -0.5) };
            for (off, w) in STENCIL {
                let step = dir * (off * h);
                let moved = expm(&(&mats[level] * step)) * g;
                acc += w_dir * (w / h) * rec(irrep, mats, level + 1, &moved, h)?;
            }
        }
        Ok(acc)
    }
    Ok(rec(irrep, &mats, 0, &u, h)? / n0)
}

/// Least-squares fit of `log|err|` against `log n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub exponent: f64,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct ConvergenceTolerance {
    /// Errors at or below this are treated as exact convergence.
    pub exact: f64,
    pub exponent_min: f64,
    pub exponent_max: f64,
    /// Monotone decrease is required from this `n` on.
    pub monotone_from: u64,
}

impl Default for ConvergenceTolerance {
    fn default() -> Self {
        Self { exact: 1e-12, exponent_min: -1.3, exponent_max: -0.7, monotone_from: 4 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub value: [f64; 2],
    pub error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub table: Vec<ConvergenceRow>,
    pub limit: [f64; 2],
    pub fit: Option<DecayFit>,
    pub monotone: bool,
    pub pass: bool,
    pub warnings: Vec<String>,
}

pub fn fit_decay(ns: &[u64], errors: &[f64], floor: f64) -> Option<DecayFit> {
    let pts: Vec<(f64, f64)> =
        ns.iter().zip(errors).filter(|(_, e)| **e > floor).map(|(n, e)| ((*n as f64).ln(), e.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - icpt - slope * p.0).powi(2)).sum::<f64>() / k).sqrt();
    Some(DecayFit { exponent: slope, residual })
}

/// `cl_n(H)` for every `n` in `n_list` against the limit `cl(H)` at base weight `weight`.
pub fn cl_sequence(
    weight: &Weight,
    op: &AbstractOperator,
    point: &OrbitPoint,
    n_list: &[u64],
    tol: ConvergenceTolerance,
) -> Result<ConvergenceReport> {
    if weight.is_zero() {
        return Err(Error::InvalidWeight("the zero weight has a trivial orbit".into()));
    }
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] == 0 {
        return Err(Error::Config("n schedule must be positive and strictly increasing".into()));
    }
    point.check_weight(weight)?;
    let mut warnings = Vec::new();
    if !op.is_abstractly_selfadjoint() {
        warnings.push("Hamiltonian is not abstractly selfadjoint".to_string());
    }
    let limit = cl_operator(weight, op, point)?;
    let parts = op.monomial_decomposition();
    let mut table = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut eval = SymbolEvaluator::new(&weight.scale(n), point, op.degree())?;
        let mut value = ZERO;
        for (c, m) in &parts {
            value += c * eval.monomial(m)? / (n as f64).powi(m.degree() as i32);
        }
        table.push(ConvergenceRow { n, value: [value.re, value.im], error: (value - limit).norm() });
    }
    let errors: Vec<f64> = table.iter().map(|r| r.error).collect();
    let monotone = table
        .windows(2)
        .filter(|w| w[0].n >= tol.monotone_from)
        .all(|w| w[1].error <= w[0].error || w[1].error <= tol.exact);
    let fit = fit_decay(n_list, &errors, tol.exact);
    let exact = errors.iter().all(|&e| e <= tol.exact);
    let pass = exact
        || (monotone && fit.as_ref().is_some_and(|f| f.exponent >= tol.exponent_min && f.exponent <= tol.exponent_max));
    Ok(ConvergenceReport { table, limit: [limit.re, limit.im], fit, monotone, pass, warnings })
}

/// Result of fitting `lambda -> l_lambda(alpha)(point)` by a polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem3Report {
    pub degree: usize,
    pub fit_nodes: usize,
    pub heldout_nodes: usize,
    /// `max |fit - l| / max(1, |l|)` over held-out nodes.
    pub heldout_residual: f64,
    /// `max |fitted - expected|` over the degree-`p` coefficients.
    pub leading_deviation: f64,
    /// Fitted coefficients keyed by exponent vector, e.g. `"2,0"`.
    pub coefficients: BTreeMap<String, [f64; 2]>,
    /// Nodes violating the hypothesis `max_i lambda_i > p`, with their
    /// deviation from the fitted polynomial. Recorded, not asserted.
    pub hypothesis_violations: Vec<(Vec<u64>, f64)>,
}

/// Interpolate `lambda -> l_lambda(alpha)(point)` over `grid` and compare its
/// top-degree part with `prod_i cl(alpha_i)`.
pub fn theorem3_structure(grid: &[Weight], alpha: &TensorMonomial, point: &OrbitPoint) -> Result<Theorem3Report> {
    let spec = *point.spec();
    let rank = spec.rank();
    let p = alpha.degree();
    if p == 0 {
        return Err(Error::InsufficientGrid("the unit monomial has no structure to fit".into()));
    }
    let basis_space = JetSpace::new(rank, p);
    let nbasis = basis_space.len();
    let scale = grid.iter().flat_map(|w| w.fundamental().iter().copied()).max().unwrap_or(1).max(1) as f64;

    let (valid, violating): (Vec<&Weight>, Vec<&Weight>) =
        grid.iter().partition(|w| w.fundamental().iter().any(|&l| l as usize > p));
    let fit_nodes: Vec<&Weight> = valid.iter().step_by(2).copied().collect();
    let held: Vec<&Weight> = valid.iter().skip(1).step_by(2).copied().collect();
    if fit_nodes.len() < nbasis || held.is_empty() {
        return Err(Error::InsufficientGrid(format!(
            "{} fit nodes and {} held-out nodes for {} coefficients",
            fit_nodes.len(),
            held.len(),
            nbasis
        )));
    }
    let row = |w: &Weight| -> Vec<f64> {
        (0..nbasis)
            .map(|i| {
                basis_space
                    .exponents(i)
                    .iter()
                    .zip(w.fundamental())
                    .fold(1.0, |acc, (&e, &l)| acc * (l as f64 / scale).powi(e as i32))
            })
            .collect()
    };
    let value = |w: &Weight| l_symbol(w, alpha, point);

    let design = DMatrix::from_fn(fit_nodes.len(), nbasis, |r, c| row(fit_nodes[r])[c]);
    let values: Vec<C64> = fit_nodes.iter().map(|w| value(w)).collect::<Result<_>>()?;
    let svd = design.svd(true, true);
    let solve = |rhs: Vec<f64>| -> Result<Vec<f64>> {
        let b = nalgebra::DVector::from_vec(rhs);
        let x = svd.solve(&b, 1e-14).map_err(|e| Error::InsufficientGrid(e.to_string()))?;
        Ok(x.iter().copied().collect())
    };
    let re = solve(values.iter().map(|v| v.re).collect())?;
    let im = solve(values.iter().map(|v| v.im).collect())?;
    let coeffs: Vec<C64> = re.iter().zip(&im).map(|(a, b)| C64::new(*a, *b)).collect();
    let poly = |w: &Weight| -> C64 { row(w).iter().zip(&coeffs).map(|(r, c)| c * *r).sum() };

    let mut heldout_residual: f64 = 0.0;
    for w in &held {
        let v = value(w)?;
        heldout_residual = heldout_residual.max((poly(w) - v).norm() / v.norm().max(1.0));
    }
    let mut hypothesis_violations = Vec::new();
    for w in &violating {
        let v = value(w)?;
        hypothesis_violations.push((w.fundamental().to_vec(), (poly(w) - v).norm() / v.norm().max(1.0)));
    }

    // expected top-degree part: product of the linear forms cl_lambda(alpha_i)
    let mut expected = Jet::constant(&basis_space, ONE);
    for g in alpha.factors() {
        let xi = spec.matrix(*g)?;
        let mut linear = Jet::zero(&basis_space);
        for k in 0..rank {
            let c = cl_on_chart(&Weight::fundamental_weight(rank, k + 1), &xi, point)?;
            linear = &linear + &Jet::variable(&basis_space, k, ZERO).scale(c);
        }
        expected = &expected * &linear;
    }
    let mut leading_deviation: f64 = 0.0;
    let mut coefficients = BTreeMap::new();
    for (i, c) in coeffs.iter().enumerate() {
        let exps = basis_space.exponents(i);
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        let unscaled = c / scale.powi(deg as i32);
        let key: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
        coefficients.insert(key.join(","), [unscaled.re, unscaled.im]);
        if deg == p {
            leading_deviation = leading_deviation.max((unscaled - expected.coefficients()[i]).norm());
        }
    }
    Ok(Theorem3Report {
        degree: p,
        fit_nodes: fit_nodes.len(),
        heldout_nodes: held.len(),
        heldout_residual,
        leading_deviation,
        coefficients,
        hypothesis_violations,
    })
}

/// Grid of weights with every coordinate in `1..=top` and at least one
/// coordinate above `p`, with `top` the smallest bound giving at least twice
/// as many nodes as polynomial coefficients (half are held out).
pub fn default_theorem3_grid(spec: &AlgebraSpec, p: usize) -> Vec<Weight> {
    let rank = spec.rank();
    let needed = 2 * JetSpace::new(rank, p).len() + 1;
    let mut top = p as u64 + 1;
    loop {
        let grid = weight_box(rank, top, p);
        if grid.len() >= needed {
            return grid;
        }
        top += 1;
    }
}

fn weight_box(rank: usize, top: u64, p: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![1u64; rank];
    loop {
        if cur.iter().any(|&l| l as usize > p) {
            out.push(Weight::new(cur.clone()).expect("nonempty"));
        }
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= top {
                break;
            }
            cur[i] = 1;
            i += 1;
        }
    }
}
