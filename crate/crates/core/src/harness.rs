//! Run configuration, point sampling and the report-producing commands.
//!
//! Each command returns an [`Outcome`]: a JSON report, a short text summary
//! and the process exit code (0 success, 1 property failure, 2 parse or
//! configuration error, 3 domain error).

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gauss::{expm, gauss_decompose};
use crate::irrep::{build_irrep_with, Irrep, IrrepOptions};
use crate::lie::{weyl_dimension, AlgebraSpec, Generator, Weight};
use crate::limit::{
    cl_sequence, default_theorem3_grid, equivariance_residual, l_linear_coefficients, poisson_check, su_basis,
    theorem3_structure, ConvergenceReport, ConvergenceTolerance,
};
use crate::norm::{norm_direct, norm_factorized};
use crate::operator::{AbstractOperator, TensorMonomial};
use crate::orbit::{r_tilde, OrbitPoint};
use crate::parser::parse_hamiltonian;
use crate::{CMatrix, CVector, C64};

/// Environment variable read by the binary to size the worker pool.
pub const THREADS_ENV: &str = "LIE_SEMICLASSICAL_THREADS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Norm,
    Theorem3,
    Poisson,
    GoldenSu3,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "norm" => Ok(Self::Norm),
            "theorem3" => Ok(Self::Theorem3),
            "poisson" => Ok(Self::Poisson),
            "golden-su3" => Ok(Self::GoldenSu3),
            "all" => Ok(Self::All),
            other => Err(Error::Config(format!(
                "unknown suite {other:?} (expected norm, theorem3, poisson, golden-su3 or all)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerSpec {
    pub count: usize,
    pub seed: u64,
    pub radius: f64,
}

impl Default for SamplerSpec {
    fn default() -> Self {
        Self { count: 10, seed: 0, radius: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub norm: f64,
    pub golden: f64,
    pub theorem3: f64,
    pub poisson: f64,
    pub equivariance: f64,
    pub exact: f64,
    pub exponent_min: f64,
    pub exponent_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let c = ConvergenceTolerance::default();
        Self {
            norm: 1e-10,
            golden: 1e-12,
            theorem3: 1e-8,
            poisson: 1e-6,
            equivariance: 1e-8,
            exact: c.exact,
            exponent_min: c.exponent_min,
            exponent_max: c.exponent_max,
        }
    }
}

impl Tolerances {
    pub fn convergence(&self) -> ConvergenceTolerance {
        ConvergenceTolerance {
            exact: self.exact,
            exponent_min: self.exponent_min,
            exponent_max: self.exponent_max,
            ..ConvergenceTolerance::default()
        }
    }
}

/// Everything a command needs; the JSON config file uses the same field names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "M")]
    pub m: usize,
    pub weight: Vec<u64>,
    pub hamiltonian: Option<String>,
    pub hamiltonian_file: Option<PathBuf>,
    pub points: Option<PathBuf>,
    pub sampler: SamplerSpec,
    pub n: Vec<u64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub suite: Option<Suite>,
    pub tolerances: Tolerances,
    pub max_degree: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: 0,
            weight: Vec::new(),
            hamiltonian: None,
            hamiltonian_file: None,
            points: None,
            sampler: SamplerSpec::default(),
            n: vec![1, 2, 4, 8, 16, 32, 64],
            output: None,
            format: OutputFormat::Json,
            suite: None,
            tolerances: Tolerances::default(),
            max_degree: 6,
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn spec(&self) -> Result<AlgebraSpec> {
        if self.m == 0 {
            return Err(Error::Config("M is required".into()));
        }
        AlgebraSpec::new(self.m)
    }

    /// The weight, defaulting to the first fundamental weight when unset.
    pub fn weight(&self, spec: &AlgebraSpec) -> Result<Weight> {
        if self.weight.is_empty() {
            return Ok(Weight::fundamental_weight(spec.rank(), 1));
        }
        Weight::for_spec(spec, self.weight.clone())
    }

    pub fn validate(&self) -> Result<()> {
        let spec = self.spec()?;
        self.weight(&spec)?;
        if self.sampler.radius.is_nan() || self.sampler.radius <= 0.0 {
            return Err(Error::Config("sampler radius must be positive".into()));
        }
        if self.n.is_empty() || self.n[0] == 0 || self.n.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n schedule must be positive and strictly increasing".into()));
        }
        if self.hamiltonian.is_some() && self.hamiltonian_file.is_some() {
            return Err(Error::Config("give either an inline Hamiltonian or a file, not both".into()));
        }
        Ok(())
    }

    pub fn hamiltonian_text(&self) -> Result<String> {
        match (&self.hamiltonian, &self.hamiltonian_file) {
            (Some(t), None) => Ok(t.clone()),
            (None, Some(p)) => Ok(std::fs::read_to_string(p)?),
            (None, None) => Err(Error::Config("a Hamiltonian is required".into())),
            (Some(_), Some(_)) => Err(Error::Config("give either an inline Hamiltonian or a file, not both".into())),
        }
    }
}

/// Result of a command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    pub text: String,
}

/// Exit code for an error: 2 for parse and configuration problems, 3 for
/// domain errors.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Config(_) | Error::Json(_) => 2,
        _ => 3,
    }
}

impl Outcome {
    pub fn from_error(err: &Error) -> Self {
        Self { exit_code: exit_code(err), report: json!({ "error": err.to_string() }), text: format!("error: {err}") }
    }
}

/// Uniform draw from the complex disc of radius `r`.
pub fn sample_disc<R: Rng>(rng: &mut R, r: f64) -> C64 {
    let rho = r * rng.gen::<f64>().sqrt();
    let theta = 2.0 * PI * rng.gen::<f64>();
    C64::from_polar(rho, theta)
}

/// Deterministic chart points for `weight`, active coordinates uniform in the
/// disc. Points whose `u` fails the minor threshold are redrawn; the number of
/// redraws is returned alongside.
pub fn sample_points(spec: &AlgebraSpec, weight: &Weight, sampler: &SamplerSpec) -> Result<(Vec<OrbitPoint>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let zeros = vec![C64::new(0.0, 0.0); spec.lower_pairs().len()];
    let nactive = OrbitPoint::for_weight(spec, weight, zeros)?.active_pairs().len();
    let mut out = Vec::with_capacity(sampler.count);
    let mut resampled = 0;
    while out.len() < sampler.count {
        let active: Vec<C64> = (0..nactive).map(|_| sample_disc(&mut rng, sampler.radius)).collect();
        let p = OrbitPoint::from_active(spec, weight, &active)?;
        if gauss_decompose(&p.u()).is_err() {
            resampled += 1;
            continue;
        }
        out.push(p);
    }
    Ok((out, resampled))
}

/// Random element of `su(M)` with coordinates uniform in `[-1, 1]`.
pub fn random_su<R: Rng>(rng: &mut R, m: usize) -> CMatrix {
    let mut x = CMatrix::zeros(m, m);
    for b in su_basis(m) {
        x += b * C64::new(rng.gen_range(-1.0..=1.0), 0.0);
    }
    x
}

/// Random unit vector in `C^dim`.
pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    let v = CVector::from_fn(dim, |_, _| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
    let n = v.norm();
    v / C64::new(n, 0.0)
}

fn load_points(cfg: &RunConfig, spec: &AlgebraSpec, weight: &Weight) -> Result<(Vec<OrbitPoint>, usize)> {
    match &cfg.points {
        Some(path) => {
            let value: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let arr = value.as_array().ok_or_else(|| Error::Config("points file must hold a JSON array".into()))?;
            let pts = arr
                .iter()
                .map(|v| {
                    let p = OrbitPoint::from_json(spec, v)?;
                    if weight.is_regular() {
                        Ok(p)
                    } else {
                        p.adapted_to(weight).or(Ok(p))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            for p in &pts {
                gauss_decompose(&p.u())?;
                p.check_weight(weight)?;
            }
            Ok((pts, 0))
        }
        None => sample_points(spec, weight, &cfg.sampler),
    }
}

/// Dimension, weight diagram and invariant checks of one irrep.
pub fn cmd_repinfo(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.spec()?;
    let weight = cfg.weight(&spec)?;
    let weyl = weyl_dimension(&spec, &weight)?;
    let irrep = build_irrep_with(&spec, &weight, IrrepOptions::default())?;
    let report = repinfo_report(&irrep, weyl);
    let pass = report["checks"].as_array().is_some_and(|a| a.iter().all(|c| c["pass"] == json!(true)));
    let mut text = String::new();
    writeln!(text, "sl_{} weight {}: Weyl dimension {weyl}, constructed {}", spec.m(), weight, irrep.dimension()).ok();
    if let Some(ws) = report["weights"].as_array() {
        writeln!(text, "{} distinct weights", ws.len()).ok();
        if ws.len() <= 40 {
            for w in ws {
                writeln!(text, "  {} x{}", w["weight"], w["multiplicity"]).ok();
            }
        }
    }
    for c in report["checks"].as_array().into_iter().flatten() {
        let verdict = if c["pass"] == json!(true) { "PASS" } else { "FAIL" };
        writeln!(text, "{verdict} {} ({})", c["name"].as_str().unwrap_or(""), c["measured"]).ok();
    }
    Ok(Outcome { exit_code: if pass { 0 } else { 1 }, report, text })
}

fn repinfo_report(irrep: &Irrep, weyl: u128) -> Value {
    let spec = irrep.spec();
    let catalog = spec.catalog();
    let mut comm: f64 = 0.0;
    for &a in &catalog {
        for &b in &catalog {
            let lhs = crate::lie::commutator(&irrep.generators()[&a], &irrep.generators()[&b]).expect("square");
            let rhs =
                irrep.rep_of_matrix(&crate::lie::generator_commutator(spec, a, b).expect("valid")).expect("traceless");
            comm = comm.max((lhs - rhs).norm());
        }
    }
    let mut pairing: f64 = 0.0;
    for &g in &catalog {
        pairing = pairing.max((&irrep.generators()[&g.adjoint()] - irrep.generators()[&g].adjoint()).norm());
    }
    let raising: Vec<&CMatrix> = catalog.iter().filter(|g| g.is_raising()).map(|g| &irrep.generators()[g]).collect();
    let hw_dim = if raising.is_empty() {
        irrep.dimension()
    } else {
        let stacked = CMatrix::from_fn(raising.len() * irrep.dimension(), irrep.dimension(), |r, c| {
            raising[r / irrep.dimension()][(r % irrep.dimension(), c)]
        });
        let sv = stacked.singular_values();
        sv.iter().filter(|s| **s <= 1e-10).count() + irrep.dimension().saturating_sub(sv.len())
    };
    let mut weights = irrep.basis_weights();
    weights.sort();
    let mut diagram: Vec<(Vec<i64>, usize)> = Vec::new();
    for w in weights.iter() {
        match diagram.last_mut() {
            Some((last, n)) if last == w => *n += 1,
            _ => diagram.push((w.clone(), 1)),
        }
    }
    let symmetric = {
        let mut ok = true;
        for i in 0..spec.m().saturating_sub(1) {
            let mut swapped: Vec<Vec<i64>> = weights
                .iter()
                .map(|w| {
                    let mut s = w.clone();
                    s.swap(i, i + 1);
                    s
                })
                .collect();
            swapped.sort();
            ok &= swapped == weights;
        }
        ok
    };
    json!({
        "M": spec.m(),
        "weight": irrep.weight().fundamental(),
        "weyl_dimension": weyl as f64,
        "dimension": irrep.dimension(),
        "weights": diagram.iter().map(|(w, n)| json!({"weight": w, "multiplicity": n})).collect::<Vec<_>>(),
        "checks": [
            {"name": "dimension matches Weyl formula", "pass": weyl == irrep.dimension() as u128,
             "measured": irrep.dimension()},
            {"name": "commutation relations", "pass": comm <= 1e-10, "measured": comm, "tolerance": 1e-10},
            {"name": "rho(g^*) = rho(g)^*", "pass": pairing <= 1e-10, "measured": pairing, "tolerance": 1e-10},
            {"name": "highest-weight space is one-dimensional", "pass": hw_dim == 1, "measured": hw_dim},
            {"name": "weight multiset is Weyl-symmetric", "pass": symmetric, "measured": symmetric},
        ],
    })
}

/// `cl_n` tables for every point, written as JSON or CSV when an output path is set.
pub fn cmd_limit(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let spec = cfg.spec()?;
    let weight = cfg.weight(&spec)?;
    if weight.is_zero() {
        return Err(Error::InvalidWeight("lambda = 0 gives a one-point orbit; the limit is trivial".into()));
    }
    let text_h = cfg.hamiltonian_text()?;
    let op = parse_hamiltonian(&text_h, &spec)?;
    if op.degree() > cfg.max_degree {
        return Err(Error::Config(format!("degree {} exceeds the cap {}", op.degree(), cfg.max_degree)));
    }
    let (points, resampled) = load_points(cfg, &spec, &weight)?;
    let tol = cfg.tolerances.convergence();
    let reports: Vec<ConvergenceReport> =
        points.par_iter().map(|p| cl_sequence(&weight, &op, p, &cfg.n, tol)).collect::<Result<_>>()?;
    let report = limit_json(&op, &weight, &points, &reports, resampled);
    if let Some(path) = &cfg.output {
        let body = match cfg.format {
            OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            OutputFormat::Csv => limit_csv(&reports),
        };
        std::fs::write(path, body)?;
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut text = String::new();
    for (i, r) in reports.iter().enumerate() {
        let fit = r.fit.as_ref().map_or("exact".to_string(), |f| format!("exponent {:.4}", f.exponent));
        writeln!(text, "point {i}: limit {:?}, {fit}, {}", r.limit, if r.pass { "PASS" } else { "FAIL" }).ok();
    }
    Ok(Outcome { exit_code: if pass { 0 } else { 1 }, report, text })
}

fn limit_json(
    op: &AbstractOperator,
    weight: &Weight,
    points: &[OrbitPoint],
    reports: &[ConvergenceReport],
    resampled: usize,
) -> Value {
    let table: Vec<Value> = reports
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.table.iter().map(move |row| json!({"point": i, "n": row.n, "value": row.value, "error": row.error}))
        })
        .collect();
    json!({
        "hamiltonian": op.to_string(),
        "weight": weight.fundamental(),
        "points": points.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        "table": table,
        "limit": reports.iter().map(|r| r.limit).collect::<Vec<_>>(),
        "fit": reports.iter().map(|r| r.fit.clone()).collect::<Vec<_>>(),
        "pass": reports.iter().map(|r| r.pass).collect::<Vec<_>>(),
        "warnings": reports.first().map(|r| r.warnings.clone()).unwrap_or_default(),
        "resampled": resampled,
    })
}

/// CSV table with 17 significant digits.
pub fn limit_csv(reports: &[ConvergenceReport]) -> String {
    let mut out = String::from("point,n,value_re,value_im,limit_re,limit_im,error\n");
    for (i, r) in reports.iter().enumerate() {
        for row in &r.table {
            writeln!(
                out,
                "{i},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                row.n, row.value[0], row.value[1], r.limit[0], r.limit[1], row.error
            )
            .ok();
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub suite: String,
    pub property: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub cases: usize,
}

impl PropertyResult {
    fn le(suite: &str, property: &str, measured: f64, tolerance: f64, cases: usize) -> Self {
        Self { suite: suite.into(), property: property.into(), pass: measured <= tolerance, measured, tolerance, cases }
    }
}

/// Run the selected verification suite(s).
pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let suite = cfg.suite.ok_or_else(|| Error::Config("a suite is required".into()))?;
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Norm, Suite::GoldenSu3, Suite::Theorem3, Suite::Poisson],
        s => vec![s],
    };
    let mut results = Vec::new();
    for s in suites {
        results.extend(match s {
            Suite::Norm => verify_norm(cfg)?,
            Suite::GoldenSu3 => verify_golden(cfg)?,
            Suite::Theorem3 => verify_theorem3(cfg)?,
            Suite::Poisson => verify_poisson(cfg)?,
            Suite::All => unreachable!(),
        });
    }
    let pass = results.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &results {
        writeln!(
            text,
            "{} {}/{}: {:.3e} (tol {:.1e}, {} cases)",
            if r.pass { "PASS" } else { "FAIL" },
            r.suite,
            r.property,
            r.measured,
            r.tolerance,
            r.cases
        )
        .ok();
    }
    let report = json!({ "pass": pass, "results": results });
    if let Some(path) = &cfg.output {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    Ok(Outcome { exit_code: if pass { 0 } else { 1 }, report, text })
}

fn spec_or(cfg: &RunConfig, m: usize) -> Result<AlgebraSpec> {
    AlgebraSpec::new(if cfg.m == 0 { m } else { cfg.m })
}

/// `norm_direct / norm_factorized - 1` over all weights with `|lambda| <= 4`.
pub fn verify_norm(cfg: &RunConfig) -> Result<Vec<PropertyResult>> {
    let spec = spec_or(cfg, 3)?;
    let weights: Vec<Weight> = Weight::all_up_to(spec.rank(), 4).into_iter().filter(|w| !w.is_zero()).collect();
    let (points, _) = sample_points(&spec, &Weight::rho(spec.rank()), &cfg.sampler)?;
    let devs: Vec<f64> = weights
        .par_iter()
        .map(|w| {
            let irrep = build_irrep_with(&spec, w, IrrepOptions::default())?;
            let mut dev: f64 = 0.0;
            for p in &points {
                dev = dev.max((norm_direct(&irrep, p)? / norm_factorized(w, p)? - 1.0).abs());
            }
            Ok(dev)
        })
        .collect::<Result<_>>()?;
    let max = devs.into_iter().fold(0.0, f64::max);
    Ok(vec![PropertyResult::le(
        "norm",
        "max |norm_direct / norm_factorized - 1|",
        max,
        cfg.tolerances.norm,
        weights.len() * points.len(),
    )])
}

/// Closed-form first-order operator and symbol of `E(1,2)` over `sl_3`.
pub fn golden_e12(point: &OrbitPoint) -> Result<([C64; 3], C64, [C64; 2])> {
    let x21 = point.coordinate(2, 1).expect("sl_3");
    let x31 = point.coordinate(3, 1).expect("sl_3");
    let x32 = point.coordinate(3, 2).expect("sl_3");
    let n1 = 1.0 + x21.norm_sqr() + x31.norm_sqr();
    let n2 = 1.0 + x32.norm_sqr() + (x31 - x21 * x32).norm_sqr();
    let vector = [-x21 * x21, -x21 * x31, x21 * x32 - x31];
    let l = [x21 / n1, x32.conj() * (x21 * x32 - x31) / n2];
    Ok((vector, x21, l))
}

pub fn verify_golden(cfg: &RunConfig) -> Result<Vec<PropertyResult>> {
    let spec = AlgebraSpec::new(3)?;
    let e12 = spec.matrix(Generator::E(1, 2))?;
    let sampler = SamplerSpec { count: cfg.sampler.count.max(100), ..cfg.sampler };
    let (points, _) = sample_points(&spec, &Weight::rho(2), &sampler)?;
    let (mut dv, mut dm, mut dl) = (0.0f64, 0.0f64, 0.0f64);
    for p in &points {
        let (vector, mult, l) = golden_e12(p)?;
        let w = Weight::new(vec![1, 0])?;
        let op = r_tilde(&e12, p, &w, 0)?;
        for (a, b) in op.vector_at_base().iter().zip(vector) {
            dv = dv.max((a - b).norm());
        }
        dm = dm.max((op.multiplier_at_base() - mult).norm());
        let coeffs = l_linear_coefficients(Generator::E(1, 2), p)?;
        dl = dl.max((coeffs[0] - l[0]).norm()).max((coeffs[1] - l[1]).norm());
    }
    let tol = cfg.tolerances.golden;
    let n = points.len();
    Ok(vec![
        PropertyResult::le("golden-su3", "r(E(1,2)) vector coefficients", dv, tol, n),
        PropertyResult::le("golden-su3", "r(E(1,2)) multiplier x21 lambda_1", dm, tol, n),
        PropertyResult::le("golden-su3", "l(E(1,2)) coefficients of lambda_1, lambda_2", dl, tol, n),
    ])
}

/// Degree-2 and degree-3 monomials used by the structure suite.
pub fn theorem3_monomials() -> Vec<TensorMonomial> {
    use Generator::{E, H};
    vec![
        TensorMonomial::new(vec![E(1, 2), E(2, 1)]),
        TensorMonomial::new(vec![E(2, 1), E(1, 2)]),
        TensorMonomial::new(vec![H(1), E(1, 3)]),
        TensorMonomial::new(vec![E(1, 2), E(2, 3), E(3, 1)]),
        TensorMonomial::new(vec![E(1, 3), H(2), E(3, 2)]),
    ]
}

pub fn verify_theorem3(cfg: &RunConfig) -> Result<Vec<PropertyResult>> {
    let spec = AlgebraSpec::new(3)?;
    let sampler = SamplerSpec { count: cfg.sampler.count.min(3), ..cfg.sampler };
    let (points, _) = sample_points(&spec, &Weight::rho(2), &sampler)?;
    let monomials = theorem3_monomials();
    let cases: Vec<(usize, usize)> =
        (0..points.len()).flat_map(|p| (0..monomials.len()).map(move |m| (p, m))).collect();
    let reports = cases
        .par_iter()
        .map(|&(p, m)| {
            let grid = default_theorem3_grid(&spec, monomials[m].degree());
            theorem3_structure(&grid, &monomials[m], &points[p])
        })
        .collect::<Result<Vec<_>>>()?;
    let held = reports.iter().map(|r| r.heldout_residual).fold(0.0, f64::max);
    let lead = reports.iter().map(|r| r.leading_deviation).fold(0.0, f64::max);
    let tol = cfg.tolerances.theorem3;
    Ok(vec![
        PropertyResult::le("theorem3", "held-out interpolation residual", held, tol, reports.len()),
        PropertyResult::le("theorem3", "leading part vs product of cl", lead, tol, reports.len()),
    ])
}

pub fn verify_poisson(cfg: &RunConfig) -> Result<Vec<PropertyResult>> {
    let spec = spec_or(cfg, 2)?;
    let weight = cfg.weight(&spec)?;
    let irrep = build_irrep_with(&spec, &weight, IrrepOptions::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.sampler.seed);
    let count = cfg.sampler.count.max(1);
    let (mut bracket, mut equiv) = (0.0f64, 0.0f64);
    for _ in 0..count {
        let xi = random_su(&mut rng, spec.m());
        let eta = random_su(&mut rng, spec.m());
        let x = random_vector(&mut rng, irrep.dimension());
        bracket = bracket.max(poisson_check(&irrep, &xi, &eta, &x, 1e-4)?);
        let k = expm(&random_su(&mut rng, spec.m()));
        equiv = equiv.max(equivariance_residual(&irrep, &k, &x)?);
    }
    Ok(vec![
        PropertyResult::le(
            "poisson",
            "flow-derivative bracket residual at h = 1e-4",
            bracket,
            cfg.tolerances.poisson,
            count,
        ),
        PropertyResult::le("poisson", "momentum map equivariance", equiv, cfg.tolerances.equivariance, count),
    ])
}
