//! Generator catalog of `sl_M(C)`, dominant weights and the Weyl dimension.
//!
//! Generators are the off-diagonal matrix units `E(k,l)` and the Cartan
//! elements `H(k) = E(k,k) - E(k+1,k+1)`, all indices 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// A catalog generator of `sl_M`.
///
/// The derived ordering (all `E` before all `H`, then lexicographic on the
/// indices) is the canonical ordering used for abstract operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    E(usize, usize),
    H(usize),
}

impl Generator {
    /// Image under the formal adjoint: `E(k,l) -> E(l,k)`, `H(k) -> H(k)`.
    pub fn adjoint(self) -> Generator {
        match self {
            Generator::E(k, l) => Generator::E(l, k),
            Generator::H(k) => Generator::H(k),
        }
    }

    /// `E(k,l)` with `k < l`.
    pub fn is_raising(self) -> bool {
        matches!(self, Generator::E(k, l) if k < l)
    }

    pub fn is_lowering(self) -> bool {
        matches!(self, Generator::E(k, l) if k > l)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(k, l) => write!(f, "E({k},{l})"),
            Generator::H(k) => write!(f, "H({k})"),
        }
    }
}

/// The algebra `sl_M(C)`, complexification of `su(M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    m: usize,
}

impl AlgebraSpec {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Config(format!("sl_M needs M >= 2, got {m}")));
        }
        Ok(Self { m })
    }

    /// Defining dimension `M`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.m - 1
    }

    /// `M^2 - 1`.
    pub fn dimension(&self) -> usize {
        self.m * self.m - 1
    }

    /// All generators in canonical order: `E(k,l)` lexicographic, then `H(k)`.
    pub fn catalog(&self) -> Vec<Generator> {
        let m = self.m;
        let mut out = Vec::with_capacity(self.dimension());
        for k in 1..=m {
            for l in 1..=m {
                if k != l {
                    out.push(Generator::E(k, l));
                }
            }
        }
        out.extend((1..m).map(Generator::H));
        out
    }

    /// Strictly-lower index pairs `(i, j)`, `i > j`, 1-based, ordered by `(i, j)`.
    ///
    /// This is the coordinate order of the lower-unipotent chart:
    /// for `M = 3` it is `x21, x31, x32`.
    pub fn lower_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 2..=self.m {
            for j in 1..i {
                out.push((i, j));
            }
        }
        out
    }

    pub fn validate(&self, g: Generator) -> Result<()> {
        let m = self.m;
        let ok = match g {
            Generator::E(k, l) => k != l && (1..=m).contains(&k) && (1..=m).contains(&l),
            Generator::H(k) => (1..m).contains(&k),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { m, what: g.to_string() })
        }
    }

    /// Matrix of `g` in the defining representation.
    pub fn matrix(&self, g: Generator) -> Result<CMatrix> {
        self.validate(g)?;
        let mut a = CMatrix::zeros(self.m, self.m);
        match g {
            Generator::E(k, l) => a[(k - 1, l - 1)] = C64::new(1.0, 0.0),
            Generator::H(k) => {
                a[(k - 1, k - 1)] = C64::new(1.0, 0.0);
                a[(k, k)] = C64::new(-1.0, 0.0);
            }
        }
        Ok(a)
    }

    /// Coordinates of a traceless `M x M` matrix in the catalog basis.
    ///
    /// The diagonal part `diag(d)` equals `sum_k c_k H(k)` with
    /// `c_k = d_1 + ... + d_k`. Zero coefficients are omitted.
    pub fn decompose(&self, x: &CMatrix) -> Result<Vec<(Generator, C64)>> {
        let m = self.m;
        if x.nrows() != m || x.ncols() != m {
            return Err(Error::DimensionMismatch { expected: m, got: x.nrows() });
        }
        let tr = x.trace();
        let scale = x.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if tr.norm() > 1e-12 * scale {
            return Err(Error::NotTraceless(tr.norm()));
        }
        let mut out = Vec::new();
        for k in 0..m {
            for l in 0..m {
                if k != l && x[(k, l)] != C64::new(0.0, 0.0) {
                    out.push((Generator::E(k + 1, l + 1), x[(k, l)]));
                }
            }
        }
        let mut running = C64::new(0.0, 0.0);
        for k in 0..m - 1 {
            running += x[(k, k)];
            if running != C64::new(0.0, 0.0) {
                out.push((Generator::H(k + 1), running));
            }
        }
        Ok(out)
    }
}

/// `ab - ba`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), got: b.nrows() });
    }
    Ok(a * b - b * a)
}

/// Commutator of two catalog generators as a matrix.
pub fn generator_commutator(spec: &AlgebraSpec, a: Generator, b: Generator) -> Result<CMatrix> {
    commutator(&spec.matrix(a)?, &spec.matrix(b)?)
}

/// A dominant integral weight.
///
/// Stored in fundamental-weight coordinates `lambda_k` together with the
/// partition coordinates `m_j = lambda_j + ... + lambda_{M-1}`, `m_M = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    fundamental: Vec<u64>,
    partition: Vec<u64>,
}

impl Weight {
    pub fn new(fundamental: Vec<u64>) -> Result<Self> {
        if fundamental.is_empty() {
            return Err(Error::InvalidWeight("a weight needs at least one coordinate".into()));
        }
        let mut partition = vec![0u64; fundamental.len() + 1];
        for j in (0..fundamental.len()).rev() {
            partition[j] = partition[j + 1]
                .checked_add(fundamental[j])
                .ok_or_else(|| Error::InvalidWeight("partition overflow".into()))?;
        }
        Ok(Self { fundamental, partition })
    }

    /// The weight with the given fundamental coordinates, checked against `spec`.
    pub fn for_spec(spec: &AlgebraSpec, fundamental: Vec<u64>) -> Result<Self> {
        if fundamental.len() != spec.rank() {
            return Err(Error::InvalidWeight(format!(
                "sl_{} needs {} fundamental coordinates, got {}",
                spec.m(),
                spec.rank(),
                fundamental.len()
            )));
        }
        Self::new(fundamental)
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank]).expect("nonempty")
    }

    /// The Weyl vector: all fundamental coordinates equal to one.
    pub fn rho(rank: usize) -> Self {
        Self::new(vec![1; rank]).expect("nonempty")
    }

    /// The `k`-th fundamental weight (1-based).
    pub fn fundamental_weight(rank: usize, k: usize) -> Self {
        let mut v = vec![0; rank];
        v[k - 1] = 1;
        Self::new(v).expect("nonempty")
    }

    pub fn fundamental(&self) -> &[u64] {
        &self.fundamental
    }

    pub fn partition(&self) -> &[u64] {
        &self.partition
    }

    pub fn rank(&self) -> usize {
        self.fundamental.len()
    }

    pub fn is_zero(&self) -> bool {
        self.fundamental.iter().all(|&l| l == 0)
    }

    /// Interior of the Weyl chamber: every fundamental coordinate positive.
    pub fn is_regular(&self) -> bool {
        self.fundamental.iter().all(|&l| l > 0)
    }

    pub fn total(&self) -> u64 {
        self.fundamental.iter().sum()
    }

    pub fn scale(&self, n: u64) -> Self {
        Self::new(self.fundamental.iter().map(|&l| l * n).collect()).expect("nonempty")
    }

    pub fn add(&self, other: &Weight) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::SpecMismatch("weights of different rank".into()));
        }
        Self::new(self.fundamental.iter().zip(&other.fundamental).map(|(a, b)| a + b).collect())
    }

    /// Block label of each row `0..M` under the composition of `M` cut at
    /// every `k` with `lambda_k > 0`. Rows `k` and `k+1` share a block iff
    /// `lambda_k = 0`.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = Vec::with_capacity(self.rank() + 1);
        let mut block = 0;
        labels.push(0);
        for &l in &self.fundamental {
            if l > 0 {
                block += 1;
            }
            labels.push(block);
        }
        labels
    }

    /// Enumerate all weights of the given rank with `sum lambda_k <= max_total`.
    pub fn all_up_to(rank: usize, max_total: u64) -> Vec<Weight> {
        fn rec(rank: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Weight>) {
            if cur.len() == rank {
                out.push(Weight::new(cur.clone()).expect("nonempty"));
                return;
            }
            for v in 0..=left {
                cur.push(v);
                rec(rank, left - v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rank, max_total, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fundamental.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Dimension of the irreducible representation with highest weight `weight`,
/// `prod_{i<j} (m_i - m_j + j - i) / (j - i)`, in exact integer arithmetic.
pub fn weyl_dimension(spec: &AlgebraSpec, weight: &Weight) -> Result<u128> {
    if weight.rank() != spec.rank() {
        return Err(Error::SpecMismatch(format!("weight {weight} for sl_{}", spec.m())));
    }
    let m = weight.partition();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let a = (m[i] - m[j]) as u128 + (j - i) as u128;
            let b = (j - i) as u128;
            num = num.checked_mul(a).ok_or_else(|| Error::InvalidWeight("dimension overflow".into()))?;
            den *= b;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

/// `sum_j m_j d_jj` for a traceless diagonal `d`: the scalar by which `d`
/// acts on the highest weight vector.
pub fn weight_of_cartan_action(weight: &Weight, d: &CMatrix) -> Result<C64> {
    let n = weight.rank() + 1;
    if d.nrows() != n || d.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: d.nrows() });
    }
    let scale = d.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..n {
        for j in 0..n {
            if i != j && d[(i, j)].norm() > 0.0 {
                return Err(Error::NotDiagonal);
            }
        }
    }
    if d.trace().norm() > 1e-12 * scale {
        return Err(Error::NotTraceless(d.trace().norm()));
    }
    Ok(weight.partition().iter().enumerate().map(|(j, &mj)| d[(j, j)] * mj as f64).sum())
}

/// Coefficients `c_k = d_11 + ... + d_kk` with `sum_j m_j d_jj = sum_k lambda_k c_k`.
pub fn cartan_weight_coefficients(diag: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(diag.len().saturating_sub(1));
    let mut running = C64::new(0.0, 0.0);
    for d in &diag[..diag.len() - 1] {
        running += d;
        out.push(running);
    }
    out
}
