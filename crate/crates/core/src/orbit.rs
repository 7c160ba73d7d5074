//! Calculus on the lower-unipotent chart `x -> u(x).v_max`.
//!
//! A point of the chart is a unit lower triangular matrix `u`. The flow
//! `exp(t xi) u = u_-(t) l(t) u_+(t)` differentiates to the split
//! `u^-1 xi u = A_- + A_0 + A_+`, which yields the first-order operator
//! `r(xi)`: vector field `u A_-` on the chart plus multiplication by
//! `sum_j m_j (A_0)_jj`, linear in the weight.
//!
//! Compositions of these operators are evaluated exactly on [`Jet`]s.
//! Holomorphic coordinates carry the jet increments; their conjugates are
//! frozen at the base point.
//!
//! For singular weights the chart is the subgroup of `U_-` whose diagonal
//! blocks (under the composition of `M` cut where `lambda_k > 0`) are the
//! identity. The block-diagonal part of `A_-` lies in the stabilizer of
//! `v_max` and is dropped from the vector field.

use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::gauss::unipotent_lower;
use crate::jet::{Jet, JetSpace};
use crate::lie::{AlgebraSpec, Weight};
use crate::wedge::{det, subsets};
use crate::{CMatrix, C64};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// A point `u(x).v_max` on the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPoint {
    spec: AlgebraSpec,
    /// All strictly-lower coordinates, in [`AlgebraSpec::lower_pairs`] order.
    coords: Vec<C64>,
    /// Block label of each row; `x_ij` is active iff `blocks[i] != blocks[j]`.
    blocks: Vec<usize>,
}

impl OrbitPoint {
    /// Point on the full chart `U_-` (all coordinates active).
    pub fn regular(spec: &AlgebraSpec, coords: Vec<C64>) -> Result<Self> {
        let n = spec.lower_pairs().len();
        if coords.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: coords.len() });
        }
        Ok(Self { spec: *spec, coords, blocks: (0..spec.m()).collect() })
    }

    /// Point on the chart adapted to `weight`: inactive coordinates must be zero.
    pub fn for_weight(spec: &AlgebraSpec, weight: &Weight, coords: Vec<C64>) -> Result<Self> {
        let mut p = Self::regular(spec, coords)?;
        if weight.rank() != spec.rank() {
            return Err(Error::SpecMismatch(format!("weight {weight} for sl_{}", spec.m())));
        }
        p.blocks = weight.block_labels();
        for (idx, (i, j)) in spec.lower_pairs().into_iter().enumerate() {
            if p.blocks[i - 1] == p.blocks[j - 1] && p.coords[idx] != ZERO {
                return Err(Error::Chart(format!("x_{i}_{j} must vanish on the chart of weight {weight}")));
            }
        }
        Ok(p)
    }

    /// Point on the chart of `weight` built from the active coordinates only.
    pub fn from_active(spec: &AlgebraSpec, weight: &Weight, active: &[C64]) -> Result<Self> {
        let blocks = weight.block_labels();
        let pairs = spec.lower_pairs();
        let mut coords = vec![ZERO; pairs.len()];
        let mut it = active.iter();
        for (idx, (i, j)) in pairs.into_iter().enumerate() {
            if blocks[i - 1] != blocks[j - 1] {
                coords[idx] = *it.next().ok_or(Error::DimensionMismatch { expected: idx + 1, got: active.len() })?;
            }
        }
        if it.next().is_some() {
            return Err(Error::DimensionMismatch { expected: active.len() - 1, got: active.len() });
        }
        Self::for_weight(spec, weight, coords)
    }

    /// The base point `x = 0`, i.e. `v_max` itself.
    pub fn origin(spec: &AlgebraSpec) -> Self {
        Self::regular(spec, vec![ZERO; spec.lower_pairs().len()]).expect("sizes match")
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Coordinate `x_ij` (1-based, `i > j`).
    pub fn coordinate(&self, i: usize, j: usize) -> Option<C64> {
        self.spec.lower_pairs().iter().position(|&p| p == (i, j)).map(|k| self.coords[k])
    }

    pub fn active_mask(&self) -> Vec<bool> {
        self.spec.lower_pairs().iter().map(|&(i, j)| self.blocks[i - 1] != self.blocks[j - 1]).collect()
    }

    /// Active strictly-lower pairs, in chart order.
    pub fn active_pairs(&self) -> Vec<(usize, usize)> {
        self.spec.lower_pairs().into_iter().filter(|&(i, j)| self.blocks[i - 1] != self.blocks[j - 1]).collect()
    }

    pub fn active_coords(&self) -> Vec<C64> {
        self.coords.iter().zip(self.active_mask()).filter(|(_, a)| *a).map(|(c, _)| *c).collect()
    }

    /// The unit lower triangular matrix `u`.
    pub fn u(&self) -> CMatrix {
        unipotent_lower(self.spec.m(), &self.coords)
    }

    /// Whether computations for `weight` may use this point's chart: the
    /// point's block pattern must refine the weight's.
    pub fn check_weight(&self, weight: &Weight) -> Result<()> {
        if weight.rank() != self.spec.rank() {
            return Err(Error::SpecMismatch(format!("weight {weight} for sl_{}", self.spec.m())));
        }
        let wb = weight.block_labels();
        let m = self.spec.m();
        for i in 0..m {
            for j in 0..i {
                if wb[i] != wb[j] && self.blocks[i] == self.blocks[j] {
                    return Err(Error::Chart(format!(
                        "x_{}_{} is frozen on this chart but needed for weight {weight}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// JSON object `{"x_i_j": [re, im], ...}` over all coordinates.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for ((i, j), c) in self.spec.lower_pairs().into_iter().zip(&self.coords) {
            map.insert(format!("x_{i}_{j}"), serde_json::json!([c.re, c.im]));
        }
        Value::Object(map)
    }

    /// Parse `{"x_i_j": [re, im], ...}`; missing keys are zero.
    pub fn from_json(spec: &AlgebraSpec, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Config("a point must be a JSON object".into()))?;
        let pairs = spec.lower_pairs();
        let mut coords = vec![ZERO; pairs.len()];
        for (key, v) in obj {
            let idx = pairs
                .iter()
                .position(|&(i, j)| key == &format!("x_{i}_{j}"))
                .ok_or_else(|| Error::Chart(format!("unknown coordinate {key:?} for sl_{}", spec.m())))?;
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Config(format!("coordinate {key} must be a [re, im] pair")))?;
            let re = arr[0].as_f64().ok_or_else(|| Error::Config(format!("{key}: re is not a number")))?;
            let im = arr[1].as_f64().ok_or_else(|| Error::Config(format!("{key}: im is not a number")))?;
            coords[idx] = C64::new(re, im);
        }
        Self::regular(spec, coords)
    }

    /// Copy of this point with the block pattern of `weight` (inactive
    /// coordinates must already vanish).
    pub fn adapted_to(&self, weight: &Weight) -> Result<Self> {
        Self::for_weight(&self.spec, weight, self.coords.clone())
    }
}

/// `u^-1 xi u` split into strictly lower, diagonal and strictly upper parts.
#[derive(Clone, Debug)]
pub struct ConjugateSplit {
    pub lower: CMatrix,
    pub diagonal: CMatrix,
    pub upper: CMatrix,
}

impl ConjugateSplit {
    /// `d/dt u_-(t)` at `t = 0` for the flow `exp(t xi) u`, i.e. `u A_-`.
    pub fn lower_velocity(&self, point: &OrbitPoint) -> CMatrix {
        point.u() * &self.lower
    }
}

pub fn conjugate_split(xi: &CMatrix, point: &OrbitPoint) -> Result<ConjugateSplit> {
    let m = point.spec.m();
    if xi.nrows() != m || xi.ncols() != m {
        return Err(Error::DimensionMismatch { expected: m, got: xi.nrows() });
    }
    let u = point.u();
    let uinv = unit_lower_inverse(&u);
    let a = uinv * xi * u;
    let mut lower = CMatrix::zeros(m, m);
    let mut diagonal = CMatrix::zeros(m, m);
    let mut upper = CMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let target = match i.cmp(&j) {
                std::cmp::Ordering::Greater => &mut lower,
                std::cmp::Ordering::Equal => &mut diagonal,
                std::cmp::Ordering::Less => &mut upper,
            };
            target[(i, j)] = a[(i, j)];
        }
    }
    Ok(ConjugateSplit { lower, diagonal, upper })
}

fn unit_lower_inverse(u: &CMatrix) -> CMatrix {
    let m = u.nrows();
    let mut inv = CMatrix::identity(m, m);
    for i in 1..m {
        for j in 0..i {
            let mut s = ZERO;
            for k in j..i {
                s -= u[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = s;
        }
    }
    inv
}

/// First-order differential operator on the chart with jet coefficients:
/// `sum_v a_v d/dx_v + sum_k lambda_k c_k`.
#[derive(Clone, Debug)]
pub struct FirstOrderOp {
    pairs: Vec<(usize, usize)>,
    vector: Vec<Jet>,
    weight_coeffs: Vec<Jet>,
    weight: Weight,
}

impl FirstOrderOp {
    /// Active coordinate pairs the vector field is expressed in.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn vector_jets(&self) -> &[Jet] {
        &self.vector
    }

    pub fn weight_coefficient_jets(&self) -> &[Jet] {
        &self.weight_coeffs
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// Vector field coefficients at the base point.
    pub fn vector_at_base(&self) -> Vec<C64> {
        self.vector.iter().map(|j| j.value()).collect()
    }

    /// Coefficients `c_k` of the multiplication part `sum_k lambda_k c_k` at the base point.
    pub fn weight_coefficients_at_base(&self) -> Vec<C64> {
        self.weight_coeffs.iter().map(|j| j.value()).collect()
    }

    /// Multiplication part as a jet.
    pub fn multiplier(&self) -> Jet {
        let space = self.weight_coeffs.first().map(|j| j.space().clone());
        let mut acc: Option<Jet> = None;
        for (c, &l) in self.weight_coeffs.iter().zip(self.weight.fundamental()) {
            let term = c.scale(C64::new(l as f64, 0.0));
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        acc.unwrap_or_else(|| Jet::zero(&space.expect("rank >= 1")))
    }

    pub fn multiplier_at_base(&self) -> C64 {
        self.multiplier().value()
    }

    /// The same operator without its multiplication part.
    pub fn vector_only(&self) -> FirstOrderOp {
        let mut op = self.clone();
        op.weight_coeffs = op.weight_coeffs.iter().map(|j| j.scale(ZERO)).collect();
        op
    }
}

/// Jets of the entries of `u(x + dx)`, row-major. Inactive coordinates stay 0.
fn u_jets(point: &OrbitPoint, space: &Arc<JetSpace>) -> Vec<Jet> {
    let m = point.spec.m();
    let mut out: Vec<Jet> =
        (0..m * m).map(|idx| if idx / m == idx % m { Jet::constant(space, ONE) } else { Jet::zero(space) }).collect();
    let mask = point.active_mask();
    let mut var = 0;
    for (k, (i, j)) in point.spec.lower_pairs().into_iter().enumerate() {
        if mask[k] {
            out[(i - 1) * m + (j - 1)] = Jet::variable(space, var, point.coords[k]);
            var += 1;
        }
    }
    out
}

fn unit_lower_inverse_jets(u: &[Jet], m: usize, space: &Arc<JetSpace>) -> Vec<Jet> {
    let mut inv: Vec<Jet> =
        (0..m * m).map(|idx| if idx / m == idx % m { Jet::constant(space, ONE) } else { Jet::zero(space) }).collect();
    for i in 1..m {
        for j in 0..i {
            let mut s = Jet::zero(space);
            for k in j..i {
                let a = &u[i * m + k];
                if a.is_zero() {
                    continue;
                }
                s = &s - &(a * &inv[k * m + j]);
            }
            inv[i * m + j] = s;
        }
    }
    inv
}

fn matmul_jets(a: &[Jet], b: &[Jet], m: usize, space: &Arc<JetSpace>) -> Vec<Jet> {
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut s = Jet::zero(space);
            for k in 0..m {
                let (x, y) = (&a[i * m + k], &b[k * m + j]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                s = &s + &(x * y);
            }
            out.push(s);
        }
    }
    out
}

/// `r(xi)` at `point` for `weight`, with coefficients expanded to jets of `order`.
pub fn r_tilde(xi: &CMatrix, point: &OrbitPoint, weight: &Weight, order: usize) -> Result<FirstOrderOp> {
    let space = JetSpace::new(point.active_pairs().len(), order);
    r_tilde_in(&space, xi, point, weight)
}

/// As [`r_tilde`], with coefficients in a caller-provided jet space whose
/// variables are the point's active coordinates.
pub fn r_tilde_in(space: &Arc<JetSpace>, xi: &CMatrix, point: &OrbitPoint, weight: &Weight) -> Result<FirstOrderOp> {
    let m = point.spec.m();
    if xi.nrows() != m || xi.ncols() != m {
        return Err(Error::DimensionMismatch { expected: m, got: xi.nrows() });
    }
    point.check_weight(weight)?;
    let pairs = point.active_pairs();
    if space.nvars() != pairs.len() {
        return Err(Error::DimensionMismatch { expected: pairs.len(), got: space.nvars() });
    }
    let u = u_jets(point, space);
    let uinv = unit_lower_inverse_jets(&u, m, space);
    let xi_u: Vec<Jet> = (0..m * m)
        .map(|idx| {
            let (i, j) = (idx / m, idx % m);
            let mut s = Jet::zero(space);
            for k in 0..m {
                if xi[(i, k)] != ZERO && !u[k * m + j].is_zero() {
                    s = &s + &u[k * m + j].scale(xi[(i, k)]);
                }
            }
            s
        })
        .collect();
    let a = matmul_jets(&uinv, &xi_u, m, space);

    // strictly block-lower part of A_- only
    let blocks = &point.blocks;
    let a_off: Vec<Jet> = (0..m * m)
        .map(|idx| {
            let (i, j) = (idx / m, idx % m);
            if i > j && blocks[i] != blocks[j] {
                a[idx].clone()
            } else {
                Jet::zero(space)
            }
        })
        .collect();
    let velocity = matmul_jets(&u, &a_off, m, space);
    let vector = pairs.iter().map(|&(i, j)| velocity[(i - 1) * m + (j - 1)].clone()).collect();

    let mut weight_coeffs = Vec::with_capacity(m - 1);
    let mut running = Jet::zero(space);
    for k in 0..m - 1 {
        running = &running + &a[k * m + k];
        weight_coeffs.push(running.clone());
    }
    Ok(FirstOrderOp { pairs, vector, weight_coeffs, weight: weight.clone() })
}

/// `op(f) = sum_v a_v df/dx_v + (multiplier) f`, one order lower than `f`.
pub fn apply_op(op: &FirstOrderOp, f: &Jet) -> Result<Jet> {
    if f.order() == 0 {
        return Err(Error::OrderExhausted);
    }
    let target = f.order() - 1;
    let mut out = (&op.multiplier() * f).truncate(target);
    for (v, a) in op.vector.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let df = f.derivative(v).ok_or(Error::OrderExhausted)?;
        out = &out + &(a * &df);
    }
    Ok(out.truncate(target))
}

fn jet_det(mat: &[Vec<Jet>], space: &Arc<JetSpace>) -> Jet {
    let n = mat.len();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Jet::zero(space);
    for r in 0..n {
        if mat[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Jet>> = (0..n).filter(|&i| i != r).map(|i| mat[i][1..].to_vec()).collect();
        let term = &mat[r][0] * &jet_det(&minor, space);
        acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Jet of the fundamental norm `N_k` at `point`: `sum_S det(u[S,1..k]) conj(det(u_0[S,1..k]))`
/// with `u_0` the base point.
pub fn jet_of_fundamental_norm(space: &Arc<JetSpace>, k: usize, point: &OrbitPoint) -> Result<Jet> {
    let m = point.spec.m();
    if k == 0 || k >= m {
        return Err(Error::IndexOutOfRange { m, what: format!("fundamental norm N_{k}") });
    }
    let u = u_jets(point, space);
    let u0 = point.u();
    let mut acc = Jet::zero(space);
    for s in subsets(m, k) {
        let base = det(&CMatrix::from_fn(k, k, |a, b| u0[(s[a], b)]));
        if base == ZERO {
            continue;
        }
        let sub: Vec<Vec<Jet>> = s.iter().map(|&r| (0..k).map(|c| u[r * m + c].clone()).collect()).collect();
        acc = &acc + &jet_det(&sub, space).scale(base.conj());
    }
    Ok(acc)
}

/// Jet of `N_lambda = prod_k N_k^{lambda_k}` at `point`, exact through `order`.
pub fn jet_of_norm(weight: &Weight, point: &OrbitPoint, order: usize) -> Result<Jet> {
    let space = JetSpace::new(point.active_pairs().len(), order);
    jet_of_norm_in(&space, weight, point, false)
}

/// Norm jet in a given space; with `normalized` every factor `N_k` is divided
/// by its base value so the result has constant term 1.
pub fn jet_of_norm_in(space: &Arc<JetSpace>, weight: &Weight, point: &OrbitPoint, normalized: bool) -> Result<Jet> {
    point.check_weight(weight)?;
    let mut acc = Jet::constant(space, ONE);
    for (k, &l) in weight.fundamental().iter().enumerate() {
        if l == 0 {
            continue;
        }
        let mut nk = jet_of_fundamental_norm(space, k + 1, point)?;
        if normalized {
            nk = nk.scale(ONE / nk.value());
        }
        acc = &acc * &nk.powi(l);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Generator;

    fn p0() -> OrbitPoint {
        let s = AlgebraSpec::new(3).unwrap();
        OrbitPoint::regular(&s, vec![C64::new(0.5, 0.0), C64::new(-0.25, 0.0), C64::new(1.0, 0.0)]).unwrap()
    }

    fn close(a: C64, b: f64) -> bool {
        (a - C64::new(b, 0.0)).norm() < 1e-14
    }

    #[test]
    fn split_at_p0() {
        let s = AlgebraSpec::new(3).unwrap();
        let e12 = s.matrix(Generator::E(1, 2)).unwrap();
        let split = conjugate_split(&e12, &p0()).unwrap();
        assert!(close(split.diagonal[(0, 0)], 0.5));
        assert!(close(split.diagonal[(1, 1)], -0.5));
        assert!(close(split.diagonal[(2, 2)], 0.0));
        let v = split.lower_velocity(&p0());
        assert!(close(v[(1, 0)], -0.25));
        assert!(close(v[(2, 0)], 0.125));
        assert!(close(v[(2, 1)], 0.75));
        let total = &split.lower + &split.diagonal + &split.upper;
        let u = p0().u();
        assert!((&u * total - e12 * u).norm() < 1e-14);
    }

    #[test]
    fn cartan_split_keeps_diagonal() {
        let s = AlgebraSpec::new(3).unwrap();
        let h1 = s.matrix(Generator::H(1)).unwrap();
        let split = conjugate_split(&h1, &p0()).unwrap();
        assert!((&split.diagonal - &h1).norm() < 1e-15);
        assert!(split.upper.norm() < 1e-15);
    }

    #[test]
    fn r_tilde_matches_split() {
        let s = AlgebraSpec::new(3).unwrap();
        let w = Weight::new(vec![2, 3]).unwrap();
        let e12 = s.matrix(Generator::E(1, 2)).unwrap();
        let op = r_tilde(&e12, &p0(), &w, 1).unwrap();
        let v = op.vector_at_base();
        assert!(close(v[0], -0.25) && close(v[1], 0.125) && close(v[2], 0.75));
        let c = op.weight_coefficients_at_base();
        assert!(close(c[0], 0.5) && close(c[1], 0.0));
        assert!(close(op.multiplier_at_base(), 1.0));
    }

    #[test]
    fn apply_op_examples() {
        let s = AlgebraSpec::new(3).unwrap();
        let w = Weight::new(vec![1, 0]).unwrap();
        let point = p0();
        let space = JetSpace::new(3, 2);
        let e12 = s.matrix(Generator::E(1, 2)).unwrap();
        let op = r_tilde_in(&space, &e12, &point, &w).unwrap();
        let f = Jet::variable(&space, 0, C64::new(0.5, 0.0));
        let g = apply_op(&op, &f).unwrap();
        // -x21^2 + x21 lambda_1 x21 = -1/4 + 1/4
        assert!(close(g.value(), 0.0));
        assert_eq!(g.order(), 1);
        let zero_order = Jet::constant(&space, ONE).truncate(0);
        assert!(matches!(apply_op(&op, &zero_order), Err(Error::OrderExhausted)));
    }

    #[test]
    fn norm_jets() {
        let w = Weight::new(vec![1, 0]).unwrap();
        let n = jet_of_norm(&w, &p0(), 1).unwrap();
        assert!(close(n.value(), 21.0 / 16.0));
        assert!(close(n.coefficient(&[1, 0, 0]), 0.5));
        let w2 = Weight::new(vec![2, 1]).unwrap();
        let n2 = jet_of_norm(&w2, &p0(), 0).unwrap();
        assert!(close(n2.value(), (21.0f64 / 16.0).powi(2) * 41.0 / 16.0));
        let s = AlgebraSpec::new(4).unwrap();
        let origin = OrbitPoint::origin(&s);
        assert!(close(jet_of_norm(&Weight::new(vec![1, 2, 3]).unwrap(), &origin, 2).unwrap().value(), 1.0));
    }

    #[test]
    fn singular_chart_rules() {
        let s = AlgebraSpec::new(3).unwrap();
        let w = Weight::new(vec![1, 0]).unwrap();
        // x32 is frozen for lambda = (1, 0)
        assert!(OrbitPoint::for_weight(&s, &w, vec![ONE, ONE, ONE]).is_err());
        let p = OrbitPoint::from_active(&s, &w, &[ONE, C64::new(0.0, 1.0)]).unwrap();
        assert_eq!(p.active_pairs(), vec![(2, 1), (3, 1)]);
        assert!(p.check_weight(&Weight::new(vec![1, 1]).unwrap()).is_err());
        assert!(p.check_weight(&w).is_ok());
        assert!(p0().check_weight(&w).is_ok());
    }

    #[test]
    fn point_json_roundtrip() {
        let s = AlgebraSpec::new(3).unwrap();
        let j = p0().to_json();
        assert_eq!(j["x_3_2"], serde_json::json!([1.0, 0.0]));
        assert_eq!(OrbitPoint::from_json(&s, &j).unwrap(), p0());
        assert!(OrbitPoint::from_json(&s, &serde_json::json!({"x_1_2": [0.0, 0.0]})).is_err());
    }
}
