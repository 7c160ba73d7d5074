//! Explicit unitary irreducible representations of `su(M)`.
//!
//! `V_lambda` is realised as the cyclic subspace generated by the lowering
//! operators from `v_max = (x)_k (e_1 ^ .. ^ e_k)^{(x) lambda_k}` inside the
//! tensor product of exterior powers. The tensor metric makes `v_max` a unit
//! vector, so squared norms of decomposable orbit points factorize with
//! constant one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{weyl_dimension, AlgebraSpec, Generator, Weight};
use crate::operator::AbstractOperator;
use crate::wedge::TensorLayout;
use crate::{CMatrix, CVector, C64};

/// Rank tolerance used while saturating the cyclic span.
pub const SPAN_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug)]
pub struct IrrepOptions {
    /// Maximal dimension of the representation.
    pub dim_cap: usize,
    /// Maximal dimension of the ambient tensor space.
    pub ambient_cap: usize,
}

impl Default for IrrepOptions {
    fn default() -> Self {
        Self { dim_cap: 5000, ambient_cap: 1 << 21 }
    }
}

/// A constructed irreducible representation.
#[derive(Clone, Debug)]
pub struct Irrep {
    spec: AlgebraSpec,
    weight: Weight,
    layout: TensorLayout,
    /// Orthonormal basis as columns in the ambient tensor space. Column 0 is `v_max`.
    basis: CMatrix,
    generators: BTreeMap<Generator, CMatrix>,
}

pub fn build_irrep(spec: &AlgebraSpec, weight: &Weight) -> Result<Irrep> {
    build_irrep_with(spec, weight, IrrepOptions::default())
}

pub fn build_irrep_with(spec: &AlgebraSpec, weight: &Weight, opts: IrrepOptions) -> Result<Irrep> {
    let expected = weyl_dimension(spec, weight)?;
    if expected > opts.dim_cap as u128 {
        return Err(Error::DimensionCap { dim: expected, cap: opts.dim_cap });
    }
    let layout = TensorLayout::new(spec.m(), weight.fundamental());
    let ambient = match layout.checked_dimension() {
        Some(d) if d <= opts.ambient_cap => d,
        Some(d) => return Err(Error::DimensionCap { dim: d as u128, cap: opts.ambient_cap }),
        None => return Err(Error::DimensionCap { dim: u128::MAX, cap: opts.ambient_cap }),
    };

    let lowering: Vec<Vec<CMatrix>> =
        (1..spec.m()).map(|k| layout.derivations_of(&spec.matrix(Generator::E(k + 1, k)).expect("valid"))).collect();

    let mut vmax = vec![C64::new(0.0, 0.0); ambient];
    vmax[0] = C64::new(1.0, 0.0);
    let mut basis: Vec<Vec<C64>> = vec![vmax];
    let mut next = 0;
    while next < basis.len() {
        let src = basis[next].clone();
        next += 1;
        for low in &lowering {
            let mut w = layout.apply_derivation(&src, low);
            let before = norm(&w);
            if before == 0.0 {
                continue;
            }
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let p = inner(b, &w);
                    if p.norm() != 0.0 {
                        for (wi, bi) in w.iter_mut().zip(b) {
                            *wi -= p * bi;
                        }
                    }
                }
            }
            let after = norm(&w);
            if after > SPAN_TOLERANCE * before {
                let inv = 1.0 / after;
                w.iter_mut().for_each(|z| *z *= inv);
                basis.push(w);
                if basis.len() > opts.dim_cap {
                    return Err(Error::DimensionCap { dim: basis.len() as u128, cap: opts.dim_cap });
                }
            }
        }
    }

    let dim = basis.len();
    let basis = CMatrix::from_fn(ambient, dim, |i, j| basis[j][i]);
    let mut irrep = Irrep { spec: *spec, weight: weight.clone(), layout, basis, generators: BTreeMap::new() };
    for g in spec.catalog() {
        let x = spec.matrix(g)?;
        let rho = irrep.restrict_derivation(&x);
        irrep.generators.insert(g, rho);
    }
    Ok(irrep)
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Irrep {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dimension(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.basis.nrows()
    }

    /// Orthonormal basis columns in the ambient tensor space.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Coordinates of the highest weight vector (the first basis vector).
    pub fn v_max(&self) -> CVector {
        let mut v = CVector::zeros(self.dimension());
        v[0] = C64::new(1.0, 0.0);
        v
    }

    /// Matrix of a catalog generator.
    pub fn generator(&self, g: Generator) -> Result<&CMatrix> {
        self.spec.validate(g)?;
        Ok(&self.generators[&g])
    }

    pub fn generators(&self) -> &BTreeMap<Generator, CMatrix> {
        &self.generators
    }

    fn restrict_derivation(&self, x: &CMatrix) -> CMatrix {
        let per_k = self.layout.derivations_of(x);
        let dim = self.dimension();
        let ambient = self.ambient_dimension();
        let mut image = CMatrix::zeros(ambient, dim);
        for j in 0..dim {
            let col: Vec<C64> = self.basis.column(j).iter().copied().collect();
            let w = self.layout.apply_derivation(&col, &per_k);
            image.column_mut(j).copy_from_slice(&w);
        }
        self.basis.adjoint() * image
    }

    /// Image of an arbitrary `M x M` matrix under the derivation action,
    /// restricted to the irrep. Valid for all of `gl_M`.
    pub fn rep_of_gl(&self, x: &CMatrix) -> Result<CMatrix> {
        let m = self.spec.m();
        if x.nrows() != m || x.ncols() != m {
            return Err(Error::DimensionMismatch { expected: m, got: x.nrows() });
        }
        Ok(self.restrict_derivation(x))
    }

    /// Image of a traceless matrix, assembled from the cached generator matrices.
    pub fn rep_of_matrix(&self, x: &CMatrix) -> Result<CMatrix> {
        let dim = self.dimension();
        let mut out = CMatrix::zeros(dim, dim);
        for (g, c) in self.spec.decompose(x)? {
            out += &self.generators[&g] * c;
        }
        Ok(out)
    }

    /// Weights of the basis vectors in partition form: the eigenvalues of
    /// `E(j,j)`, `j = 1..M`.
    pub fn basis_weights(&self) -> Vec<Vec<i64>> {
        let m = self.spec.m();
        let diag: Vec<CMatrix> = (0..m)
            .map(|j| {
                let mut e = CMatrix::zeros(m, m);
                e[(j, j)] = C64::new(1.0, 0.0);
                self.restrict_derivation(&e)
            })
            .collect();
        (0..self.dimension()).map(|b| diag.iter().map(|d| d[(b, b)].re.round() as i64).collect()).collect()
    }

    /// Ambient action of a group element on a single ambient vector.
    fn ambient_group(&self, g: &CMatrix, v: &[C64]) -> Vec<C64> {
        self.layout.apply_group(v, &self.layout.compounds_of(g))
    }

    /// `g . v_max` in irrep coordinates, for `g` in `SL_M`.
    pub fn group_apply_vmax(&self, g: &CMatrix) -> Result<CVector> {
        check_unimodular(&self.spec, g)?;
        let col: Vec<C64> = self.basis.column(0).iter().copied().collect();
        let w = CVector::from_vec(self.ambient_group(g, &col));
        Ok(self.basis.adjoint() * w)
    }
}

fn check_unimodular(spec: &AlgebraSpec, g: &CMatrix) -> Result<()> {
    let m = spec.m();
    if g.nrows() != m || g.ncols() != m {
        return Err(Error::DimensionMismatch { expected: m, got: g.nrows() });
    }
    let d = crate::wedge::det(g);
    if (d - C64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::NotUnimodular(format!("{d}")));
    }
    Ok(())
}

/// Image of an abstract operator: each monomial maps to the ordered product
/// of generator matrices, the scalar part to a multiple of the identity.
pub fn rep_apply(irrep: &Irrep, op: &AbstractOperator) -> Result<CMatrix> {
    if op.spec() != irrep.spec() {
        return Err(Error::SpecMismatch(format!(
            "operator over sl_{} applied in an irrep of sl_{}",
            op.spec().m(),
            irrep.spec().m()
        )));
    }
    let dim = irrep.dimension();
    let mut out = CMatrix::identity(dim, dim) * op.scalar();
    for (mono, c) in op.terms() {
        let mut prod = CMatrix::identity(dim, dim);
        for g in mono.factors() {
            prod *= irrep.generator(*g)?;
        }
        out += prod * *c;
    }
    Ok(out)
}

/// Holomorphic action of `g` in `SL_M` restricted to the irrep.
pub fn group_apply(irrep: &Irrep, g: &CMatrix) -> Result<CMatrix> {
    check_unimodular(irrep.spec(), g)?;
    let compounds = irrep.layout.compounds_of(g);
    let dim = irrep.dimension();
    let mut image = CMatrix::zeros(irrep.ambient_dimension(), dim);
    for j in 0..dim {
        let col: Vec<C64> = irrep.basis.column(j).iter().copied().collect();
        image.column_mut(j).copy_from_slice(&irrep.layout.apply_group(&col, &compounds));
    }
    Ok(irrep.basis.adjoint() * image)
}

/// JSON dump of an irrep: `{M, lambda, dim, matrices: {name: [[re,im], ...]}}`
/// with each matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepDump {
    #[serde(rename = "M")]
    pub m: usize,
    pub lambda: Vec<u64>,
    pub dim: usize,
    pub matrices: BTreeMap<String, Vec<[f64; 2]>>,
}

impl IrrepDump {
    pub fn from_irrep(irrep: &Irrep) -> Self {
        let matrices = irrep
            .generators
            .iter()
            .map(|(g, mat)| {
                let n = mat.nrows();
                let flat = (0..n * n).map(|i| {
                    let z = mat[(i / n, i % n)];
                    [z.re, z.im]
                });
                (g.to_string(), flat.collect())
            })
            .collect();
        Self { m: irrep.spec.m(), lambda: irrep.weight.fundamental().to_vec(), dim: irrep.dimension(), matrices }
    }

    /// Matrix stored under `name`, e.g. `"E(1,2)"`.
    pub fn matrix(&self, name: &str) -> Option<CMatrix> {
        let flat = self.matrices.get(name)?;
        if flat.len() != self.dim * self.dim {
            return None;
        }
        Some(CMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = flat[i * self.dim + j];
            C64::new(re, im)
        }))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
