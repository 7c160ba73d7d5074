//! Squared norms of orbit points `u.v_max`.
//!
//! `N_k` is the squared norm of `u (e_1 ^ .. ^ e_k)`, a sum of squared
//! `k x k` minors of the first `k` columns. For the tensor-product metric the
//! norm in `V_lambda` factorizes as `prod_k N_k^{lambda_k}`; [`norm_direct`]
//! computes the same quantity inside an explicit irrep instead.

use crate::error::{Error, Result};
use crate::irrep::Irrep;
use crate::lie::{AlgebraSpec, Weight};
use crate::orbit::OrbitPoint;
use crate::wedge::{det, subsets};
use crate::CMatrix;

/// Evaluator for the fundamental norms of one algebra.
#[derive(Clone, Debug)]
pub struct NormBundle {
    spec: AlgebraSpec,
}

impl NormBundle {
    pub fn new(spec: AlgebraSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn fundamental(&self, k: usize, point: &OrbitPoint) -> Result<f64> {
        if point.spec() != &self.spec {
            return Err(Error::SpecMismatch("point and norm bundle over different algebras".into()));
        }
        fundamental_norm(k, point)
    }

    /// All `N_1, .., N_{M-1}` at `point`.
    pub fn all(&self, point: &OrbitPoint) -> Result<Vec<f64>> {
        (1..self.spec.m()).map(|k| self.fundamental(k, point)).collect()
    }
}

/// `N_k(u) = sum_S |det u[S, 1..k]|^2`.
pub fn fundamental_norm(k: usize, point: &OrbitPoint) -> Result<f64> {
    let m = point.spec().m();
    if k == 0 || k >= m {
        return Err(Error::IndexOutOfRange { m, what: format!("fundamental norm N_{k}") });
    }
    Ok(minor_sum(&point.u(), k))
}

/// Sum of squared moduli of the `k x k` minors in the first `k` columns of `g`.
pub fn minor_sum(g: &CMatrix, k: usize) -> f64 {
    subsets(g.nrows(), k).iter().map(|s| det(&CMatrix::from_fn(k, k, |a, b| g[(s[a], b)])).norm_sqr()).sum()
}

/// `prod_k N_k^{lambda_k}`.
pub fn norm_factorized(weight: &Weight, point: &OrbitPoint) -> Result<f64> {
    point.check_weight(weight)?;
    let mut acc = 1.0;
    for (k, &l) in weight.fundamental().iter().enumerate() {
        if l > 0 {
            acc *= fundamental_norm(k + 1, point)?.powi(l as i32);
        }
    }
    Ok(acc)
}

/// `|| rho(u) v_max ||^2` computed inside the irrep.
pub fn norm_direct(irrep: &Irrep, point: &OrbitPoint) -> Result<f64> {
    if irrep.spec() != point.spec() {
        return Err(Error::SpecMismatch("irrep and point over different algebras".into()));
    }
    norm_direct_at(irrep, &point.u())
}

/// `|| rho(g) v_max ||^2` for any `g` in `SL_M`.
pub fn norm_direct_at(irrep: &Irrep, g: &CMatrix) -> Result<f64> {
    Ok(irrep.group_apply_vmax(g)?.norm_squared())
}
