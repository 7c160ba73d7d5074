//! Gauss (LDU) decomposition `g = u_- d u_+` on the big cell.

use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// Relative threshold below which a leading principal minor counts as zero.
pub const MINOR_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct GaussFactors {
    /// Unit lower triangular.
    pub lower: CMatrix,
    /// Diagonal entries of `d`, `d_kk = Delta_k / Delta_{k-1}`.
    pub diagonal: Vec<C64>,
    /// Unit upper triangular.
    pub upper: CMatrix,
}

impl GaussFactors {
    pub fn d(&self) -> CMatrix {
        CMatrix::from_diagonal(&crate::CVector::from_vec(self.diagonal.clone()))
    }

    pub fn reconstruct(&self) -> CMatrix {
        &self.lower * self.d() * &self.upper
    }
}

/// Doolittle elimination without pivoting. Fails with
/// [`Error::DecompositionOnClosedSet`] when a leading principal minor vanishes,
/// i.e. when `g` lies off the big cell `U_- T U_+`.
pub fn gauss_decompose(g: &CMatrix) -> Result<GaussFactors> {
    let n = g.nrows();
    if g.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.ncols() });
    }
    let scale = g.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut lower = CMatrix::identity(n, n);
    let mut upper = CMatrix::zeros(n, n);
    for k in 0..n {
        for j in k..n {
            let mut s = g[(k, j)];
            for p in 0..k {
                s -= lower[(k, p)] * upper[(p, j)];
            }
            upper[(k, j)] = s;
        }
        let pivot = upper[(k, k)];
        if pivot.norm() <= MINOR_THRESHOLD * scale {
            return Err(Error::DecompositionOnClosedSet { index: k + 1 });
        }
        for i in k + 1..n {
            let mut s = g[(i, k)];
            for p in 0..k {
                s -= lower[(i, p)] * upper[(p, k)];
            }
            lower[(i, k)] = s / pivot;
        }
    }
    let diagonal: Vec<C64> = (0..n).map(|k| upper[(k, k)]).collect();
    for k in 0..n {
        let inv = C64::new(1.0, 0.0) / diagonal[k];
        for j in k + 1..n {
            upper[(k, j)] *= inv;
        }
        upper[(k, k)] = C64::new(1.0, 0.0);
    }
    Ok(GaussFactors { lower, diagonal, upper })
}

/// Matrix exponential.
pub fn expm(a: &CMatrix) -> CMatrix {
    a.clone().exp()
}

/// Unit lower triangular matrix with the given strictly-lower entries,
/// listed in chart order `(2,1), (3,1), (3,2), ...`.
pub fn unipotent_lower(m: usize, coords: &[C64]) -> CMatrix {
    let mut u = CMatrix::identity(m, m);
    let mut it = coords.iter();
    for i in 1..m {
        for j in 0..i {
            u[(i, j)] = *it.next().expect("enough coordinates");
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn identity_decomposes_trivially() {
        let f = gauss_decompose(&CMatrix::identity(3, 3)).unwrap();
        assert_eq!(f.lower, CMatrix::identity(3, 3));
        assert_eq!(f.upper, CMatrix::identity(3, 3));
        assert_eq!(f.diagonal, vec![c(1.0); 3]);
    }

    #[test]
    fn flow_of_e12_through_chart_point() {
        let (x21, x31, x32) = (C64::new(0.5, 0.2), C64::new(-0.25, 0.1), C64::new(1.0, -0.3));
        let t = c(0.01);
        let u = unipotent_lower(3, &[x21, x31, x32]);
        let mut e = CMatrix::identity(3, 3);
        e[(0, 1)] = -t;
        let f = gauss_decompose(&(&e * &u)).unwrap();
        let one = c(1.0);
        let expect_d = [one - t * x21, one / (one - t * x21), one];
        for (d, e) in f.diagonal.iter().zip(expect_d) {
            assert!((d - e).norm() < 1e-15);
        }
        assert!((f.lower[(1, 0)] - x21 / (one - t * x21)).norm() < 1e-15);
        assert!((f.lower[(2, 0)] - x31 / (one - t * x21)).norm() < 1e-15);
        // u_-(t)_{32} = x32 + t (x31 - x21 x32)
        assert!((f.lower[(2, 1)] - (x32 + t * (x31 - x21 * x32))).norm() < 1e-15);
        assert!((f.upper[(0, 1)] - (-t / (one - t * x21))).norm() < 1e-15);
    }

    #[test]
    fn vanishing_minor_is_reported() {
        let g = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
        assert!(matches!(gauss_decompose(&g), Err(Error::DecompositionOnClosedSet { index: 1 })));
        let g =
            CMatrix::from_row_slice(3, 3, &[c(1.0), c(2.0), c(0.0), c(1.0), c(2.0), c(1.0), c(0.0), c(1.0), c(1.0)]);
        assert!(matches!(gauss_decompose(&g), Err(Error::DecompositionOnClosedSet { index: 2 })));
    }

    #[test]
    fn diagonal_is_ratio_of_minors() {
        let g = CMatrix::from_row_slice(
            3,
            3,
            &[c(2.0), C64::new(1.0, 1.0), c(0.5), c(-1.0), c(3.0), C64::new(0.0, 2.0), c(0.3), c(0.7), c(1.5)],
        );
        let f = gauss_decompose(&g).unwrap();
        let minor = |k: usize| g.view((0, 0), (k, k)).into_owned().determinant();
        assert!((f.diagonal[0] - minor(1)).norm() < 1e-13);
        assert!((f.diagonal[1] - minor(2) / minor(1)).norm() < 1e-13);
        assert!((f.diagonal[2] - minor(3) / minor(2)).norm() < 1e-13);
        assert!((f.reconstruct() - g).norm() < 1e-13);
    }
}
