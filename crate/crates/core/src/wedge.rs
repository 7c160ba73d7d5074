//! Exterior powers of the defining representation and tensor products of them.

use crate::{CMatrix, C64};

/// All `k`-subsets of `0..m`, lexicographic. The first one is `{0,..,k-1}`.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

fn subset_index(sets: &[Vec<usize>], s: &[usize]) -> usize {
    sets.binary_search_by(|probe| probe.as_slice().cmp(s)).expect("subset present")
}

/// Determinant of a small square matrix by Gaussian elimination with partial pivoting.
pub fn det(a: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut a = a.clone();
    let mut d = C64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[(i, c)].norm().total_cmp(&a[(j, c)].norm())).unwrap();
        if a[(p, c)].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if p != c {
            a.swap_rows(p, c);
            d = -d;
        }
        let piv = a[(c, c)];
        d *= piv;
        for r in c + 1..n {
            let f = a[(r, c)] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in c..n {
                let v = a[(c, j)];
                a[(r, j)] -= f * v;
            }
        }
    }
    d
}

/// `k`-th compound matrix: entry `(S, T)` is the minor `det g[S, T]`.
/// This is the action of `g` on `Lambda^k C^M` in the basis `e_S`.
pub fn compound(g: &CMatrix, k: usize) -> CMatrix {
    let m = g.nrows();
    let sets = subsets(m, k);
    let n = sets.len();
    CMatrix::from_fn(n, n, |i, j| {
        let sub = CMatrix::from_fn(k, k, |a, b| g[(sets[i][a], sets[j][b])]);
        det(&sub)
    })
}

/// Derivation action of `x` on `Lambda^k C^M`:
/// `x.(v_1 ^ .. ^ v_k) = sum_i v_1 ^ .. ^ x v_i ^ .. ^ v_k`.
pub fn derivation(x: &CMatrix, k: usize) -> CMatrix {
    let m = x.nrows();
    let sets = subsets(m, k);
    let n = sets.len();
    let mut out = CMatrix::zeros(n, n);
    for (col, t) in sets.iter().enumerate() {
        for pos in 0..k {
            for r in 0..m {
                let coef = x[(r, t[pos])];
                if coef.norm() == 0.0 {
                    continue;
                }
                if t.iter().enumerate().any(|(q, &v)| q != pos && v == r) {
                    continue;
                }
                let mut s = t.clone();
                s[pos] = r;
                // sign of the sorting permutation
                let mut sign = 1.0;
                for a in 0..k {
                    for b in a + 1..k {
                        if s[a] > s[b] {
                            sign = -sign;
                        }
                    }
                }
                s.sort_unstable();
                let row = subset_index(&sets, &s);
                out[(row, col)] += coef * sign;
            }
        }
    }
    out
}

/// Layout of the tensor product `(x)_slots Lambda^{k_s} C^M`: one slot per
/// fundamental factor, `lambda_1` slots of `k = 1`, then `lambda_2` of `k = 2`, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    m: usize,
    slot_k: Vec<usize>,
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(m: usize, fundamental: &[u64]) -> Self {
        let mut slot_k = Vec::new();
        for (i, &l) in fundamental.iter().enumerate() {
            for _ in 0..l {
                slot_k.push(i + 1);
            }
        }
        let dims = slot_k.iter().map(|&k| binomial(m, k)).collect();
        Self { m, slot_k, dims }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn slot_k(&self) -> &[usize] {
        &self.slot_k
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension, or `None` on overflow.
    pub fn checked_dimension(&self) -> Option<usize> {
        self.dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))
    }

    pub fn dimension(&self) -> usize {
        self.checked_dimension().expect("ambient dimension overflow")
    }

    /// Distinct `k` values in use.
    pub fn distinct_k(&self) -> Vec<usize> {
        let mut ks = self.slot_k.clone();
        ks.dedup();
        ks
    }

    /// Apply `a` to slot `s` of the tensor `v`.
    pub fn apply_on_slot(&self, v: &[C64], s: usize, a: &CMatrix) -> Vec<C64> {
        let d = self.dims[s];
        let right: usize = self.dims[s + 1..].iter().product();
        let left: usize = self.dims[..s].iter().product();
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for b in 0..d {
            for a_idx in 0..d {
                let coef = a[(a_idx, b)];
                if coef.norm() == 0.0 {
                    continue;
                }
                for l in 0..left {
                    let src = (l * d + b) * right;
                    let dst = (l * d + a_idx) * right;
                    for r in 0..right {
                        out[dst + r] += coef * v[src + r];
                    }
                }
            }
        }
        out
    }

    /// Lie algebra action: sum over slots of the derivation on that slot.
    /// `per_k[k-1]` must hold the derivation matrix on `Lambda^k`.
    pub fn apply_derivation(&self, v: &[C64], per_k: &[CMatrix]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (s, &k) in self.slot_k.iter().enumerate() {
            let part = self.apply_on_slot(v, s, &per_k[k - 1]);
            for (o, p) in out.iter_mut().zip(part) {
                *o += p;
            }
        }
        out
    }

    /// Group action: the compound matrix on every slot.
    pub fn apply_group(&self, v: &[C64], per_k: &[CMatrix]) -> Vec<C64> {
        let mut cur = v.to_vec();
        for (s, &k) in self.slot_k.iter().enumerate() {
            cur = self.apply_on_slot(&cur, s, &per_k[k - 1]);
        }
        cur
    }

    /// Derivation matrices of `x` on every `Lambda^k`, `k = 1..M-1`, indexed by `k - 1`.
    /// Only the `k` in use are filled; the rest are empty.
    pub fn derivations_of(&self, x: &CMatrix) -> Vec<CMatrix> {
        let ks = self.distinct_k();
        (1..self.m).map(|k| if ks.contains(&k) { derivation(x, k) } else { CMatrix::zeros(0, 0) }).collect()
    }

    pub fn compounds_of(&self, g: &CMatrix) -> Vec<CMatrix> {
        let ks = self.distinct_k();
        (1..self.m).map(|k| if ks.contains(&k) { compound(g, k) } else { CMatrix::zeros(0, 0) }).collect()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
