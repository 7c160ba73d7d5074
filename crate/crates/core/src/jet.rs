//! Truncated multivariate Taylor polynomials ("jets") with complex coefficients.
//!
//! A [`JetSpace`] fixes the number of variables and the maximal order; it owns
//! the monomial enumeration plus product and derivative tables. A [`Jet`] is a
//! coefficient vector over that enumeration together with its own truncation
//! order, which may be lower than the space's maximum.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    order: usize,
    exponents: Vec<Vec<u8>>,
    degree: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    /// For each monomial `i`: pairs `(j, k)` with `x^i x^j = x^k` inside the space.
    products: Vec<Vec<(usize, usize)>>,
    /// `derivs[v][i] = Some((k, e))` with `d/dx_v x^i = e x^k`.
    derivs: Vec<Vec<Option<(usize, f64)>>>,
}

impl JetSpace {
    pub fn new(nvars: usize, order: usize) -> Arc<Self> {
        let mut exponents = Vec::new();
        for d in 0..=order {
            fn rec(v: usize, n: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
                if v + 1 == n {
                    cur.push(left as u8);
                    out.push(cur.clone());
                    cur.pop();
                    return;
                }
                for e in (0..=left).rev() {
                    cur.push(e as u8);
                    rec(v + 1, n, left - e, cur, out);
                    cur.pop();
                }
            }
            if nvars == 0 {
                if d == 0 {
                    exponents.push(Vec::new());
                }
                continue;
            }
            rec(0, nvars, d, &mut Vec::new(), &mut exponents);
        }
        let degree: Vec<usize> = exponents.iter().map(|e| e.iter().map(|&x| x as usize).sum()).collect();
        let index: HashMap<Vec<u8>, usize> = exponents.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let products = (0..exponents.len())
            .map(|i| {
                (0..exponents.len())
                    .filter(|&j| degree[i] + degree[j] <= order)
                    .map(|j| {
                        let sum: Vec<u8> = exponents[i].iter().zip(&exponents[j]).map(|(a, b)| a + b).collect();
                        (j, index[&sum])
                    })
                    .collect()
            })
            .collect();
        let derivs = (0..nvars)
            .map(|v| {
                exponents
                    .iter()
                    .map(|e| {
                        if e[v] == 0 {
                            return None;
                        }
                        let mut lower = e.clone();
                        lower[v] -= 1;
                        Some((index[&lower], e[v] as f64))
                    })
                    .collect()
            })
            .collect();
        Arc::new(Self { nvars, order, exponents, degree, index, products, derivs })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of monomials of total degree at most `order`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u8] {
        &self.exponents[i]
    }

    pub fn monomial_index(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

#[derive(Clone, Debug)]
pub struct Jet {
    space: Arc<JetSpace>,
    order: usize,
    coeffs: Vec<C64>,
}

impl Jet {
    pub fn zero(space: &Arc<JetSpace>) -> Self {
        Self { space: space.clone(), order: space.order, coeffs: vec![ZERO; space.len()] }
    }

    pub fn constant(space: &Arc<JetSpace>, c: C64) -> Self {
        let mut j = Self::zero(space);
        j.coeffs[0] = c;
        j
    }

    /// The jet of the coordinate function `x_v` at a point where it equals `base`.
    pub fn variable(space: &Arc<JetSpace>, v: usize, base: C64) -> Self {
        let mut j = Self::constant(space, base);
        if space.order >= 1 {
            let mut e = vec![0u8; space.nvars];
            e[v] = 1;
            j.coeffs[space.index[&e]] = C64::new(1.0, 0.0);
        }
        j
    }

    pub fn from_coefficients(space: &Arc<JetSpace>, order: usize, coeffs: Vec<C64>) -> Self {
        assert_eq!(coeffs.len(), space.len());
        let mut j = Self { space: space.clone(), order: order.min(space.order), coeffs };
        j.truncate_in_place();
        j
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of the monomial with the given exponents (zero if absent).
    pub fn coefficient(&self, exps: &[u8]) -> C64 {
        self.space.monomial_index(exps).map_or(ZERO, |i| self.coeffs[i])
    }

    /// Constant term: the value at the base point.
    pub fn value(&self) -> C64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    fn truncate_in_place(&mut self) {
        for (c, &d) in self.coeffs.iter_mut().zip(&self.space.degree) {
            if d > self.order {
                *c = ZERO;
            }
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut j = self.clone();
        j.order = order.min(self.order);
        j.truncate_in_place();
        j
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut j = self.clone();
        j.coeffs.iter_mut().for_each(|x| *x *= c);
        j
    }

    /// `d/dx_v`; the result has order one less. `None` for order-0 jets.
    pub fn derivative(&self, v: usize) -> Option<Self> {
        if self.order == 0 {
            return None;
        }
        let mut out = Self { space: self.space.clone(), order: self.order - 1, coeffs: vec![ZERO; self.coeffs.len()] };
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if let Some((k, e)) = self.space.derivs[v][i] {
                out.coeffs[k] += c * e;
            }
        }
        Some(out)
    }

    pub fn mul_jet(&self, other: &Jet) -> Jet {
        debug_assert!(Arc::ptr_eq(&self.space, &other.space));
        let order = self.order.min(other.order);
        let mut out = vec![ZERO; self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO || self.space.degree[i] > order {
                continue;
            }
            for &(j, k) in &self.space.products[i] {
                let b = other.coeffs[j];
                if b != ZERO && self.space.degree[k] <= order {
                    out[k] += a * b;
                }
            }
        }
        Jet { space: self.space.clone(), order, coeffs: out }
    }

    pub fn powi(&self, mut n: u64) -> Jet {
        let mut result = Jet::constant(&self.space, C64::new(1.0, 0.0)).truncate(self.order);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_jet(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_jet(&base);
            }
        }
        result
    }

    /// Evaluate the truncated polynomial at increments `dx`.
    pub fn eval(&self, dx: &[C64]) -> C64 {
        self.coeffs
            .iter()
            .zip(&self.space.exponents)
            .filter(|(c, _)| **c != ZERO)
            .map(|(c, e)| e.iter().zip(dx).fold(*c, |acc, (&p, x)| acc * x.powu(p as u32)))
            .sum()
    }

    fn zip_with(&self, other: &Jet, f: impl Fn(C64, C64) -> C64) -> Jet {
        debug_assert!(Arc::ptr_eq(&self.space, &other.space));
        let order = self.order.min(other.order);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect();
        let mut j = Jet { space: self.space.clone(), order, coeffs };
        j.truncate_in_place();
        j
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

impl Mul<C64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: C64) -> Jet {
        self.scale(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(C64::new(-1.0, 0.0))
    }
}
