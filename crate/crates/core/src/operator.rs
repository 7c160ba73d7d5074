//! Abstract operators: elements of the tensor algebra over `sl_M`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{AlgebraSpec, Generator};
use crate::{CMatrix, C64};

/// An ordered tensor product of catalog generators. The empty monomial is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorMonomial {
    factors: Vec<Generator>,
}

impl TensorMonomial {
    pub fn new(factors: Vec<Generator>) -> Self {
        Self { factors }
    }

    pub fn unit() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn single(g: Generator) -> Self {
        Self { factors: vec![g] }
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors reversed and each replaced by its adjoint.
    pub fn adjoint(&self) -> Self {
        Self { factors: self.factors.iter().rev().map(|g| g.adjoint()).collect() }
    }

    pub fn tensor(&self, other: &TensorMonomial) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self { factors }
    }

    pub fn validate(&self, spec: &AlgebraSpec) -> Result<()> {
        self.factors.iter().try_for_each(|g| spec.validate(*g))
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" ox "))
    }
}

/// A finite complex combination of tensor monomials plus a scalar part.
///
/// Terms are kept in a `BTreeMap`, so iteration order is the canonical
/// lexicographic order of factor lists and structural equality is `==`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbstractOperator {
    spec: AlgebraSpec,
    scalar: C64,
    terms: BTreeMap<TensorMonomial, C64>,
}

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

impl AbstractOperator {
    pub fn zero(spec: AlgebraSpec) -> Self {
        Self { spec, scalar: ZERO, terms: BTreeMap::new() }
    }

    pub fn scalar_op(spec: AlgebraSpec, c: C64) -> Self {
        Self { spec, scalar: c, terms: BTreeMap::new() }
    }

    pub fn generator(spec: AlgebraSpec, g: Generator) -> Result<Self> {
        spec.validate(g)?;
        Ok(Self::monomial(spec, TensorMonomial::single(g), C64::new(1.0, 0.0)))
    }

    pub fn monomial(spec: AlgebraSpec, mono: TensorMonomial, c: C64) -> Self {
        let mut op = Self::zero(spec);
        op.add_term(mono, c);
        op
    }

    /// Degree-1 operator with the given traceless matrix as image in the defining rep.
    pub fn from_matrix(spec: AlgebraSpec, x: &CMatrix) -> Result<Self> {
        let mut op = Self::zero(spec);
        for (g, c) in spec.decompose(x)? {
            op.add_term(TensorMonomial::single(g), c);
        }
        Ok(op)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn scalar(&self) -> C64 {
        self.scalar
    }

    /// Non-scalar terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &C64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len() + usize::from(self.scalar != ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar == ZERO && self.terms.is_empty()
    }

    /// Highest degree present (0 for pure scalars).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True for nonzero, homogeneous degree-1 operators (elements of `g`).
    pub fn is_lie_element(&self) -> bool {
        self.scalar == ZERO && !self.terms.is_empty() && self.terms.keys().all(|m| m.degree() == 1)
    }

    /// Image in the defining representation of a degree-1 operator.
    pub fn lie_matrix(&self) -> Result<CMatrix> {
        if !self.terms.keys().all(|m| m.degree() == 1) || self.scalar != ZERO {
            return Err(Error::Config("operator is not an element of the Lie algebra".into()));
        }
        let m = self.spec.m();
        let mut out = CMatrix::zeros(m, m);
        for (mono, c) in &self.terms {
            out += self.spec.matrix(mono.factors()[0])? * *c;
        }
        Ok(out)
    }

    fn add_term(&mut self, mono: TensorMonomial, c: C64) {
        if mono.is_unit() {
            self.scalar += c;
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.terms.remove(&mono);
        }
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch("operators over different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = self.clone();
        out.scalar += other.scalar;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::scalar_op(self.spec, self.scalar * c);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Tensor product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = Self::zero(self.spec);
        let lhs = self.monomial_decomposition();
        let rhs = other.monomial_decomposition();
        for (a, ma) in &lhs {
            for (b, mb) in &rhs {
                out.add_term(ma.tensor(mb), a * b);
            }
        }
        Ok(out)
    }

    /// Canonical list of `(coefficient, monomial)`; the scalar part, if
    /// nonzero, comes first with the unit monomial.
    pub fn monomial_decomposition(&self) -> Vec<(C64, TensorMonomial)> {
        let mut out = Vec::with_capacity(self.terms.len() + 1);
        if self.scalar != ZERO {
            out.push((self.scalar, TensorMonomial::unit()));
        }
        out.extend(self.terms.iter().map(|(m, c)| (*c, m.clone())));
        out
    }

    pub fn from_decomposition(spec: AlgebraSpec, parts: &[(C64, TensorMonomial)]) -> Self {
        let mut out = Self::zero(spec);
        for (c, m) in parts {
            out.add_term(m.clone(), *c);
        }
        out
    }

    /// The formal adjoint: scalars conjugated, `E(k,l) -> E(l,k)`,
    /// `H(k) -> H(k)`, factor order reversed. Real-linear, not complex-linear.
    pub fn formal_adjoint(&self) -> Self {
        let mut out = Self::scalar_op(self.spec, self.scalar.conj());
        for (m, c) in &self.terms {
            out.add_term(m.adjoint(), c.conj());
        }
        out
    }

    pub fn is_abstractly_selfadjoint(&self) -> bool {
        *self == self.formal_adjoint()
    }
}

pub fn formal_adjoint(op: &AbstractOperator) -> AbstractOperator {
    op.formal_adjoint()
}

pub fn is_abstractly_selfadjoint(op: &AbstractOperator) -> bool {
    op.is_abstractly_selfadjoint()
}

pub fn monomial_decomposition(op: &AbstractOperator) -> Vec<(C64, TensorMonomial)> {
    op.monomial_decomposition()
}

fn fmt_real(x: f64) -> String {
    format!("{x:?}")
}

/// Coefficient text and whether it should be preceded by a minus sign.
fn fmt_coefficient(c: C64) -> (bool, String) {
    match (c.re != 0.0, c.im != 0.0) {
        (_, false) => (c.re < 0.0, fmt_real(c.re.abs())),
        (false, true) => (c.im < 0.0, format!("{}i", fmt_real(c.im.abs()))),
        (true, true) => {
            let sign = if c.im < 0.0 { '-' } else { '+' };
            (false, format!("({} {} {}i)", fmt_real(c.re), sign, fmt_real(c.im.abs())))
        }
    }
}

impl fmt::Display for AbstractOperator {
    /// Renders in the Hamiltonian DSL; the output reparses to an equal operator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.monomial_decomposition();
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in parts.iter().enumerate() {
            let (neg, text) = fmt_coefficient(*c);
            let body = if m.is_unit() {
                text
            } else if text == "1.0" {
                m.to_string()
            } else {
                format!("{text} * {m}")
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
