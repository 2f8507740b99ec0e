//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{q, Q};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::from_terms(nvars, [(m, Q::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `sum_i c_i x_i`
    pub fn linear_form(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut m = vec![0; n];
                m[i] = 1;
                (m, c.clone())
            }),
        )
    }

    /// `sum_i x_i^d`
    pub fn power_sum(nvars: usize, d: u32) -> Self {
        Self::from_terms(
            nvars,
            (0..nvars).map(|i| {
                let mut m = vec![0; nvars];
                m[i] = d;
                (m, Q::one())
            }),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.len(), self.nvars, "monomial length must match variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` if every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        SparsePolynomial { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::constant(self.nvars, Q::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn evaluate(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars, "point dimension mismatch");
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| acc + c * monomial_value(m, x))
    }

    /// Symbolic partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * q(i64::from(m[i])));
        }
        out
    }

    /// Gradient at `x`, evaluated term by term without forming the partials.
    pub fn gradient_at(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.nvars, "point dimension mismatch");
        let mut grad = vec![Q::zero(); self.nvars];
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                if m[i] == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2[i] -= 1;
                grad[i] += c * q(i64::from(m[i])) * monomial_value(&m2, x);
            }
        }
        grad
    }
}

fn monomial_value(m: &[u32], x: &[Q]) -> Q {
    m.iter()
        .zip(x)
        .fold(Q::one(), |acc, (&e, xi)| if e == 0 { acc } else { acc * num_traits::pow(xi.clone(), e as usize) })
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;
    use proptest::prelude::*;

    #[test]
    fn cancellation_removes_terms() {
        let x = SparsePolynomial::var(2, 0);
        let p = x.add(&x.scale(&q(-1)));
        assert!(p.is_zero());
        assert_eq!(p.homogeneous_degree(), None);
    }

    #[test]
    fn power_of_linear_form() {
        // (x + y)^3 = x^3 + 3x^2y + 3xy^2 + y^3
        let l = SparsePolynomial::linear_form(&[q(1), q(1)]);
        let p = l.pow(3);
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert_eq!(p.evaluate(&[q(2), q(-1)]), q(1));
    }

    #[test]
    fn a2_cubic_gradient() {
        let p = SparsePolynomial::power_sum(3, 3);
        assert_eq!(p.gradient_at(&[q(1), q(0), q(-1)]), vec![q(3), q(0), q(3)]);
    }

    proptest! {
        #[test]
        fn gradient_matches_symbolic_partials(
            coeffs in proptest::collection::vec(-5i64..5, 3),
            pt in proptest::collection::vec((-7i64..7, 1i64..4), 3),
            d in 1u32..5,
        ) {
            let l = SparsePolynomial::linear_form(&coeffs.iter().map(|&c| q(c)).collect::<Vec<_>>());
            let p = l.pow(d).add(&SparsePolynomial::power_sum(3, d));
            let x: Vec<Q> = pt.iter().map(|&(n, den)| q_frac(n, den)).collect();
            let g = p.gradient_at(&x);
            for (i, gi) in g.iter().enumerate() {
                prop_assert_eq!(gi, &p.partial(i).evaluate(&x));
            }
        }
    }
}
