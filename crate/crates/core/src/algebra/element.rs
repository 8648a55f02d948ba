use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Sorted `(index, coefficient)` pairs with no zero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Dense coordinate vector of an element in a fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element(pub Vec<Scalar>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Element::zero(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_sparse(dim: usize, sv: &[(usize, Scalar)]) -> Self {
        let mut v = Element::zero(dim);
        for (k, c) in sv {
            v.0[*k] += c;
        }
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Element(xs.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        Element(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }

    /// `self += k * other`.
    pub fn axpy(&mut self, k: &Scalar, other: &Element) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &(k * b);
            }
        }
    }

    /// `self += k * sv`.
    pub fn axpy_sparse(&mut self, k: &Scalar, sv: &[(usize, Scalar)]) {
        for (i, c) in sv {
            self.0[*i] += &(k * c);
        }
    }

    /// Human form over the given labels, e.g. `2*e1 - 1/2*e3`.
    pub fn render(&self, labels: &[String]) -> String {
        render_terms(self.nonzero().map(|(i, c)| (labels[i].as_str(), c)))
    }
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a str, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if c.is_one() {
            out.push_str(label);
        } else {
            out.push_str(&format!("({c})*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Merge-add `k * b` into `a`, keeping the sparse invariants.
pub(crate) fn sparse_axpy(a: &SparseVec, k: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let c = k * &b[j].1;
            if !c.is_zero() {
                out.push((b[j].0, c));
            }
            j += 1;
        } else {
            let c = &a[i].1 + &(k * &b[j].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
