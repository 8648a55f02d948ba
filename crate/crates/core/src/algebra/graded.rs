//! Integer-graded algebras evaluated lazily from a closed-form bracket.

use std::collections::BTreeMap;

use crate::exact::Scalar;

/// Finitely supported element `Σ c_i e_i` of a graded algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedElement(pub BTreeMap<i64, Scalar>);

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement(BTreeMap::new())
    }

    pub fn basis(i: i64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, Scalar::one());
        GradedElement(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, i: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += k * other`.
    pub fn axpy(&mut self, k: &Scalar, other: &GradedElement) {
        for (i, c) in &other.0 {
            self.add_term(*i, &(k * c));
        }
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }
}

/// The two graded Lie algebras with bracket `[e_i, e_j] = (i - j) e_{i+j}`:
/// the Witt algebra on all integer indices and `W(1)` on indices `≥ -1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GradedAlgebra {
    Witt,
    CartanW1,
}

impl GradedAlgebra {
    pub fn index_floor(&self) -> Option<i64> {
        match self {
            GradedAlgebra::Witt => None,
            GradedAlgebra::CartanW1 => Some(-1),
        }
    }

    pub fn is_valid_index(&self, i: i64) -> bool {
        self.index_floor().map_or(true, |f| i >= f)
    }

    /// `[e_i, e_j]` as `(index, coefficient)`, `None` when zero.
    pub fn basis_bracket(&self, i: i64, j: i64) -> Option<(i64, Scalar)> {
        if i == j {
            return None;
        }
        Some((i + j, Scalar::int(i - j)))
    }

    pub fn bracket(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (i, a) in &x.0 {
            for (j, b) in &y.0 {
                if let Some((k, c)) = self.basis_bracket(*i, *j) {
                    out.add_term(k, &(&(a * b) * &c));
                }
            }
        }
        out
    }

    pub fn label(i: i64) -> String {
        format!("e{i}")
    }
}
