use std::collections::BTreeMap;

use crate::algebra::element::{sparse_axpy, Element, SparseVec};
use crate::algebra::maps::LinearMap;
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// A finite-dimensional algebra with one bilinear product, stored as
/// sparse structure constants `e_i ∘ e_j = Σ_k c_ij^k e_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    basis: Vec<String>,
    // row-major n*n, entry i*n+j
    table: Vec<SparseVec>,
    unit: Option<Element>,
}

/// Accumulates structure constants before validation.
#[derive(Clone, Debug)]
pub struct TableBuilder {
    basis: Vec<String>,
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
    bad_index: Option<usize>,
}

impl TableBuilder {
    /// Adds `c * e_k` to `e_i ∘ e_j`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let n = self.basis.len();
        for idx in [i, j, k] {
            if idx >= n {
                self.bad_index.get_or_insert(idx);
                return self;
            }
        }
        if c.is_zero() {
            return self;
        }
        let slot = self.entries.entry((i, j)).or_default();
        let e = slot.entry(k).or_insert_with(Scalar::zero);
        *e += &c;
        self
    }

    /// Sets `e_i ∘ e_j = c e_k` and `e_j ∘ e_i = -c e_k`.
    pub fn antisym(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let neg = -&c;
        self.add(i, j, k, c);
        self.add(j, i, k, neg)
    }

    /// Sets both `e_i ∘ e_j` and, if `i != j`, `e_j ∘ e_i` to `c e_k`.
    pub fn sym(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        if i != j {
            self.add(j, i, k, c.clone());
        }
        self.add(i, j, k, c)
    }

    pub fn build(&self) -> Result<Algebra> {
        self.build_with_unit(None)
    }

    pub fn build_with_unit(&self, unit: Option<Element>) -> Result<Algebra> {
        let n = self.basis.len();
        if let Some(index) = self.bad_index {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
        let mut table = vec![Vec::new(); n * n];
        for ((i, j), out) in &self.entries {
            table[i * n + j] = out
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (*k, c.clone()))
                .collect();
        }
        Algebra::from_raw(self.basis.clone(), table, unit)
    }
}

impl Algebra {
    pub fn builder<S: Into<String>>(basis: impl IntoIterator<Item = S>) -> TableBuilder {
        TableBuilder {
            basis: basis.into_iter().map(Into::into).collect(),
            entries: BTreeMap::new(),
            bad_index: None,
        }
    }

    /// Validates a dense table of sparse outputs (`table[i*n+j]`).
    pub fn from_raw(basis: Vec<String>, table: Vec<SparseVec>, unit: Option<Element>) -> Result<Algebra> {
        let n = basis.len();
        if table.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                found: table.len(),
            });
        }
        for out in &table {
            for (k, c) in out {
                if *k >= n {
                    return Err(Error::IndexOutOfRange { index: *k, dim: n });
                }
                if c.is_zero() {
                    return Err(Error::Parse("zero structure constant stored".into()));
                }
            }
            if out.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::Parse("structure constants must be sorted and unique".into()));
            }
        }
        let alg = Algebra {
            basis,
            table,
            unit: None,
        };
        match unit {
            None => Ok(alg),
            Some(u) => alg.with_unit(u),
        }
    }

    /// Attaches a unit after checking `1∘e_j = e_j∘1 = e_j` for all `j`.
    pub fn with_unit(mut self, unit: Element) -> Result<Algebra> {
        unit.check_dim(self.dim())?;
        for j in 0..self.dim() {
            let ej = Element::basis(self.dim(), j);
            if self.multiply(&unit, &ej)? != ej || self.multiply(&ej, &unit)? != ej {
                return Err(Error::UnitAxiom {
                    label: self.basis[j].clone(),
                });
            }
        }
        self.unit = Some(unit);
        Ok(self)
    }

    /// Drops the unit flag, keeping the product.
    pub fn without_unit(mut self) -> Algebra {
        self.unit = None;
        self
    }

    /// The algebra with the same basis and zero product.
    pub fn zero(basis: Vec<String>) -> Algebra {
        let n = basis.len();
        Algebra {
            basis,
            table: vec![Vec::new(); n * n],
            unit: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// `e_i ∘ e_j` as sparse coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero table entries in lexicographic `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        let n = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(move |(idx, v)| ((idx / n, idx % n), v))
    }

    pub fn is_zero_product(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        x.check_dim(self.dim())?;
        y.check_dim(self.dim())?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim();
        let mut out = Element::zero(n);
        let ys: Vec<(usize, &Scalar)> = y.nonzero().collect();
        for (i, xi) in x.nonzero() {
            for &(j, yj) in &ys {
                let row = &self.table[i * n + j];
                if row.is_empty() {
                    continue;
                }
                let k = xi * yj;
                out.axpy_sparse(&k, row);
            }
        }
        out
    }

    /// Left multiplication `L_x`.
    pub fn left_mul(&self, x: &Element) -> Result<LinearMap> {
        x.check_dim(self.dim())?;
        let n = self.dim();
        Ok(LinearMap::from_columns(
            (0..n).map(|j| self.mul_unchecked(x, &Element::basis(n, j))).collect(),
        ))
    }

    /// Right multiplication `R_x`.
    pub fn right_mul(&self, x: &Element) -> Result<LinearMap> {
        x.check_dim(self.dim())?;
        let n = self.dim();
        Ok(LinearMap::from_columns(
            (0..n).map(|j| self.mul_unchecked(&Element::basis(n, j), x)).collect(),
        ))
    }

    /// Sum of two products on the same basis.
    pub fn add_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| sparse_axpy(a, &Scalar::one(), b))
            .collect();
        Algebra::from_raw(self.basis.clone(), table, None)
    }

    pub fn scaled(&self, k: &Scalar) -> Algebra {
        let table = self
            .table
            .iter()
            .map(|v| sparse_axpy(&Vec::new(), k, v))
            .collect();
        Algebra {
            basis: self.basis.clone(),
            table,
            unit: None,
        }
    }

    pub fn relabeled(&self, basis: Vec<String>) -> Result<Algebra> {
        if basis.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: basis.len(),
            });
        }
        Ok(Algebra {
            basis,
            table: self.table.clone(),
            unit: self.unit.clone(),
        })
    }

    /// Span of all products `e_i ∘ e_j`, as an echelon basis.
    pub fn derived_span(&self) -> Vec<Element> {
        let rows: Vec<Element> = self
            .table
            .iter()
            .filter(|v| !v.is_empty())
            .map(|v| Element::from_sparse(self.dim(), v))
            .collect();
        crate::linsolve::row_space(&rows, self.dim())
    }

    /// Whether the product is nilpotent: the chain `A ⊇ A² ⊇ A³ ⊇ …`, with
    /// `A^{k+1} = A^k ∘ A + A ∘ A^k`, reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.dim();
        let mut current: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
        for _ in 0..=n {
            if current.is_empty() {
                return true;
            }
            let mut next = Vec::new();
            for v in &current {
                for j in 0..n {
                    let ej = Element::basis(n, j);
                    next.push(self.mul_unchecked(v, &ej));
                    next.push(self.mul_unchecked(&ej, v));
                }
            }
            let next = crate::linsolve::row_space(&next, n);
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
        current.is_empty()
    }
}
