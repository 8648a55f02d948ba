use crate::algebra::binary::Algebra;
use crate::algebra::element::Element;
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Square matrix acting on coordinates; column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    cols: Vec<Element>,
}

impl LinearMap {
    pub fn from_columns(cols: Vec<Element>) -> Self {
        let n = cols.len();
        debug_assert!(cols.iter().all(|c| c.dim() == n));
        LinearMap { cols }
    }

    pub fn try_from_columns(cols: Vec<Element>) -> Result<Self> {
        let n = cols.len();
        for c in &cols {
            c.check_dim(n)?;
        }
        Ok(LinearMap { cols })
    }

    /// Builds a map from a row-major matrix.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let cols = (0..n)
            .map(|j| Element((0..n).map(|i| rows[i][j].clone()).collect()))
            .collect();
        Ok(LinearMap { cols })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            cols: (0..n).map(|j| Element::basis(n, j)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        LinearMap {
            cols: vec![Element::zero(n); n],
        }
    }

    pub fn scalar(n: usize, k: &Scalar) -> Self {
        LinearMap::identity(n).scale(k)
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.cols[j].0[i]
    }

    pub fn column(&self, j: usize) -> &Element {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Element] {
        &self.cols
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.check_dim(self.dim())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for (j, c) in x.nonzero() {
            out.axpy(c, &self.cols[j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            cols: other.cols.iter().map(|c| self.apply_unchecked(c)).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> LinearMap {
        LinearMap {
            cols: self.cols.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Element::is_zero)
    }

    /// Whether the map is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return true;
        }
        let k = self.get(0, 0).clone();
        *self == LinearMap::scalar(n, &k)
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        crate::linsolve::inverse(self)
    }

    /// Coordinates in the row-major order `(i, j)`.
    pub fn to_row_major(&self) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    /// Checks `D(x∘y) = D(x)∘y + x∘D(y)` on basis pairs; returns the first
    /// failing pair.
    pub fn derivation_witness(&self, a: &Algebra) -> Result<Option<(usize, usize)>> {
        if a.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: a.dim(),
                found: self.dim(),
            });
        }
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (Element::basis(n, i), Element::basis(n, j));
                let lhs = self.apply_unchecked(&a.mul_unchecked(&ei, &ej));
                let rhs = a
                    .mul_unchecked(self.column(i), &ej)
                    .add(&a.mul_unchecked(&ei, self.column(j)));
                if lhs != rhs {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim(),
            "images": self
                .cols
                .iter()
                .map(|c| c
                    .nonzero()
                    .map(|(k, v)| serde_json::json!([k, v.to_json()]))
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LinearMap> {
        let bad = |m: &str| Error::Parse(format!("linear map: {m}"));
        let n = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| bad("missing \"dim\""))? as usize;
        let images = v
            .get("images")
            .and_then(|d| d.as_array())
            .ok_or_else(|| bad("missing \"images\""))?;
        if images.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: images.len(),
            });
        }
        let mut cols = Vec::with_capacity(n);
        for img in images {
            let mut col = Element::zero(n);
            for pair in img.as_array().ok_or_else(|| bad("image must be a list"))? {
                let (k, c) = crate::algebra::io::parse_pair(pair, n)?;
                col.0[k] += &c;
            }
            cols.push(col);
        }
        Ok(LinearMap { cols })
    }
}

/// Dense bilinear map `φ(e_i, e_j) = Σ_k c[(i*n+j)*n+k] e_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BilinearMap {
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zero(dim: usize) -> Self {
        BilinearMap {
            dim,
            coeffs: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != dim * dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim * dim,
                found: coeffs.len(),
            });
        }
        Ok(BilinearMap { dim, coeffs })
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        let n = a.dim();
        let mut m = BilinearMap::zero(n);
        for ((i, j), out) in a.entries() {
            for (k, c) in out {
                m.coeffs[(i * n + j) * n + k] = c.clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let n = self.dim;
        self.coeffs[(i * n + j) * n + k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }

    pub fn add(&self, other: &BilinearMap) -> BilinearMap {
        BilinearMap {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> BilinearMap {
        BilinearMap {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// The product on `labels` with these structure constants.
    pub fn to_algebra(&self, labels: &[String]) -> Result<Algebra> {
        if labels.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: labels.len(),
            });
        }
        let mut b = Algebra::builder(labels.iter().cloned());
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        b.add(i, j, k, c.clone());
                    }
                }
            }
        }
        b.build()
    }
}
