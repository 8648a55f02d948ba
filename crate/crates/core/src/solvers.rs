//! Linear solution spaces: δ-derivations, δ-biderivations, Hom-Lie maps and
//! compatible commutative products, all computed as exact nullspaces.
//!
//! Unknown layouts:
//! * linear maps: entry `(i, j)` (coefficient of `e_i` in `φ(e_j)`) is
//!   unknown `j*n + i`;
//! * bilinear maps: `φ(e_i, e_j)_k` is unknown `(i*n + j)*n + k`;
//! * symmetric bilinear maps: pairs `i <= j` in lexicographic order, then `k`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{Algebra, BilinearMap, Element, LinearMap, NAryAlgebra};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::identity::{check_identity, Bindings, CheckReport};
use crate::linsolve::{self, ExactMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    Linear,
    Bilinear,
    SymmetricBilinear,
}

impl Shape {
    pub fn name(&self) -> &'static str {
        match self {
            Shape::Linear => "linear-map",
            Shape::Bilinear => "bilinear-map",
            Shape::SymmetricBilinear => "symmetric-bilinear-map",
        }
    }

    pub fn unknowns(&self, n: usize) -> usize {
        match self {
            Shape::Linear => n * n,
            Shape::Bilinear => n * n * n,
            Shape::SymmetricBilinear => n * n * (n + 1) / 2,
        }
    }
}

/// Maps `(i, j, k)` to an unknown index for the given shape.
#[derive(Clone, Copy)]
struct Layout {
    shape: Shape,
    n: usize,
}

impl Layout {
    fn bil(&self, i: usize, j: usize, k: usize) -> usize {
        match self.shape {
            Shape::Bilinear => (i * self.n + j) * self.n + k,
            Shape::SymmetricBilinear => sym_offset(self.n, i, j) * self.n + k,
            Shape::Linear => unreachable!("linear layout has no bilinear index"),
        }
    }
}

/// Offset of the pair `(min, max)` among pairs `i <= j` in lexicographic order.
fn sym_offset(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows 0..i hold n + (n-1) + ... + (n-i+1) pairs
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Accumulates equations keyed by output index before pushing them.
struct Rows {
    m: ExactMatrix,
}

impl Rows {
    fn new(ncols: usize) -> Self {
        Rows {
            m: ExactMatrix::new(ncols),
        }
    }

    fn push(&mut self, eqs: BTreeMap<usize, Vec<(usize, Scalar)>>) {
        for (_, row) in eqs {
            self.m.push_row(row);
        }
    }
}

fn add(eqs: &mut BTreeMap<usize, Vec<(usize, Scalar)>>, k: usize, col: usize, c: Scalar) {
    if !c.is_zero() {
        eqs.entry(k).or_default().push((col, c));
    }
}

/// Exact solution space of a linear problem on maps of one algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionSpace {
    pub shape: Shape,
    pub mode: String,
    pub delta: Option<Scalar>,
    pub labels: Vec<String>,
    basis: Vec<Element>,
}

impl SolutionSpace {
    fn solve(shape: Shape, mode: &str, delta: Option<Scalar>, labels: &[String], rows: Rows) -> Result<Self> {
        let basis = linsolve::nullspace_bounded(&rows.m)?;
        Ok(SolutionSpace {
            shape,
            mode: mode.to_string(),
            delta,
            labels: labels.to_vec(),
            basis,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn unknowns(&self) -> usize {
        self.shape.unknowns(self.algebra_dim())
    }

    /// Raw basis vectors in the unknown layout, echelon-normalized.
    pub fn basis_vectors(&self) -> &[Element] {
        &self.basis
    }

    pub fn linear_maps(&self) -> Vec<LinearMap> {
        assert_eq!(self.shape, Shape::Linear, "not a space of linear maps");
        self.basis.iter().map(|v| self.raw_to_linear(v)).collect()
    }

    pub fn bilinear_maps(&self) -> Vec<BilinearMap> {
        assert_ne!(self.shape, Shape::Linear, "not a space of bilinear maps");
        self.basis.iter().map(|v| self.raw_to_bilinear(v)).collect()
    }

    fn raw_to_linear(&self, v: &Element) -> LinearMap {
        let n = self.algebra_dim();
        LinearMap::from_columns((0..n).map(|j| Element(v.0[j * n..(j + 1) * n].to_vec())).collect())
    }

    fn raw_to_bilinear(&self, v: &Element) -> BilinearMap {
        let n = self.algebra_dim();
        let lay = Layout { shape: self.shape, n };
        let mut coeffs = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    coeffs.push(v.0[lay.bil(i, j, k)].clone());
                }
            }
        }
        BilinearMap::from_coeffs(n, coeffs).expect("sized")
    }

    fn linear_to_raw(&self, m: &LinearMap) -> Element {
        Element(m.columns().iter().flat_map(|c| c.0.iter().cloned()).collect())
    }

    fn bilinear_to_raw(&self, b: &BilinearMap) -> Option<Element> {
        let n = self.algebra_dim();
        match self.shape {
            Shape::Bilinear => Some(Element(b.coeffs().to_vec())),
            Shape::SymmetricBilinear => {
                if !b.is_symmetric() {
                    return None;
                }
                let lay = Layout { shape: self.shape, n };
                let mut v = Element::zero(self.unknowns());
                for i in 0..n {
                    for j in i..n {
                        for k in 0..n {
                            v.0[lay.bil(i, j, k)] = b.get(i, j, k).clone();
                        }
                    }
                }
                Some(v)
            }
            Shape::Linear => None,
        }
    }

    /// Coordinates of a linear map in the basis, `None` if outside the space.
    pub fn coordinates_linear(&self, m: &LinearMap) -> Option<Vec<Scalar>> {
        if self.shape != Shape::Linear || m.dim() != self.algebra_dim() {
            return None;
        }
        linsolve::echelon_coordinates(&self.basis, &self.linear_to_raw(m))
    }

    pub fn coordinates_bilinear(&self, b: &BilinearMap) -> Option<Vec<Scalar>> {
        if b.dim() != self.algebra_dim() {
            return None;
        }
        let raw = self.bilinear_to_raw(b)?;
        linsolve::echelon_coordinates(&self.basis, &raw)
    }

    pub fn contains_linear(&self, m: &LinearMap) -> bool {
        self.coordinates_linear(m).is_some()
    }

    pub fn contains_bilinear(&self, b: &BilinearMap) -> bool {
        self.coordinates_bilinear(b).is_some()
    }

    /// Symmetric members of a bilinear space, as a basis of that subspace.
    pub fn symmetric_part(&self) -> Vec<BilinearMap> {
        let n = self.algebra_dim();
        let maps = self.bilinear_maps();
        if self.shape == Shape::SymmetricBilinear {
            return maps;
        }
        // solve Σ c_m (φ_m(i,j) - φ_m(j,i)) = 0 for the coefficients c
        let mut rows = ExactMatrix::new(maps.len());
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    rows.push_row(
                        maps.iter()
                            .enumerate()
                            .map(|(m, phi)| (m, phi.get(i, j, k) - phi.get(j, i, k))),
                    );
                }
            }
        }
        linsolve::nullspace(&rows)
            .into_iter()
            .map(|c| {
                let mut acc = BilinearMap::zero(n);
                for (m, k) in c.nonzero() {
                    acc = acc.add(&maps[m].scale(k));
                }
                acc
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = match self.shape {
            Shape::Linear => self
                .linear_maps()
                .iter()
                .map(|m| {
                    let images: serde_json::Map<String, Value> = (0..m.dim())
                        .map(|j| {
                            let col: Vec<Value> =
                                m.column(j).nonzero().map(|(k, c)| json!([k, c.to_json()])).collect();
                            (self.labels[j].clone(), Value::Array(col))
                        })
                        .collect();
                    Value::Object(images)
                })
                .collect(),
            _ => self
                .bilinear_maps()
                .iter()
                .map(|b| {
                    let n = b.dim();
                    let mut rows = Vec::new();
                    for i in 0..n {
                        for j in 0..n {
                            let out: Vec<Value> = (0..n)
                                .filter(|&k| !b.get(i, j, k).is_zero())
                                .map(|k| json!([k, b.get(i, j, k).to_json()]))
                                .collect();
                            if !out.is_empty() {
                                rows.push(json!([i, j, out]));
                            }
                        }
                    }
                    Value::Array(rows)
                })
                .collect(),
        };
        json!({
            "shape": self.shape.name(),
            "mode": self.mode,
            "delta": self.delta.as_ref().map(Scalar::to_json),
            "basis_labels": self.labels,
            "unknowns": self.unknowns(),
            "dimension": self.dimension(),
            "basis": basis,
        })
    }
}

/// `φ[x,y] = δ([φx,y] + [x,φy])` on all basis pairs.
pub fn delta_derivations(a: &Algebra, delta: &Scalar) -> Result<SolutionSpace> {
    let n = a.dim();
    linsolve::check_capacity(n * n)?;
    let mut rows = Rows::new(n * n);
    let nd = -delta;
    for x in 0..n {
        for y in 0..n {
            let mut eqs = BTreeMap::new();
            for (m, c) in a.basis_product(x, y) {
                for k in 0..n {
                    add(&mut eqs, k, m * n + k, c.clone());
                }
            }
            for i in 0..n {
                for (k, c) in a.basis_product(i, y) {
                    add(&mut eqs, *k, x * n + i, &nd * c);
                }
                for (k, c) in a.basis_product(x, i) {
                    add(&mut eqs, *k, y * n + i, &nd * c);
                }
            }
            rows.push(eqs);
        }
    }
    SolutionSpace::solve(Shape::Linear, "delta-derivation", Some(delta.clone()), a.labels(), rows)
}

/// `φ[x_1,..,x_m] = δ Σ_i [x_1,..,φx_i,..,x_m]` on all basis tuples.
pub fn nary_delta_derivations(a: &NAryAlgebra, delta: &Scalar) -> Result<SolutionSpace> {
    let n = a.dim();
    let m = a.arity();
    linsolve::check_capacity(n * n)?;
    let mut rows = Rows::new(n * n);
    let nd = -delta;
    for t in crate::algebra::tuples(n, m) {
        let mut eqs = BTreeMap::new();
        for (q, c) in a.basis_product(&t) {
            for k in 0..n {
                add(&mut eqs, k, q * n + k, c.clone());
            }
        }
        for slot in 0..m {
            let mut s = t.clone();
            for i in 0..n {
                s[slot] = i;
                for (k, c) in a.basis_product(&s) {
                    add(&mut eqs, *k, t[slot] * n + i, &nd * c);
                }
            }
        }
        rows.push(eqs);
    }
    SolutionSpace::solve(Shape::Linear, "nary-delta-derivation", Some(delta.clone()), a.labels(), rows)
}

/// Bilinear `φ` with
/// `φ([x,y],z) = δ([φ(x,z),y] + [x,φ(y,z)])` and
/// `φ(x,[y,z]) = δ([φ(x,y),z] + [y,φ(x,z)])`.
/// With `symmetric`, unknowns are restricted to symmetric maps.
pub fn delta_biderivations(a: &Algebra, delta: &Scalar, symmetric: bool) -> Result<SolutionSpace> {
    let n = a.dim();
    let shape = if symmetric {
        Shape::SymmetricBilinear
    } else {
        Shape::Bilinear
    };
    let unknowns = shape.unknowns(n);
    linsolve::check_capacity(unknowns)?;
    let lay = Layout { shape, n };
    let nd = -delta;
    let mut rows = Rows::new(unknowns);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut first = BTreeMap::new();
                for (m, c) in a.basis_product(x, y) {
                    for k in 0..n {
                        add(&mut first, k, lay.bil(*m, z, k), c.clone());
                    }
                }
                let mut second = BTreeMap::new();
                for (m, c) in a.basis_product(y, z) {
                    for k in 0..n {
                        add(&mut second, k, lay.bil(x, *m, k), c.clone());
                    }
                }
                for m in 0..n {
                    for (k, c) in a.basis_product(m, y) {
                        add(&mut first, *k, lay.bil(x, z, m), &nd * c);
                    }
                    for (k, c) in a.basis_product(x, m) {
                        add(&mut first, *k, lay.bil(y, z, m), &nd * c);
                    }
                    for (k, c) in a.basis_product(m, z) {
                        add(&mut second, *k, lay.bil(x, y, m), &nd * c);
                    }
                    for (k, c) in a.basis_product(y, m) {
                        add(&mut second, *k, lay.bil(x, z, m), &nd * c);
                    }
                }
                rows.push(first);
                rows.push(second);
            }
        }
    }
    SolutionSpace::solve(shape, "delta-biderivation", Some(delta.clone()), a.labels(), rows)
}

fn require_lie(l: &Algebra) -> Result<()> {
    for id in ["anticomm", "jacobi"] {
        let r = check_identity(id, &Bindings::bracket(l))?;
        if !r.holds {
            return Err(Error::failed_check(format!("input is not a Lie algebra ({id})"), r));
        }
    }
    Ok(())
}

/// Linear `φ` with `[φx,[y,z]] + [φy,[z,x]] + [φz,[x,y]] = 0`.
pub fn hom_lie_maps(l: &Algebra) -> Result<SolutionSpace> {
    require_lie(l)?;
    let n = l.dim();
    linsolve::check_capacity(n * n)?;
    let mut rows = Rows::new(n * n);
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut eqs = BTreeMap::new();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let w = Element::from_sparse(n, l.basis_product(b, c));
                    if w.is_zero() {
                        continue;
                    }
                    for (i, ei) in basis.iter().enumerate() {
                        for (k, v) in l.mul_unchecked(ei, &w).nonzero() {
                            add(&mut eqs, k, a * n + i, v.clone());
                        }
                    }
                }
                rows.push(eqs);
            }
        }
    }
    SolutionSpace::solve(Shape::Linear, "hom-lie", None, l.labels(), rows)
}

/// Commutative bilinear products `·` with `2z·[x,y] = [z·x,y] + [x,z·y]`.
pub fn tp_product_space(l: &Algebra) -> Result<SolutionSpace> {
    require_lie(l)?;
    let n = l.dim();
    let shape = Shape::SymmetricBilinear;
    let unknowns = shape.unknowns(n);
    linsolve::check_capacity(unknowns)?;
    let lay = Layout { shape, n };
    let mut rows = Rows::new(unknowns);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut eqs = BTreeMap::new();
                for (m, c) in l.basis_product(x, y) {
                    for k in 0..n {
                        add(&mut eqs, k, lay.bil(z, *m, k), c * &Scalar::int(2));
                    }
                }
                for m in 0..n {
                    for (k, c) in l.basis_product(m, y) {
                        add(&mut eqs, *k, lay.bil(z, x, m), -c);
                    }
                    for (k, c) in l.basis_product(x, m) {
                        add(&mut eqs, *k, lay.bil(z, y, m), -c);
                    }
                }
                rows.push(eqs);
            }
        }
    }
    SolutionSpace::solve(shape, "tp-product", None, l.labels(), rows)
}

/// Checks associativity of a candidate product from a bilinear space.
pub fn filter_associative(space: &SolutionSpace, candidate: &BilinearMap) -> Result<CheckReport> {
    if space.shape == Shape::Linear || !space.contains_bilinear(candidate) {
        return Err(Error::NotInSpace);
    }
    let prod = candidate.to_algebra(&space.labels)?;
    check_identity("assoc", &Bindings::product(&prod))
}

/// First basis pair where `φ[x,y] != δ([φx,y] + [x,φy])`.
pub fn delta_derivation_witness(a: &Algebra, phi: &LinearMap, delta: &Scalar) -> Result<Option<(usize, usize)>> {
    if phi.dim() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: phi.dim(),
        });
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (Element::basis(n, i), Element::basis(n, j));
            let lhs = phi.apply_unchecked(&a.mul_unchecked(&ei, &ej));
            let rhs = a
                .mul_unchecked(phi.column(i), &ej)
                .add(&a.mul_unchecked(&ei, phi.column(j)))
                .scale(delta);
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// First basis tuple where the n-ary δ-derivation law fails.
pub fn nary_delta_derivation_witness(a: &NAryAlgebra, phi: &LinearMap, delta: &Scalar) -> Result<Option<Vec<usize>>> {
    if phi.dim() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: phi.dim(),
        });
    }
    let n = a.dim();
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
    for t in crate::algebra::tuples(n, a.arity()) {
        let args: Vec<&Element> = t.iter().map(|&i| &basis[i]).collect();
        let lhs = phi.apply_unchecked(&a.apply_refs(&args));
        let mut rhs = Element::zero(n);
        for s in 0..t.len() {
            let mut a2 = args.clone();
            a2[s] = phi.column(t[s]);
            rhs.axpy(delta, &a.apply_refs(&a2));
        }
        if lhs != rhs {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
