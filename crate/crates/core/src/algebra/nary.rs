use std::collections::BTreeMap;

use crate::algebra::binary::Algebra;
use crate::algebra::element::{Element, SparseVec};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// An algebra with a single `m`-ary multilinear product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NAryAlgebra {
    basis: Vec<String>,
    arity: usize,
    table: BTreeMap<Vec<usize>, SparseVec>,
}

impl NAryAlgebra {
    pub fn new(basis: Vec<String>, arity: usize, table: BTreeMap<Vec<usize>, SparseVec>) -> Result<Self> {
        let n = basis.len();
        if arity < 2 {
            return Err(Error::InvalidParams(format!("arity must be at least 2, got {arity}")));
        }
        let mut clean = BTreeMap::new();
        for (idx, out) in table {
            if idx.len() != arity {
                return Err(Error::Dimension {
                    expected: arity,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, dim: n });
            }
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in out {
                if k >= n {
                    return Err(Error::IndexOutOfRange { index: k, dim: n });
                }
                *acc.entry(k).or_insert_with(Scalar::zero) += &c;
            }
            let sv: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !sv.is_empty() {
                clean.insert(idx, sv);
            }
        }
        Ok(NAryAlgebra {
            basis,
            arity,
            table: clean,
        })
    }

    pub fn zero(basis: Vec<String>, arity: usize) -> Self {
        NAryAlgebra {
            basis,
            arity,
            table: BTreeMap::new(),
        }
    }

    /// Builds a totally antisymmetric table from values on strictly
    /// increasing index tuples.
    pub fn antisymmetric_from(
        basis: Vec<String>,
        arity: usize,
        generators: impl IntoIterator<Item = (Vec<usize>, SparseVec)>,
    ) -> Result<Self> {
        let mut table: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
        for (idx, out) in generators {
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParams(
                    "antisymmetric generators need strictly increasing indices".into(),
                ));
            }
            for (perm, sign) in permutations_with_sign(arity) {
                let key: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
                let k = Scalar::int(sign);
                table.insert(key, out.iter().map(|(i, c)| (*i, c * &k)).collect());
            }
        }
        NAryAlgebra::new(basis, arity, table)
    }

    pub fn from_binary(a: &Algebra) -> Self {
        let table = a
            .entries()
            .map(|((i, j), out)| (vec![i, j], out.clone()))
            .collect();
        NAryAlgebra {
            basis: a.labels().to_vec(),
            arity: 2,
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn labels(&self) -> &[String] {
        &self.basis
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.table.iter()
    }

    pub fn is_zero_product(&self) -> bool {
        self.table.is_empty()
    }

    pub fn basis_product(&self, idx: &[usize]) -> &[(usize, Scalar)] {
        self.table.get(idx).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Multilinear extension of the table.
    pub fn apply(&self, args: &[Element]) -> Result<Element> {
        if args.len() != self.arity {
            return Err(Error::Dimension {
                expected: self.arity,
                found: args.len(),
            });
        }
        for a in args {
            a.check_dim(self.dim())?;
        }
        let refs: Vec<&Element> = args.iter().collect();
        Ok(self.apply_refs(&refs))
    }

    pub(crate) fn apply_refs(&self, args: &[&Element]) -> Element {
        let n = self.dim();
        let mut out = Element::zero(n);
        let supports: Vec<Vec<(usize, &Scalar)>> = args.iter().map(|a| a.nonzero().collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        if self.table.is_empty() {
            return out;
        }
        let mut idx = vec![0usize; self.arity];
        let mut key = vec![0usize; self.arity];
        loop {
            let mut coef = Scalar::one();
            for (slot, &p) in idx.iter().enumerate() {
                let (b, c) = supports[slot][p];
                key[slot] = b;
                coef = &coef * c;
            }
            if let Some(row) = self.table.get(&key) {
                out.axpy_sparse(&coef, row);
            }
            // odometer
            let mut s = self.arity;
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < supports[s].len() {
                    break;
                }
                idx[s] = 0;
            }
        }
    }

    /// First basis tuple (lexicographic) violating total antisymmetry under
    /// an adjacent transposition, if any.
    pub fn antisymmetry_witness(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        for idx in tuples(n, self.arity) {
            let here = self.basis_product(&idx);
            for s in 0..self.arity - 1 {
                let mut sw = idx.clone();
                sw.swap(s, s + 1);
                let there = self.basis_product(&sw);
                let ok = if idx[s] == idx[s + 1] {
                    here.is_empty()
                } else {
                    here.len() == there.len()
                        && here.iter().zip(there).all(|(a, b)| a.0 == b.0 && a.1 == -&b.1)
                };
                if !ok {
                    return Some(idx);
                }
            }
        }
        None
    }

    /// Echelon basis of the span of all bracket outputs.
    pub fn derived_span(&self) -> Vec<Element> {
        let rows: Vec<Element> = self
            .table
            .values()
            .map(|v| Element::from_sparse(self.dim(), v))
            .collect();
        crate::linsolve::row_space(&rows, self.dim())
    }

    /// Whether `e_k` lies in the annihilator (every bracket with it vanishes).
    pub fn annihilates(&self, k: usize) -> bool {
        self.table.keys().all(|idx| !idx.contains(&k))
    }

    /// Echelon basis of the annihilator, computed as a nullspace.
    pub fn annihilator(&self) -> Vec<Element> {
        let n = self.dim();
        // x ∈ Ann iff [e_{i1},..,x,..] = 0 for every slot and basis tuple
        let mut rows: Vec<Element> = Vec::new();
        for slot in 0..self.arity {
            for rest in tuples(n, self.arity - 1) {
                for k in 0..n {
                    let mut row = Element::zero(n);
                    for x in 0..n {
                        let mut idx = rest.clone();
                        idx.insert(slot, x);
                        if let Some((_, c)) = self.basis_product(&idx).iter().find(|(kk, _)| *kk == k) {
                            row.0[x] = c.clone();
                        }
                    }
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        let m = crate::linsolve::ExactMatrix::from_dense_rows(n, rows);
        crate::linsolve::nullspace(&m)
    }

    /// Lower central series `L^1 = L`, `L^{k+1} = [L^k, L, …, L]` reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.dim();
        let basis: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
        let mut current = basis.clone();
        for _ in 0..=n {
            if current.is_empty() {
                return true;
            }
            let mut next = Vec::new();
            for v in &current {
                for rest in tuples(n, self.arity - 1) {
                    let mut args: Vec<&Element> = vec![v];
                    args.extend(rest.iter().map(|&i| &basis[i]));
                    next.push(self.apply_refs(&args));
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

/// All `len`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 && len > 0 { 0 } else { n.pow(len as u32) };
    (0..total).map(move |mut code| {
        let mut t = vec![0; len];
        for s in (0..len).rev() {
            t[s] = code % n;
            code /= n;
        }
        t
    })
}

/// Permutations of `0..m` with their signs.
pub fn permutations_with_sign(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let mut inv = 0;
            for a in 0..m {
                for b in a + 1..m {
                    if p[a] > p[b] {
                        inv += 1;
                    }
                }
            }
            let sign = if inv % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_lie_4d() -> NAryAlgebra {
        let basis = ["e1", "e2", "e3", "e4"].map(String::from).to_vec();
        NAryAlgebra::antisymmetric_from(basis, 3, [(vec![0, 1, 2], vec![(3, Scalar::one())])]).unwrap()
    }

    #[test]
    fn zero_argument_gives_zero() {
        let a = three_lie_4d();
        let out = a
            .apply(&[Element::basis(4, 0), Element::zero(4), Element::basis(4, 2)])
            .unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn repeated_argument_vanishes() {
        let a = three_lie_4d();
        let x = Element::from_ints(&[1, 2, 0, 3]);
        let out = a.apply(&[x.clone(), Element::basis(4, 1), x]).unwrap();
        assert!(out.is_zero());
        assert!(a.antisymmetry_witness().is_none());
    }

    #[test]
    fn permuted_arguments_pick_up_sign() {
        let a = three_lie_4d();
        let e = |i| Element::basis(4, i);
        assert_eq!(a.apply(&[e(1), e(0), e(2)]).unwrap(), e(3).neg());
        assert_eq!(a.apply(&[e(2), e(0), e(1)]).unwrap(), e(3));
    }

    #[test]
    fn arity_mismatch() {
        let a = three_lie_4d();
        assert!(a.apply(&[Element::basis(4, 0)]).is_err());
    }

    #[test]
    fn annihilator_and_derived_span() {
        let a = three_lie_4d();
        assert!(a.annihilates(3));
        assert!(!a.annihilates(0));
        assert_eq!(a.annihilator(), vec![Element::basis(4, 3)]);
        assert_eq!(a.derived_span(), vec![Element::basis(4, 3)]);
        assert!(a.is_nilpotent());
    }

    #[test]
    fn tuple_enumeration_is_lexicographic() {
        let ts: Vec<_> = tuples(2, 2).collect();
        assert_eq!(ts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(permutations_with_sign(3).iter().filter(|(_, s)| *s == -1).count(), 3);
    }
}
