//! Exact linear algebra: reduced row echelon forms, nullspaces, rank.
//!
//! Whole matrices with rational entries are solved modulo several word-size
//! primes and lifted by Chinese remaindering and rational reconstruction; the
//! lifted kernel is then checked exactly against every row, which also proves
//! the pivot set. [`Echelon`] is the incremental sparse Gauss-Jordan form used
//! for everything else (and for Gaussian entries). Either way the result is
//! the unique RREF of the row space.

use std::collections::BTreeMap;

use crate::algebra::element::{Element, SparseVec};
use crate::algebra::maps::LinearMap;
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Default bound on the number of unknowns a solver will accept.
pub const DEFAULT_CAPACITY: usize = 20_000;

/// Unknown limit, overridable through `TPA_CAPACITY`.
pub fn capacity() -> usize {
    std::env::var("TPA_CAPACITY")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAPACITY)
}

pub fn check_capacity(unknowns: usize) -> Result<()> {
    let limit = capacity();
    if unknowns > limit {
        return Err(Error::Capacity { unknowns, limit });
    }
    Ok(())
}

/// Rectangular matrix with sparse rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn new(ncols: usize) -> Self {
        ExactMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense_rows(ncols: usize, rows: Vec<Element>) -> Self {
        let mut m = ExactMatrix::new(ncols);
        for r in rows {
            debug_assert_eq!(r.dim(), ncols);
            m.rows.push(r.to_sparse());
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_dense_rows(ncols, rows.iter().map(|r| Element::from_ints(r)).collect())
    }

    /// Appends a row given as `(column, value)` pairs in any order;
    /// repeated columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            *acc.entry(c).or_insert_with(Scalar::zero) += &v;
        }
        self.rows
            .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn mul_vec(&self, v: &Element) -> Element {
        Element(
            self.rows
                .iter()
                .map(|r| {
                    let mut s = Scalar::zero();
                    for (c, a) in r {
                        if !v.0[*c].is_zero() {
                            s += &(a * &v.0[*c]);
                        }
                    }
                    s
                })
                .collect(),
        )
    }

    pub fn echelon(&self) -> Echelon {
        if let Some(e) = modular::echelon(self.ncols, &self.rows) {
            return e;
        }
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }
}

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    fn from_pivots(ncols: usize, pivots: BTreeMap<usize, SparseVec>) -> Self {
        Echelon { ncols, pivots }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Rows ordered by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    /// Remainder of `row` after eliminating every pivot column.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in row {
            if self.pivots.contains_key(c) {
                continue;
            }
            *acc.entry(*c).or_insert_with(Scalar::zero) += v;
        }
        for (c, v) in row {
            if let Some(p) = self.pivots.get(c) {
                for (k, w) in p.iter().skip(1) {
                    *acc.entry(*k).or_insert_with(Scalar::zero) -= &(v * w);
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let r = self.reduce(&row);
        let Some((lead, lc)) = r.first().cloned() else {
            return false;
        };
        let inv = lc.inv().expect("nonzero pivot");
        let r: SparseVec = r.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
        for p in self.pivots.values_mut() {
            if let Ok(pos) = p.binary_search_by_key(&lead, |(k, _)| *k) {
                let c = -&p[pos].1;
                *p = crate::algebra::element::sparse_axpy(p, &c, &r);
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of `{v : R v = 0}`, itself in reduced echelon form.
    pub fn kernel(&self) -> Vec<Element> {
        let n = self.ncols;
        let mut vecs = Echelon::new(n);
        for f in 0..n {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v: SparseVec = vec![(f, Scalar::one())];
            for (p, row) in &self.pivots {
                if let Ok(pos) = row.binary_search_by_key(&f, |(k, _)| *k) {
                    v.push((*p, -&row[pos].1));
                }
            }
            v.sort_by_key(|(k, _)| *k);
            vecs.insert(v);
        }
        vecs.rows().map(|r| Element::from_sparse(n, r)).collect()
    }
}

/// Echelon-normalized nullspace basis, ordered by pivot column.
pub fn nullspace(m: &ExactMatrix) -> Vec<Element> {
    m.echelon().kernel()
}

/// As [`nullspace`], refusing systems wider than the capacity limit.
pub fn nullspace_bounded(m: &ExactMatrix) -> Result<Vec<Element>> {
    check_capacity(m.ncols())?;
    Ok(nullspace(m))
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.echelon().rank()
}

/// Reduced echelon basis of the span of `rows`.
pub fn row_space(rows: &[Element], n: usize) -> Vec<Element> {
    let mut e = Echelon::new(n);
    for r in rows {
        e.insert(r.to_sparse());
    }
    e.rows().map(|r| Element::from_sparse(n, r)).collect()
}

/// Coordinates of `v` in a basis already in reduced echelon form, or `None`
/// if `v` is outside the span.
pub fn echelon_coordinates(basis: &[Element], v: &Element) -> Option<Vec<Scalar>> {
    let mut rest = v.clone();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let (p, lead) = b.nonzero().next()?;
        let c = &rest.0[p] / lead;
        rest.axpy(&-&c, b);
        coords.push(c);
    }
    rest.is_zero().then_some(coords)
}

pub fn inverse(a: &LinearMap) -> Result<LinearMap> {
    let n = a.dim();
    let mut e = Echelon::new(2 * n);
    for i in 0..n {
        let mut row: SparseVec = (0..n)
            .filter(|&j| !a.get(i, j).is_zero())
            .map(|j| (j, a.get(i, j).clone()))
            .collect();
        row.push((n + i, Scalar::one()));
        e.insert(row);
    }
    if e.pivot_columns().take_while(|&c| c < n).count() != n {
        return Err(Error::Singular);
    }
    let rows: Vec<Vec<Scalar>> = e
        .rows()
        .map(|r| {
            let mut dense = vec![Scalar::zero(); n];
            for (k, v) in r {
                if *k >= n {
                    dense[k - n] = v.clone();
                }
            }
            dense
        })
        .collect();
    LinearMap::from_rows(&rows)
}


mod modular {
    use std::collections::{BTreeMap, BTreeSet};

    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Signed, ToPrimitive, Zero};

    use super::Echelon;
    use crate::algebra::element::SparseVec;
    use crate::exact::Scalar;

    type IntRow = Vec<(usize, BigInt)>;
    type ModRow = Vec<(usize, u64)>;

    /// Clears denominators and divides out the content; `None` if an entry
    /// is not rational.
    fn to_int_row(row: &SparseVec) -> Option<IntRow> {
        let mut l = BigInt::one();
        for (_, v) in row {
            let Scalar::Rational(q) = v else { return None };
            l = l.lcm(q.denom());
        }
        let mut out: IntRow = Vec::with_capacity(row.len());
        let mut g = BigInt::zero();
        for (c, v) in row {
            let Scalar::Rational(q) = v else { return None };
            let x = q.numer() * (&l / q.denom());
            g = g.gcd(&x);
            out.push((*c, x));
        }
        if out.first().is_some_and(|(_, v)| v.is_negative()) {
            g = -g;
        }
        if !g.is_zero() && !g.is_one() {
            for (_, v) in &mut out {
                *v /= &g;
            }
        }
        Some(out)
    }

    fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(r, a, p);
            }
            a = mul_mod(a, a, p);
            e >>= 1;
        }
        r
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    /// Deterministic Miller-Rabin for 64-bit inputs.
    fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for b in BASES {
            if n % b == 0 {
                return n == b;
            }
        }
        let s = (n - 1).trailing_zeros();
        let d = (n - 1) >> s;
        'outer: for b in BASES {
            let mut x = pow_mod(b, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul_mod(x, x, n);
                if x == n - 1 {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Primes just below `2^62`, largest first.
    fn primes() -> impl Iterator<Item = u64> {
        (0..).map(|k| (1u64 << 62) - 1 - 2 * k).filter(|&n| is_prime(n))
    }

    fn residue(x: &BigInt, p: u64) -> u64 {
        let r = x.mod_floor(&BigInt::from(p));
        r.to_u64().expect("reduced residue")
    }

    /// `a·x - b·y` over `Z/p`, dropping zeros.
    fn combine(a: u64, x: &ModRow, b: u64, y: &ModRow, p: u64) -> ModRow {
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let nb = p - b;
        while i < x.len() || j < y.len() {
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push((x[i].0, mul_mod(a, x[i].1, p)));
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                out.push((y[j].0, mul_mod(nb, y[j].1, p)));
                j += 1;
            } else {
                let v = (mul_mod(a, x[i].1, p) + mul_mod(nb, y[j].1, p)) % p;
                if v != 0 {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Monic RREF over `Z/p`, keyed by pivot column.
    fn rref_mod(rows: &[IntRow], p: u64) -> BTreeMap<usize, ModRow> {
        let mut pivots: BTreeMap<usize, ModRow> = BTreeMap::new();
        for r in rows {
            let mut r: ModRow = r
                .iter()
                .map(|(c, v)| (*c, residue(v, p)))
                .filter(|(_, v)| *v != 0)
                .collect();
            while let Some(&(lead, v)) = r.first() {
                match pivots.get(&lead) {
                    // pivot rows are monic: r - v·pivot
                    Some(piv) => r = combine(1, &r, v, piv, p),
                    None => {
                        let inv = inv_mod(v, p);
                        for (_, x) in &mut r {
                            *x = mul_mod(*x, inv, p);
                        }
                        pivots.insert(lead, r);
                        break;
                    }
                }
            }
        }
        let cols: Vec<usize> = pivots.keys().rev().copied().collect();
        for c in cols {
            let mut r = pivots.remove(&c).expect("pivot");
            let mut k = 1;
            while k < r.len() {
                let (col, v) = r[k];
                match pivots.get(&col) {
                    Some(piv) => r = combine(1, &r, v, piv, p),
                    None => k += 1,
                }
            }
            pivots.insert(c, r);
        }
        pivots
    }

    /// `r/s ≡ a (mod m)` with `|r|, s ≤ sqrt(m/2)`, if it exists.
    fn reconstruct(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
        let (mut r0, mut r1) = (m.clone(), a.clone());
        let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
        while &r1 > bound {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            let s2 = &s0 - &q * &s1;
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
            return None;
        }
        Some(BigRational::new(r1, s1))
    }

    /// Candidate RREF entries keyed by (pivot column, free column).
    struct Lift {
        pivots: Vec<usize>,
        modulus: BigInt,
        values: BTreeMap<(usize, usize), BigInt>,
    }

    impl Lift {
        fn new(rref: &BTreeMap<usize, ModRow>, p: u64) -> Self {
            let mut values = BTreeMap::new();
            for (c, r) in rref {
                for (k, v) in r.iter().skip(1) {
                    values.insert((*c, *k), BigInt::from(*v));
                }
            }
            Lift {
                pivots: rref.keys().copied().collect(),
                modulus: BigInt::from(p),
                values,
            }
        }

        fn absorb(&mut self, rref: &BTreeMap<usize, ModRow>, p: u64) {
            let m_inv = inv_mod(residue(&self.modulus, p), p);
            let mut keys: BTreeSet<(usize, usize)> = self.values.keys().copied().collect();
            for (c, r) in rref {
                keys.extend(r.iter().skip(1).map(|(k, _)| (*c, *k)));
            }
            let mut next = BTreeMap::new();
            for key in keys {
                let a = self.values.get(&key).cloned().unwrap_or_default();
                let b = rref[&key.0]
                    .binary_search_by_key(&key.1, |(k, _)| *k)
                    .map_or(0, |i| rref[&key.0][i].1);
                let t = mul_mod((b + p - residue(&a, p)) % p, m_inv, p);
                let x = a + &self.modulus * t;
                if !x.is_zero() {
                    next.insert(key, x);
                }
            }
            self.modulus *= p;
            self.values = next;
        }

        fn rationals(&self) -> Option<BTreeMap<(usize, usize), BigRational>> {
            let bound = (&self.modulus >> 1u32).sqrt();
            self.values
                .iter()
                .map(|(k, v)| reconstruct(v, &self.modulus, &bound).map(|q| (*k, q)))
                .collect()
        }
    }

    /// Exact check that each lifted kernel vector kills every row.
    fn certify(rows: &[IntRow], ncols: usize, pivots: &[usize], q: &BTreeMap<(usize, usize), BigRational>) -> bool {
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut kernel: BTreeMap<usize, Vec<(usize, BigRational)>> = (0..ncols)
            .filter(|f| !pivot_set.contains(f))
            .map(|f| (f, vec![(f, BigRational::one())]))
            .collect();
        for ((c, f), v) in q {
            match kernel.get_mut(f) {
                Some(k) => k.push((*c, -v)),
                None => return false,
            }
        }
        for v in kernel.values() {
            let den = v.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
            let dense: BTreeMap<usize, BigInt> = v
                .iter()
                .map(|(c, x)| (*c, x.numer() * (&den / x.denom())))
                .collect();
            for r in rows {
                let mut s = BigInt::zero();
                for (c, a) in r {
                    if let Some(x) = dense.get(c) {
                        s += a * x;
                    }
                }
                if !s.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub(super) fn echelon(ncols: usize, rows: &[SparseVec]) -> Option<Echelon> {
        let mut seen: BTreeSet<IntRow> = BTreeSet::new();
        let mut int_rows = Vec::with_capacity(rows.len());
        for r in rows {
            let r = to_int_row(r)?;
            if !r.is_empty() && seen.insert(r.clone()) {
                int_rows.push(r);
            }
        }
        drop(seen);

        let mut lift: Option<Lift> = None;
        for p in primes() {
            let rref = rref_mod(&int_rows, p);
            let pivots: Vec<usize> = rref.keys().copied().collect();
            match &mut lift {
                // a prime dividing some minor loses rank; restart on a better one
                Some(l) if pivots.len() > l.pivots.len() || (pivots.len() == l.pivots.len() && pivots < l.pivots) => {
                    *l = Lift::new(&rref, p)
                }
                Some(l) if pivots == l.pivots => l.absorb(&rref, p),
                Some(_) => continue,
                None => lift = Some(Lift::new(&rref, p)),
            }
            let l = lift.as_ref().expect("set above");
            let Some(q) = l.rationals() else { continue };
            if !certify(&int_rows, ncols, &l.pivots, &q) {
                continue;
            }
            let mut out: BTreeMap<usize, SparseVec> = l
                .pivots
                .iter()
                .map(|&c| (c, vec![(c, Scalar::one())]))
                .collect();
            for ((c, f), v) in q {
                out.get_mut(&c).expect("pivot row").push((f, Scalar::Rational(v)));
            }
            return Some(Echelon::from_pivots(ncols, out));
        }
        unreachable!("infinitely many primes")
    }

}
