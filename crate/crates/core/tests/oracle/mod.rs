//! Brute-force dense oracle. Every condition is evaluated by plugging an
//! elementary unknown into the defining identity and reading off the dense
//! defect; rank comes from plain dense Gaussian elimination. Nothing here
//! touches the sparse solver.

#![allow(dead_code)]

use tpa_core::algebra::{tuples, Algebra, Element, NAryAlgebra};
use tpa_core::exact::Scalar;

pub fn dense_rank(mut m: Vec<Vec<Scalar>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().unwrap();
        let pivot: Vec<Scalar> = m[rank].iter().map(|v| v * &inv).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..cols {
                    let d = &f * &pivot[k];
                    m[r][k] -= &d;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Columns are defect vectors of each elementary unknown; returns
/// `unknowns - rank`.
fn nullity(columns: Vec<Vec<Scalar>>) -> usize {
    let unknowns = columns.len();
    if unknowns == 0 {
        return 0;
    }
    let rows = columns[0].len();
    let m: Vec<Vec<Scalar>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    unknowns - dense_rank(m)
}

fn e(n: usize, i: usize) -> Element {
    Element::basis(n, i)
}

fn mul(a: &Algebra, x: &Element, y: &Element) -> Element {
    a.multiply(x, y).unwrap()
}

/// `φ(e_j) = e_k` and zero elsewhere.
fn elementary(n: usize, j: usize, k: usize) -> impl Fn(&Element) -> Element {
    move |x: &Element| {
        let mut out = Element::zero(n);
        out.0[k] = x.0[j].clone();
        out
    }
}

pub fn delta_derivations(a: &Algebra, delta: &Scalar) -> usize {
    let n = a.dim();
    let mut cols = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let phi = elementary(n, j, k);
            let mut col = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let (ex, ey) = (e(n, x), e(n, y));
                    let mut d = phi(&mul(a, &ex, &ey));
                    let rhs = mul(a, &phi(&ex), &ey).add(&mul(a, &ex, &phi(&ey)));
                    d.axpy(&-delta, &rhs);
                    col.extend(d.0);
                }
            }
            cols.push(col);
        }
    }
    nullity(cols)
}

pub fn nary_delta_derivations(a: &NAryAlgebra, delta: &Scalar) -> usize {
    let n = a.dim();
    let m = a.arity();
    let mut cols = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let phi = elementary(n, j, k);
            let mut col = Vec::new();
            for t in tuples(n, m) {
                let args: Vec<Element> = t.iter().map(|&i| e(n, i)).collect();
                let mut d = phi(&a.apply(&args).unwrap());
                for s in 0..m {
                    let mut changed = args.clone();
                    changed[s] = phi(&args[s]);
                    d.axpy(&-delta, &a.apply(&changed).unwrap());
                }
                col.extend(d.0);
            }
            cols.push(col);
        }
    }
    nullity(cols)
}

/// Bilinear unknown `(e_i, e_j) ↦ e_k`, also `(e_j, e_i) ↦ e_k` if symmetric.
fn elementary_bilinear(n: usize, i: usize, j: usize, k: usize, symmetric: bool) -> impl Fn(&Element, &Element) -> Element {
    move |x: &Element, y: &Element| {
        let mut out = Element::zero(n);
        let mut c = &x.0[i] * &y.0[j];
        if symmetric && i != j {
            c += &(&x.0[j] * &y.0[i]);
        }
        out.0[k] = c;
        out
    }
}

fn bilinear_unknowns(n: usize, symmetric: bool) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if symmetric && j < i {
                continue;
            }
            for k in 0..n {
                v.push((i, j, k));
            }
        }
    }
    v
}

pub fn delta_biderivations(a: &Algebra, delta: &Scalar, symmetric: bool) -> usize {
    let n = a.dim();
    let mut cols = Vec::new();
    for (i, j, k) in bilinear_unknowns(n, symmetric) {
        let phi = elementary_bilinear(n, i, j, k, symmetric);
        let mut col = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (e(n, x), e(n, y), e(n, z));
                    // φ([x,y],z) = δ([φ(x,z),y] + [x,φ(y,z)])
                    let mut d = phi(&mul(a, &ex, &ey), &ez);
                    let r = mul(a, &phi(&ex, &ez), &ey).add(&mul(a, &ex, &phi(&ey, &ez)));
                    d.axpy(&-delta, &r);
                    col.extend(d.0);
                    // φ(x,[y,z]) = δ([φ(x,y),z] + [y,φ(x,z)])
                    let mut d = phi(&ex, &mul(a, &ey, &ez));
                    let r = mul(a, &phi(&ex, &ey), &ez).add(&mul(a, &ey, &phi(&ex, &ez)));
                    d.axpy(&-delta, &r);
                    col.extend(d.0);
                }
            }
        }
        cols.push(col);
    }
    nullity(cols)
}

pub fn hom_lie_maps(l: &Algebra) -> usize {
    let n = l.dim();
    let mut cols = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let phi = elementary(n, j, k);
            let mut col = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (ex, ey, ez) = (e(n, x), e(n, y), e(n, z));
                        let d = mul(l, &phi(&ex), &mul(l, &ey, &ez))
                            .add(&mul(l, &phi(&ey), &mul(l, &ez, &ex)))
                            .add(&mul(l, &phi(&ez), &mul(l, &ex, &ey)));
                        col.extend(d.0);
                    }
                }
            }
            cols.push(col);
        }
    }
    nullity(cols)
}

pub fn tp_product_space(l: &Algebra) -> usize {
    let n = l.dim();
    let two = Scalar::int(2);
    let mut cols = Vec::new();
    for (i, j, k) in bilinear_unknowns(n, true) {
        let p = elementary_bilinear(n, i, j, k, true);
        let mut col = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (ex, ey, ez) = (e(n, x), e(n, y), e(n, z));
                    let mut d = p(&ez, &mul(l, &ex, &ey)).scale(&two);
                    d = d.sub(&mul(l, &p(&ez, &ex), &ey));
                    d = d.sub(&mul(l, &ex, &p(&ez, &ey)));
                    col.extend(d.0);
                }
            }
        }
        cols.push(col);
    }
    nullity(cols)
}

/// Catalog Lie algebras of dimension at most 4.
pub fn small_lie_algebras() -> Vec<(String, Algebra)> {
    use tpa_core::catalog::*;
    use tpa_core::constructions::bracket_from_derivation;
    let mut v = vec![("sl2".to_string(), sl2()), ("heis3".to_string(), heis3())];
    for n in 1..=4 {
        v.push((format!("abelian-{n}"), named_algebra(&format!("abelian-{n}")).unwrap().algebra));
    }
    for lam in [Scalar::one(), Scalar::frac(3, 2)] {
        let p = OscillatorParams::new(vec![lam.clone()], false).unwrap();
        v.push((format!("oscillator:lambda={lam}"), oscillator(&p)));
    }
    for n in 2..=4 {
        let a = poly_trunc(n);
        let b = bracket_from_derivation(&a, &euler_derivation(n)).unwrap();
        v.push((format!("poly-trunc-{n} bracket"), b));
    }
    let alpha = [(1, Scalar::one())].into_iter().collect();
    for n in 2..=4 {
        v.push((format!("witt-window-{n} bracket"), witt_window_pair(&alpha, n).unwrap().bracket().clone()));
    }
    v
}

/// Commutative associative catalog products of dimension at most 4.
pub fn small_products() -> Vec<(String, Algebra)> {
    use tpa_core::catalog::*;
    let mut v: Vec<(String, Algebra)> = (1..=4).map(|n| (format!("poly-trunc-{n}"), poly_trunc(n))).collect();
    let p = OscillatorParams::new(vec![Scalar::one()], false).unwrap();
    v.push((
        "oscillator θ-product γ=2".to_string(),
        oscillator_tp_product(&p, &HalfDerParams::gamma(1, Scalar::int(2))).unwrap(),
    ));
    v
}

pub fn small_nary() -> Vec<(String, NAryAlgebra)> {
    use std::collections::BTreeMap;
    use tpa_core::algebra::permutations_with_sign;
    use tpa_core::catalog::nary_heisenberg;
    let labels: Vec<String> = ["e1", "e2", "e3"].iter().map(|s| s.to_string()).collect();
    let mut table = BTreeMap::new();
    for (perm, sign) in permutations_with_sign(3) {
        table.insert(perm, vec![(0, Scalar::int(sign))]);
    }
    vec![
        ("nheis-2".to_string(), nary_heisenberg(2)),
        ("nheis-3".to_string(), nary_heisenberg(3)),
        ("zero 3-ary".to_string(), NAryAlgebra::zero(labels.clone(), 3)),
        ("[e1,e2,e3]=e1".to_string(), NAryAlgebra::new(labels, 3, table).unwrap()),
    ]
}
