//! Sample models shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tpa_core::algebra::{Algebra, Element, LinearMap};
use tpa_core::catalog::poly_trunc;
use tpa_core::constructions::{bracket_from_derivation, transport, TPPair};
use tpa_core::exact::Scalar;
use tpa_core::solvers::delta_derivations;

/// `Q[x_1..x_v]` modulo an ideal spanned by the monomials `keep` rejects.
pub fn monomial_quotient(vars: usize, max_deg: u32, keep: impl Fn(&[u32]) -> bool) -> Algebra {
    let mut monos: Vec<Vec<u32>> = vec![vec![0; vars]];
    for d in 1..=max_deg {
        let mut layer = Vec::new();
        fn fill(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() + 1 == v {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                fill(v, left - e, cur, out);
                cur.pop();
            }
        }
        fill(vars, d, &mut Vec::new(), &mut layer);
        monos.extend(layer);
    }
    monos.retain(|m| keep(m));
    let labels: Vec<String> = monos
        .iter()
        .map(|m| {
            let parts: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("")
            }
        })
        .collect();
    let n = monos.len();
    let mut b = Algebra::builder(labels);
    for (i, x) in monos.iter().enumerate() {
        for (j, y) in monos.iter().enumerate() {
            let s: Vec<u32> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            if let Some(k) = monos.iter().position(|m| *m == s) {
                b.add(i, j, k, Scalar::one());
            }
        }
    }
    b.build_with_unit(Some(Element::basis(n, 0))).unwrap()
}

/// Unital commutative associative models.
pub fn unital_models() -> Vec<Algebra> {
    vec![
        poly_trunc(1),
        poly_trunc(3),
        poly_trunc(4),
        monomial_quotient(2, 2, |m| m.iter().sum::<u32>() < 3),
        monomial_quotient(2, 2, |m| m.iter().all(|&e| e < 2)),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_scalar(r: &mut impl Rng) -> Scalar {
    Scalar::frac(r.gen_range(-3..=3), r.gen_range(1..=2))
}

/// Random unitriangular change of basis.
pub fn random_unitriangular(n: usize, r: &mut impl Rng) -> LinearMap {
    let cols = (0..n)
        .map(|j| {
            let mut v = Element::basis(n, j);
            for i in 0..j {
                v.0[i] = small_scalar(r);
            }
            v
        })
        .collect();
    LinearMap::from_columns(cols)
}

pub fn random_combination(maps: &[LinearMap], n: usize, r: &mut impl Rng) -> LinearMap {
    maps.iter()
        .fold(LinearMap::zero(n), |acc, m| acc.add(&m.scale(&small_scalar(r))))
}

/// A model in a random basis together with a random derivation of it.
pub fn sampled_algebra_with_derivation(seed: u64) -> (Algebra, LinearMap) {
    let mut r = rng(seed);
    let models = unital_models();
    let a = &models[r.gen_range(0..models.len())];
    let phi = random_unitriangular(a.dim(), &mut r);
    let a = transport(a, &phi, &phi.inverse().unwrap()).unwrap();
    let ders = delta_derivations(&a, &Scalar::one()).unwrap().linear_maps();
    let d = random_combination(&ders, a.dim(), &mut r);
    (a, d)
}

/// Unital TP pair with the bracket of a random derivation.
pub fn sampled_unital_pair(seed: u64) -> TPPair {
    let (a, d) = sampled_algebra_with_derivation(seed);
    let b = bracket_from_derivation(&a, &d).unwrap();
    TPPair::new(a, b).unwrap()
}

pub fn random_element(n: usize, r: &mut impl Rng) -> Element {
    Element((0..n).map(|_| small_scalar(r)).collect())
}
