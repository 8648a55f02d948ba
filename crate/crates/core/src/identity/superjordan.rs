use rayon::prelude::*;

use crate::algebra::{Element, SuperAlgebra};
use crate::exact::Scalar;
use crate::identity::{CheckReport, Witness};

fn sign(e: u8) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Super-Jordan check: graded commutativity on basis pairs, then
/// `Σ_cyc (-1)^{|x||z|} [L_{x∘y}, L_z]_s (t) = 0` on basis quadruples,
/// where `[A,B]_s = AB - (-1)^{|A||B|} BA`.
pub fn check_jordan_super(s: &SuperAlgebra) -> CheckReport {
    let a = s.algebra();
    let p = s.parity();
    let n = s.dim();
    let labels = s.labels();
    let e = |i: usize| Element::basis(n, i);
    let m = |x: &Element, y: &Element| a.mul_unchecked(x, y);
    let witness = |idx: &[usize], d: &Element| Witness {
        indices: idx.iter().map(|&i| i as i64).collect(),
        labels: idx.iter().map(|&i| labels[i].clone()).collect(),
        defect: d.nonzero().map(|(k, c)| (k as i64, c.clone())).collect(),
        rendered: d.render(labels),
    };

    let pairs = (n * n) as u64;
    for i in 0..n {
        for j in 0..n {
            let mut d = m(&e(i), &e(j));
            d.axpy(&-sign(p[i] * p[j]), &m(&e(j), &e(i)));
            if !d.is_zero() {
                let r = CheckReport::fails("jordan-super", (i * n + j) as u64 + 1, witness(&[i, j], &d));
                return r.with_note("graded commutativity fails");
            }
        }
    }

    let quads = (n as u64).pow(4);
    let first = (0..quads)
        .into_par_iter()
        .map(|code| {
            let c = code as usize;
            let idx = [c / (n * n * n), (c / (n * n)) % n, (c / n) % n, c % n];
            let [x, y, z, t] = idx.map(e);
            let [px, py, pz, _] = idx.map(|i| p[i]);
            let mut d = Element::zero(n);
            // each entry gives (-1)^{|u1||w|} [L_{u1∘u2}, L_w]_s (t)
            let cyc = [
                (&x, &y, &z, px, py, pz),
                (&y, &z, &x, py, pz, px),
                (&z, &x, &y, pz, px, py),
            ];
            for (u1, u2, w, p1, p2, pw) in cyc {
                let u = m(u1, u2);
                let pu = (p1 + p2) % 2;
                let outer = sign(p1 * pw);
                d.axpy(&outer, &m(&u, &m(w, &t)));
                d.axpy(&-(&outer * &sign(pu * pw)), &m(w, &m(&u, &t)));
            }
            (code, idx, d)
        })
        .find_first(|(_, _, d)| !d.is_zero());
    match first {
        None => CheckReport::holds("jordan-super", pairs + quads),
        Some((code, idx, d)) => CheckReport::fails("jordan-super", pairs + code + 1, witness(&idx, &d))
            .with_note("super-Jordan operator identity fails"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn unit_double_holds_and_corruption_fails() {
        // A = Q·1 with zero bracket: basis 1 (even), x̄ (odd)
        let mut b = Algebra::builder(["1", "1·x̄"]);
        b.add(0, 0, 0, Scalar::one()).sym(0, 1, 1, Scalar::one());
        let s = SuperAlgebra::new(b.build().unwrap(), vec![0, 1]).unwrap();
        assert!(check_jordan_super(&s).holds);

        b.add(1, 1, 0, Scalar::one());
        let bad = SuperAlgebra::new(b.build().unwrap(), vec![0, 1]).unwrap();
        let r = check_jordan_super(&bad);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().labels, vec!["1·x̄", "1·x̄"]);
    }
}
