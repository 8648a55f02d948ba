//! Verified transposed Poisson pairs and the constructions built on them.

use serde_json::{json, Value};

use crate::algebra::{
    permutations_with_sign, tuples, Algebra, AlgebraFile, Element, LinearMap, NAryAlgebra, SuperAlgebra, BRACKET,
    PRODUCT,
};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::identity::{check_identity, Bindings, CheckReport, Witness};
use crate::linsolve::Echelon;
use crate::solvers::nary_delta_derivation_witness;

pub const TP_PAIR_CHECKS: &[&str] = &["comm", "assoc", "anticomm", "jacobi", "tp-compat"];
pub const NTP_CHECKS: &[&str] = &["comm", "assoc", "nlie-fundamental", "tp-nlie"];

fn first_failure(reports: Vec<CheckReport>, what: &str) -> Result<()> {
    match reports.into_iter().find(|r| !r.holds) {
        None => Ok(()),
        Some(r) => Err(Error::failed_check(format!("{what}: {} fails", r.id), r)),
    }
}

/// A commutative associative product and a Lie bracket on one basis,
/// linked by the transposed Poisson identity. Only constructed verified.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPPair {
    product: Algebra,
    bracket: Algebra,
}

impl TPPair {
    pub fn new(product: Algebra, bracket: Algebra) -> Result<TPPair> {
        let reports = TPPair::verify(&product, &bracket)?;
        first_failure(reports, "not a transposed Poisson pair")?;
        Ok(TPPair { product, bracket })
    }

    /// Runs every defining check; does not stop at the first failure.
    pub fn verify(product: &Algebra, bracket: &Algebra) -> Result<Vec<CheckReport>> {
        let b = Bindings::pair(product, bracket);
        TP_PAIR_CHECKS.iter().map(|id| check_identity(id, &b)).collect()
    }

    pub fn product(&self) -> &Algebra {
        &self.product
    }

    pub fn bracket(&self) -> &Algebra {
        &self.bracket
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.product.labels()
    }

    pub fn unit(&self) -> Option<&Element> {
        self.product.unit()
    }

    pub fn bindings(&self) -> Bindings {
        Bindings::pair(&self.product, &self.bracket)
    }

    /// `x ↦ [x, 1]` for unital pairs.
    pub fn unit_derivation(&self) -> Option<LinearMap> {
        let u = self.unit()?;
        let n = self.dim();
        Some(LinearMap::from_columns(
            (0..n).map(|i| self.bracket.mul_unchecked(&Element::basis(n, i), u)).collect(),
        ))
    }

    pub fn to_file(&self) -> AlgebraFile {
        let mut f = AlgebraFile::new(self.labels().to_vec());
        f.insert_product(PRODUCT, &self.product);
        f.insert_product(BRACKET, &self.bracket);
        f.unit = self.unit().cloned();
        f
    }

    pub fn from_file(f: &AlgebraFile) -> Result<TPPair> {
        TPPair::new(f.algebra(PRODUCT)?, f.algebra(BRACKET)?)
    }
}

/// A commutative associative product with an n-Lie bracket satisfying the
/// n-ary compatibility identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NTPTuple {
    product: Algebra,
    bracket: NAryAlgebra,
}

impl NTPTuple {
    pub fn new(product: Algebra, bracket: NAryAlgebra) -> Result<NTPTuple> {
        if product.dim() != bracket.dim() {
            return Err(Error::Dimension {
                expected: product.dim(),
                found: bracket.dim(),
            });
        }
        let reports = NTPTuple::verify(&product, &bracket)?;
        first_failure(reports, "not a transposed Poisson n-Lie tuple")?;
        Ok(NTPTuple { product, bracket })
    }

    pub fn verify(product: &Algebra, bracket: &NAryAlgebra) -> Result<Vec<CheckReport>> {
        let b = Bindings::nary_tuple(product, bracket);
        NTP_CHECKS.iter().map(|id| check_identity(id, &b)).collect()
    }

    /// A binary pair viewed as the `n = 2` case.
    pub fn from_pair(p: &TPPair) -> NTPTuple {
        NTPTuple {
            product: p.product.clone(),
            bracket: NAryAlgebra::from_binary(&p.bracket),
        }
    }

    pub fn product(&self) -> &Algebra {
        &self.product
    }

    pub fn bracket(&self) -> &NAryAlgebra {
        &self.bracket
    }

    pub fn arity(&self) -> usize {
        self.bracket.arity()
    }

    pub fn bindings(&self) -> Bindings {
        Bindings::nary_tuple(&self.product, &self.bracket)
    }

    pub fn to_file(&self) -> AlgebraFile {
        let mut f = AlgebraFile::new(self.product.labels().to_vec());
        f.insert_product(PRODUCT, &self.product);
        f.insert_nary(BRACKET, &self.bracket);
        f.unit = self.product.unit().cloned();
        f
    }
}

/// Report for the derivation law `D(x∘y) = D(x)∘y + x∘D(y)` on basis pairs.
pub fn derivation_report(a: &Algebra, d: &LinearMap) -> Result<CheckReport> {
    let n = a.dim();
    match d.derivation_witness(a)? {
        None => Ok(CheckReport::holds("derivation", (n * n) as u64)),
        Some((i, j)) => {
            let (ei, ej) = (Element::basis(n, i), Element::basis(n, j));
            let defect = d
                .apply_unchecked(&a.mul_unchecked(&ei, &ej))
                .sub(&a.mul_unchecked(d.column(i), &ej))
                .sub(&a.mul_unchecked(&ei, d.column(j)));
            let l = a.labels();
            Ok(CheckReport::fails(
                "derivation",
                (i * n + j + 1) as u64,
                Witness {
                    indices: vec![i as i64, j as i64],
                    labels: vec![l[i].clone(), l[j].clone()],
                    defect: defect.nonzero().map(|(k, c)| (k as i64, c.clone())).collect(),
                    rendered: defect.render(l),
                },
            ))
        }
    }
}

fn require_derivation(a: &Algebra, d: &LinearMap, what: &str) -> Result<()> {
    let r = derivation_report(a, d)?;
    if !r.holds {
        return Err(Error::failed_check(format!("map is not a derivation of the {what}"), r));
    }
    Ok(())
}

/// `[x,y] = D(x)·y - x·D(y)`.
pub fn bracket_from_derivation(a: &Algebra, d: &LinearMap) -> Result<Algebra> {
    for id in ["comm", "assoc"] {
        let r = check_identity(id, &Bindings::product(a))?;
        if !r.holds {
            return Err(Error::failed_check(format!("product fails {id}"), r));
        }
    }
    require_derivation(a, d, "product")?;
    let n = a.dim();
    let mut b = Algebra::builder(a.labels().iter().cloned());
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (Element::basis(n, i), Element::basis(n, j));
            let v = a
                .mul_unchecked(d.column(i), &ej)
                .sub(&a.mul_unchecked(&ei, d.column(j)));
            for (k, c) in v.nonzero() {
                b.add(i, j, k, c.clone());
            }
        }
    }
    b.build()
}

/// Superalgebra on `A ⊕ Ax̄` (`A` even, `Ax̄` odd):
/// `a∘c = ac`, `a∘(dx̄) = (ad)x̄`, `(bx̄)∘c = (bc)x̄`, `(bx̄)∘(dx̄) = [b,d]`.
pub fn kantor_double(p: &TPPair) -> Result<SuperAlgebra> {
    let n = p.dim();
    let mut labels: Vec<String> = p.labels().to_vec();
    labels.extend(p.labels().iter().map(|l| format!("{l}·x̄")));
    let mut b = Algebra::builder(labels);
    for ((i, j), out) in p.product().entries() {
        for (k, c) in out {
            b.add(i, j, *k, c.clone());
            b.add(i, n + j, n + k, c.clone());
            b.add(n + i, j, n + k, c.clone());
        }
    }
    for ((i, j), out) in p.bracket().entries() {
        for (k, c) in out {
            b.add(n + i, n + j, *k, c.clone());
        }
    }
    let unit = p.unit().map(|u| {
        let mut v = u.0.clone();
        v.resize(2 * n, Scalar::zero());
        Element(v)
    });
    let alg = b.build_with_unit(unit)?;
    SuperAlgebra::new(alg, [vec![0u8; n], vec![1u8; n]].concat())
}

/// `⟦x_1,..,x_{m+1}⟧ = Σ_i (-1)^{i+1} D(x_i)·[x_1,..,x̂_i,..,x_{m+1}]`.
fn lift(product: &Algebra, bracket: &NAryAlgebra, d: &LinearMap) -> Result<NAryAlgebra> {
    let n = product.dim();
    let m = bracket.arity();
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
    let mut table = std::collections::BTreeMap::new();
    for t in tuples(n, m + 1) {
        let mut acc = Element::zero(n);
        for i in 0..=m {
            let rest: Vec<&Element> = t
                .iter()
                .enumerate()
                .filter(|(s, _)| *s != i)
                .map(|(_, &b)| &basis[b])
                .collect();
            let inner = bracket.apply_refs(&rest);
            if inner.is_zero() {
                continue;
            }
            let sign = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            acc.axpy(&sign, &product.mul_unchecked(d.column(t[i]), &inner));
        }
        let sv = acc.to_sparse();
        if !sv.is_empty() {
            table.insert(t, sv);
        }
    }
    NAryAlgebra::new(product.labels().to_vec(), m + 1, table)
}

fn require_nary_derivation(bracket: &NAryAlgebra, d: &LinearMap) -> Result<()> {
    if let Some(t) = nary_delta_derivation_witness(bracket, d, &Scalar::one())? {
        let l = bracket.labels();
        let names: Vec<&str> = t.iter().map(|&i| l[i].as_str()).collect();
        return Err(Error::precondition(format!(
            "map is not a derivation of the bracket at ({})",
            names.join(", ")
        )));
    }
    Ok(())
}

/// `[x,y,z] = D(x)·[y,z] - D(y)·[x,z] + D(z)·[x,y]` for a derivation `D` of
/// both operations.
pub fn three_lie_from_tp(p: &TPPair, d: &LinearMap) -> Result<NAryAlgebra> {
    if d.dim() != p.dim() {
        return Err(Error::Dimension {
            expected: p.dim(),
            found: d.dim(),
        });
    }
    require_derivation(p.product(), d, "product")?;
    require_derivation(p.bracket(), d, "bracket")?;
    lift(p.product(), &NAryAlgebra::from_binary(p.bracket()), d)
}

/// The (n+1)-ary candidate bracket and what holds for it.
#[derive(Clone, Debug)]
pub struct LieProbe {
    pub table: NAryAlgebra,
    pub antisymmetric: bool,
    pub fundamental: CheckReport,
    pub compatibility: CheckReport,
}

impl LieProbe {
    pub fn to_json(&self) -> Value {
        json!({
            "arity": self.table.arity(),
            "antisymmetric": self.antisymmetric,
            "nlie-fundamental": self.fundamental.to_json(),
            "tp-nlie": self.compatibility.to_json(),
        })
    }
}

/// Builds `⟦x_1,..,x_{n+1}⟧ = Σ_i (-1)^{i+1} D(x_i)·[x_1,..,x̂_i,..,x_{n+1}]`
/// and reports, without asserting, whether it is an n-Lie bracket compatible
/// with the product.
pub fn n_plus_one_lie_candidate(t: &NTPTuple, d: &LinearMap) -> Result<LieProbe> {
    if d.dim() != t.product().dim() {
        return Err(Error::Dimension {
            expected: t.product().dim(),
            found: d.dim(),
        });
    }
    require_derivation(t.product(), d, "product")?;
    require_nary_derivation(t.bracket(), d)?;
    let table = lift(t.product(), t.bracket(), d)?;
    let b = Bindings::nary_tuple(t.product(), &table);
    Ok(LieProbe {
        antisymmetric: table.antisymmetry_witness().is_none(),
        fundamental: check_identity("nlie-fundamental", &b)?,
        compatibility: check_identity("tp-nlie", &b)?,
        table,
    })
}

/// The product `e_i·e_j = e_k` for generators `i, j` outside `L²` and `e_k`
/// in the annihilator of a nilpotent n-Lie algebra `L`.
pub fn nilpotent_nlie_tp(l: &NAryAlgebra, generators: &[usize], annihilator: usize) -> Result<NTPTuple> {
    let n = l.dim();
    if generators.len() != l.arity() {
        return Err(Error::InvalidParams(format!(
            "need {} generators, got {}",
            l.arity(),
            generators.len()
        )));
    }
    for &g in generators.iter().chain([&annihilator]) {
        if g >= n {
            return Err(Error::IndexOutOfRange { index: g, dim: n });
        }
    }
    let mut sorted = generators.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != generators.len() {
        return Err(Error::InvalidParams("generators must be distinct".into()));
    }
    if let Some(t) = l.antisymmetry_witness() {
        return Err(Error::precondition(format!("bracket is not antisymmetric at {t:?}")));
    }
    if !l.is_nilpotent() {
        return Err(Error::precondition("bracket is not nilpotent"));
    }
    let mut derived = Echelon::new(n);
    for v in l.derived_span() {
        derived.insert(v.to_sparse());
    }
    for &g in generators {
        if derived.contains(&[(g, Scalar::one())]) {
            return Err(Error::precondition(format!("{} lies in the derived algebra", l.labels()[g])));
        }
    }
    if !l.annihilates(annihilator) {
        return Err(Error::precondition(format!(
            "{} is not in the annihilator",
            l.labels()[annihilator]
        )));
    }
    let mut b = Algebra::builder(l.labels().iter().cloned());
    for &i in generators {
        for &j in generators {
            b.add(i, j, annihilator, Scalar::one());
        }
    }
    NTPTuple::new(b.build()?, l.clone())
}

/// Runs the quasi-Poisson identity with `D(x) = [x,1]`.
pub fn quasi_poisson_check(p: &TPPair) -> Result<CheckReport> {
    let d = p
        .unit_derivation()
        .ok_or_else(|| Error::precondition("pair is not unital"))?;
    check_identity("quasi-poisson", &p.bindings().with_map(&d))
}

/// Both sides of: "Poisson n-Lie and transposed Poisson n-Lie" iff
/// `x·[y_1,..,y_n] = 0` and `[x·y_1,..,y_n] = 0`.
#[derive(Clone, Debug)]
pub struct PoissonTpReport {
    pub poisson: CheckReport,
    pub transposed: CheckReport,
    pub product_kills_bracket: CheckReport,
    pub bracket_kills_product: CheckReport,
}

impl PoissonTpReport {
    pub fn both_structures(&self) -> bool {
        self.poisson.holds && self.transposed.holds
    }

    pub fn annihilation(&self) -> bool {
        self.product_kills_bracket.holds && self.bracket_kills_product.holds
    }

    pub fn equivalence_holds(&self) -> bool {
        self.both_structures() == self.annihilation()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "poisson-nlie": self.poisson.to_json(),
            "tp-nlie": self.transposed.to_json(),
            "prod-kills-bracket": self.product_kills_bracket.to_json(),
            "bracket-kills-prod": self.bracket_kills_product.to_json(),
            "both_structures": self.both_structures(),
            "annihilation": self.annihilation(),
            "equivalence_holds": self.equivalence_holds(),
        })
    }
}

pub fn both_poisson_and_tp_check(t: &NTPTuple) -> Result<PoissonTpReport> {
    let b = t.bindings();
    Ok(PoissonTpReport {
        poisson: check_identity("poisson-nlie", &b)?,
        transposed: check_identity("tp-nlie", &b)?,
        product_kills_bracket: check_identity("prod-kills-bracket", &b)?,
        bracket_kills_product: check_identity("bracket-kills-prod", &b)?,
    })
}

/// `(x1⊗x2)·(y1⊗y2) = x1y1⊗x2y2`,
/// `[x1⊗x2, y1⊗y2] = [x1,y1]⊗x2y2 + x1y1⊗[x2,y2]`; basis labels `a⊗b`.
pub fn tensor_product(p1: &TPPair, p2: &TPPair) -> Result<TPPair> {
    let (n1, n2) = (p1.dim(), p2.dim());
    let labels: Vec<String> = p1
        .labels()
        .iter()
        .flat_map(|a| p2.labels().iter().map(move |b| format!("{a}⊗{b}")))
        .collect();
    let idx = |i: usize, j: usize| i * n2 + j;
    let mut prod = Algebra::builder(labels.clone());
    let mut br = Algebra::builder(labels);
    for a in 0..n1 {
        for b in 0..n2 {
            for c in 0..n1 {
                for d in 0..n2 {
                    let (x, y) = (idx(a, b), idx(c, d));
                    for (k1, c1) in p1.product().basis_product(a, c) {
                        for (k2, c2) in p2.product().basis_product(b, d) {
                            prod.add(x, y, idx(*k1, *k2), c1 * c2);
                        }
                        for (k2, c2) in p2.bracket().basis_product(b, d) {
                            br.add(x, y, idx(*k1, *k2), c1 * c2);
                        }
                    }
                    for (k1, c1) in p1.bracket().basis_product(a, c) {
                        for (k2, c2) in p2.product().basis_product(b, d) {
                            br.add(x, y, idx(*k1, *k2), c1 * c2);
                        }
                    }
                }
            }
        }
    }
    let unit = match (p1.unit(), p2.unit()) {
        (Some(u1), Some(u2)) => {
            let mut v = Element::zero(n1 * n2);
            for (i, a) in u1.nonzero() {
                for (j, b) in u2.nonzero() {
                    v.0[idx(i, j)] = a * b;
                }
            }
            Some(v)
        }
        _ => None,
    };
    TPPair::new(prod.build_with_unit(unit)?, br.build()?)
}

/// `x ∘' y = φ(φ⁻¹x ∘ φ⁻¹y)`; the unit moves to `φ(1)`.
pub fn transport(a: &Algebra, phi: &LinearMap, inv: &LinearMap) -> Result<Algebra> {
    let n = a.dim();
    if phi.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            found: phi.dim(),
        });
    }
    let mut b = Algebra::builder(a.labels().iter().cloned());
    for i in 0..n {
        for j in 0..n {
            let v = phi.apply_unchecked(&a.mul_unchecked(inv.column(i), inv.column(j)));
            for (k, c) in v.nonzero() {
                b.add(i, j, k, c.clone());
            }
        }
    }
    b.build_with_unit(a.unit().map(|u| phi.apply_unchecked(u)))
}

/// Transports both operations of a pair through an invertible map and
/// re-verifies the result.
pub fn apply_basis_change(p: &TPPair, phi: &LinearMap) -> Result<TPPair> {
    let inv = phi.inverse()?;
    TPPair::new(transport(p.product(), phi, &inv)?, transport(p.bracket(), phi, &inv)?)
}

/// Sign of a permutation of `0..m`, for callers building antisymmetric data.
pub fn permutation_sign(p: &[usize]) -> i64 {
    permutations_with_sign(p.len())
        .into_iter()
        .find(|(q, _)| q == p)
        .map_or(0, |(_, s)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{euler_derivation, heis3, nary_heisenberg, poly_trunc, truncated_ddt, witt_window_pair};
    use crate::identity::check_jordan_super;

    fn euler_pair(n: usize) -> TPPair {
        let a = poly_trunc(n);
        let b = bracket_from_derivation(&a, &euler_derivation(n)).unwrap();
        TPPair::new(a, b).unwrap()
    }

    #[test]
    fn euler_bracket_table() {
        let p = euler_pair(4);
        // [t², t] = 2t³ - t³
        assert_eq!(p.bracket().basis_product(2, 1), &[(3, Scalar::one())]);
        assert_eq!(p.bracket().basis_product(1, 0), &[(1, Scalar::one())]);
        let d = p.unit_derivation().unwrap();
        assert_eq!(d, euler_derivation(4));
    }

    #[test]
    fn ddt_is_rejected_with_witness() {
        let err = bracket_from_derivation(&poly_trunc(3), &truncated_ddt(3)).unwrap_err();
        match err {
            Error::Precondition { report: Some(r), .. } => {
                let w = r.witness.unwrap();
                assert_eq!(w.labels, vec!["t", "t^2"]);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn zero_derivation_gives_zero_bracket() {
        let a = poly_trunc(3);
        assert!(bracket_from_derivation(&a, &LinearMap::zero(3)).unwrap().is_zero_product());
    }

    #[test]
    fn unverified_pairs_are_rejected() {
        let a = poly_trunc(3);
        // z = t, x = e = 1, y = h = t: 2t·(-2·1) = -4t but [t,t] + [1,t²] = t
        let err = TPPair::new(a.clone(), crate::catalog::sl2()).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
        assert!(TPPair::new(a.clone(), heis3()).is_ok());
        assert!(TPPair::new(a, Algebra::zero(heis3().labels().to_vec())).is_ok());
    }

    #[test]
    fn kantor_doubles() {
        let unit = euler_pair(1);
        let s = kantor_double(&unit).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(check_jordan_super(&s).holds);
        let s = kantor_double(&euler_pair(4)).unwrap();
        assert_eq!(s.parity(), &[0, 0, 0, 0, 1, 1, 1, 1]);
        assert!(check_jordan_super(&s).holds);
    }

    #[test]
    fn three_lie_on_witt_window() {
        let alpha = [(0, Scalar::one())].into_iter().collect();
        let p = witt_window_pair(&alpha, 5).unwrap();
        let d = LinearMap::from_columns((0..5).map(|i| Element::from_sparse(5, &[(i, Scalar::int(i as i64 + 1))])).collect());
        // the bracket here is generated by d itself, so the lift vanishes
        let t = three_lie_from_tp(&p, &d).unwrap();
        assert!(t.is_zero_product());
        assert!(three_lie_from_tp(&p, &LinearMap::zero(5)).unwrap().is_zero_product());
    }

    /// `Q[s,t]` modulo monomials of degree `≥ n`, bracket from `s∂s`, and `t∂t`.
    fn bivariate(n: u32) -> (TPPair, LinearMap) {
        let monos: Vec<(u32, u32)> = (0..n).flat_map(|d| (0..=d).map(move |a| (a, d - a))).collect();
        let labels: Vec<String> = monos.iter().map(|(a, b)| format!("s{a}t{b}")).collect();
        let k = monos.len();
        let mut b = Algebra::builder(labels);
        for (i, x) in monos.iter().enumerate() {
            for (j, y) in monos.iter().enumerate() {
                if let Some(m) = monos.iter().position(|&m| m == (x.0 + y.0, x.1 + y.1)) {
                    b.add(i, j, m, Scalar::one());
                }
            }
        }
        let prod = b.build_with_unit(Some(Element::basis(k, 0))).unwrap();
        let diag = |f: fn(&(u32, u32)) -> u32| {
            LinearMap::from_columns(
                monos
                    .iter()
                    .enumerate()
                    .map(|(i, m)| Element::from_sparse(k, &[(i, Scalar::int(f(m) as i64))]))
                    .collect(),
            )
        };
        let br = bracket_from_derivation(&prod, &diag(|m| m.0)).unwrap();
        (TPPair::new(prod, br).unwrap(), diag(|m| m.1))
    }

    #[test]
    fn three_lie_from_commuting_derivation() {
        let (p, d) = bivariate(4);
        let t = three_lie_from_tp(&p, &d).unwrap();
        assert!(!t.is_zero_product());
        assert!(t.antisymmetry_witness().is_none());
        let b = Bindings::nary_tuple(p.product(), &t);
        assert!(check_identity("tp-nlie", &b).unwrap().holds);
        assert!(check_identity("nlie-fundamental", &b).unwrap().holds);
        let probe = n_plus_one_lie_candidate(&NTPTuple::from_pair(&p), &d).unwrap();
        assert_eq!(probe.table, t);
    }

    #[test]
    fn nilpotent_examples() {
        let h = nary_heisenberg(2);
        let t = nilpotent_nlie_tp(&h, &[0, 1], 2).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(t.product().basis_product(i, j), &[(2, Scalar::one())]);
        }
        let r = both_poisson_and_tp_check(&t).unwrap();
        assert!(r.both_structures() && r.annihilation());

        let t3 = nilpotent_nlie_tp(&nary_heisenberg(3), &[0, 1, 2], 3).unwrap();
        assert_eq!(t3.arity(), 3);
        assert!(both_poisson_and_tp_check(&t3).unwrap().equivalence_holds());

        assert!(nilpotent_nlie_tp(&h, &[0, 2], 2).is_err());
        assert!(nilpotent_nlie_tp(&h, &[0, 1], 0).is_err());
        assert!(nilpotent_nlie_tp(&h, &[0, 0], 2).is_err());
        let zero = NAryAlgebra::zero(vec!["a".into(), "b".into(), "c".into()], 2);
        nilpotent_nlie_tp(&zero, &[0, 1], 2).unwrap();
    }

    #[test]
    fn poisson_tp_equivalence_fails_both_sides_on_witt_window() {
        let alpha = [(1, Scalar::one())].into_iter().collect();
        let p = witt_window_pair(&alpha, 6).unwrap();
        let r = both_poisson_and_tp_check(&NTPTuple::from_pair(&p)).unwrap();
        assert!(!r.poisson.holds && !r.annihilation() && r.equivalence_holds());
    }

    #[test]
    fn quasi_poisson_on_unital_pairs() {
        assert!(quasi_poisson_check(&euler_pair(1)).unwrap().holds);
        assert!(quasi_poisson_check(&euler_pair(3)).unwrap().holds);
        let alpha = [(1, Scalar::one())].into_iter().collect();
        assert!(quasi_poisson_check(&witt_window_pair(&alpha, 4).unwrap()).is_err());
    }

    #[test]
    fn tensor_and_transport() {
        let t = tensor_product(&euler_pair(2), &euler_pair(2)).unwrap();
        assert_eq!(t.labels()[1], "1⊗t");
        assert_eq!(t.unit().unwrap(), &Element::basis(4, 0));
        let p = euler_pair(3);
        assert_eq!(apply_basis_change(&p, &LinearMap::identity(3)).unwrap(), p);
        assert!(matches!(apply_basis_change(&p, &LinearMap::zero(3)), Err(Error::Singular)));
    }
}
