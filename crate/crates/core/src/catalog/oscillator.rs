//! Oscillator Lie algebras `𝔏_λ` on the basis `e-1, e0, e1..en, ě1..ěn`.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element, LinearMap};
use crate::constructions::TPPair;
use crate::error::{Error, Result};
use crate::exact::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OscillatorParams {
    lambda: Vec<Scalar>,
    generic: bool,
}

impl OscillatorParams {
    /// `0 < λ_1 ≤ … ≤ λ_n`; with `generic`, also `λ_1 = 1`, strict increase
    /// and `λ_i + λ_j ≠ λ_k` for `i < j < k`.
    pub fn new(lambda: Vec<Scalar>, generic: bool) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidParams("oscillator needs n ≥ 1".into()));
        }
        if let Some(l) = lambda.iter().find(|l| !l.is_positive()) {
            return Err(Error::InvalidParams(format!("λ = {l} is not a positive rational")));
        }
        let r: Vec<_> = lambda.iter().map(|l| l.re()).collect();
        if r.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParams("λ must be ascending".into()));
        }
        if generic {
            if !lambda[0].is_one() {
                return Err(Error::InvalidParams("generic λ needs λ1 = 1".into()));
            }
            if r.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParams("generic λ must be strictly increasing".into()));
            }
            let n = r.len();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if &r[i] + &r[j] == r[k] {
                            return Err(Error::InvalidParams(format!(
                                "generic λ violated: λ{} + λ{} = λ{}",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(OscillatorParams { lambda, generic })
    }

    /// Parses `"1,3/2"` style λ lists.
    pub fn parse(lambda: &str, generic: bool) -> Result<Self> {
        let v = lambda
            .split(',')
            .map(|s| s.trim().parse::<Scalar>())
            .collect::<Result<Vec<_>>>()?;
        OscillatorParams::new(v, generic)
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn is_generic(&self) -> bool {
        self.generic
    }

    pub fn dim(&self) -> usize {
        2 * self.n() + 2
    }

    pub fn labels(&self) -> Vec<String> {
        let n = self.n();
        let mut l = vec!["e-1".to_string(), "e0".to_string()];
        l.extend((1..=n).map(|j| format!("e{j}")));
        l.extend((1..=n).map(|j| format!("ě{j}")));
        l
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "lambda": self.lambda.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "generic": self.generic,
        })
    }
}

pub(crate) const EM1: usize = 0;
pub(crate) const E0: usize = 1;

/// Index of `e_j`, `j` 1-based.
pub(crate) fn e(j: usize) -> usize {
    1 + j
}

/// Index of `ě_j`, `j` 1-based.
pub(crate) fn ec(n: usize, j: usize) -> usize {
    1 + n + j
}

/// `[e-1,e_j] = λ_j ě_j`, `[e-1,ě_j] = -λ_j e_j`, `[e_j,ě_j] = e0`.
pub fn oscillator(p: &OscillatorParams) -> Algebra {
    let n = p.n();
    let mut b = Algebra::builder(p.labels());
    for (j, l) in (1..=n).zip(&p.lambda) {
        b.antisym(EM1, e(j), ec(n, j), l.clone());
        b.antisym(EM1, ec(n, j), e(j), -l);
        b.antisym(e(j), ec(n, j), E0, Scalar::one());
    }
    b.build().expect("indices in range")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfDerParams {
    pub gamma: Scalar,
    pub mu: Scalar,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
}

impl HalfDerParams {
    pub fn zero(n: usize) -> Self {
        HalfDerParams {
            gamma: Scalar::zero(),
            mu: Scalar::zero(),
            alpha: vec![Scalar::zero(); n],
            beta: vec![Scalar::zero(); n],
        }
    }

    pub fn gamma(n: usize, gamma: Scalar) -> Self {
        HalfDerParams {
            gamma,
            ..HalfDerParams::zero(n)
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        for (name, v) in [("α", &self.alpha), ("β", &self.beta)] {
            if v.len() != n {
                return Err(Error::InvalidParams(format!("{name} has length {}, expected {n}", v.len())));
            }
        }
        Ok(())
    }

    pub fn is_poisson_case(&self) -> bool {
        self.gamma.is_zero() && self.alpha.iter().chain(&self.beta).all(Scalar::is_zero)
    }
}

/// `φ(e-1) = γe-1 + μe0 - Σ 2λ_j(α_j e_j + β_j ě_j)`, `φ(e0) = γe0`,
/// `φ(e_j) = α_j e0 + γe_j`, `φ(ě_j) = β_j e0 + γě_j`.
pub fn oscillator_half_derivation(p: &OscillatorParams, h: &HalfDerParams) -> Result<LinearMap> {
    let n = p.n();
    h.check(n)?;
    let dim = p.dim();
    let two = Scalar::int(2);
    let mut first = vec![(EM1, h.gamma.clone()), (E0, h.mu.clone())];
    for j in 1..=n {
        let tl = &two * &p.lambda[j - 1];
        first.push((e(j), -(&tl * &h.alpha[j - 1])));
        first.push((ec(n, j), -(&tl * &h.beta[j - 1])));
    }
    let mut cols = vec![Element::from_sparse(dim, &first), Element::from_sparse(dim, &[(E0, h.gamma.clone())])];
    for j in 1..=n {
        cols.push(Element::from_sparse(dim, &[(E0, h.alpha[j - 1].clone()), (e(j), h.gamma.clone())]));
    }
    for j in 1..=n {
        cols.push(Element::from_sparse(dim, &[(E0, h.beta[j - 1].clone()), (ec(n, j), h.gamma.clone())]));
    }
    Ok(LinearMap::from_columns(cols))
}

/// The commutative product `x·y` with `x·e-1 = φ(x)` for the ½-derivation
/// `φ` of the same parameters.
pub fn oscillator_tp_product(p: &OscillatorParams, h: &HalfDerParams) -> Result<Algebra> {
    let n = p.n();
    h.check(n)?;
    let mut b = Algebra::builder(p.labels());
    let two = Scalar::int(2);
    b.add(EM1, EM1, EM1, h.gamma.clone());
    b.add(EM1, EM1, E0, h.mu.clone());
    b.sym(EM1, E0, E0, h.gamma.clone());
    for j in 1..=n {
        let l = &p.lambda[j - 1];
        let tl = &two * l;
        b.add(EM1, EM1, e(j), -(&tl * &h.alpha[j - 1]));
        b.add(EM1, EM1, ec(n, j), -(&tl * &h.beta[j - 1]));
        b.sym(EM1, e(j), E0, h.alpha[j - 1].clone());
        b.sym(EM1, e(j), e(j), h.gamma.clone());
        b.sym(EM1, ec(n, j), E0, h.beta[j - 1].clone());
        b.sym(EM1, ec(n, j), ec(n, j), h.gamma.clone());
        let sq = -(h.gamma.checked_div(&tl)?);
        b.add(e(j), e(j), E0, sq.clone());
        b.add(ec(n, j), ec(n, j), E0, sq);
    }
    b.build()
}

/// Verified pair of the oscillator bracket and its TP product.
pub fn oscillator_tp_pair(p: &OscillatorParams, h: &HalfDerParams) -> Result<TPPair> {
    TPPair::new(oscillator_tp_product(p, h)?, oscillator(p))
}

/// Automorphism parameters: sign `ε`, `ν`, and per-index `μ_i, μ̌_i, ν_i, ν̌_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutomorphismParams {
    pub negative: bool,
    pub nu: Scalar,
    pub mu: Vec<Scalar>,
    pub mu_check: Vec<Scalar>,
    pub nu_i: Vec<Scalar>,
    pub nu_check: Vec<Scalar>,
}

impl AutomorphismParams {
    pub fn identity(n: usize) -> Self {
        AutomorphismParams {
            negative: false,
            nu: Scalar::zero(),
            mu: vec![Scalar::one(); n],
            mu_check: vec![Scalar::zero(); n],
            nu_i: vec![Scalar::zero(); n],
            nu_check: vec![Scalar::zero(); n],
        }
    }

    /// `e-1 ↦ -e-1`, `e0 ↦ -e0`, `e_i ↦ e_i`, `ě_i ↦ -ě_i`.
    pub fn negative(n: usize) -> Self {
        AutomorphismParams {
            negative: true,
            ..AutomorphismParams::identity(n)
        }
    }

    pub fn epsilon(&self) -> Scalar {
        if self.negative {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    }

    /// `ξ = μ_i² + μ̌_i²`, required nonzero and independent of `i`.
    pub fn xi(&self) -> Result<Scalar> {
        let xs: Vec<Scalar> = self
            .mu
            .iter()
            .zip(&self.mu_check)
            .map(|(m, c)| &(m * m) + &(c * c))
            .collect();
        let first = xs
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidParams("empty automorphism parameters".into()))?;
        if first.is_zero() {
            return Err(Error::InvalidParams("ξ = 0: map is not invertible".into()));
        }
        if let Some(i) = xs.iter().position(|x| x != &first) {
            return Err(Error::InvalidParams(format!(
                "ξ differs between index 1 ({first}) and index {} ({})",
                i + 1,
                xs[i]
            )));
        }
        Ok(first)
    }
}

/// `φ(e-1) = εe-1 + νe0 + Σ ν_i e_i + Σ ν̌_i ě_i`, `φ(e0) = εξ e0`,
/// `φ(e_i) = ((ν̌_i μ̌_i - εν_i μ_i)/λ_i) e0 + μ_i e_i - εμ̌_i ě_i`,
/// `φ(ě_i) = ((-εν_i μ̌_i - ν̌_i μ_i)/λ_i) e0 + μ̌_i e_i + εμ_i ě_i`.
///
/// The result is checked against the bracket before it is returned.
pub fn oscillator_automorphism(p: &OscillatorParams, a: &AutomorphismParams) -> Result<LinearMap> {
    let n = p.n();
    for (name, v) in [("μ", &a.mu), ("μ̌", &a.mu_check), ("ν_i", &a.nu_i), ("ν̌_i", &a.nu_check)] {
        if v.len() != n {
            return Err(Error::InvalidParams(format!("{name} has length {}, expected {n}", v.len())));
        }
    }
    let xi = a.xi()?;
    let eps = a.epsilon();
    let dim = p.dim();
    let mut first = vec![(EM1, eps.clone()), (E0, a.nu.clone())];
    for i in 1..=n {
        first.push((e(i), a.nu_i[i - 1].clone()));
        first.push((ec(n, i), a.nu_check[i - 1].clone()));
    }
    let mut cols = vec![Element::from_sparse(dim, &first), Element::from_sparse(dim, &[(E0, &eps * &xi)])];
    let mut checks = Vec::new();
    for i in 1..=n {
        let (m, mc, v, vc, l) = (&a.mu[i - 1], &a.mu_check[i - 1], &a.nu_i[i - 1], &a.nu_check[i - 1], &p.lambda[i - 1]);
        let c0 = (&(vc * mc) - &(&(&eps * v) * m)).checked_div(l)?;
        cols.push(Element::from_sparse(dim, &[(E0, c0), (e(i), m.clone()), (ec(n, i), -(&eps * mc))]));
        let d0 = (&(&(-&eps) * v) * mc - vc * m).checked_div(l)?;
        checks.push(Element::from_sparse(dim, &[(E0, d0), (e(i), mc.clone()), (ec(n, i), &eps * m)]));
    }
    cols.extend(checks);
    let phi = LinearMap::from_columns(cols);
    let osc = oscillator(p);
    if let Some((i, j)) = automorphism_witness(&osc, &phi) {
        let l = osc.labels();
        return Err(Error::InvalidParams(format!(
            "bracket not preserved at ({}, {}); λ may not be generic",
            l[i], l[j]
        )));
    }
    Ok(phi)
}

/// First basis pair with `φ[x,y] ≠ [φx,φy]`.
pub fn automorphism_witness(a: &Algebra, phi: &LinearMap) -> Option<(usize, usize)> {
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let lhs = phi.apply_unchecked(&a.mul_unchecked(&Element::basis(n, i), &Element::basis(n, j)));
            lhs != a.mul_unchecked(phi.column(i), phi.column(j))
        })
}

/// Families of TP products on a generic oscillator algebra up to isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassificationFamily {
    /// Non-nilpotent, `γ ≠ 0`.
    A { gamma: Scalar },
    /// Nilpotent with the `e0` term in `e-1·e-1`.
    Ba { beta: Vec<Scalar> },
    /// Nilpotent without it.
    Bb { beta: Vec<Scalar> },
}

impl ClassificationFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassificationFamily::A { .. } => "A",
            ClassificationFamily::Ba { .. } => "B.a",
            ClassificationFamily::Bb { .. } => "B.b",
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self {
            ClassificationFamily::A { gamma } => {
                if gamma.is_zero() {
                    return Err(Error::InvalidParams("family A needs γ ≠ 0".into()));
                }
            }
            ClassificationFamily::Ba { beta } | ClassificationFamily::Bb { beta } => {
                if beta.len() != n {
                    return Err(Error::InvalidParams(format!("β has length {}, expected {n}", beta.len())));
                }
                if let Some(b) = beta.iter().find(|b| !b.in_closed_right_half_plane()) {
                    return Err(Error::InvalidParams(format!("β = {b} is outside ℂ>0")));
                }
                if let Some(b) = beta.iter().find(|b| !b.is_zero()) {
                    if !b.is_one() {
                        return Err(Error::InvalidParams("first nonzero β must be 1".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn half_der(&self, n: usize) -> HalfDerParams {
        match self {
            ClassificationFamily::A { gamma } => HalfDerParams::gamma(n, gamma.clone()),
            ClassificationFamily::Ba { beta } => HalfDerParams {
                mu: Scalar::one(),
                beta: beta.clone(),
                ..HalfDerParams::zero(n)
            },
            ClassificationFamily::Bb { beta } => HalfDerParams {
                beta: beta.clone(),
                ..HalfDerParams::zero(n)
            },
        }
    }
}

/// Representative product of a family, verified together with the bracket
/// and checked for the nilpotency the family prescribes.
pub fn canonical_tp_product(p: &OscillatorParams, f: &ClassificationFamily) -> Result<Algebra> {
    if !p.is_generic() {
        return Err(Error::InvalidParams("classification needs generic λ".into()));
    }
    let n = p.n();
    f.check(n)?;
    let prod = oscillator_tp_product(p, &f.half_der(n))?;
    let pair = TPPair::new(prod, oscillator(p))?;
    let prod = pair.product().clone();
    match f {
        ClassificationFamily::A { .. } => {
            let x = Element::basis(p.dim(), EM1);
            let mut power = x.clone();
            for k in 2..=2 * n + 3 {
                power = prod.mul_unchecked(&power, &x);
                if power.is_zero() {
                    return Err(Error::precondition(format!("e-1^{k} vanishes in family A")));
                }
            }
        }
        _ => {
            if !prod.is_nilpotent() {
                return Err(Error::precondition("family B product is not nilpotent"));
            }
        }
    }
    Ok(prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{check_identity, Bindings};
    use crate::solvers::{delta_derivation_witness, delta_derivations};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    #[test]
    fn n1_brackets() {
        let p = OscillatorParams::new(vec![Scalar::one()], false).unwrap();
        let l = oscillator(&p);
        assert_eq!(l.basis_product(EM1, e(1)), &[(ec(1, 1), Scalar::one())]);
        assert_eq!(l.basis_product(EM1, ec(1, 1)), &[(e(1), -Scalar::one())]);
        assert_eq!(l.basis_product(e(1), ec(1, 1)), &[(E0, Scalar::one())]);
        assert!(check_identity("jacobi", &Bindings::bracket(&l)).unwrap().holds);
    }

    #[test]
    fn parameter_validation() {
        assert!(OscillatorParams::new(vec![Scalar::int(2), Scalar::one()], false).is_err());
        assert!(OscillatorParams::new(vec![Scalar::zero()], false).is_err());
        assert!(OscillatorParams::new(vec![Scalar::i()], false).is_err());
        assert!(OscillatorParams::new(vec![Scalar::one(), Scalar::one()], false).is_ok());
        assert!(OscillatorParams::new(vec![Scalar::one(), Scalar::one()], true).is_err());
        assert!(OscillatorParams::new(vec![Scalar::one(), Scalar::int(2), Scalar::int(3)], true).is_err());
        assert!(OscillatorParams::new(vec![Scalar::one(), Scalar::int(2), q(7, 2)], true).is_ok());
    }

    #[test]
    fn half_derivation_example() {
        let p = OscillatorParams::new(vec![Scalar::one()], false).unwrap();
        let h = HalfDerParams {
            alpha: vec![Scalar::one()],
            ..HalfDerParams::zero(1)
        };
        let phi = oscillator_half_derivation(&p, &h).unwrap();
        assert_eq!(phi.column(EM1), &Element::from_sparse(4, &[(e(1), Scalar::int(-2))]));
        assert_eq!(phi.column(e(1)), &Element::basis(4, E0));
        assert!(phi.column(E0).is_zero() && phi.column(ec(1, 1)).is_zero());
        let l = oscillator(&p);
        assert!(delta_derivation_witness(&l, &phi, &q(1, 2)).unwrap().is_none());
        let id = oscillator_half_derivation(&p, &HalfDerParams::gamma(1, Scalar::one())).unwrap();
        assert_eq!(id, LinearMap::identity(4));
    }

    #[test]
    fn half_derivation_family_spans_solver_output() {
        let p = OscillatorParams::new(vec![Scalar::one(), q(3, 2)], false).unwrap();
        let space = delta_derivations(&oscillator(&p), &q(1, 2)).unwrap();
        assert_eq!(space.dimension(), 6);
        let mut units = Vec::new();
        for k in 0..6 {
            let mut h = HalfDerParams::zero(2);
            match k {
                0 => h.gamma = Scalar::one(),
                1 => h.mu = Scalar::one(),
                2 | 3 => h.alpha[k - 2] = Scalar::one(),
                _ => h.beta[k - 4] = Scalar::one(),
            }
            units.push(oscillator_half_derivation(&p, &h).unwrap());
        }
        for u in &units {
            assert!(space.contains_linear(u));
        }
        let flat: Vec<Element> = units.iter().map(|m| Element(m.to_row_major())).collect();
        assert_eq!(crate::linsolve::row_space(&flat, 36).len(), 6);
    }

    #[test]
    fn tp_product_example() {
        let p = OscillatorParams::new(vec![Scalar::one()], false).unwrap();
        let pair = oscillator_tp_pair(&p, &HalfDerParams::gamma(1, Scalar::int(2))).unwrap();
        assert_eq!(pair.product().basis_product(e(1), e(1)), &[(E0, -Scalar::one())]);
        assert_eq!(pair.product().basis_product(ec(1, 1), ec(1, 1)), &[(E0, -Scalar::one())]);
        let h = HalfDerParams {
            gamma: Scalar::one(),
            alpha: vec![Scalar::one()],
            ..HalfDerParams::zero(1)
        };
        let pair = oscillator_tp_pair(&p, &h).unwrap();
        assert!(!check_identity("poisson-leibniz", &pair.bindings()).unwrap().holds);
        assert!(oscillator_tp_product(&p, &HalfDerParams::zero(1)).unwrap().is_zero_product());
        assert!(oscillator_tp_product(&p, &HalfDerParams::zero(2)).is_err());
    }

    #[test]
    fn automorphisms() {
        let p = OscillatorParams::new(vec![Scalar::one(), Scalar::int(3)], true).unwrap();
        let id = oscillator_automorphism(&p, &AutomorphismParams::identity(2)).unwrap();
        assert_eq!(id, LinearMap::identity(6));
        let neg = oscillator_automorphism(&p, &AutomorphismParams::negative(2)).unwrap();
        assert_eq!(neg.column(EM1), &Element::basis(6, EM1).neg());
        assert_eq!(neg.column(E0), &Element::basis(6, E0).neg());
        assert_eq!(neg.column(e(2)), &Element::basis(6, e(2)));
        assert_eq!(neg.column(ec(2, 2)), &Element::basis(6, ec(2, 2)).neg());

        let general = AutomorphismParams {
            negative: true,
            nu: q(1, 3),
            mu: vec![Scalar::int(3), Scalar::int(4)],
            mu_check: vec![Scalar::int(4), Scalar::int(3)],
            nu_i: vec![Scalar::int(2), q(-1, 2)],
            nu_check: vec![Scalar::int(-1), Scalar::int(5)],
        };
        oscillator_automorphism(&p, &general).unwrap();

        let mut bad = AutomorphismParams::identity(2);
        bad.mu[1] = Scalar::int(2);
        assert!(oscillator_automorphism(&p, &bad).is_err());
        let mut zero = AutomorphismParams::identity(2);
        zero.mu = vec![Scalar::one(), Scalar::i()];
        zero.mu_check = vec![Scalar::i(), Scalar::one()];
        assert!(oscillator_automorphism(&p, &zero).is_err());
    }

    #[test]
    fn families() {
        let p = OscillatorParams::new(vec![Scalar::one()], true).unwrap();
        let a = canonical_tp_product(&p, &ClassificationFamily::A { gamma: Scalar::one() }).unwrap();
        let b = Bindings::pair(&a, &oscillator(&p));
        assert!(!check_identity("poisson-leibniz", &b).unwrap().holds);
        let bb = canonical_tp_product(&p, &ClassificationFamily::Bb { beta: vec![Scalar::one()] }).unwrap();
        assert!(bb.is_nilpotent() && !bb.is_zero_product());
        let ba = canonical_tp_product(&p, &ClassificationFamily::Ba { beta: vec![Scalar::one()] }).unwrap();
        assert!(ba.is_nilpotent());
        let triv = canonical_tp_product(&p, &ClassificationFamily::Bb { beta: vec![Scalar::zero()] }).unwrap();
        assert!(triv.is_zero_product());

        assert!(canonical_tp_product(&p, &ClassificationFamily::A { gamma: Scalar::zero() }).is_err());
        assert!(canonical_tp_product(&p, &ClassificationFamily::Ba { beta: vec![Scalar::int(2)] }).is_err());
        assert!(canonical_tp_product(&p, &ClassificationFamily::Ba { beta: vec![-Scalar::one()] }).is_err());
        let p2 = OscillatorParams::new(vec![Scalar::one(), Scalar::int(2)], true).unwrap();
        let beta = vec![Scalar::one(), Scalar::i()];
        canonical_tp_product(&p2, &ClassificationFamily::Ba { beta }).unwrap();
        let beta = vec![Scalar::one(), -Scalar::i()];
        assert!(canonical_tp_product(&p2, &ClassificationFamily::Ba { beta }).is_err());
        let nongeneric = OscillatorParams::new(vec![Scalar::one()], false).unwrap();
        assert!(canonical_tp_product(&nongeneric, &ClassificationFamily::A { gamma: Scalar::one() }).is_err());
    }
}
