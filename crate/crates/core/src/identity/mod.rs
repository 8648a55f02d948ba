//! Identity catalog and the basis-tuple checker.
//!
//! Every defect in the catalog is multilinear in its arguments once the
//! slots are bound, and scalars live in a field of characteristic 0, so a
//! defect vanishing on all basis tuples vanishes everywhere.

pub mod catalog;
mod report;
mod superjordan;
pub mod term;

use rayon::prelude::*;

use crate::algebra::{Algebra, Element, LinearMap, NAryAlgebra};
use crate::error::{Error, Result};
use crate::exact::Scalar;

pub use catalog::{catalog_table, lookup, IdentitySpec};
pub use report::{CheckReport, Witness};
pub use superjordan::check_jordan_super;
pub use term::{Slot, Term};

/// Anything identities can be evaluated in: a set of basis elements and the
/// slot operations on elements.
pub trait Structure: Sync {
    type Elem: Clone + Send + Sync;

    /// Basis elements in checking order, with their display index and label.
    fn basis(&self) -> Vec<(i64, String, Self::Elem)>;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn axpy(&self, acc: &mut Self::Elem, k: &Scalar, x: &Self::Elem);
    fn has(&self, slot: Slot) -> bool;
    /// Arity of the bound n-ary bracket, if any.
    fn nary_arity(&self) -> Option<usize>;
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn map(&self, x: &Self::Elem) -> Self::Elem;
    fn nary(&self, args: &[Self::Elem]) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn fixed(&self) -> Self::Elem;
    /// Nonzero coordinates as `(display index, coefficient)`.
    fn coords(&self, e: &Self::Elem) -> Vec<(i64, Scalar)>;
    fn render(&self, e: &Self::Elem) -> String;
}

pub fn eval<S: Structure>(s: &S, t: &Term, args: &[S::Elem]) -> S::Elem {
    match t {
        Term::Var(i) => args[*i].clone(),
        Term::Unit => s.unit(),
        Term::Fixed => s.fixed(),
        Term::Mul(a, b) => s.product(&eval(s, a, args), &eval(s, b, args)),
        Term::Br(a, b) => s.bracket(&eval(s, a, args), &eval(s, b, args)),
        Term::Map(a) => s.map(&eval(s, a, args)),
        Term::NAry(xs) => {
            let vals: Vec<S::Elem> = xs.iter().map(|a| eval(s, a, args)).collect();
            s.nary(&vals)
        }
        Term::Lin(parts) => {
            let mut acc = s.zero();
            for (c, a) in parts {
                s.axpy(&mut acc, c, &eval(s, a, args));
            }
            acc
        }
    }
}

/// Slot operands for finite-dimensional checks.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub product: Option<Algebra>,
    pub bracket: Option<Algebra>,
    pub map: Option<LinearMap>,
    pub nary: Option<NAryAlgebra>,
    pub unit: Option<Element>,
    pub fixed: Option<Element>,
}

impl Bindings {
    pub fn pair(product: &Algebra, bracket: &Algebra) -> Self {
        Bindings {
            product: Some(product.clone()),
            bracket: Some(bracket.clone()),
            ..Default::default()
        }
    }

    pub fn product(a: &Algebra) -> Self {
        Bindings {
            product: Some(a.clone()),
            ..Default::default()
        }
    }

    pub fn bracket(a: &Algebra) -> Self {
        Bindings {
            bracket: Some(a.clone()),
            ..Default::default()
        }
    }

    pub fn nary_tuple(product: &Algebra, bracket: &NAryAlgebra) -> Self {
        Bindings {
            product: Some(product.clone()),
            nary: Some(bracket.clone()),
            ..Default::default()
        }
    }

    pub fn with_map(mut self, m: &LinearMap) -> Self {
        self.map = Some(m.clone());
        self
    }

    pub fn with_fixed(mut self, h: &Element) -> Self {
        self.fixed = Some(h.clone());
        self
    }

    pub fn with_unit(mut self, u: &Element) -> Self {
        self.unit = Some(u.clone());
        self
    }

    pub fn dim(&self) -> Option<usize> {
        self.product
            .as_ref()
            .map(Algebra::dim)
            .or(self.bracket.as_ref().map(Algebra::dim))
            .or(self.nary.as_ref().map(NAryAlgebra::dim))
    }

    fn labels(&self) -> Vec<String> {
        self.product
            .as_ref()
            .map(|a| a.labels().to_vec())
            .or(self.bracket.as_ref().map(|a| a.labels().to_vec()))
            .or(self.nary.as_ref().map(|a| a.labels().to_vec()))
            .unwrap_or_default()
    }

    fn effective_unit(&self) -> Option<&Element> {
        self.unit
            .as_ref()
            .or_else(|| self.product.as_ref().and_then(Algebra::unit))
    }

    /// All bound operands agree on the dimension.
    pub fn validate(&self) -> Result<usize> {
        let n = self
            .dim()
            .ok_or_else(|| Error::InvalidParams("no algebra bound".into()))?;
        let dims = [
            self.product.as_ref().map(Algebra::dim),
            self.bracket.as_ref().map(Algebra::dim),
            self.nary.as_ref().map(NAryAlgebra::dim),
            self.map.as_ref().map(LinearMap::dim),
            self.unit.as_ref().map(Element::dim),
            self.fixed.as_ref().map(Element::dim),
        ];
        for d in dims.into_iter().flatten() {
            if d != n {
                return Err(Error::Dimension { expected: n, found: d });
            }
        }
        Ok(n)
    }
}

impl Structure for Bindings {
    type Elem = Element;

    fn basis(&self) -> Vec<(i64, String, Element)> {
        let n = self.dim().unwrap_or(0);
        self.labels()
            .into_iter()
            .enumerate()
            .map(|(i, l)| (i as i64, l, Element::basis(n, i)))
            .collect()
    }

    fn zero(&self) -> Element {
        Element::zero(self.dim().unwrap_or(0))
    }

    fn is_zero(&self, e: &Element) -> bool {
        e.is_zero()
    }

    fn axpy(&self, acc: &mut Element, k: &Scalar, x: &Element) {
        acc.axpy(k, x);
    }

    fn has(&self, slot: Slot) -> bool {
        match slot {
            Slot::Product => self.product.is_some(),
            Slot::Bracket => self.bracket.is_some(),
            Slot::Unit => self.effective_unit().is_some(),
            Slot::Map => self.map.is_some(),
            Slot::NAry => self.nary.is_some() || self.bracket.is_some(),
            Slot::Fixed => self.fixed.is_some(),
        }
    }

    fn nary_arity(&self) -> Option<usize> {
        match (&self.nary, &self.bracket) {
            (Some(a), _) => Some(a.arity()),
            (None, Some(_)) => Some(2),
            _ => None,
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Element {
        self.product.as_ref().expect("product bound").mul_unchecked(x, y)
    }

    fn bracket(&self, x: &Element, y: &Element) -> Element {
        self.bracket.as_ref().expect("bracket bound").mul_unchecked(x, y)
    }

    fn map(&self, x: &Element) -> Element {
        self.map.as_ref().expect("map bound").apply_unchecked(x)
    }

    fn nary(&self, args: &[Element]) -> Element {
        match &self.nary {
            Some(a) => a.apply_refs(&args.iter().collect::<Vec<_>>()),
            None => self.bracket(&args[0], &args[1]),
        }
    }

    fn unit(&self) -> Element {
        self.effective_unit().expect("unit bound").clone()
    }

    fn fixed(&self) -> Element {
        self.fixed.clone().expect("fixed element bound")
    }

    fn coords(&self, e: &Element) -> Vec<(i64, Scalar)> {
        e.nonzero().map(|(i, c)| (i as i64, c.clone())).collect()
    }

    fn render(&self, e: &Element) -> String {
        e.render(&self.labels())
    }
}

/// Resolves `id` against the structure's n-ary arity and checks slots.
pub fn resolve<S: Structure>(id: &str, s: &S) -> Result<IdentitySpec> {
    let base = catalog::base_id(id);
    let n = if catalog::NARY_IDS.contains(&base) {
        s.nary_arity().ok_or_else(|| Error::MissingSlot {
            id: base.to_string(),
            slot: Slot::NAry.name().to_string(),
        })?
    } else {
        2
    };
    let spec = lookup(id, n)?;
    for slot in spec.slots() {
        if !s.has(slot) {
            return Err(Error::MissingSlot {
                id: spec.id.clone(),
                slot: slot.name().to_string(),
            });
        }
    }
    Ok(spec)
}

/// Checks `id` on every basis tuple; the witness is the lexicographically
/// first tuple with nonzero defect.
pub fn check_identity(id: &str, b: &Bindings) -> Result<CheckReport> {
    b.validate()?;
    check_in(id, b)
}

/// As [`check_identity`] for any [`Structure`].
pub fn check_in<S: Structure>(id: &str, s: &S) -> Result<CheckReport> {
    let spec = resolve(id, s)?;
    Ok(check_spec(&spec, s))
}

pub fn check_spec<S: Structure>(spec: &IdentitySpec, s: &S) -> CheckReport {
    let basis = s.basis();
    let m = basis.len() as u64;
    let total = m.pow(spec.arity as u32);
    let decode = |mut code: u64| {
        let mut t = vec![0usize; spec.arity];
        for slot in (0..spec.arity).rev() {
            t[slot] = (code % m) as usize;
            code /= m;
        }
        t
    };
    let first = (0..total)
        .into_par_iter()
        .map(|code| {
            let t = decode(code);
            let args: Vec<S::Elem> = t.iter().map(|&i| basis[i].2.clone()).collect();
            (code, t, eval(s, &spec.defect, &args))
        })
        .find_first(|(_, _, d)| !s.is_zero(d));
    match first {
        None => CheckReport::holds(&spec.id, total),
        Some((code, t, d)) => CheckReport::fails(
            &spec.id,
            code + 1,
            Witness {
                indices: t.iter().map(|&i| basis[i].0).collect(),
                labels: t.iter().map(|&i| basis[i].1.clone()).collect(),
                defect: s.coords(&d),
                rendered: s.render(&d),
            },
        ),
    }
}

/// The defect of `id` at arbitrary elements.
pub fn evaluate_defect<S: Structure>(id: &str, s: &S, args: &[S::Elem]) -> Result<S::Elem> {
    let spec = resolve(id, s)?;
    if args.len() != spec.arity {
        return Err(Error::Dimension {
            expected: spec.arity,
            found: args.len(),
        });
    }
    Ok(eval(s, &spec.defect, args))
}

/// Runs several identities and returns every report in order.
pub fn check_all(ids: &[&str], b: &Bindings) -> Result<Vec<CheckReport>> {
    ids.iter().map(|id| check_identity(id, b)).collect()
}
