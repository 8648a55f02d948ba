//! TP pairs on the Witt algebra and on `W(1)`: `e_i·e_j = Σ_t α_t e_{i+j+t}`.

use std::collections::BTreeMap;

use crate::algebra::element::render_terms;
use crate::algebra::{Algebra, GradedAlgebra, GradedElement};
use crate::constructions::TPPair;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::identity::{check_in, CheckReport, Slot, Structure};

/// Rule-based graded pair; identities are checked on basis tuples drawn from
/// an index window while products are taken in the full algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittTpPair {
    algebra: GradedAlgebra,
    alpha: BTreeMap<i64, Scalar>,
    window: (i64, i64),
}

pub fn witt_tp_pair(algebra: GradedAlgebra, alpha: BTreeMap<i64, Scalar>) -> Result<WittTpPair> {
    let alpha: BTreeMap<i64, Scalar> = alpha.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    if algebra == GradedAlgebra::CartanW1 {
        if let Some(t) = alpha.keys().find(|&&t| t <= 0) {
            return Err(Error::InvalidParams(format!("W(1) needs offsets t > 0, got {t}")));
        }
    }
    let window = match algebra {
        GradedAlgebra::CartanW1 => (-1, 12),
        GradedAlgebra::Witt => (-10, 10),
    };
    Ok(WittTpPair { algebra, alpha, window })
}

impl WittTpPair {
    pub fn with_window(mut self, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi || !self.algebra.is_valid_index(lo) {
            return Err(Error::InvalidParams(format!("bad index window [{lo}, {hi}]")));
        }
        self.window = (lo, hi);
        Ok(self)
    }

    pub fn algebra(&self) -> GradedAlgebra {
        self.algebra
    }

    pub fn alpha(&self) -> &BTreeMap<i64, Scalar> {
        &self.alpha
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn window_size(&self) -> usize {
        (self.window.1 - self.window.0 + 1) as usize
    }

    pub fn mul(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (i, a) in &x.0 {
            for (j, b) in &y.0 {
                let ab = a * b;
                for (t, c) in &self.alpha {
                    out.add_term(i + j + t, &(&ab * c));
                }
            }
        }
        out
    }

    pub fn check(&self, id: &str) -> Result<CheckReport> {
        check_in(id, self)
    }
}

impl Structure for WittTpPair {
    type Elem = GradedElement;

    fn basis(&self) -> Vec<(i64, String, GradedElement)> {
        (self.window.0..=self.window.1)
            .map(|i| (i, GradedAlgebra::label(i), GradedElement::basis(i)))
            .collect()
    }

    fn zero(&self) -> GradedElement {
        GradedElement::zero()
    }

    fn is_zero(&self, e: &GradedElement) -> bool {
        e.is_zero()
    }

    fn axpy(&self, acc: &mut GradedElement, k: &Scalar, x: &GradedElement) {
        acc.axpy(k, x);
    }

    fn has(&self, slot: Slot) -> bool {
        matches!(slot, Slot::Product | Slot::Bracket | Slot::NAry)
    }

    fn nary_arity(&self) -> Option<usize> {
        Some(2)
    }

    fn product(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        self.mul(x, y)
    }

    fn bracket(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        self.algebra.bracket(x, y)
    }

    fn map(&self, _: &GradedElement) -> GradedElement {
        unreachable!("no map slot")
    }

    fn nary(&self, args: &[GradedElement]) -> GradedElement {
        self.algebra.bracket(&args[0], &args[1])
    }

    fn unit(&self) -> GradedElement {
        unreachable!("no unit slot")
    }

    fn fixed(&self) -> GradedElement {
        unreachable!("no fixed slot")
    }

    fn coords(&self, e: &GradedElement) -> Vec<(i64, Scalar)> {
        e.0.iter().map(|(i, c)| (*i, c.clone())).collect()
    }

    fn render(&self, e: &GradedElement) -> String {
        let labels: Vec<String> = e.0.keys().map(|&i| GradedAlgebra::label(i)).collect();
        render_terms(labels.iter().map(String::as_str).zip(e.0.values()))
    }
}

/// Finite quotient of the positive part: basis `e1..eN`, anything of index
/// above `N` set to zero. Needs every offset `t ≥ -1`.
pub fn witt_window_pair(alpha: &BTreeMap<i64, Scalar>, top: usize) -> Result<TPPair> {
    if top == 0 {
        return Err(Error::InvalidParams("window needs N ≥ 1".into()));
    }
    if let Some(t) = alpha.keys().find(|&&t| t < -1) {
        return Err(Error::InvalidParams(format!("offset {t} leaves the positive part")));
    }
    let n = top as i64;
    let labels: Vec<String> = (1..=n).map(GradedAlgebra::label).collect();
    let mut prod = Algebra::builder(labels.clone());
    let mut br = Algebra::builder(labels);
    for i in 1..=n {
        for j in 1..=n {
            let (pi, pj) = ((i - 1) as usize, (j - 1) as usize);
            for (t, c) in alpha {
                let k = i + j + t;
                if k <= n {
                    prod.add(pi, pj, (k - 1) as usize, c.clone());
                }
            }
            if i != j && i + j <= n {
                br.add(pi, pj, (i + j - 1) as usize, Scalar::int(i - j));
            }
        }
    }
    TPPair::new(prod.build()?, br.build()?)
}

/// Parses `"1@1,5@3"` as `{1: 1, 3: 5}` (`coefficient@offset`).
pub fn parse_alpha(s: &str) -> Result<BTreeMap<i64, Scalar>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (c, t) = part
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("expected coefficient@offset, got {part:?}")))?;
        let t: i64 = t.trim().parse().map_err(|_| Error::Parse(format!("bad offset {t:?}")))?;
        let c: Scalar = c.trim().parse()?;
        let e = out.entry(t).or_insert_with(Scalar::zero);
        *e += &c;
    }
    Ok(out)
}
