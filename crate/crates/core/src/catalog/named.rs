//! Small named models.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element, LinearMap, NAryAlgebra};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// A named model; `derivation` is set for the truncated polynomial algebras.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedAlgebra {
    pub id: String,
    pub algebra: Algebra,
    pub derivation: Option<LinearMap>,
}

pub const NAMED_IDS: &[&str] = &["sl2", "heis3", "abelian-N", "poly-trunc-N", "unit1"];

/// `sl2` (basis e, h, f), `heis3` (`[e1,e2] = e3`), `abelian-N`,
/// `poly-trunc-N` (`Q[t]/(t^N)`, basis `1, t, .., t^{N-1}`, with `D = t·d/dt`),
/// `unit1` (`Q·1`).
pub fn named_algebra(id: &str) -> Result<NamedAlgebra> {
    let unknown = || Error::UnknownAlgebra(id.to_string());
    let (algebra, derivation) = if id == "sl2" {
        (sl2(), None)
    } else if id == "heis3" {
        (heis3(), None)
    } else if id == "unit1" {
        (poly_trunc(1), None)
    } else if let Some(n) = id.strip_prefix("abelian-") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        (Algebra::zero((1..=n).map(|i| format!("e{i}")).collect()), None)
    } else if let Some(n) = id.strip_prefix("poly-trunc-") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        (poly_trunc(n), Some(euler_derivation(n)))
    } else {
        return Err(unknown());
    };
    Ok(NamedAlgebra {
        id: id.to_string(),
        algebra,
        derivation,
    })
}

/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2() -> Algebra {
    let mut b = Algebra::builder(["e", "h", "f"]);
    b.antisym(0, 2, 1, Scalar::one())
        .antisym(1, 0, 0, Scalar::int(2))
        .antisym(1, 2, 2, Scalar::int(-2));
    b.build().expect("static table")
}

pub fn heis3() -> Algebra {
    let mut b = Algebra::builder(["e1", "e2", "e3"]);
    b.antisym(0, 1, 2, Scalar::one());
    b.build().expect("static table")
}

/// `Q[t]/(t^n)` with unit `1`.
pub fn poly_trunc(n: usize) -> Algebra {
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    let mut b = Algebra::builder(labels);
    for i in 0..n {
        for j in 0..n - i {
            b.add(i, j, i + j, Scalar::one());
        }
    }
    b.build_with_unit(Some(Element::basis(n, 0))).expect("static table")
}

/// `t^a ↦ a t^a`, a derivation of every truncation.
pub fn euler_derivation(n: usize) -> LinearMap {
    LinearMap::from_columns(
        (0..n)
            .map(|a| Element::from_sparse(n, &[(a, Scalar::int(a as i64))]))
            .collect(),
    )
}

/// `t^a ↦ a t^{a-1}`. Not a derivation of `Q[t]/(t^n)` for `n ≥ 2`:
/// `t·t^{n-1} = 0` while the Leibniz rule gives `n t^{n-1}`.
pub fn truncated_ddt(n: usize) -> LinearMap {
    LinearMap::from_columns(
        (0..n)
            .map(|a| match a {
                0 => Element::zero(n),
                _ => Element::from_sparse(n, &[(a - 1, Scalar::int(a as i64))]),
            })
            .collect(),
    )
}

/// `[e1, .., en] = e_{n+1}` on `n + 1` basis vectors; `n = 2` is `heis3`.
pub fn nary_heisenberg(n: usize) -> NAryAlgebra {
    let labels: Vec<String> = (1..=n + 1).map(|i| format!("e{i}")).collect();
    let mut table = BTreeMap::new();
    for (perm, sign) in crate::algebra::permutations_with_sign(n) {
        table.insert(perm, vec![(n, Scalar::int(sign))]);
    }
    NAryAlgebra::new(labels, n, table).expect("static table")
}
