//! Ready-made algebra families: oscillator algebras, Witt and `W(1)` pairs,
//! and small named models.

mod named;
mod oscillator;
mod witt;

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact::Scalar;

pub use crate::constructions::apply_basis_change;
pub use named::{
    euler_derivation, heis3, named_algebra, nary_heisenberg, poly_trunc, sl2, truncated_ddt, NamedAlgebra, NAMED_IDS,
};
pub use oscillator::{
    automorphism_witness, canonical_tp_product, oscillator, oscillator_automorphism, oscillator_half_derivation,
    oscillator_tp_pair, oscillator_tp_product, AutomorphismParams, ClassificationFamily, HalfDerParams,
    OscillatorParams,
};
pub use witt::{parse_alpha, witt_tp_pair, witt_window_pair, WittTpPair};

/// Splits `"name:k=v,v,k2=v"` into the name and its keyed values; a bare
/// value continues the previous key's list.
fn parse_keyed(id: &str) -> Result<(&str, BTreeMap<String, String>)> {
    let (name, rest) = id.split_once(':').unwrap_or((id, ""));
    let mut out: BTreeMap<String, String> = BTreeMap::new();
    let mut last: Option<String> = None;
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some((k, v)) => {
                let k = k.trim().to_string();
                out.insert(k.clone(), v.trim().to_string());
                last = Some(k);
            }
            None => {
                let k = last
                    .as_ref()
                    .ok_or_else(|| Error::Parse(format!("value {part:?} has no key in {id:?}")))?;
                let v = out.get_mut(k).expect("key inserted");
                v.push(',');
                v.push_str(part);
            }
        }
    }
    Ok((name, out))
}

/// `"oscillator:n=2,lambda=1,3/2"`, optionally with `generic=true`.
pub fn parse_oscillator_id(id: &str) -> Result<OscillatorParams> {
    let (name, kv) = parse_keyed(id)?;
    if name != "oscillator" {
        return Err(Error::UnknownAlgebra(id.to_string()));
    }
    let lambda = kv
        .get("lambda")
        .ok_or_else(|| Error::Parse(format!("{id:?} has no lambda")))?;
    let generic = kv.get("generic").is_some_and(|g| g == "true");
    let p = OscillatorParams::parse(lambda, generic)?;
    if let Some(n) = kv.get("n") {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad n in {id:?}")))?;
        if n != p.n() {
            return Err(Error::InvalidParams(format!("n = {n} but λ has {} entries", p.n())));
        }
    }
    Ok(p)
}

/// `"witt1:alpha=1@1"` (W(1)) or `"witt:alpha=1@1,5@3"` (W).
pub fn parse_witt_id(id: &str) -> Result<WittTpPair> {
    let (name, kv) = parse_keyed(id)?;
    let algebra = match name {
        "witt1" => GradedAlgebra::CartanW1,
        "witt" => GradedAlgebra::Witt,
        _ => return Err(Error::UnknownAlgebra(id.to_string())),
    };
    let alpha = match kv.get("alpha") {
        Some(a) => parse_alpha(a)?,
        None => BTreeMap::<i64, Scalar>::new(),
    };
    witt_tp_pair(algebra, alpha)
}
