//! The JSON algebra file format.
//!
//! ```text
//! {"dim": n, "basis": [...],
//!  "products": {"name": [[i, j, [[k, "p/q"], ...]], ...]},
//!  "unital": bool, "unit": [coords]}
//! ```
//!
//! An arity-`m` table uses `m` index slots before the output list. Optional
//! keys: `"parity"` (superalgebras), `"maps"` (named linear maps, see
//! [`LinearMap::to_json`]) and `"provenance"`. Keys are emitted in sorted
//! order, so serialization is canonical.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::binary::Algebra;
use crate::algebra::element::{Element, SparseVec};
use crate::algebra::maps::LinearMap;
use crate::algebra::nary::NAryAlgebra;
use crate::algebra::superalg::SuperAlgebra;
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Name of the commutative product slot.
pub const PRODUCT: &str = "product";
/// Name of the bracket slot.
pub const BRACKET: &str = "bracket";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductTable {
    pub arity: usize,
    pub entries: BTreeMap<Vec<usize>, SparseVec>,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub products: BTreeMap<String, ProductTable>,
    pub unit: Option<Element>,
    pub parity: Option<Vec<u8>>,
    pub maps: BTreeMap<String, LinearMap>,
    pub provenance: Option<Value>,
}

pub(crate) fn parse_pair(v: &Value, n: usize) -> Result<(usize, Scalar)> {
    let bad = || Error::Parse(format!("expected [index, coefficient], got {v}"));
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
    let k = arr[0].as_u64().ok_or_else(bad)? as usize;
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    Ok((k, Scalar::from_json(&arr[1])?))
}

fn sparse_to_json(sv: &SparseVec) -> Value {
    Value::Array(sv.iter().map(|(k, c)| json!([k, c.to_json()])).collect())
}

impl AlgebraFile {
    pub fn new(basis: Vec<String>) -> Self {
        AlgebraFile {
            basis,
            ..Default::default()
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Single-product file; the algebra's unit (if any) is kept.
    pub fn from_algebra(a: &Algebra, name: &str) -> Self {
        let mut f = AlgebraFile::new(a.labels().to_vec());
        f.insert_product(name, a);
        f.unit = a.unit().cloned();
        f
    }

    pub fn from_super(s: &SuperAlgebra) -> Self {
        let mut f = AlgebraFile::from_algebra(s.algebra(), PRODUCT);
        f.parity = Some(s.parity().to_vec());
        f
    }

    pub fn insert_product(&mut self, name: &str, a: &Algebra) {
        let entries = a.entries().map(|((i, j), v)| (vec![i, j], v.clone())).collect();
        self.products
            .insert(name.to_string(), ProductTable { arity: 2, entries });
    }

    pub fn insert_nary(&mut self, name: &str, a: &NAryAlgebra) {
        let entries = a.entries().map(|(k, v)| (k.clone(), v.clone())).collect();
        self.products.insert(
            name.to_string(),
            ProductTable {
                arity: a.arity(),
                entries,
            },
        );
    }

    pub fn with_provenance(mut self, constructed_by: &str, inputs: Vec<Value>) -> Self {
        self.provenance = Some(json!({"constructed_by": constructed_by, "inputs": inputs}));
        self
    }

    pub fn product_names(&self) -> Vec<&str> {
        self.products.keys().map(String::as_str).collect()
    }

    /// The binary product `name`. The file's unit is attached when `name` is
    /// the commutative product or the only product in the file.
    pub fn algebra(&self, name: &str) -> Result<Algebra> {
        let t = self
            .products
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no product named {name:?}")))?;
        if t.arity != 2 {
            return Err(Error::Parse(format!("product {name:?} has arity {}", t.arity)));
        }
        let n = self.dim();
        let mut table = vec![Vec::new(); n * n];
        for (idx, out) in &t.entries {
            table[idx[0] * n + idx[1]] = out.clone();
        }
        let attach = name == PRODUCT || self.products.len() == 1;
        let unit = if attach { self.unit.clone() } else { None };
        Algebra::from_raw(self.basis.clone(), table, unit)
    }

    /// The only binary product, or the one called `preferred` when several exist.
    pub fn sole_algebra(&self, preferred: &str) -> Result<Algebra> {
        let binary: Vec<&String> = self
            .products
            .iter()
            .filter(|(_, t)| t.arity == 2)
            .map(|(k, _)| k)
            .collect();
        match binary.as_slice() {
            [only] => self.algebra(only),
            [] => Err(Error::Parse("file has no binary product".into())),
            _ => self.algebra(preferred),
        }
    }

    pub fn nary(&self, name: &str) -> Result<NAryAlgebra> {
        let t = self
            .products
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no product named {name:?}")))?;
        NAryAlgebra::new(self.basis.clone(), t.arity, t.entries.clone())
    }

    pub fn super_algebra(&self) -> Result<SuperAlgebra> {
        let parity = self
            .parity
            .clone()
            .ok_or_else(|| Error::Parse("file has no \"parity\"".into()))?;
        SuperAlgebra::new(self.sole_algebra(PRODUCT)?, parity)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("dim".into(), json!(self.dim()));
        obj.insert("basis".into(), json!(self.basis));
        let mut products = serde_json::Map::new();
        for (name, t) in &self.products {
            let rows: Vec<Value> = t
                .entries
                .iter()
                .map(|(idx, out)| {
                    let mut row: Vec<Value> = idx.iter().map(|i| json!(i)).collect();
                    row.push(sparse_to_json(out));
                    Value::Array(row)
                })
                .collect();
            products.insert(name.clone(), Value::Array(rows));
        }
        obj.insert("products".into(), Value::Object(products));
        obj.insert("unital".into(), json!(self.unit.is_some()));
        if let Some(u) = &self.unit {
            obj.insert(
                "unit".into(),
                Value::Array(u.coords().iter().map(Scalar::to_json).collect()),
            );
        }
        if let Some(p) = &self.parity {
            obj.insert("parity".into(), json!(p));
        }
        if !self.maps.is_empty() {
            let maps: serde_json::Map<String, Value> =
                self.maps.iter().map(|(k, m)| (k.clone(), m.to_json())).collect();
            obj.insert("maps".into(), Value::Object(maps));
        }
        if let Some(p) = &self.provenance {
            obj.insert("provenance".into(), p.clone());
        }
        Value::Object(obj)
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_text(s: &str) -> Result<AlgebraFile> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        AlgebraFile::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<AlgebraFile> {
        let bad = |m: &str| Error::Parse(format!("algebra file: {m}"));
        let basis: Vec<String> = match v.get("basis") {
            Some(b) => b
                .as_array()
                .ok_or_else(|| bad("\"basis\" must be a list"))?
                .iter()
                .map(|s| s.as_str().map(String::from).ok_or_else(|| bad("basis labels must be strings")))
                .collect::<Result<_>>()?,
            None => {
                let n = v
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("missing \"dim\""))?;
                (0..n).map(|i| format!("e{}", i + 1)).collect()
            }
        };
        let n = basis.len();
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != n {
                return Err(Error::Dimension {
                    expected: d as usize,
                    found: n,
                });
            }
        }
        let mut products = BTreeMap::new();
        if let Some(ps) = v.get("products") {
            let ps = ps.as_object().ok_or_else(|| bad("\"products\" must be an object"))?;
            for (name, rows) in ps {
                let rows = rows.as_array().ok_or_else(|| bad("product table must be a list"))?;
                let mut arity = None;
                let mut entries: BTreeMap<Vec<usize>, BTreeMap<usize, Scalar>> = BTreeMap::new();
                for row in rows {
                    let row = row.as_array().ok_or_else(|| bad("table row must be a list"))?;
                    if row.len() < 3 {
                        return Err(bad("table row needs at least two indices and an output"));
                    }
                    let m = row.len() - 1;
                    if *arity.get_or_insert(m) != m {
                        return Err(bad("mixed arities in one product"));
                    }
                    let idx = row[..m]
                        .iter()
                        .map(|x| {
                            let i = x.as_u64().ok_or_else(|| bad("indices must be integers"))? as usize;
                            if i >= n {
                                return Err(Error::IndexOutOfRange { index: i, dim: n });
                            }
                            Ok(i)
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    let out = row[m].as_array().ok_or_else(|| bad("output must be a list"))?;
                    let slot = entries.entry(idx).or_default();
                    for pair in out {
                        let (k, c) = parse_pair(pair, n)?;
                        *slot.entry(k).or_insert_with(Scalar::zero) += &c;
                    }
                }
                let entries: BTreeMap<Vec<usize>, SparseVec> = entries
                    .into_iter()
                    .map(|(k, m)| (k, m.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>()))
                    .filter(|(_, sv)| !sv.is_empty())
                    .collect();
                products.insert(
                    name.clone(),
                    ProductTable {
                        arity: arity.unwrap_or(2),
                        entries,
                    },
                );
            }
        }
        let unital = v.get("unital").and_then(Value::as_bool).unwrap_or(false);
        let unit = match (unital, v.get("unit")) {
            (true, Some(u)) => {
                let coords = u
                    .as_array()
                    .ok_or_else(|| bad("\"unit\" must be a list"))?
                    .iter()
                    .map(Scalar::from_json)
                    .collect::<Result<Vec<_>>>()?;
                let e = Element(coords);
                e.check_dim(n)?;
                Some(e)
            }
            (true, None) => return Err(bad("\"unital\" is set but \"unit\" is missing")),
            (false, _) => None,
        };
        let parity = match v.get("parity") {
            Some(p) => Some(
                p.as_array()
                    .ok_or_else(|| bad("\"parity\" must be a list"))?
                    .iter()
                    .map(|x| x.as_u64().map(|u| u as u8).ok_or_else(|| bad("parity entries are 0/1")))
                    .collect::<Result<Vec<u8>>>()?,
            ),
            None => None,
        };
        let mut maps = BTreeMap::new();
        if let Some(ms) = v.get("maps") {
            for (k, m) in ms.as_object().ok_or_else(|| bad("\"maps\" must be an object"))? {
                let lm = LinearMap::from_json(m)?;
                lm.columns().first().map_or(Ok(()), |c| c.check_dim(n))?;
                maps.insert(k.clone(), lm);
            }
        }
        Ok(AlgebraFile {
            basis,
            products,
            unit,
            parity,
            maps,
            provenance: v.get("provenance").cloned(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_bit_exact() {
        let mut b = Algebra::builder(["e1", "e2", "e3"]);
        b.antisym(0, 1, 2, Scalar::frac(3, 2));
        let a = b.build().unwrap();
        let mut f = AlgebraFile::from_algebra(&a, BRACKET);
        f.maps.insert("D".into(), LinearMap::identity(3));
        let text = f.to_text();
        let back = AlgebraFile::from_text(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_text(), text);
        assert_eq!(back.algebra(BRACKET).unwrap(), a);
    }

    #[test]
    fn nary_table_round_trip() {
        let basis: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
        let t = NAryAlgebra::antisymmetric_from(basis.clone(), 3, [(vec![0, 1, 2], vec![(3, Scalar::one())])])
            .unwrap();
        let mut f = AlgebraFile::new(basis);
        f.insert_nary(BRACKET, &t);
        let back = AlgebraFile::from_text(&f.to_text()).unwrap();
        assert_eq!(back.nary(BRACKET).unwrap(), t);
    }

    #[test]
    fn gaussian_coefficients_and_unit() {
        let text = r#"{"dim":1,"basis":["u"],"products":{"product":[[0,0,[[0,"1"]]]]},
                       "unital":true,"unit":["1"]}"#;
        let f = AlgebraFile::from_text(text).unwrap();
        assert!(f.algebra(PRODUCT).unwrap().is_unital());
        let text2 = r#"{"dim":1,"products":{"bracket":[[0,0,[[0,{"re":"0","im":"2"}]]]]}}"#;
        let f2 = AlgebraFile::from_text(text2).unwrap();
        let a = f2.algebra(BRACKET).unwrap();
        assert_eq!(a.basis_product(0, 0)[0].1, "2i".parse().unwrap());
    }

    #[test]
    fn malformed_input() {
        assert!(AlgebraFile::from_text(r#"{"dim":2,"products":{"p":[[0,2,[]]]}}"#).is_err());
        assert!(AlgebraFile::from_text(r#"{"dim":2,"unital":true}"#).is_err());
        assert!(AlgebraFile::from_text("not json").is_err());
    }
}
