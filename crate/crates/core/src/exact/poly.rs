//! Sparse multivariate polynomials over `Q`, derivations and unreduced fractions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{fmt_rational, parse_rational};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in a fixed number of variables with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by dense exponent vectors; zero
/// coefficients are never stored, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, BigRational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Polynomial::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The `i`-th variable.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, e: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    /// Panics on a variable-count mismatch; polynomials of one ring only.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_vars(other).expect("polynomial ring mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_vars(other).expect("polynomial ring mismatch");
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Image under the derivation determined by `d` on the generators.
    pub fn derive(&self, d: &DerivationSpec) -> Result<Polynomial> {
        if d.images.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: d.images.len(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (i, img) in d.images.iter().enumerate() {
            img.check_vars(self)?;
            if img.is_zero() {
                continue;
            }
            let p = self.partial(i);
            if !p.is_zero() {
                out = out.add(&p.mul(img));
            }
        }
        Ok(out)
    }

    /// `[[exponents...], "coef"]` list.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| serde_json::json!([e, fmt_rational(c)]))
                .collect(),
        )
    }

    pub fn from_json(nvars: usize, v: &serde_json::Value) -> Result<Polynomial> {
        let bad = || Error::Parse("polynomial must be a list of [exponents, coefficient]".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let e = pair[0]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|u| u as u32).ok_or_else(bad))
                .collect::<Result<Vec<u32>>>()?;
            let c = match &pair[1] {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(n) => BigRational::from_integer(BigInt::from(
                    n.as_i64().ok_or_else(bad)?,
                )),
                _ => return Err(bad()),
            };
            terms.push((e, c));
        }
        Polynomial::from_terms(nvars, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_rational(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

/// A derivation of `Q[x_1..x_n]`, fixed by the images of the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationSpec {
    images: Vec<Polynomial>,
}

impl DerivationSpec {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        for img in &images {
            if img.nvars() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: img.nvars(),
                });
            }
        }
        Ok(DerivationSpec { images })
    }

    pub fn zero(nvars: usize) -> Self {
        DerivationSpec {
            images: vec![Polynomial::zero(nvars); nvars],
        }
    }

    /// `d/dx_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut images = vec![Polynomial::zero(nvars); nvars];
        images[i] = Polynomial::one(nvars);
        DerivationSpec { images }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `{"vars": n, "images": [poly, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": self.nvars(),
            "images": self.images.iter().map(Polynomial::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v
            .get("vars")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("derivation needs integer \"vars\"".into()))?
            as usize;
        let imgs = v
            .get("images")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("derivation needs \"images\" list".into()))?;
        let images = imgs
            .iter()
            .map(|p| Polynomial::from_json(n, p))
            .collect::<Result<Vec<_>>>()?;
        DerivationSpec::new(images)
    }
}

/// `num / den`, never gcd-reduced; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.check_vars(&den)?;
        if den.is_zero() {
            return Err(Error::InvalidFraction);
        }
        Ok(Fraction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        Fraction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        if self.den == other.den {
            return Fraction {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
        }
        Fraction {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Fraction {
        Fraction {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Equality of fractions by cross-multiplication.
pub fn frac_eq(a: &Fraction, b: &Fraction) -> Result<bool> {
    if a.den.is_zero() || b.den.is_zero() {
        return Err(Error::InvalidFraction);
    }
    a.num.check_vars(&b.num)?;
    Ok(a.num.mul(&b.den) == b.num.mul(&a.den))
}
