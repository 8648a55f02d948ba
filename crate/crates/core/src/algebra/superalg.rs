use crate::algebra::binary::Algebra;
use crate::error::{Error, Result};

/// A `Z/2`-graded algebra: an [`Algebra`] plus a parity per basis element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperAlgebra {
    algebra: Algebra,
    parity: Vec<u8>,
}

impl SuperAlgebra {
    /// Checks that `e_i ∘ e_j` only involves basis elements of parity
    /// `|e_i| + |e_j| mod 2`.
    pub fn new(algebra: Algebra, parity: Vec<u8>) -> Result<Self> {
        if parity.len() != algebra.dim() {
            return Err(Error::Dimension {
                expected: algebra.dim(),
                found: parity.len(),
            });
        }
        if let Some(p) = parity.iter().find(|&&p| p > 1) {
            return Err(Error::Parity(format!("parity must be 0 or 1, got {p}")));
        }
        for ((i, j), out) in algebra.entries() {
            let expected = (parity[i] + parity[j]) % 2;
            if let Some((k, _)) = out.iter().find(|(k, _)| parity[*k] != expected) {
                let l = algebra.labels();
                return Err(Error::Parity(format!(
                    "{} ∘ {} has a component along {} of the wrong parity",
                    l[i], l[j], l[*k]
                )));
            }
        }
        Ok(SuperAlgebra { algebra, parity })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    #[test]
    fn parity_violation_is_rejected() {
        let mut b = Algebra::builder(["a", "b"]);
        b.add(1, 1, 1, Scalar::one());
        let alg = b.build().unwrap();
        assert!(matches!(SuperAlgebra::new(alg.clone(), vec![0, 1]), Err(Error::Parity(_))));
        assert!(SuperAlgebra::new(alg, vec![0, 0]).is_ok());
    }
}
