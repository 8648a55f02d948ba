//! The bracket `⟦a/b, c/d⟧ = ([a,b]cd - ab[c,d]) / (b²d²)` on fractions of a
//! polynomial ring with derivation `D` and `[p,q] = D(p)q - pD(q)`, and a
//! sampling verifier for its axioms.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{frac_eq, DerivationSpec, Fraction, Polynomial};
use crate::identity::{CheckReport, Witness};

#[derive(Clone, Debug)]
pub struct FieldContext {
    derivation: DerivationSpec,
    corrupted: bool,
}

impl FieldContext {
    pub fn new(derivation: DerivationSpec) -> Self {
        FieldContext {
            derivation,
            corrupted: false,
        }
    }

    /// Same context with the sign of the `ab[c,d]` term flipped.
    pub fn corrupted(mut self) -> Self {
        self.corrupted = true;
        self
    }

    pub fn nvars(&self) -> usize {
        self.derivation.nvars()
    }

    pub fn derivation(&self) -> &DerivationSpec {
        &self.derivation
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupted
    }

    /// `[p,q] = D(p)q - pD(q)`.
    pub fn poly_bracket(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        Ok(p.derive(&self.derivation)?
            .mul(q)
            .sub(&p.mul(&q.derive(&self.derivation)?)))
    }
}

/// The unreduced fraction `([a,b]cd - ab[c,d]) / (b²d²)`.
pub fn field_bracket(ctx: &FieldContext, x: &Fraction, y: &Fraction) -> Result<Fraction> {
    let (a, b, c, d) = (&x.num, &x.den, &y.num, &y.den);
    if b.is_zero() || d.is_zero() {
        return Err(Error::InvalidFraction);
    }
    if x.nvars() != ctx.nvars() || y.nvars() != ctx.nvars() {
        return Err(Error::Dimension {
            expected: ctx.nvars(),
            found: if x.nvars() != ctx.nvars() { x.nvars() } else { y.nvars() },
        });
    }
    let left = ctx.poly_bracket(a, b)?.mul(c).mul(d);
    let right = a.mul(b).mul(&ctx.poly_bracket(c, d)?);
    let num = if ctx.corrupted { left.add(&right) } else { left.sub(&right) };
    let bd = b.mul(d);
    Fraction::new(num, bd.mul(&bd))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SamplerConfig {
    pub vars: usize,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    /// Terms per sampled polynomial, at most.
    pub max_terms: usize,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            vars: 2,
            degree: 3,
            samples: 100,
            seed: 7,
            max_terms: 4,
            coeff_bound: 3,
        }
    }
}

impl SamplerConfig {
    fn validate(&self, ctx: &FieldContext) -> Result<()> {
        if self.vars != ctx.nvars() {
            return Err(Error::InvalidParams(format!(
                "sampler uses {} variables, derivation has {}",
                self.vars,
                ctx.nvars()
            )));
        }
        if self.vars == 0 || self.vars > 3 || self.degree > 3 {
            return Err(Error::InvalidParams("sampler needs 1..=3 variables and degree ≤ 3".into()));
        }
        if self.max_terms == 0 || self.coeff_bound < 1 {
            return Err(Error::InvalidParams("sampler needs max_terms ≥ 1 and coeff_bound ≥ 1".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars,
            "degree": self.degree,
            "samples": self.samples,
            "seed": self.seed,
            "max_terms": self.max_terms,
            "coeff_bound": self.coeff_bound,
        })
    }
}

/// Sampled polynomial with total degree `≤ degree`.
pub fn random_polynomial(rng: &mut impl Rng, cfg: &SamplerConfig) -> Polynomial {
    let mut p = Polynomial::zero(cfg.vars);
    for _ in 0..rng.gen_range(1..=cfg.max_terms) {
        let mut left = rng.gen_range(0..=cfg.degree);
        let mut mono = vec![0u32; cfg.vars];
        for slot in 0..cfg.vars {
            let e = if slot + 1 == cfg.vars { left } else { rng.gen_range(0..=left) };
            mono[slot] = e;
            left -= e;
        }
        let c = rng.gen_range(-cfg.coeff_bound..=cfg.coeff_bound);
        p.add_term(mono, BigRational::from_integer(BigInt::from(c)));
    }
    p
}

/// Sampled fraction; zero denominators are redrawn.
pub fn random_fraction(rng: &mut impl Rng, cfg: &SamplerConfig) -> Fraction {
    let num = random_polynomial(rng, cfg);
    loop {
        let den = random_polynomial(rng, cfg);
        if !den.is_zero() {
            return Fraction::new(num, den).expect("nonzero denominator");
        }
    }
}

/// The three fractions of sample `index`; each index has its own stream so
/// samples are independent of evaluation order.
pub fn sample_triple(cfg: &SamplerConfig, index: usize) -> [Fraction; 3] {
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    [(); 3].map(|_| random_fraction(&mut rng, cfg))
}

pub const FIELD_AXIOMS: &[&str] = &["field-anticomm", "field-jacobi", "field-tp-compat"];

fn render(f: &Fraction) -> String {
    format!("({})/({})", f.num, f.den)
}

fn is_zero_fraction(f: &Fraction) -> Result<bool> {
    frac_eq(f, &Fraction::from_poly(Polynomial::zero(f.nvars())))
}

/// Defects of the three axioms at `(x, y, z)`, each over an explicit common
/// denominator: the bracket of `a/b` and `c/d` always has denominator
/// `(bd)²`, so the summands only differ by known square factors.
pub fn axiom_defects(ctx: &FieldContext, x: &Fraction, y: &Fraction, z: &Fraction) -> Result<[Fraction; 3]> {
    let br = |p: &Fraction, q: &Fraction| field_bracket(ctx, p, q);
    let anti = br(x, y)?.add(&br(y, x)?);

    // ⟦x,⟦y,z⟧⟧ has denominator x2² y2⁴ z2⁴, and cyclically
    let sq = |f: &Fraction| f.den.mul(&f.den);
    let (x2, y2, z2) = (sq(x), sq(y), sq(z));
    let jac_num = br(x, &br(y, z)?)?
        .num
        .mul(&x2)
        .add(&br(y, &br(z, x)?)?.num.mul(&y2))
        .add(&br(z, &br(x, y)?)?.num.mul(&z2));
    let jac = Fraction::new(jac_num, x2.mul(&y2).mul(&z2).pow(2))?;

    // 2z⟦x,y⟧ over z2·(x2y2)², the other two over (z2x2y2)²
    let two = BigRational::from_integer(BigInt::from(2));
    let first = z.mul(&br(x, y)?).scale(&two);
    let rest = br(&z.mul(x), y)?.add(&br(x, &z.mul(y))?);
    let tp_num = first.num.mul(&z.den).sub(&rest.num);
    let tp = Fraction::new(tp_num, rest.den)?;
    Ok([anti, jac, tp])
}

#[derive(Clone, Debug)]
pub struct FieldReport {
    pub config: SamplerConfig,
    pub corrupted: bool,
    pub checks: Vec<CheckReport>,
}

impl FieldReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.holds).count()
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config.to_json(),
            "corrupted_sign": self.corrupted,
            "verdict": if self.holds() { "holds" } else { "fails" },
            "checks": self.checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Checks antisymmetry, Jacobi and the compatibility identity
/// `2z⟦x,y⟧ = ⟦zx,y⟧ + ⟦x,zy⟧` on `cfg.samples` sampled triples. Each check
/// reports the lowest failing sample index.
pub fn verify_field_axioms(ctx: &FieldContext, cfg: &SamplerConfig) -> Result<FieldReport> {
    cfg.validate(ctx)?;
    let results: Vec<Result<[bool; 3]>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let [x, y, z] = sample_triple(cfg, i);
            let d = axiom_defects(ctx, &x, &y, &z)?;
            Ok([is_zero_fraction(&d[0])?, is_zero_fraction(&d[1])?, is_zero_fraction(&d[2])?])
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    for (k, id) in FIELD_AXIOMS.iter().enumerate() {
        let report = match results.iter().position(|r| !r[k]) {
            None => CheckReport::holds(id, cfg.samples as u64),
            Some(i) => {
                let triple = sample_triple(cfg, i);
                let d = &axiom_defects(ctx, &triple[0], &triple[1], &triple[2])?[k];
                CheckReport::fails(
                    id,
                    i as u64 + 1,
                    Witness {
                        indices: vec![i as i64],
                        labels: triple.iter().map(render).collect(),
                        defect: Vec::new(),
                        rendered: render(d),
                    },
                )
                .with_note(format!("sample {i} of seed {}", cfg.seed))
            }
        };
        checks.push(report);
    }
    Ok(FieldReport {
        config: *cfg,
        corrupted: ctx.corrupted,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ddt() -> FieldContext {
        FieldContext::new(DerivationSpec::partial(1, 0))
    }

    #[test]
    fn hand_example() {
        let t = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        let a = Fraction::from_poly(t.clone());
        let b = Fraction::new(one.clone(), t.clone()).unwrap();
        let r = field_bracket(&ddt(), &a, &b).unwrap();
        let expect = Fraction::new(Polynomial::from_int(1, 2), t).unwrap();
        assert!(frac_eq(&r, &expect).unwrap());
    }

    #[test]
    fn restricts_to_polynomial_bracket() {
        let ctx = ddt();
        let t = Polynomial::var(1, 0);
        let p = t.pow(3).add(&Polynomial::from_int(1, 2));
        let s = t.pow(2).scale(&q(-5));
        let r = field_bracket(&ctx, &Fraction::from_poly(p.clone()), &Fraction::from_poly(s.clone())).unwrap();
        let expect = Fraction::from_poly(ctx.poly_bracket(&p, &s).unwrap());
        assert!(frac_eq(&r, &expect).unwrap());
    }

    #[test]
    fn zero_derivation_and_corruption() {
        let zero = FieldContext::new(DerivationSpec::zero(2));
        assert!(verify_field_axioms(&zero, &SamplerConfig { samples: 10, ..Default::default() })
            .unwrap()
            .holds());
        let cfg = SamplerConfig {
            vars: 1,
            samples: 20,
            ..Default::default()
        };
        assert!(verify_field_axioms(&ddt(), &cfg).unwrap().holds());
        let bad = verify_field_axioms(&ddt().corrupted(), &cfg).unwrap();
        let jac = bad.check("field-jacobi").unwrap();
        assert!(!jac.holds && jac.witness.is_some());
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = SamplerConfig::default();
        assert_eq!(sample_triple(&cfg, 5)[1].num, sample_triple(&cfg, 5)[1].num);
        assert!(sample_triple(&cfg, 3).iter().all(|f| !f.den.is_zero()));
    }

    #[test]
    fn config_validation() {
        let cfg = SamplerConfig {
            vars: 1,
            ..Default::default()
        };
        assert!(verify_field_axioms(&FieldContext::new(DerivationSpec::zero(2)), &cfg).is_err());
        let cfg = SamplerConfig {
            degree: 4,
            ..Default::default()
        };
        assert!(verify_field_axioms(&FieldContext::new(DerivationSpec::zero(2)), &cfg).is_err());
    }
}
