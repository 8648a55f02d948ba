//! Properties of the oscillator, Witt and fraction-field models.

use std::collections::BTreeMap;

use proptest::prelude::*;

use tpa_core::algebra::GradedAlgebra;
use tpa_core::catalog::*;
use tpa_core::exact::{frac_eq, DerivationSpec, Fraction, Polynomial, Scalar};
use tpa_core::field::{field_bracket, FieldContext};
use tpa_core::identity::check_identity;
use tpa_core::solvers::delta_derivations;

fn generic(n: usize) -> OscillatorParams {
    let lambda = [1, 3, 7][..n].iter().map(|&l| Scalar::int(l)).collect();
    OscillatorParams::new(lambda, true).unwrap()
}

fn small() -> impl Strategy<Value = Scalar> {
    (-4i64..5, 1i64..4).prop_map(|(a, b)| Scalar::frac(a, b))
}

fn half_der(n: usize) -> impl Strategy<Value = HalfDerParams> {
    (small(), small(), prop::collection::vec(small(), n), prop::collection::vec(small(), n))
        .prop_map(|(gamma, mu, alpha, beta)| HalfDerParams { gamma, mu, alpha, beta })
}

const PYTHAGOREAN_25: [(i64, i64); 8] = [(5, 0), (0, 5), (3, 4), (4, 3), (-3, 4), (4, -3), (-5, 0), (-4, -3)];

fn automorphism(n: usize) -> impl Strategy<Value = AutomorphismParams> {
    (
        any::<bool>(),
        small(),
        prop::collection::vec(0usize..PYTHAGOREAN_25.len(), n),
        prop::collection::vec(small(), n),
        prop::collection::vec(small(), n),
    )
        .prop_map(|(negative, nu, picks, nu_i, nu_check)| AutomorphismParams {
            negative,
            nu,
            mu: picks.iter().map(|&k| Scalar::int(PYTHAGOREAN_25[k].0)).collect(),
            mu_check: picks.iter().map(|&k| Scalar::int(PYTHAGOREAN_25[k].1)).collect(),
            nu_i,
            nu_check,
        })
}

#[test]
fn half_derivation_space_has_dimension_2n_plus_2() {
    for n in 1..=3 {
        let p = generic(n);
        let space = delta_derivations(&oscillator(&p), &Scalar::frac(1, 2)).unwrap();
        assert_eq!(space.dimension(), 2 * n + 2, "n = {n}");
    }
    let nongeneric = OscillatorParams::new(vec![Scalar::int(1), Scalar::int(1)], false).unwrap();
    let space = delta_derivations(&oscillator(&nongeneric), &Scalar::frac(1, 2)).unwrap();
    assert!(space.dimension() >= 6);
}

#[test]
fn poisson_criterion_on_a_grid() {
    let p = generic(1);
    let vals = [Scalar::zero(), Scalar::one(), Scalar::int(-2)];
    for g in &vals {
        for m in &vals {
            for a in &vals {
                for b in &vals {
                    let h = HalfDerParams {
                        gamma: g.clone(),
                        mu: m.clone(),
                        alpha: vec![a.clone()],
                        beta: vec![b.clone()],
                    };
                    let pair = oscillator_tp_pair(&p, &h).unwrap();
                    let poisson = check_identity("poisson-leibniz", &pair.bindings()).unwrap().holds;
                    assert_eq!(poisson, h.is_poisson_case(), "{h:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampled_half_derivations_give_tp_pairs((n, h) in (1usize..3).prop_flat_map(|n| (Just(n), half_der(n)))) {
        let p = generic(n);
        let phi = oscillator_half_derivation(&p, &h).unwrap();
        let space = delta_derivations(&oscillator(&p), &Scalar::frac(1, 2)).unwrap();
        prop_assert!(space.contains_linear(&phi));
        let pair = oscillator_tp_pair(&p, &h);
        prop_assert!(pair.is_ok(), "{:?}", pair.err());
    }

    #[test]
    fn sampled_automorphisms_preserve_the_bracket(a in automorphism(2)) {
        let p = generic(2);
        let phi = oscillator_automorphism(&p, &a).unwrap();
        prop_assert!(automorphism_witness(&oscillator(&p), &phi).is_none());
        prop_assert!(phi.inverse().is_ok());
    }

    #[test]
    fn negative_automorphism_flips_family_a(num in 1i64..20, den in 1i64..5, neg in any::<bool>(), n in 1usize..4) {
        let gamma = Scalar::frac(if neg { -num } else { num }, den);
        let p = generic(n);
        let pair = |g: &Scalar| {
            let prod = canonical_tp_product(&p, &ClassificationFamily::A { gamma: g.clone() }).unwrap();
            tpa_core::constructions::TPPair::new(prod, oscillator(&p)).unwrap()
        };
        let phi = oscillator_automorphism(&p, &AutomorphismParams::negative(n)).unwrap();
        let moved = apply_basis_change(&pair(&gamma), &phi).unwrap();
        let target = pair(&-&gamma);
        prop_assert_eq!(moved.product(), target.product());
        prop_assert_eq!(moved.bracket(), target.bracket());
    }

    #[test]
    fn witt_tp_compatibility_on_windows(
        terms in prop::collection::btree_map(-3i64..4, -3i64..4, 1..4),
        cartan in any::<bool>(),
    ) {
        let (algebra, window, terms) = if cartan {
            let t: BTreeMap<i64, i64> = terms.into_iter().map(|(t, c)| (t.abs() + 1, c)).collect();
            (GradedAlgebra::CartanW1, (-1, 5), t)
        } else {
            (GradedAlgebra::Witt, (-3, 3), terms)
        };
        let alpha = terms.into_iter().map(|(t, c)| (t, Scalar::int(c))).collect();
        let w = witt_tp_pair(algebra, alpha).unwrap().with_window(window.0, window.1).unwrap();
        let r = w.check("tp-compat").unwrap();
        prop_assert!(r.holds, "{}", r.summary());
    }
}

fn polynomial(vars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, vars), -3i64..4), 0..4).prop_map(move |terms| {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p = p.add(&Polynomial::from_terms(vars, [(m, Scalar::int(c).re())]).unwrap());
        }
        p
    })
}

fn nonzero(vars: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(vars).prop_filter("nonzero", |p| !p.is_zero())
}

fn fraction(vars: usize) -> impl Strategy<Value = Fraction> {
    (polynomial(vars), nonzero(vars)).prop_map(|(a, b)| Fraction::new(a, b).unwrap())
}

fn context(vars: usize) -> impl Strategy<Value = FieldContext> {
    prop::collection::vec(polynomial(vars), vars)
        .prop_map(|imgs| FieldContext::new(DerivationSpec::new(imgs).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_bracket_restricts_to_polynomials(ctx in context(2), p in polynomial(2), q in polynomial(2)) {
        let r = field_bracket(&ctx, &Fraction::from_poly(p.clone()), &Fraction::from_poly(q.clone())).unwrap();
        let expect = Fraction::from_poly(ctx.poly_bracket(&p, &q).unwrap());
        prop_assert!(frac_eq(&r, &expect).unwrap());
    }

    #[test]
    fn field_bracket_is_well_defined(ctx in context(2), x in fraction(2), y in fraction(2), s in nonzero(2)) {
        let scaled = Fraction::new(x.num.mul(&s), x.den.mul(&s)).unwrap();
        let a = field_bracket(&ctx, &x, &y).unwrap();
        let b = field_bracket(&ctx, &scaled, &y).unwrap();
        prop_assert!(frac_eq(&a, &b).unwrap());
    }

    #[test]
    fn field_bracket_is_tp_compatible(ctx in context(2), f in fraction(2), g in fraction(2), h in fraction(2)) {
        let two = Fraction::from_poly(Polynomial::from_int(2, 2));
        let lhs = two.mul(&f).mul(&field_bracket(&ctx, &g, &h).unwrap());
        let rhs = field_bracket(&ctx, &f.mul(&g), &h)
            .unwrap()
            .add(&field_bracket(&ctx, &g, &f.mul(&h)).unwrap());
        prop_assert!(frac_eq(&lhs, &rhs).unwrap());
    }
}
