mod oracle;

use tpa_core::exact::Scalar;
use tpa_core::solvers;

fn half() -> Scalar {
    Scalar::frac(1, 2)
}

#[test]
fn dense_rank_sanity() {
    let m = vec![vec![Scalar::int(1), Scalar::int(2)], vec![Scalar::int(2), Scalar::int(4)]];
    assert_eq!(oracle::dense_rank(m), 1);
}

#[test]
fn hand_examples_agree_with_oracle() {
    let h = tpa_core::catalog::heis3();
    assert_eq!(oracle::delta_derivations(&h, &half()), 6);
    let sl2 = tpa_core::catalog::sl2();
    assert_eq!(oracle::delta_derivations(&sl2, &half()), 1);
    assert_eq!(oracle::tp_product_space(&sl2), 0);
}

#[test]
fn lie_algebras_match_oracle() {
    for (name, l) in oracle::small_lie_algebras() {
        for delta in [half(), Scalar::one(), Scalar::frac(-1, 3)] {
            assert_eq!(
                solvers::delta_derivations(&l, &delta).unwrap().dimension(),
                oracle::delta_derivations(&l, &delta),
                "{name} δ={delta}"
            );
        }
        for sym in [false, true] {
            assert_eq!(
                solvers::delta_biderivations(&l, &half(), sym).unwrap().dimension(),
                oracle::delta_biderivations(&l, &half(), sym),
                "{name} biderivations symmetric={sym}"
            );
        }
        assert_eq!(solvers::hom_lie_maps(&l).unwrap().dimension(), oracle::hom_lie_maps(&l), "{name} hom-lie");
        assert_eq!(
            solvers::tp_product_space(&l).unwrap().dimension(),
            oracle::tp_product_space(&l),
            "{name} tp products"
        );
    }
}

#[test]
fn products_match_oracle() {
    for (name, a) in oracle::small_products() {
        assert_eq!(
            solvers::delta_derivations(&a, &half()).unwrap().dimension(),
            oracle::delta_derivations(&a, &half()),
            "{name}"
        );
        assert_eq!(
            solvers::delta_biderivations(&a, &half(), false).unwrap().dimension(),
            oracle::delta_biderivations(&a, &half(), false),
            "{name} biderivations"
        );
    }
}

#[test]
fn nary_algebras_match_oracle() {
    for (name, a) in oracle::small_nary() {
        let delta = Scalar::frac(1, a.arity() as i64);
        assert_eq!(
            solvers::nary_delta_derivations(&a, &delta).unwrap().dimension(),
            oracle::nary_delta_derivations(&a, &delta),
            "{name}"
        );
    }
}

#[test]
fn oscillator_tp_space_contains_theodot_family() {
    let p = tpa_core::catalog::OscillatorParams::new(vec![Scalar::one()], false).unwrap();
    let l = tpa_core::catalog::oscillator(&p);
    let d = oracle::tp_product_space(&l);
    assert!(d >= 4);
    assert_eq!(solvers::tp_product_space(&l).unwrap().dimension(), d);
}
