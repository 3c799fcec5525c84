use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qheis_core::expr::{parse, random_expr, Context};
use qheis_core::ideals::{SpecCatalog, TruncatedIdeal};
use qheis_core::morphisms::{check_families, rho, xi_primed, IntMatrix};
use qheis_core::presets::{make_dq, make_oq, make_s, make_s_quotient_torus, make_uq, primed_in_d};
use qheis_core::random;
use qheis_core::smodules::{Family, QuotientModule};
use qheis_core::{qpow, AlgebraParams, Element, Presentation, QScalar, SOrder};
use qheis_core::Strategy as Reduction;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn presets(p: AlgebraParams) -> Vec<Presentation> {
    let mut out = vec![make_oq(p).unwrap(), make_uq(p).unwrap(), make_dq(p).unwrap()];
    out.extend(SOrder::ALL.into_iter().map(|o| make_s(p, o).unwrap()));
    out.push(make_s_quotient_torus(p).unwrap());
    out
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn laurent() -> impl Strategy<Value = QScalar> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 1..4))
        .prop_map(|(low, cs)| QScalar::laurent(cs.into_iter().enumerate().map(|(i, c)| (low + i as i64, rat(c, 1)))))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { n.checked_div(&d).unwrap() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(x.normalize().normalize(), x.normalize());
        prop_assert_eq!(x.normalize(), x.clone());
    }

    #[test]
    fn evaluation_is_multiplicative(x in scalar(), y in scalar(), num in 2i64..9, den in 1i64..5) {
        let q0 = rat(num, den);
        if let (Ok(a), Ok(b)) = (x.eval(&q0), y.eval(&q0)) {
            prop_assert_eq!((&x * &y).eval(&q0).unwrap(), &a * &b);
            prop_assert_eq!((&x + &y).eval(&q0).unwrap(), &a + &b);
        }
    }
}

#[test]
fn normal_form_is_strategy_independent() {
    for (m, n) in [(1, 1), (2, -3)] {
        let p = AlgebraParams::new(m, n).unwrap();
        for alg in presets(p) {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for i in 0..500 {
                let w = random::word(&alg, &mut rng, 6);
                let words = vec![(QScalar::one(), w.clone())];
                let left = alg.normal_form_words(words.clone(), Reduction::Leftmost).unwrap();
                let right = alg.normal_form_words(words.clone(), Reduction::Rightmost).unwrap();
                let shuffled = alg.normal_form_words(words, Reduction::Random(i)).unwrap();
                assert_eq!(left, right, "{} {}", alg.name(), alg.render_word(&w));
                assert_eq!(left, shuffled, "{} {}", alg.name(), alg.render_word(&w));
            }
        }
    }
}

#[test]
fn multiplication_is_associative_and_filtered() {
    let p = AlgebraParams::new(2, 3).unwrap();
    for alg in presets(p) {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = random::element(&alg, &mut rng, 2, 2);
            let y = random::element(&alg, &mut rng, 2, 2);
            let z = random::element(&alg, &mut rng, 2, 2);
            let xy = alg.multiply(&x, &y);
            assert_eq!(alg.multiply(&xy, &z), alg.multiply(&x, &alg.multiply(&y, &z)), "{}", alg.name());
            assert!(alg.element_degree(&xy) <= alg.element_degree(&x) + alg.element_degree(&y));
        }
    }
}

#[test]
fn expressions_round_trip() {
    let p = AlgebraParams::new(1, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for alg in presets(p) {
        let names = alg.table().names.clone();
        let symbols: Vec<&str> = names.iter().map(String::as_str).collect();
        let ctx = Context::new(&alg);
        for _ in 0..200 {
            let e = random_expr(&mut rng, &symbols, 3);
            let printed = e.to_string();
            let back = parse(&printed).unwrap();
            assert_eq!(back.to_string(), printed);
            if let Ok(x) = ctx.elaborate(&back) {
                assert_eq!(ctx.parse_element(&alg.render(&x)).unwrap(), x, "{printed}");
            }
        }
    }
}

fn catalog_ideals(c: &SpecCatalog) -> Vec<&TruncatedIdeal> {
    c.ideals().into_iter().filter(|i| i.dimension() > 0).collect()
}

#[test]
fn ideal_spans_grow_with_the_bound() {
    let p = AlgebraParams::new(1, 1).unwrap();
    let z = vec![QScalar::one()];
    let small = SpecCatalog::new(p, 4, z.clone()).unwrap();
    let large = SpecCatalog::new(p, 6, z).unwrap();
    let s = small.algebra().clone();
    let probes: Vec<Element> = ["Ep*cp", "cp*Ep", "Fp*bp - bp*Fp", "bp*cp", "Ep*Fp", "Ep*cp*Fp"]
        .iter()
        .map(|t| Context::new(&s).parse_element(t).unwrap())
        .collect();
    for (a, b) in small.ideals().into_iter().zip(large.ideals()) {
        assert_eq!(a.name(), b.name());
        for x in a.basis().iter().chain(&probes) {
            if a.member(x).unwrap().is_verified() {
                assert!(b.member(x).unwrap().is_verified(), "{} lost {}", a.name(), s.render(x));
            }
        }
    }
    for ideal in catalog_ideals(&small) {
        let closure = ideal.check_closure();
        assert!(closure.passed(), "{:?}", closure.failures.first());
    }
}

#[test]
fn certificates_replay() {
    let p = AlgebraParams::new(2, 3).unwrap();
    let c = SpecCatalog::new(p, 6, vec![qpow(1)]).unwrap();
    let s = c.algebra().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut replayed = 0;
    for ideal in catalog_ideals(&c) {
        for g in ideal.generators() {
            let x = s.multiply(&random::element(&s, &mut rng, 1, 2), g);
            if s.element_degree(&x) > ideal.bound() {
                continue;
            }
            match ideal.member(&x).unwrap() {
                qheis_core::ideals::Membership::Verified(cert) => {
                    assert_eq!(ideal.replay(&cert), x);
                    replayed += 1;
                }
                other => panic!("{} missed {}: {}", ideal.name(), s.render(&x), other.label()),
            }
        }
    }
    assert!(replayed >= 5, "{replayed}");
}

#[test]
fn module_action_is_associative() {
    let p = AlgebraParams::new(1, -2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for fam in Family::ALL {
        let md = QuotientModule::new(p, fam, qpow(1), QScalar::zero()).unwrap();
        let s = md.algebra().clone();
        for _ in 0..200 {
            let x = random::element(&s, &mut rng, 2, 2);
            let y = random::element(&s, &mut rng, 2, 2);
            let v = md.random_vector(&mut rng, 3);
            assert_eq!(md.act(&s.multiply(&x, &y), &v), md.act(&x, &md.act(&y, &v)), "{fam}");
        }
    }
}

#[test]
fn family_morphisms_on_seeded_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (m, n) in [(1, 1), (2, -3)] {
        let p = AlgebraParams::new(m, n).unwrap();
        for _ in 0..20 {
            let z = [random::scalar(&mut rng), random::scalar(&mut rng), random::scalar(&mut rng)];
            let r = check_families(p, &z).unwrap();
            assert!(r.passed(), "{:?}", r.failures.first());
        }
    }
}

#[test]
fn rho_fixes_primed_generators() {
    let p = AlgebraParams::new(2, 3).unwrap();
    let dq = Arc::new(make_dq(p).unwrap());
    let primed = primed_in_d(p, &dq).unwrap();
    let a: IntMatrix = [[2, 3], [1, 2]];
    let f = rho(p, &a).unwrap();
    for g in ["bp", "cp", "Ep", "Fp"] {
        let x = primed.get(g).unwrap();
        assert_eq!(&f.apply(x).unwrap(), x, "{g}");
    }
    let x = xi_primed(p, &qpow(1), &qpow(-1)).unwrap();
    assert!(x.check().passed());
}
