use ncann_core::presentation::{reduce_with_strategy, RewriteStrategy};
use ncann_core::sampling::Sampler;
use ncann_core::{builtin_ring, decompose_components, Bounds, BuiltinName, Presentation, RingElem};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<Presentation> {
    vec![
        builtin_ring(BuiltinName::Cedo31, 3).unwrap(),
        builtin_ring(BuiltinName::Armendariz33, 2).unwrap(),
        builtin_ring(BuiltinName::Section4, 5).unwrap(),
    ]
}

fn triple(pres: &Presentation, seed: u64) -> [RingElem; 3] {
    let s = Sampler::new(pres, &Bounds::new(3, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    [
        s.element(&mut rng, 4),
        s.element(&mut rng, 4),
        s.element(&mut rng, 4),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative_and_distributive(seed in any::<u64>(), which in 0usize..3) {
        let pres = &rings()[which];
        let k = pres.field();
        let [x, y, z] = triple(pres, seed);
        let mut red = pres.reducer();
        let xy = red.mul(&x, &y).unwrap();
        let yz = red.mul(&y, &z).unwrap();
        prop_assert_eq!(red.mul(&xy, &z).unwrap(), red.mul(&x, &yz).unwrap());
        let left = red.mul(&x, &y.add(&z, k)).unwrap();
        prop_assert_eq!(left, xy.add(&red.mul(&x, &z).unwrap(), k));
        let right = red.mul(&x.add(&y, k), &z).unwrap();
        prop_assert_eq!(right, red.mul(&x, &z).unwrap().add(&yz, k));
        prop_assert_eq!(red.mul(&RingElem::one(), &x).unwrap(), x.clone());
    }

    #[test]
    fn normal_form_idempotent_and_graded(seed in any::<u64>(), which in 0usize..3) {
        let pres = &rings()[which];
        let [x, y, _] = triple(pres, seed);
        let mut red = pres.reducer();
        prop_assert_eq!(red.normal_form(&x).unwrap(), x.clone());
        prop_assert!(x.support().all(|w| pres.is_normal(w)));
        // homogeneous relations: products of homogeneous elements stay homogeneous
        for (u, _) in x.terms() {
            for (v, _) in y.terms() {
                let p = red.normal_word(&u.concat(v)).unwrap();
                prop_assert!(p.support().all(|w| w.grade() == u.grade() + v.grade()));
            }
        }
    }

    #[test]
    fn strategies_agree_on_products(seed in any::<u64>(), which in 0usize..3) {
        let pres = &rings()[which];
        let [x, y, _] = triple(pres, seed);
        let k = pres.field();
        let mut raw = RingElem::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                raw.add_term(u.concat(v), k.mul(a, b), k);
            }
        }
        let expect = pres.reducer().mul(&x, &y).unwrap();
        for strategy in [RewriteStrategy::Rightmost, RewriteStrategy::Random(seed)] {
            prop_assert_eq!(reduce_with_strategy(pres, &raw, strategy).unwrap(), expect.clone());
        }
    }
}

#[test]
fn rule_instances_are_sound() {
    for pres in rings() {
        let b = Bounds::new(3, 2);
        let mut red = pres.reducer();
        for rule in 0..pres.rules().len() {
            for (lhs, rhs) in pres.rule_instances(rule, &b).unwrap() {
                assert_eq!(
                    red.normal_word(&lhs).unwrap(),
                    red.normal_form(&rhs).unwrap(),
                    "{}",
                    pres.name()
                );
            }
        }
    }
}

#[test]
fn basis_grows_with_bounds() {
    for pres in rings() {
        let mut prev = Vec::new();
        for (n, d) in [(0, 1), (1, 1), (1, 2), (2, 2), (3, 3)] {
            let words = pres.enumerate_basis(&Bounds::new(n, d));
            assert!(prev.iter().all(|w| words.contains(w)), "{}", pres.name());
            prev = words;
        }
    }
}

#[test]
fn components_sum_back() {
    for name in [BuiltinName::Armendariz33, BuiltinName::Section4] {
        let pres = builtin_ring(name, 2).unwrap();
        let k = pres.field();
        let s = Sampler::new(&pres, &Bounds::new(3, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let e = s.element(&mut rng, 6);
            let parts = decompose_components(&e, &pres).unwrap();
            let mut total = RingElem::zero();
            let mut seen = 0;
            for (_, part) in parts.iter() {
                seen += part.len();
                total = total.add(part, k);
            }
            assert_eq!(total, e);
            assert_eq!(seen, e.len(), "supports overlap");
        }
    }
}
