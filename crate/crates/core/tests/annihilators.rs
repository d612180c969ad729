use ncann_core::exhaustive::{exhaustive_zero_divisor_search, ExhaustiveOutcome, ExhaustiveSpace};
use ncann_core::sampling::Sampler;
use ncann_core::{
    annihilator, builtin_ring, parse_presentation, skew_mul_poly, AnnQuery, Bounds, BuiltinName,
    Endomorphism, Presentation, RingElem, Side, SkewPoly, Word,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every combination of `words` with coefficients in GF(p).
fn all_elements(pres: &Presentation, words: &[Word]) -> Vec<RingElem> {
    let k = pres.field();
    let p = k.characteristic() as usize;
    let total = p.pow(words.len() as u32);
    (0..total)
        .map(|mut n| {
            let mut e = RingElem::zero();
            for w in words {
                if n % p != 0 {
                    e.add_term(w.clone(), k.scalar((n % p) as i64), k);
                }
                n /= p;
            }
            e
        })
        .collect()
}

fn kills(pres: &Presentation, side: Side, s: &RingElem, x: &[RingElem]) -> bool {
    let mut red = pres.reducer();
    x.iter().all(|t| {
        let prod = match side {
            Side::Left => red.mul(s, t),
            Side::Right => red.mul(t, s),
        };
        prod.unwrap().is_zero()
    })
}

#[test]
fn matches_enumeration_oracle() {
    let pres = builtin_ring(BuiltinName::Section4, 2).unwrap();
    let b = Bounds::new(1, 2);
    let words = pres.enumerate_basis(&b);
    let everything = all_elements(&pres, &words);
    let cases = [
        (Side::Left, vec!["a[0]", "a[1]"]),
        (Side::Right, vec!["b[0]"]),
        (Side::Left, vec!["a[1] + b[0]*a[1]"]),
        (Side::Right, vec!["a[0] + b[1]", "a[1]*a[1]"]),
    ];
    for (side, texts) in cases {
        let x: Vec<RingElem> = texts.iter().map(|t| pres.element(t).unwrap()).collect();
        let ann = annihilator(&AnnQuery::ring(side, &x, b), &pres).unwrap();
        let oracle: Vec<&RingElem> = everything
            .iter()
            .filter(|s| kills(&pres, side, s, &x))
            .collect();
        assert_eq!(oracle.len(), 1 << ann.dim(), "{side:?} {texts:?}");
        assert!(oracle.iter().all(|s| ann.contains_elem(s)));
    }
}

#[test]
fn section4_examples_against_word_oracle() {
    // monomial relations: word products are words or zero, so the
    // annihilator of a monomial set is spanned by the words it kills as
    // long as the surviving products are distinct
    let pres = builtin_ring(BuiltinName::Section4, 2).unwrap();
    let check = |side: Side, x: &[&str], b: Bounds| {
        let x: Vec<RingElem> = x.iter().map(|t| pres.element(t).unwrap()).collect();
        let ann = annihilator(&AnnQuery::ring(side, &x, b), &pres).unwrap();
        let words = pres.enumerate_basis(&b);
        let killed: Vec<&Word> = words
            .iter()
            .filter(|w| kills(&pres, side, &RingElem::from_word((*w).clone()), &x))
            .collect();
        assert_eq!(ann.dim(), killed.len());
        for w in &killed {
            assert!(ann.contains_elem(&RingElem::from_word((*w).clone())));
        }
        ann
    };
    let left = check(Side::Left, &["a[0]", "a[1]"], Bounds::new(3, 2));
    let expect: Vec<RingElem> = ["b[1]", "b[2]", "b[3]"]
        .iter()
        .map(|t| pres.element(t).unwrap())
        .collect();
    let mut got = left.ring_elements();
    got.sort();
    assert_eq!(got, expect);
    assert_eq!(check(Side::Right, &["b[0]"], Bounds::new(2, 2)).dim(), 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closure_and_monotonicity(seed in any::<u64>(), left in any::<bool>()) {
        let side = if left { Side::Left } else { Side::Right };
        let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
        let k = pres.field();
        let b = Bounds::new(2, 2);
        let s = Sampler::new(&pres, &Bounds::new(2, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = vec![s.element(&mut rng, 3), s.element(&mut rng, 3)];
        let small = annihilator(&AnnQuery::ring(side, &x[..1], b), &pres).unwrap();
        let big = annihilator(&AnnQuery::ring(side, &x, b), &pres).unwrap();
        let members = big.ring_elements();
        for m in &members {
            prop_assert!(kills(&pres, side, m, &x));
            prop_assert!(small.contains_elem(m));
        }
        if members.len() >= 2 {
            prop_assert!(big.contains_elem(&members[0].add(&members[1], k)));
        }
        // ideal closure inside the slice: left annihilators absorb left multiples
        let mut red = pres.reducer();
        for w in pres.enumerate_basis(&b) {
            let r = RingElem::from_word(w);
            for m in &members {
                let prod = match side {
                    Side::Left => red.mul(&r, m).unwrap(),
                    Side::Right => red.mul(m, &r).unwrap(),
                };
                if prod.support().all(|w| pres.word_in_bounds(w, &b)) {
                    prop_assert!(big.contains_elem(&prod));
                }
            }
        }
    }
}

#[test]
fn poly_annihilator_members_kill() {
    let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let b = Bounds::new(2, 2);
    let f = SkewPoly::from_coeffs(vec![
        pres.element("a[0]").unwrap(),
        pres.element("a[1]").unwrap(),
    ]);
    let ann = annihilator(&AnnQuery::poly(Side::Right, vec![f.clone()], b, 1), &pres).unwrap();
    assert!(ann.dim() > 0);
    for g in ann.vectors() {
        let prod =
            skew_mul_poly(&f, g, &Endomorphism::identity(), &pres, &Bounds::new(4, 4)).unwrap();
        assert!(prod.is_zero());
    }
}

const NON_ARMENDARIZ: &str = "field 2;
family u(0);
family v(0);
rule u*u -> 0;
rule v*v -> 0;
rule v*u -> u*v;
";

/// Outcome counts by scanning every partner in the bounded space.
fn brute_outcome(pres: &Presentation, space: &ExhaustiveSpace) -> (u64, u64, u64) {
    let words = pres.enumerate_basis(&space.bounds);
    let elems = all_elements(pres, &words);
    let coeffs: Vec<&RingElem> = elems
        .iter()
        .filter(|e| e.len() <= space.max_support)
        .collect();
    let polys = |n: usize, pool: &[&RingElem]| -> Vec<SkewPoly> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<RingElem>| {
                    pool.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push((*c).clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(SkewPoly::from_coeffs)
            .filter(|p| !p.is_zero())
            .collect()
    };
    let fs = polys(space.x_degree + 1, &coeffs);
    let all: Vec<&RingElem> = elems.iter().collect();
    let gs = polys(space.x_degree + 1, &all);
    let id = Endomorphism::identity();
    let big = Bounds::new(space.bounds.max_index, 4 * space.bounds.max_degree + 2);
    let has_scalar = |p: &SkewPoly| p.coeffs().iter().any(|c| !c.scalar_part().is_zero());
    let mut red = pres.reducer();
    let (mut zd, mut arm, mut scal) = (0, 0, 0);
    for left in [true, false] {
        for f in &fs {
            let (mut is_zd, mut is_arm, mut is_scal) = (false, false, false);
            for g in &gs {
                let (l, r) = if left { (f, g) } else { (g, f) };
                if !skew_mul_poly(l, r, &id, pres, &big).unwrap().is_zero() {
                    continue;
                }
                is_zd = true;
                is_scal |= has_scalar(f) || has_scalar(g);
                is_arm |= l
                    .coeffs()
                    .iter()
                    .any(|a| r.coeffs().iter().any(|b| !red.mul(a, b).unwrap().is_zero()));
            }
            zd += is_zd as u64;
            arm += is_arm as u64;
            scal += is_scal as u64;
        }
    }
    (zd, arm, scal)
}

fn counts(o: &ExhaustiveOutcome) -> (u64, u64, u64) {
    (
        o.zero_divisors,
        o.armendariz_violations,
        o.scalar_violations,
    )
}

#[test]
fn exhaustive_engine_matches_brute_force() {
    let toy = parse_presentation(NON_ARMENDARIZ).unwrap();
    let space = ExhaustiveSpace {
        bounds: Bounds::new(0, 2),
        max_support: 2,
        x_degree: 1,
    };
    let o = exhaustive_zero_divisor_search(&toy, &space).unwrap();
    assert!(o.armendariz_violations > 0);
    assert_eq!(counts(&o), brute_outcome(&toy, &space));

    let arm = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let space = ExhaustiveSpace {
        bounds: Bounds::new(1, 1),
        max_support: 2,
        x_degree: 1,
    };
    let o = exhaustive_zero_divisor_search(&arm, &space).unwrap();
    assert_eq!(o.armendariz_violations, 0);
    assert_eq!(counts(&o), brute_outcome(&arm, &space));
}

#[test]
fn non_armendariz_pair() {
    let toy = parse_presentation(NON_ARMENDARIZ).unwrap();
    let f = SkewPoly::from_coeffs(vec![toy.element("u").unwrap(), toy.element("v").unwrap()]);
    let b = Bounds::new(0, 4);
    let id = Endomorphism::identity();
    assert!(skew_mul_poly(&f, &f, &id, &toy, &b).unwrap().is_zero());
    assert_eq!(
        ncann_core::armendariz_check(&f, &f, &id, &toy, &b).unwrap(),
        Some((1, 0))
    );
}
