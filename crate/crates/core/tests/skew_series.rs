use ncann_core::rings::section4_shift;
use ncann_core::sampling::Sampler;
use ncann_core::{
    annihilator, builtin_ring, phi_extend, psi_restrict, skew_mul_poly, skew_mul_series, AnnQuery,
    Bounds, BuiltinName, Endomorphism, Presentation, RingElem, Side, SkewPoly, TruncSeries,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `sum_{i,j} f_i alpha^i(g_j) x^{i+j}`, built term by term from word
/// concatenations.
fn convolution(f: &SkewPoly, g: &SkewPoly, alpha: &Endomorphism, pres: &Presentation) -> SkewPoly {
    let k = pres.field();
    let mut red = pres.reducer();
    let n = f.coeffs().len() + g.coeffs().len();
    let mut out = vec![RingElem::zero(); n];
    for (i, fi) in f.coeffs().iter().enumerate() {
        for (j, gj) in g.coeffs().iter().enumerate() {
            let twisted = alpha.apply_power(gj, i as i64, &mut red).unwrap();
            for (u, a) in fi.terms() {
                for (v, b) in twisted.terms() {
                    let w = red.normal_word(&u.concat(v)).unwrap();
                    out[i + j].add_scaled(&w, k.mul(a, b), k);
                }
            }
        }
    }
    SkewPoly::from_coeffs(out)
}

fn sampler(pres: &Presentation) -> Sampler {
    Sampler::new(pres, &Bounds::new(3, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_matches_convolution(seed in any::<u64>()) {
        let pres = builtin_ring(BuiltinName::Section4, 3).unwrap();
        let shift = section4_shift(&pres).unwrap();
        let s = sampler(&pres);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = s.poly(&mut rng, 2, 3);
        let g = s.poly(&mut rng, 2, 3);
        let b = Bounds::new(8, 2);
        for alpha in [Endomorphism::identity(), shift] {
            prop_assert_eq!(skew_mul_poly(&f, &g, &alpha, &pres, &b).unwrap(), convolution(&f, &g, &alpha, &pres));
        }
    }

    #[test]
    fn truncation_commutes_with_product(seed in any::<u64>(), t in 0usize..4) {
        let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
        let s = sampler(&pres);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = s.poly(&mut rng, 3, 3);
        let g = s.poly(&mut rng, 3, 3);
        let b = Bounds::new(3, 2);
        let id = Endomorphism::identity();
        let full = skew_mul_poly(&f, &g, &id, &pres, &b).unwrap();
        let series = skew_mul_series(&TruncSeries::from_poly(&f, t), &TruncSeries::from_poly(&g, t), &id, &pres, &b).unwrap();
        prop_assert_eq!(series.to_poly(), full.truncate(t));
    }

    #[test]
    fn shift_is_multiplicative(seed in any::<u64>()) {
        let pres = builtin_ring(BuiltinName::Section4, 2).unwrap();
        let shift = section4_shift(&pres).unwrap();
        let s = sampler(&pres);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (s.element(&mut rng, 3), s.element(&mut rng, 3));
        let mut red = pres.reducer();
        let xy = red.mul(&x, &y).unwrap();
        let ax = shift.apply(&x, &mut red).unwrap();
        let ay = shift.apply(&y, &mut red).unwrap();
        prop_assert_eq!(shift.apply(&xy, &mut red).unwrap(), red.mul(&ax, &ay).unwrap());
    }
}

#[test]
fn psi_after_phi_is_identity() {
    let mut checked = 0;
    for name in BuiltinName::ALL {
        let pres = builtin_ring(name, 2).unwrap();
        let b = Bounds::new(2, 2);
        let s = Sampler::new(&pres, &Bounds::new(2, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..17 {
            let x = [s.nonzero_element(&mut rng, 2)];
            let l = annihilator(&AnnQuery::ring(Side::Left, &x, b), &pres).unwrap();
            let lifted = phi_extend(&l, &Endomorphism::identity(), &pres, 2).unwrap();
            let back = psi_restrict(&lifted, &pres);
            assert_eq!(back.vectors(), l.vectors(), "{name}");
            checked += 1;
        }
    }
    assert_eq!(checked, 51);
}
