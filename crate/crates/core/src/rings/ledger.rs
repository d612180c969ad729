use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annihilator::{is_faithful_upto, Side};
use crate::checks::{alpha_compatibility_check, strong_armendariz_check};
use crate::components::ComponentClass;
use crate::element::RingElem;
use crate::error::Result;
use crate::exhaustive::ExhaustiveSpace;
use crate::presentation::{Bounds, Presentation};
use crate::report::{check_basis_claim_with, CheckReport, Verdict, BASIS_SAMPLES, DEFAULT_SEED};
use crate::sampling::Sampler;
use crate::skew::{skew_mul_series, Endomorphism, TruncSeries};
use crate::word::Word;

use super::{
    bb_failure_witness, builtin_ring, cedo_series_witness, right_zip_certificate,
    series_bb_evidence, verify_lemma_with, BuiltinName, Lemma, LemmaParams,
};

/// Overrides for `ncann check`; unset fields take per-ring defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerConfig {
    pub max_degree: Option<usize>,
    pub max_index: Option<u32>,
    pub order: Option<usize>,
    pub seed: u64,
    /// Random instances per sampled claim.
    pub samples: usize,
}

impl Default for LedgerConfig {
    fn default() -> Self {
        LedgerConfig {
            max_degree: None,
            max_index: None,
            order: None,
            seed: DEFAULT_SEED,
            samples: 20,
        }
    }
}

impl LedgerConfig {
    fn bounds(&self, max_index: u32, max_degree: usize) -> Bounds {
        Bounds::new(
            self.max_index.unwrap_or(max_index),
            self.max_degree.unwrap_or(max_degree),
        )
    }
}

/// Runs every checkable claim about the built-in ring `name` over GF(p).
pub fn claim_ledger(name: BuiltinName, p: u64, cfg: &LedgerConfig) -> Result<Vec<CheckReport>> {
    let pres = builtin_ring(name, p)?;
    let basis = check_basis_claim_with(&pres, &cfg.bounds(3, 3), BASIS_SAMPLES, cfg.seed);
    let mut out = vec![basis];
    match name {
        BuiltinName::Cedo31 => cedo_ledger(&pres, cfg, &mut out)?,
        BuiltinName::Armendariz33 => armendariz_ledger(&pres, cfg, &mut out)?,
        BuiltinName::Section4 => section4_ledger(&pres, cfg, &mut out)?,
    }
    Ok(out)
}

fn cedo_ledger(pres: &Presentation, cfg: &LedgerConfig, out: &mut Vec<CheckReport>) -> Result<()> {
    let t = cfg.order.unwrap_or(4);
    for n in 0..=cfg.max_index.unwrap_or(4) {
        out.push(cedo_series_witness(n, pres, t)?);
    }
    Ok(())
}

/// `sum_{i <= t} a_i x^i` and `sum_{j <= t} b_j x^j`.
pub fn armendariz_zero_series(pres: &Presentation, t: usize) -> Result<(TruncSeries, TruncSeries)> {
    let series = |fam: &str| -> Result<TruncSeries> {
        let coeffs = (0..=t as u32)
            .map(|i| pres.monomial(&[(fam, &[i])]))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries::new(t, coeffs))
    };
    Ok((series("a")?, series("b")?))
}

/// The truncated zero series of the Armendariz example multiply to zero
/// and violate the strong condition at `(1, 0)`.
pub fn armendariz_series_report(pres: &Presentation, t: usize) -> Result<CheckReport> {
    let (f, g) = armendariz_zero_series(pres, t)?;
    let b = Bounds::new(t as u32, 2);
    let id = Endomorphism::identity();
    let mut report = CheckReport::new("strong_armendariz_failure", Verdict::Pass)
        .with_bounds(b)
        .param("order", t);
    let prod = skew_mul_series(&f, &g, &id, pres, &b)?;
    if !prod.is_zero() {
        return Ok(report
            .witness("product", prod.to_poly().format(pres))
            .fail());
    }
    let violation = strong_armendariz_check(&f, &g, &id, pres, &b)?;
    report = report.witness(
        "violation",
        violation.map_or("none".to_string(), |(i, j)| format!("({i},{j})")),
    );
    Ok(match violation {
        Some((i, j)) => {
            let c = pres.reducer().mul(f.coeff(i), g.coeff(j))?;
            report.witness("product_coefficient", pres.format_element(&c))
        }
        None => report.fail(),
    })
}

fn armendariz_ledger(
    pres: &Presentation,
    cfg: &LedgerConfig,
    out: &mut Vec<CheckReport>,
) -> Result<()> {
    out.push(armendariz_series_report(pres, cfg.order.unwrap_or(16))?);
    let mut params = LemmaParams::new(cfg.bounds(2, 2), cfg.samples, cfg.seed);
    params.space = ExhaustiveSpace {
        bounds: params.bounds,
        max_support: 2,
        x_degree: 2,
    };
    out.push(verify_lemma_with(Lemma::L3_4, pres, &params)?);
    Ok(())
}

/// Random `F` inside the ideal generated by the `a` letters: elements
/// supported on words in the `a` letters and on `b_j a ...` words.
pub fn sample_ideal_subset(
    pres: &Presentation,
    b: &Bounds,
    rng: &mut impl Rng,
    max_size: usize,
    max_terms: usize,
) -> Vec<RingElem> {
    let scheme = pres.component_scheme().expect("section4 ring");
    let sampler = Sampler::new(pres, b).filter(|w| {
        matches!(
            scheme.classify(w),
            ComponentClass::APart | ComponentClass::Mixed
        )
    });
    let n = rng.gen_range(1..=max_size.max(1));
    (0..n)
        .map(|_| sampler.nonzero_element(rng, max_terms))
        .collect()
}

/// Random `X` of slice elements, exactly one of which has a nonzero
/// scalar part, placed at a random position.
pub fn sample_zip_set(
    pres: &Presentation,
    b: &Bounds,
    rng: &mut impl Rng,
    max_size: usize,
    max_terms: usize,
) -> Vec<RingElem> {
    let k = pres.field();
    let sampler = Sampler::new(pres, b).filter(|w| !w.is_one());
    let n = rng.gen_range(1..=max_size.max(1));
    let mut x: Vec<RingElem> = (0..n - 1)
        .map(|_| sampler.element(rng, max_terms))
        .collect();
    let mut unit = sampler.element(rng, max_terms);
    unit.add_term(
        Word::one(),
        k.scalar(rng.gen_range(1..k.characteristic() as i64)),
        k,
    );
    x.insert(rng.gen_range(0..n), unit);
    x
}

fn section4_ledger(
    pres: &Presentation,
    cfg: &LedgerConfig,
    out: &mut Vec<CheckReport>,
) -> Result<()> {
    let b = cfg.bounds(3, 2);
    let small = cfg.bounds(2, 2);
    let mut params = LemmaParams::new(small, cfg.samples, cfg.seed);
    out.push(verify_lemma_with(Lemma::L4_1, pres, &params)?);
    params.bounds = cfg.bounds(2, 1);
    out.push(verify_lemma_with(Lemma::L4_2, pres, &params)?);
    params.space = ExhaustiveSpace {
        bounds: cfg.bounds(2, 1),
        max_support: 2,
        x_degree: 2,
    };
    out.push(verify_lemma_with(Lemma::L4_3, pres, &params)?);

    let a: Vec<RingElem> = (0..=b.max_index)
        .map(|i| pres.monomial(&[("a", &[i])]))
        .collect::<Result<_>>()?;
    let (faithful, ann) = is_faithful_upto(&a, Side::Left, pres, b)?;
    let mut report = CheckReport::new("left_annihilator_of_a_letters", Verdict::Pass)
        .with_bounds(b)
        .dimension("annihilator", ann.dim());
    if let Some(e) = ann.ring_elements().first() {
        report = report.witness("annihilator_member", pres.format_element(e));
    }
    out.push(if faithful { report.fail() } else { report });

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let wide = cfg.bounds(5, 3);
    let mut report = CheckReport::new("beachy_blair_failure", Verdict::Pass)
        .with_bounds(wide)
        .param("seed", cfg.seed)
        .dimension("families", cfg.samples);
    for _ in 0..cfg.samples {
        let f = sample_ideal_subset(pres, &wide, &mut rng, 4, 4);
        if let Err(e) = bb_failure_witness(&f, pres, &wide) {
            let shown: Vec<String> = f.iter().map(|r| pres.format_element(r)).collect();
            report = report
                .witness("family", shown.join("; "))
                .note(e.to_string())
                .fail();
            break;
        }
    }
    out.push(report);

    let zb = cfg.bounds(4, 3);
    let mut report = CheckReport::new("right_zip", Verdict::Pass)
        .with_bounds(zb)
        .param("seed", cfg.seed)
        .dimension("sets", cfg.samples);
    for _ in 0..cfg.samples {
        let x = sample_zip_set(pres, &zb, &mut rng, 4, 3);
        let r = right_zip_certificate(&x, pres, &zb)?;
        if !r.passed() {
            report = report.witnesses_from(&r).fail();
            break;
        }
    }
    out.push(report);

    let t = cfg.order.unwrap_or(3);
    let gen = TruncSeries::new(t, vec![pres.monomial(&[("a", &[0])])?]);
    out.push(series_bb_evidence(
        &[gen],
        pres,
        &Bounds::new(2 * t as u32, 2),
        t,
    )?);

    out.push(alpha_compatibility_check(
        &Endomorphism::identity(),
        pres,
        &small,
        cfg.samples,
        cfg.seed,
    )?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledgers_pass() {
        for name in BuiltinName::ALL {
            let cfg = LedgerConfig {
                samples: 5,
                ..LedgerConfig::default()
            };
            let reports = claim_ledger(name, 2, &cfg).unwrap();
            for r in &reports {
                assert!(r.verdict.is_ok(), "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn armendariz_series_violation() {
        let pres = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
        let r = armendariz_series_report(&pres, 6).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(r.witness_value("violation"), Some("(1,0)"));
        assert_eq!(r.witness_value("product_coefficient"), Some("a[0]*b[1]"));
    }
}
