use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::annihilator::{annihilator, AnnQuery, Side};
use crate::components::{ComponentClass, ComponentScheme};
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::exhaustive::{exhaustive_zero_divisor_search, ExhaustiveOutcome, ExhaustiveSpace};
use crate::field::PrimeField;
use crate::linalg::{Echelon, SparseVec};
use crate::presentation::{Bounds, Presentation};
use crate::report::{CheckReport, Verdict};
use crate::sampling::Sampler;
use crate::word::Word;

/// Above this many elements a span is sampled instead of enumerated.
const ENUMERATION_LIMIT: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// Zero products in the Armendariz example have zero scalar coefficients.
    L3_4,
    /// All three parts of the section-4 lemma on `U_ba`, `A` and units.
    L4_1,
    L4_1a,
    L4_1b,
    L4_1c,
    L4_2,
    L4_3,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Lemma::L3_4,
        Lemma::L4_1,
        Lemma::L4_1a,
        Lemma::L4_1b,
        Lemma::L4_1c,
        Lemma::L4_2,
        Lemma::L4_3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Lemma::L3_4 => "lemma_3_4",
            Lemma::L4_1 => "lemma_4_1",
            Lemma::L4_1a => "lemma_4_1a",
            Lemma::L4_1b => "lemma_4_1b",
            Lemma::L4_1c => "lemma_4_1c",
            Lemma::L4_2 => "lemma_4_2",
            Lemma::L4_3 => "lemma_4_3",
        }
    }

    fn ring(self) -> &'static str {
        match self {
            Lemma::L3_4 => "armendariz_3_3",
            _ => "section4",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::PreconditionViolation(format!("unknown lemma {s}")))
    }
}

/// Search parameters for [`verify_lemma_with`].
#[derive(Clone, Copy, Debug)]
pub struct LemmaParams {
    pub bounds: Bounds,
    pub samples: usize,
    pub seed: u64,
    /// Polynomial space for the zero-product lemmas.
    pub space: ExhaustiveSpace,
    /// Number of `r_i` in the sum lemma.
    pub terms: usize,
}

impl LemmaParams {
    pub fn new(bounds: Bounds, samples: usize, seed: u64) -> Self {
        LemmaParams {
            bounds,
            samples,
            seed,
            space: ExhaustiveSpace {
                bounds,
                ..ExhaustiveSpace::default()
            },
            terms: 2,
        }
    }
}

/// Checks one lemma inside the slice `b`. The zero-product lemmas search
/// polynomials with x-degree at most 2 and coefficient support at most 2.
pub fn verify_lemma(
    lemma: Lemma,
    pres: &Presentation,
    b: &Bounds,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    verify_lemma_with(lemma, pres, &LemmaParams::new(*b, samples, seed))
}

pub fn verify_lemma_with(
    lemma: Lemma,
    pres: &Presentation,
    params: &LemmaParams,
) -> Result<CheckReport> {
    let scheme = match (lemma, pres.component_scheme()) {
        (Lemma::L3_4, Some(s @ ComponentScheme::Armendariz { .. })) => s,
        (Lemma::L3_4, _) => return Err(mismatch(lemma, pres)),
        (_, Some(s @ ComponentScheme::Section4 { .. })) => s,
        _ => return Err(mismatch(lemma, pres)),
    };
    match lemma {
        Lemma::L3_4 | Lemma::L4_3 => zero_product_lemma(lemma, pres, &params.space),
        Lemma::L4_1 => {
            let parts = [
                lemma_4_1a(pres, scheme, &params.bounds)?,
                lemma_4_1b(pres, &params.bounds)?,
                lemma_4_1c(pres, &params.bounds, params.samples, params.seed)?,
            ];
            let mut report =
                CheckReport::new(lemma.as_str(), Verdict::EvidenceOnly).with_bounds(params.bounds);
            for part in parts {
                let tag = &part.claim["lemma_4_1".len()..];
                for (key, d) in &part.dimensions {
                    report = report.dimension(&format!("{tag}.{key}"), *d);
                }
                for w in &part.witnesses {
                    report = report.witness(&format!("{tag}.{}", w.role), w.value.clone());
                }
                if !part.verdict.is_ok() {
                    report = report.fail();
                }
            }
            Ok(report)
        }
        Lemma::L4_1a => lemma_4_1a(pres, scheme, &params.bounds),
        Lemma::L4_1b => lemma_4_1b(pres, &params.bounds),
        Lemma::L4_1c => lemma_4_1c(pres, &params.bounds, params.samples, params.seed),
        Lemma::L4_2 => lemma_4_2(
            pres,
            &params.bounds,
            params.terms,
            params.samples,
            params.seed,
        ),
    }
}

fn mismatch(lemma: Lemma, pres: &Presentation) -> Error {
    Error::RingMismatch {
        expected: lemma.ring().to_string(),
        found: pres.name().to_string(),
    }
}

fn outcome_params(report: CheckReport, o: &ExhaustiveOutcome) -> CheckReport {
    report
        .param("polys_checked", o.polys_checked)
        .param("zero_divisors", o.zero_divisors)
        .param("armendariz_violations", o.armendariz_violations)
        .param("scalar_violations", o.scalar_violations)
}

/// Every zero product `f g = 0` in the bounded space has no scalar
/// coefficient in either factor.
fn zero_product_lemma(
    lemma: Lemma,
    pres: &Presentation,
    space: &ExhaustiveSpace,
) -> Result<CheckReport> {
    let o = exhaustive_zero_divisor_search(pres, space)?;
    let mut report = CheckReport::new(lemma.as_str(), Verdict::EvidenceOnly)
        .with_bounds(space.bounds)
        .param("max_support", space.max_support)
        .param("x_degree", space.x_degree);
    report = outcome_params(report, &o);
    if let Some(v) = &o.first_scalar_violation {
        report = report.witness("scalar_violation", v.clone()).fail();
    }
    if lemma == Lemma::L3_4 {
        if let Some(v) = &o.first_armendariz_violation {
            report = report.witness("armendariz_violation", v.clone()).fail();
        }
    }
    Ok(report)
}

/// Coordinates of normal forms in a growing word index.
#[derive(Default)]
struct Coords {
    index: HashMap<Word, u32>,
}

impl Coords {
    fn vector(&mut self, e: &RingElem, k: PrimeField) -> SparseVec {
        let raw = e
            .terms()
            .map(|(w, c)| {
                let n = self.index.len() as u32;
                (*self.index.entry(w.clone()).or_insert(n), c)
            })
            .collect();
        SparseVec::from_entries(raw, k)
    }
}

/// All `p^n` combinations of `words`, or `None` when there are too many.
fn span_elements(words: &[Word], k: PrimeField) -> Option<Vec<RingElem>> {
    let p = k.characteristic() as usize;
    let total = (0..words.len()).try_fold(1usize, |acc, _| {
        acc.checked_mul(p).filter(|&n| n <= ENUMERATION_LIMIT)
    })?;
    Some(
        (0..total)
            .map(|mut n| {
                let mut e = RingElem::zero();
                for w in words {
                    let c = n % p;
                    n /= p;
                    if c != 0 {
                        e.add_term(w.clone(), k.scalar(c as i64), k);
                    }
                }
                e
            })
            .collect(),
    )
}

/// `r s != 0` for nonzero `r` in the `U_ba` span and nonzero `s` in the
/// `K + U_a` span: for each `r`, left multiplication by `r` is injective
/// on the `s` span.
fn lemma_4_1a(pres: &Presentation, scheme: ComponentScheme, b: &Bounds) -> Result<CheckReport> {
    let k = pres.field();
    let words = pres.enumerate_basis(b);
    let u_ba: Vec<Word> = words
        .iter()
        .filter(|w| scheme.classify(w) == ComponentClass::Mixed)
        .cloned()
        .collect();
    let s_words: Vec<Word> = words
        .iter()
        .filter(|w| {
            matches!(
                scheme.classify(w),
                ComponentClass::Scalar | ComponentClass::APart
            )
        })
        .cloned()
        .collect();
    let report = CheckReport::new("lemma_4_1a", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .dimension("u_ba_words", u_ba.len())
        .dimension("s_words", s_words.len());
    let rs = match span_elements(&u_ba, k) {
        Some(all) => all,
        None => {
            return Err(Error::PreconditionViolation(format!(
                "{} U_ba words span too many elements to enumerate",
                u_ba.len()
            )))
        }
    };
    let mut red = pres.reducer();
    let mut checked = 0usize;
    for r in rs.iter().filter(|r| !r.is_zero()) {
        checked += 1;
        let mut coords = Coords::default();
        let mut ech = Echelon::new(k);
        for s in &s_words {
            let prod = red.mul(r, &RingElem::from_word(s.clone()))?;
            if !ech.insert(coords.vector(&prod, k)) {
                return Ok(report
                    .dimension("r_checked", checked)
                    .witness("r", pres.format_element(r))
                    .note("left multiplication by r has a nonzero kernel on the s span")
                    .fail());
            }
        }
    }
    Ok(report.dimension("r_checked", checked))
}

/// The left annihilator of `{a_0, ..., a_N}` in the slice is spanned by
/// words `b_j` with `j >= N`.
fn lemma_4_1b(pres: &Presentation, b: &Bounds) -> Result<CheckReport> {
    let n = b.max_index;
    let targets = (0..=n)
        .map(|i| pres.monomial(&[("a", &[i])]))
        .collect::<Result<Vec<_>>>()?;
    let ann = annihilator(&AnnQuery::ring(Side::Left, &targets, *b), pres)?;
    let bfam = pres.family_id("b").expect("section4 ring has family b");
    let report = CheckReport::new("lemma_4_1b", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .dimension("annihilator", ann.dim());
    for e in ann.ring_elements() {
        let ok = e.len() == 1
            && e.support()
                .all(|w| matches!(w.letters(), [g] if g.family == bfam && g.indices[0] >= n));
        if !ok {
            return Ok(report
                .witness("annihilator_member", pres.format_element(&e))
                .fail());
        }
    }
    Ok(report)
}

/// Sampled `r` with nonzero scalar part have zero left and right
/// annihilators in the slice.
fn lemma_4_1c(pres: &Presentation, b: &Bounds, samples: usize, seed: u64) -> Result<CheckReport> {
    let k = pres.field();
    let sampler = Sampler::new(pres, b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = CheckReport::new("lemma_4_1c", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .param("seed", seed)
        .dimension("samples", samples);
    for _ in 0..samples {
        let mut r = sampler.element(&mut rng, 4);
        let unit = k.scalar(rand::Rng::gen_range(&mut rng, 1..k.characteristic() as i64));
        r.add_term(Word::one(), unit, k);
        if r.scalar_part().is_zero() {
            r.add_term(Word::one(), unit, k);
        }
        for side in [Side::Left, Side::Right] {
            let ann = annihilator(&AnnQuery::ring(side, std::slice::from_ref(&r), *b), pres)?;
            if !ann.is_zero() {
                return Ok(report
                    .witness("r", pres.format_element(&r))
                    .witness("side", format!("{side:?}").to_lowercase())
                    .witness(
                        "annihilator_member",
                        pres.format_element(&ann.ring_elements()[0]),
                    )
                    .fail());
            }
        }
    }
    Ok(report)
}

/// `sum_i r_i a_i s = 0` iff every `r_i a_i s = 0`, for `r_i`, `s` in the
/// span of the slice words and `i = 1..=terms`.
///
/// For fixed `s` the tuples `(r_i)` range over a vector space and the
/// claim says the images of `r -> r a_i s` are independent, so each `s`
/// costs one rank comparison instead of a scan over all tuples.
fn lemma_4_2(
    pres: &Presentation,
    b: &Bounds,
    terms: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let k = pres.field();
    let words = pres.enumerate_basis(b);
    let a = (1..=terms as u32)
        .map(|i| pres.monomial(&[("a", &[i])]))
        .collect::<Result<Vec<_>>>()?;
    let (ss, exhaustive) = match span_elements(&words, k) {
        Some(all) => (all, true),
        None => {
            let sampler = Sampler::new(pres, b);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                (0..samples).map(|_| sampler.element(&mut rng, 4)).collect(),
                false,
            )
        }
    };
    let mut red = pres.reducer();
    let mut report = CheckReport::new("lemma_4_2", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .param("terms", terms)
        .param("exhaustive", exhaustive)
        .dimension("words", words.len())
        .dimension("s_checked", ss.len());
    let mut counterexamples = 0usize;
    for s in &ss {
        let mut coords = Coords::default();
        let mut total = Echelon::new(k);
        let mut rank_sum = 0;
        for ai in &a {
            let ais = red.mul(ai, s)?;
            let mut part = Echelon::new(k);
            for w in &words {
                let img = red.mul(&RingElem::from_word(w.clone()), &ais)?;
                let v = coords.vector(&img, k);
                part.insert(v.clone());
                total.insert(v);
            }
            rank_sum += part.rank();
        }
        if total.rank() != rank_sum {
            counterexamples += 1;
            if counterexamples == 1 {
                report = report.witness("s", pres.format_element(s));
            }
        }
    }
    report = report.dimension("counterexamples", counterexamples);
    Ok(if counterexamples > 0 {
        report.fail()
    } else {
        report
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{builtin_ring, BuiltinName};

    fn s4() -> Presentation {
        builtin_ring(BuiltinName::Section4, 2).unwrap()
    }

    #[test]
    fn lemma_4_2_small() {
        let p = s4();
        let r = verify_lemma(Lemma::L4_2, &p, &Bounds::new(2, 1), 10, 1).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceOnly, "{r:?}");
        assert_eq!(r.dimensions["counterexamples"], 0);
        assert_eq!(r.dimensions["s_checked"], 128);
    }

    #[test]
    fn lemma_4_1b_basis() {
        let p = s4();
        let r = verify_lemma(Lemma::L4_1b, &p, &Bounds::new(3, 2), 0, 1).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceOnly);
        assert_eq!(r.dimensions["annihilator"], 1);
    }

    #[test]
    fn lemma_4_1_parts() {
        let p = s4();
        let r = verify_lemma(Lemma::L4_1, &p, &Bounds::new(2, 2), 20, 7).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceOnly, "{r:?}");
    }

    #[test]
    fn wrong_ring() {
        let p = s4();
        assert!(matches!(
            verify_lemma(Lemma::L3_4, &p, &Bounds::new(2, 1), 0, 1),
            Err(Error::RingMismatch { .. })
        ));
        let cedo = builtin_ring(BuiltinName::Cedo31, 2).unwrap();
        assert!(matches!(
            verify_lemma(Lemma::L4_2, &cedo, &Bounds::new(2, 1), 0, 1),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn zero_product_lemmas_small() {
        let arm = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
        let mut params = LemmaParams::new(Bounds::new(2, 2), 0, 1);
        params.space.x_degree = 1;
        let r = verify_lemma_with(Lemma::L3_4, &arm, &params).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceOnly, "{r:?}");
        let p = s4();
        let mut params = LemmaParams::new(Bounds::new(2, 1), 0, 1);
        params.space.x_degree = 1;
        let r = verify_lemma_with(Lemma::L4_3, &p, &params).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceOnly, "{r:?}");
        assert!(r.params["zero_divisors"].as_u64().unwrap() > 0);
    }
}
