//! Armendariz-type and compatibility checkers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::presentation::{Bounds, Presentation, Reducer};
use crate::report::{CheckReport, Verdict};
use crate::sampling::Sampler;
use crate::skew::{skew_mul_poly, skew_mul_series, Endomorphism, SkewPoly, TruncSeries};

/// First `(i, j)` with `f_i alpha^i(g_j) != 0` and `i + j <= limit`,
/// ordered by `i + j` and then by decreasing `i`.
fn first_violation(
    f: &[RingElem],
    g: &[RingElem],
    alpha: &Endomorphism,
    red: &mut Reducer,
    limit: Option<usize>,
) -> Result<Option<(usize, usize)>> {
    if f.is_empty() || g.is_empty() {
        return Ok(None);
    }
    let top = (f.len() - 1 + g.len() - 1).min(limit.unwrap_or(usize::MAX));
    for s in 0..=top {
        for i in (0..=s.min(f.len() - 1)).rev() {
            let j = s - i;
            if j >= g.len() || f[i].is_zero() || g[j].is_zero() {
                continue;
            }
            let twisted = alpha.apply_power(&g[j], i as i64, red)?;
            if !red.mul(&f[i], &twisted)?.is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Checks the alpha-skew Armendariz condition on a pair with `f g = 0`.
pub fn armendariz_check(
    f: &SkewPoly,
    g: &SkewPoly,
    alpha: &Endomorphism,
    pres: &Presentation,
    b: &Bounds,
) -> Result<Option<(usize, usize)>> {
    let fg = skew_mul_poly(f, g, alpha, pres, b)?;
    if !fg.is_zero() {
        return Err(Error::PreconditionViolation(format!(
            "f(x)g(x) = {} is not zero",
            fg.format(pres)
        )));
    }
    first_violation(f.coeffs(), g.coeffs(), alpha, &mut pres.reducer(), None)
}

/// Strong (power-series) version at order `t`; only coefficient pairs with
/// `i + j <= t` are examined, so a `None` is evidence at that order.
pub fn strong_armendariz_check(
    f: &TruncSeries,
    g: &TruncSeries,
    alpha: &Endomorphism,
    pres: &Presentation,
    b: &Bounds,
) -> Result<Option<(usize, usize)>> {
    let fg = skew_mul_series(f, g, alpha, pres, b)?;
    if !fg.is_zero() {
        return Err(Error::PreconditionViolation(format!(
            "f(x)g(x) = {} is not zero mod x^{}",
            fg.to_poly().format(pres),
            f.order() + 1
        )));
    }
    first_violation(
        f.coeffs(),
        g.coeffs(),
        alpha,
        &mut pres.reducer(),
        Some(f.order()),
    )
}

/// Tests `a b = 0 <=> a alpha(b) = 0` on every pair of slice words with
/// `grade(a) + grade(b) <= d`, then on `samples` random element pairs.
pub fn alpha_compatibility_check(
    alpha: &Endomorphism,
    pres: &Presentation,
    b: &Bounds,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    alpha.validate(pres, b)?;
    let mut report = CheckReport::new("alpha_compatibility", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .param("ring", pres.name())
        .param("samples", samples)
        .param("seed", seed);
    let mut red = pres.reducer();
    let words = pres.enumerate_basis(b);
    report = report.dimension("slice_words", words.len());
    let test =
        |x: &RingElem, y: &RingElem, red: &mut Reducer| -> Result<Option<(RingElem, RingElem)>> {
            let plain = red.mul(x, y)?;
            let ay = alpha.apply(y, red)?;
            let twisted = red.mul(x, &ay)?;
            Ok((plain.is_zero() != twisted.is_zero()).then_some((plain, twisted)))
        };
    let mut pairs = 0usize;
    for u in &words {
        for v in &words {
            if u.grade() + v.grade() > b.max_degree {
                continue;
            }
            pairs += 1;
            let (x, y) = (
                RingElem::from_word(u.clone()),
                RingElem::from_word(v.clone()),
            );
            if let Some((plain, twisted)) = test(&x, &y, &mut red)? {
                return Ok(report
                    .dimension("pairs_checked", pairs)
                    .witness("a", pres.format_element(&x))
                    .witness("b", pres.format_element(&y))
                    .witness("ab", pres.format_element(&plain))
                    .witness("a*alpha(b)", pres.format_element(&twisted))
                    .fail());
            }
        }
    }
    let half = b.max_degree / 2;
    let sampler = Sampler::new(pres, &Bounds::new(b.max_index, half));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = sampler.element(&mut rng, 4);
        let y = sampler.element(&mut rng, 4);
        pairs += 1;
        if let Some((plain, twisted)) = test(&x, &y, &mut red)? {
            return Ok(report
                .dimension("pairs_checked", pairs)
                .witness("a", pres.format_element(&x))
                .witness("b", pres.format_element(&y))
                .witness("ab", pres.format_element(&plain))
                .witness("a*alpha(b)", pres.format_element(&twisted))
                .fail());
        }
    }
    Ok(report.dimension("pairs_checked", pairs))
}
