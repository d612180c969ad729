use crate::annihilator::{annihilator, echelon_in_region, AnnQuery, Side};
use crate::components::{decompose_components, ComponentClass, ComponentScheme};
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::presentation::{Bounds, Presentation};
use crate::report::{CheckReport, Verdict};
use crate::skew::{skew_mul_series, Endomorphism, TruncSeries};

/// The `a` and `b` family ids, or a mismatch error for other rings.
fn section4_families(pres: &Presentation) -> Result<(u16, u16)> {
    match pres.component_scheme() {
        Some(ComponentScheme::Section4 { a, b }) => Ok((a, b)),
        _ => Err(Error::RingMismatch {
            expected: "section4".to_string(),
            found: pres.name().to_string(),
        }),
    }
}

fn b_letter(pres: &Presentation, j: u32) -> Result<RingElem> {
    pres.monomial(&[("b", &[j])])
}

/// A `b_k` annihilating every member of `F ⊆ R A` from the left.
///
/// `k` is the largest leading index among support words starting with an
/// `a`; with no such word, `b_0` works. The product is re-checked before
/// returning.
pub fn bb_failure_witness(f: &[RingElem], pres: &Presentation, b: &Bounds) -> Result<RingElem> {
    let (a, _) = section4_families(pres)?;
    let scheme = pres.component_scheme().unwrap();
    let mut k: Option<u32> = None;
    for r in f {
        pres.check_indices(r, b)?;
        for w in r.support() {
            match scheme.classify(w) {
                ComponentClass::APart | ComponentClass::Mixed => {}
                _ => {
                    return Err(Error::NotInIdeal(format!(
                        "support word {} is not in <A> or V",
                        pres.format_word(w)
                    )))
                }
            }
            if w[0].family == a {
                k = Some(k.map_or(w[0].indices[0], |k| k.max(w[0].indices[0])));
            }
        }
    }
    let witness = b_letter(pres, k.unwrap_or(0))?;
    let mut red = pres.reducer();
    for r in f {
        let prod = red.mul(&witness, r)?;
        if !prod.is_zero() {
            return Err(Error::PreconditionViolation(format!(
                "{} * ({}) = {}",
                pres.format_element(&witness),
                pres.format_element(r),
                pres.format_element(&prod)
            )));
        }
    }
    Ok(witness)
}

/// Singleton right-zip witness for `X`: a member with nonzero scalar
/// part, whose one-sided annihilators inside the slice are both zero.
///
/// When every member has zero scalar part, the report instead fails with
/// `b_0`, which right-annihilates all of `X`.
pub fn right_zip_certificate(
    x: &[RingElem],
    pres: &Presentation,
    b: &Bounds,
) -> Result<CheckReport> {
    section4_families(pres)?;
    let report = CheckReport::new("right_zip_certificate", Verdict::Pass)
        .with_bounds(*b)
        .dimension("set_size", x.len());
    let Some(r) = x.iter().find(|r| !r.scalar_part().is_zero()) else {
        let b0 = b_letter(pres, 0)?;
        let mut red = pres.reducer();
        for r in x {
            if !red.mul(r, &b0)?.is_zero() {
                return Err(Error::PreconditionViolation(format!(
                    "({}) * b[0] is not zero",
                    pres.format_element(r)
                )));
            }
        }
        return Ok(report
            .witness("right_annihilator_member", pres.format_element(&b0))
            .note("no member has a nonzero scalar part, so b[0] annihilates the set on the right")
            .fail());
    };
    let full = annihilator(&AnnQuery::ring(Side::Right, x, *b), pres)?;
    if !full.is_zero() {
        return Err(Error::VacuousQuery { dim: full.dim() });
    }
    let right = annihilator(
        &AnnQuery::ring(Side::Right, std::slice::from_ref(r), *b),
        pres,
    )?;
    let left = annihilator(
        &AnnQuery::ring(Side::Left, std::slice::from_ref(r), *b),
        pres,
    )?;
    let report = report
        .witness("r", pres.format_element(r))
        .dimension("right_annihilator", right.dim())
        .dimension("left_annihilator", left.dim());
    Ok(if right.is_zero() && left.is_zero() {
        report
    } else {
        report.fail()
    })
}

/// Truncated evidence that the left ideal generated by `gens` in `R[[x]]`
/// is cofaithful, following the power-series construction
/// `h = g f_a` with `g = sum_{i <= t} a_i x^i`.
///
/// The left annihilator of `h` is computed at order `t`. Members `w x^k`
/// with `k + max_index(w) >= t` can survive only because coefficients past
/// `x^t` are dropped, so the check is that no member lies in the span of
/// coordinates with `k + max_index(w) < t`.
pub fn series_bb_evidence(
    gens: &[TruncSeries],
    pres: &Presentation,
    b: &Bounds,
    t: usize,
) -> Result<CheckReport> {
    section4_families(pres)?;
    if t == 0 {
        return Err(Error::PreconditionViolation(
            "order must be at least 1".to_string(),
        ));
    }
    let k = pres.field();
    for f in gens {
        if f.coeffs().iter().any(|c| !c.scalar_part().is_zero()) {
            return Err(Error::PreconditionViolation(
                "generator has a nonzero scalar series part; its annihilator is already zero"
                    .to_string(),
            ));
        }
    }
    let g_coeffs = (0..=t as u32)
        .map(|i| {
            let e = pres.monomial(&[("a", &[i])])?;
            pres.check_indices(&e, b)?;
            Ok(e)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = TruncSeries::new(t, g_coeffs);
    let id = Endomorphism::identity();
    let mut chosen = None;
    for (n, f) in gens.iter().enumerate() {
        let f = f.truncate(t);
        let f = TruncSeries::new(t, f.coeffs().to_vec());
        if !skew_mul_series(&g, &f, &id, pres, b)?.is_zero() {
            chosen = Some((n, f));
            break;
        }
    }
    let Some((n, f)) = chosen else {
        return Err(Error::NoGenerator { order: t });
    };
    let fa = f.map(|c| {
        decompose_components(c, pres)
            .map(|parts| parts.a)
            .unwrap_or_default()
    });
    let h = skew_mul_series(&g, &fa, &id, pres, b)?;
    let q = AnnQuery::series(Side::Left, vec![h.to_poly()], *b, t);
    let ann = annihilator(&q, pres)?;
    let low = echelon_in_region(
        ann.vectors(),
        |power, w| power + (w.max_index() as usize) < t,
        k,
    );
    let mut report = CheckReport::new("series_beachy_blair", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .param("order", t)
        .param("generator", n)
        .witness("h", h.to_poly().format(pres))
        .dimension("annihilator", ann.dim())
        .dimension("low_index_annihilator", low.len());
    if let Some(v) = low.first() {
        report = report.witness("low_index_member", v.format(pres)).fail();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{builtin_ring, BuiltinName};

    fn ring() -> Presentation {
        builtin_ring(BuiltinName::Section4, 2).unwrap()
    }

    #[test]
    fn bb_witness_examples() {
        let p = ring();
        let b = Bounds::new(5, 3);
        let f = [
            p.element("a[3]").unwrap(),
            p.element("b[0]*a[2]*a[1]").unwrap(),
        ];
        assert_eq!(
            bb_failure_witness(&f, &p, &b).unwrap(),
            p.element("b[3]").unwrap()
        );
        let f = [p.element("b[0]*a[1]").unwrap()];
        assert_eq!(
            bb_failure_witness(&f, &p, &b).unwrap(),
            p.element("b[0]").unwrap()
        );
        let f = [p.element("a[0] + a[1]*a[0]").unwrap()];
        assert_eq!(
            bb_failure_witness(&f, &p, &b).unwrap(),
            p.element("b[1]").unwrap()
        );
        let f = [p.element("b[2]").unwrap()];
        assert!(matches!(
            bb_failure_witness(&f, &p, &b),
            Err(Error::NotInIdeal(_))
        ));
    }

    #[test]
    fn right_zip_examples() {
        let p = ring();
        let b = Bounds::new(3, 2);
        let x = [p.element("1 + b[0]").unwrap(), p.element("a[0]").unwrap()];
        let r = right_zip_certificate(&x, &p, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness_value("r"), Some("b[0] + 1"));
        let x = [p.element("a[0]").unwrap(), p.element("b[0]").unwrap()];
        let r = right_zip_certificate(&x, &p, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witness_value("right_annihilator_member"), Some("b[0]"));
        let r = right_zip_certificate(&[RingElem::one()], &p, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn series_evidence_constant_generator() {
        let p = ring();
        let f = TruncSeries::new(3, vec![p.element("a[0]").unwrap()]);
        let r = series_bb_evidence(&[f], &p, &Bounds::new(6, 2), 3).unwrap();
        assert_eq!(r.verdict, Verdict::EvidenceOnly, "{r:?}");
        assert!(r.dimensions["annihilator"] > 0);
    }

    #[test]
    fn series_evidence_errors() {
        let p = ring();
        let zero = TruncSeries::zero(3);
        assert!(matches!(
            series_bb_evidence(&[zero], &p, &Bounds::new(6, 2), 3),
            Err(Error::NoGenerator { order: 3 })
        ));
        let unit = TruncSeries::new(3, vec![RingElem::one()]);
        assert!(matches!(
            series_bb_evidence(&[unit], &p, &Bounds::new(6, 2), 3),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
