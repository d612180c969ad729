use crate::element::RingElem;
use crate::error::Result;
use crate::presentation::{Bounds, Presentation};
use crate::report::{CheckReport, Verdict};
use crate::skew::{skew_mul_series, Endomorphism, SkewPoly, TruncSeries};

fn letter(pres: &Presentation, fam: &str, i: u32) -> Result<RingElem> {
    pres.monomial(&[(fam, &[i])])
}

/// `a_{0,i} - a_{1,i} x`, a member of `X_n` for every `n >= i`.
pub fn cedo_x_element(i: u32, pres: &Presentation) -> Result<SkewPoly> {
    let k = pres.field();
    Ok(SkewPoly::from_coeffs(vec![
        letter(pres, "a0", i)?,
        letter(pres, "a1", i)?.neg(k),
    ]))
}

/// `w_n = b_{1,n} - b_{2,n} + b_{1,n} x + b_{2,n} x^2`.
pub fn cedo_witness_series(n: u32, pres: &Presentation) -> Result<SkewPoly> {
    let k = pres.field();
    let b1 = letter(pres, "b1", n)?;
    let b2 = letter(pres, "b2", n)?;
    Ok(SkewPoly::from_coeffs(vec![b1.sub(&b2, k), b1, b2]))
}

/// Checks `(a_{0,i} - a_{1,i} x) w = 0` modulo `x^(t+1)` for every `i <= n`.
///
/// Fails with the first `i` and x-power whose coefficient survives.
pub fn cedo_series_check(
    w: &SkewPoly,
    n: u32,
    pres: &Presentation,
    t: usize,
) -> Result<CheckReport> {
    let b = Bounds::new(n, 2);
    let mut report = CheckReport::new("cedo_series_witness", Verdict::Pass)
        .with_bounds(b)
        .param("n", n)
        .param("order", t)
        .param("field", pres.field().characteristic())
        .witness("w", w.format(pres));
    if t < 3 {
        report = report.note("order below 3 drops the x^3 coefficient of the product");
    }
    let ws = TruncSeries::from_poly(w, t);
    let id = Endomorphism::identity();
    for i in 0..=n {
        let f = TruncSeries::from_poly(&cedo_x_element(i, pres)?, t);
        let prod = skew_mul_series(&f, &ws, &id, pres, &b)?;
        if let Some(power) = prod.coeffs().iter().position(|c| !c.is_zero()) {
            return Ok(report
                .witness("i", i.to_string())
                .witness("power", power.to_string())
                .witness("coefficient", pres.format_element(prod.coeff(power)))
                .fail());
        }
    }
    Ok(report.dimension("products_checked", n as usize + 1))
}

/// Verifies that `w_n` right-annihilates `X_n` at order `t`.
pub fn cedo_series_witness(n: u32, pres: &Presentation, t: usize) -> Result<CheckReport> {
    cedo_series_check(&cedo_witness_series(n, pres)?, n, pres, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{builtin_ring, BuiltinName};

    #[test]
    fn witness_annihilates() {
        for p in [2, 3] {
            let pres = builtin_ring(BuiltinName::Cedo31, p).unwrap();
            for n in 0..=4 {
                let r = cedo_series_witness(n, &pres, 4).unwrap();
                assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn truncated_witness_fails_at_x2() {
        let pres = builtin_ring(BuiltinName::Cedo31, 3).unwrap();
        let w = cedo_witness_series(2, &pres).unwrap().truncate(1);
        let r = cedo_series_check(&w, 2, &pres, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witness_value("i"), Some("0"));
        assert_eq!(r.witness_value("power"), Some("2"));
        assert_eq!(r.witness_value("coefficient"), Some("-a0[0]*b1[2]"));
    }
}
