//! Skew polynomials R[x; alpha], order-t truncations of R[[x; alpha]], and
//! the coefficient-set and annihilator-transfer maps between R and R[x; alpha].

use std::collections::BTreeSet;

use crate::annihilator::{echelon_in_region, SliceDescriptor, SliceKind, SubspaceBasis};
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::presentation::{Bounds, Presentation, Reducer, RewriteRule};
use crate::word::{GeneratorId, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoKind {
    Endomorphism,
    Automorphism,
}

/// A ring endomorphism given by the images of the generators.
///
/// Images are single-letter rewrite rules (`map a[i] -> a[i+1]`); a
/// generator with no matching rule is fixed. Multiplicative extension is
/// automatic. Call [`Endomorphism::validate`] before trusting a
/// user-supplied table.
#[derive(Clone, Debug)]
pub struct Endomorphism {
    kind: EndoKind,
    images: Vec<RewriteRule>,
    inverse: Vec<RewriteRule>,
}

impl Endomorphism {
    pub fn identity() -> Self {
        Endomorphism {
            kind: EndoKind::Automorphism,
            images: Vec::new(),
            inverse: Vec::new(),
        }
    }

    pub fn from_tables(
        kind: EndoKind,
        images: Vec<RewriteRule>,
        inverse: Vec<RewriteRule>,
    ) -> Self {
        Endomorphism {
            kind,
            images,
            inverse,
        }
    }

    pub fn kind(&self) -> EndoKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    fn image_in(table: &[RewriteRule], g: &GeneratorId, red: &mut Reducer) -> Result<RingElem> {
        let k = red.presentation().field();
        for rule in table {
            if let Some(env) = rule.matches_at(std::slice::from_ref(g), 0) {
                let mut raw = RingElem::zero();
                for (c, letters) in rule.instantiate(&env)? {
                    raw.add_term(Word::from_letters(letters), c, k);
                }
                return red.normal_form(&raw);
            }
        }
        Ok(RingElem::from_word(Word::letter(*g)))
    }

    fn apply_table(table: &[RewriteRule], e: &RingElem, red: &mut Reducer) -> Result<RingElem> {
        if table.is_empty() {
            return Ok(e.clone());
        }
        let k = red.presentation().field();
        let mut out = RingElem::zero();
        for (w, c) in e.terms() {
            let mut img = RingElem::one();
            for g in w.letters() {
                let gi = Self::image_in(table, g, red)?;
                img = red.mul(&img, &gi)?;
                if img.is_zero() {
                    break;
                }
            }
            out.add_scaled(&img, c, k);
        }
        Ok(out)
    }

    /// `alpha(e)`, no validation.
    pub fn apply(&self, e: &RingElem, red: &mut Reducer) -> Result<RingElem> {
        Self::apply_table(&self.images, e, red)
    }

    /// `alpha^power(e)`; negative powers use the declared inverse.
    pub fn apply_power(&self, e: &RingElem, power: i64, red: &mut Reducer) -> Result<RingElem> {
        if power < 0 && self.kind != EndoKind::Automorphism {
            return Err(Error::NoInverse);
        }
        let table = if power < 0 {
            &self.inverse
        } else {
            &self.images
        };
        let mut cur = e.clone();
        for _ in 0..power.unsigned_abs() {
            if cur.is_zero() {
                break;
            }
            cur = Self::apply_table(table, &cur, red)?;
        }
        Ok(cur)
    }

    /// Checks that the generator map respects every rule instance within
    /// `b`, and for automorphisms that the inverse table really inverts it
    /// on the generators of `b`.
    pub fn validate(&self, pres: &Presentation, b: &Bounds) -> Result<()> {
        if self.is_identity() {
            return Ok(());
        }
        let mut red = pres.reducer();
        for ri in 0..pres.rules().len() {
            for (lhs, rhs) in pres.rule_instances(ri, b)? {
                let l = self.apply(&RingElem::from_word(lhs.clone()), &mut red)?;
                let r = self.apply(&rhs, &mut red)?;
                if l != r {
                    return Err(Error::RelationViolation {
                        instance: format!(
                            "{} = {} (images {} vs {})",
                            pres.format_word(&lhs),
                            pres.format_element(&red.normal_form(&rhs)?),
                            pres.format_element(&l),
                            pres.format_element(&r)
                        ),
                    });
                }
            }
        }
        if self.kind == EndoKind::Automorphism {
            for g in pres.generators(b) {
                let e = RingElem::from_word(Word::letter(g));
                let there_back = self
                    .apply_power(&e, -1, &mut red)
                    .and_then(|x| self.apply(&x, &mut red))
                    .map_err(|_| Error::NoInverse)?;
                let back_there = self
                    .apply(&e, &mut red)
                    .and_then(|x| self.apply_power(&x, -1, &mut red))
                    .map_err(|_| Error::NoInverse)?;
                if there_back != e || back_there != e {
                    return Err(Error::NoInverse);
                }
            }
        }
        Ok(())
    }
}

/// Validates `alpha` within `b` and returns `alpha^power(e)`.
pub fn apply_endomorphism(
    alpha: &Endomorphism,
    e: &RingElem,
    power: i64,
    pres: &Presentation,
    b: &Bounds,
) -> Result<RingElem> {
    if power < 0 && alpha.kind() != EndoKind::Automorphism {
        return Err(Error::NoInverse);
    }
    alpha.validate(pres, b)?;
    let mut red = pres.reducer();
    let e = red.normal_form(e)?;
    alpha.apply_power(&e, power, &mut red)
}

/// Element of R[x; alpha]: `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewPoly {
    coeffs: Vec<RingElem>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly::default()
    }

    pub fn constant(c: RingElem) -> Self {
        SkewPoly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: RingElem, k: usize) -> Self {
        let mut coeffs = vec![RingElem::zero(); k];
        coeffs.push(c);
        SkewPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<RingElem>) -> Self {
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElem {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial (degree -inf).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn max_grade(&self) -> usize {
        self.coeffs
            .iter()
            .map(RingElem::max_grade)
            .max()
            .unwrap_or(0)
    }

    fn zip_with(
        &self,
        other: &SkewPoly,
        mut f: impl FnMut(&RingElem, &RingElem) -> RingElem,
    ) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::from_coeffs((0..n).map(|i| f(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn add(&self, other: &SkewPoly, k: PrimeField) -> SkewPoly {
        self.zip_with(other, |a, b| a.add(b, k))
    }

    pub fn sub(&self, other: &SkewPoly, k: PrimeField) -> SkewPoly {
        self.zip_with(other, |a, b| a.sub(b, k))
    }

    pub fn neg(&self, k: PrimeField) -> SkewPoly {
        self.scale(k.neg(Scalar::ONE), k)
    }

    pub fn scale(&self, c: Scalar, k: PrimeField) -> SkewPoly {
        SkewPoly::from_coeffs(self.coeffs.iter().map(|e| e.scale(c, k)).collect())
    }

    /// Drops every power above `x^order`.
    pub fn truncate(&self, order: usize) -> SkewPoly {
        SkewPoly::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn format(&self, pres: &Presentation) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let body = pres.format_element(c);
                match i {
                    0 => format!("({body})"),
                    1 => format!("({body})*x"),
                    _ => format!("({body})*x^{i}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Power series modulo `x^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<RingElem>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            order,
            coeffs: vec![RingElem::zero(); order + 1],
        }
    }

    /// Pads with zeros, or cuts off coefficients beyond `order`.
    pub fn new(order: usize, mut coeffs: Vec<RingElem>) -> Self {
        coeffs.resize(order + 1, RingElem::zero());
        TruncSeries { order, coeffs }
    }

    pub fn from_poly(f: &SkewPoly, order: usize) -> Self {
        TruncSeries::new(order, f.truncate(order).coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RingElem {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElem::is_zero)
    }

    pub fn to_poly(&self) -> SkewPoly {
        SkewPoly::from_coeffs(self.coeffs.clone())
    }

    /// Same series read at a smaller order.
    pub fn truncate(&self, order: usize) -> TruncSeries {
        TruncSeries::new(
            order.min(self.order),
            self.coeffs[..=order.min(self.order)].to_vec(),
        )
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl FnMut(&RingElem) -> RingElem) -> TruncSeries {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `sum_i sum_j f_i alpha^i(g_j) x^(i+j)`, dropping powers above `cap`.
fn skew_product(
    f: &[RingElem],
    g: &[RingElem],
    alpha: &Endomorphism,
    red: &mut Reducer,
    cap: Option<usize>,
) -> Result<Vec<RingElem>> {
    let k = red.presentation().field();
    if f.is_empty() || g.is_empty() {
        return Ok(Vec::new());
    }
    let len = f.len() + g.len() - 1;
    let len = cap.map_or(len, |c| len.min(c + 1));
    let mut out = vec![RingElem::zero(); len];
    let mut twisted: Vec<RingElem> = g.to_vec();
    for (i, fi) in f.iter().enumerate() {
        if i >= len {
            break;
        }
        if i > 0 && !alpha.is_identity() {
            for t in twisted.iter_mut() {
                *t = alpha.apply(t, red)?;
            }
        }
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in twisted.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if gj.is_zero() {
                continue;
            }
            let prod = red.mul(fi, gj)?;
            out[i + j].add_scaled(&prod, Scalar::ONE, k);
        }
    }
    Ok(out)
}

/// Unchecked product in R[x; alpha] using an existing reducer.
pub fn skew_mul_poly_with(
    f: &SkewPoly,
    g: &SkewPoly,
    alpha: &Endomorphism,
    red: &mut Reducer,
) -> Result<SkewPoly> {
    skew_product(&f.coeffs, &g.coeffs, alpha, red, None).map(SkewPoly::from_coeffs)
}

fn check_grades(f: &[RingElem], g: &[RingElem], b: &Bounds) -> Result<()> {
    let gf = f.iter().map(RingElem::max_grade).max().unwrap_or(0);
    let gg = g.iter().map(RingElem::max_grade).max().unwrap_or(0);
    let nonzero = f.iter().any(|e| !e.is_zero()) && g.iter().any(|e| !e.is_zero());
    if nonzero && gf + gg > b.max_degree {
        return Err(Error::DegreeOverflow {
            needed: gf + gg,
            max_degree: b.max_degree,
        });
    }
    Ok(())
}

/// Exact product in R[x; alpha]. Fails rather than truncating when some
/// coefficient product could leave the degree-`b.max_degree` slice.
///
/// The check assumes `alpha` does not raise grades, which holds for every
/// endomorphism sending generators to homogeneous elements of grade one.
pub fn skew_mul_poly(
    f: &SkewPoly,
    g: &SkewPoly,
    alpha: &Endomorphism,
    pres: &Presentation,
    b: &Bounds,
) -> Result<SkewPoly> {
    check_grades(&f.coeffs, &g.coeffs, b)?;
    let mut red = pres.reducer();
    skew_mul_poly_with(f, g, alpha, &mut red)
}

/// Product in R[[x; alpha]] modulo `x^(t+1)`.
pub fn skew_mul_series(
    f: &TruncSeries,
    g: &TruncSeries,
    alpha: &Endomorphism,
    pres: &Presentation,
    b: &Bounds,
) -> Result<TruncSeries> {
    if f.order != g.order {
        return Err(Error::OrderMismatch {
            left: f.order,
            right: g.order,
        });
    }
    check_grades(&f.coeffs, &g.coeffs, b)?;
    let mut red = pres.reducer();
    skew_mul_series_with(f, g, alpha, &mut red)
}

pub(crate) fn skew_mul_series_with(
    f: &TruncSeries,
    g: &TruncSeries,
    alpha: &Endomorphism,
    red: &mut Reducer,
) -> Result<TruncSeries> {
    let coeffs = skew_product(&f.coeffs, &g.coeffs, alpha, red, Some(f.order))?;
    Ok(TruncSeries::new(f.order, coeffs))
}

/// Anything with a finite coefficient list.
pub trait Coefficients {
    fn coefficient_list(&self) -> &[RingElem];
}

impl Coefficients for SkewPoly {
    fn coefficient_list(&self) -> &[RingElem] {
        self.coeffs()
    }
}

impl Coefficients for TruncSeries {
    fn coefficient_list(&self) -> &[RingElem] {
        self.coeffs()
    }
}

/// `C_V`: every coefficient of every member, plus zero. `C_∅ = {0}`.
pub fn coefficient_set<'a, T: Coefficients + 'a>(
    v: impl IntoIterator<Item = &'a T>,
) -> BTreeSet<RingElem> {
    let mut out = BTreeSet::new();
    out.insert(RingElem::zero());
    for f in v {
        out.extend(f.coefficient_list().iter().cloned());
    }
    out
}

/// `B ∩ R`: the members of a polynomial/series subspace with no positive
/// powers of x, as a subspace of the ring slice.
pub fn psi_restrict(basis: &SubspaceBasis, pres: &Presentation) -> SubspaceBasis {
    let slice = SliceDescriptor {
        bounds: basis.slice().bounds,
        kind: SliceKind::Ring,
    };
    let vectors = echelon_in_region(basis.vectors(), |xpow, _| xpow == 0, pres.field());
    SubspaceBasis::from_vectors(slice, vectors, pres.field())
}

/// `R[x; alpha] L` intersected with the polynomial slice of x-degree at most
/// `x_degree`.
///
/// Spanned by `w alpha^k(l) x^k` for slice words `w`, basis vectors `l` of
/// `L` and `k <= x_degree`; products leaving the slice take part in the
/// span before the intersection is taken.
pub fn phi_extend(
    l: &SubspaceBasis,
    alpha: &Endomorphism,
    pres: &Presentation,
    x_degree: usize,
) -> Result<SubspaceBasis> {
    let bounds = l.slice().bounds;
    let slice = SliceDescriptor {
        bounds,
        kind: SliceKind::Poly { x_degree },
    };
    let mut red = pres.reducer();
    let words = pres.enumerate_basis(&bounds);
    let mut spanning = Vec::new();
    for v in l.vectors() {
        let mut twisted = v.coeff(0);
        for k in 0..=x_degree {
            if k > 0 {
                twisted = alpha.apply(&twisted, &mut red)?;
            }
            if twisted.is_zero() {
                break;
            }
            for w in &words {
                let prod = red.mul(&RingElem::from_word(w.clone()), &twisted)?;
                if !prod.is_zero() {
                    spanning.push(SkewPoly::monomial(prod, k));
                }
            }
        }
    }
    let vectors = echelon_in_region(
        &spanning,
        |_, w| pres.word_in_bounds(w, &bounds),
        pres.field(),
    );
    Ok(SubspaceBasis::from_vectors(slice, vectors, pres.field()))
}
