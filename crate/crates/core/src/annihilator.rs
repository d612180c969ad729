//! One-sided annihilators inside bounded slices, computed as exact
//! nullspaces over GF(p).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{kernel, rref, SparseVec};
use crate::presentation::{Bounds, Presentation, Reducer};
use crate::skew::{Endomorphism, SkewPoly};
use crate::word::Word;

/// Default cap on the number of slice coordinates.
pub const DEFAULT_SLICE_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Which ambient space a subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SliceKind {
    Ring,
    /// Polynomials of x-degree at most `x_degree`.
    Poly {
        x_degree: usize,
    },
    /// Power series modulo `x^(order+1)`.
    Series {
        order: usize,
    },
}

impl SliceKind {
    /// Largest x-power carried by the slice.
    pub fn top_power(&self) -> usize {
        match *self {
            SliceKind::Ring => 0,
            SliceKind::Poly { x_degree } => x_degree,
            SliceKind::Series { order } => order,
        }
    }

    fn truncation(&self) -> Option<usize> {
        match *self {
            SliceKind::Series { order } => Some(order),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceDescriptor {
    #[serde(flatten)]
    pub bounds: Bounds,
    #[serde(flatten)]
    pub kind: SliceKind,
}

impl SliceDescriptor {
    pub fn ring(bounds: Bounds) -> Self {
        SliceDescriptor {
            bounds,
            kind: SliceKind::Ring,
        }
    }
}

/// Smallest coordinate `(x-power, word)` of a nonzero vector.
fn pivot(v: &SkewPoly) -> Option<(usize, &Word)> {
    v.coeffs()
        .iter()
        .enumerate()
        .find_map(|(i, c)| c.support().next().map(|w| (i, w)))
}

/// Reduced echelon basis of a subspace of a slice. Pivots are the smallest
/// coordinates, ordered by x-power and then canonical word order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    slice: SliceDescriptor,
    field: PrimeField,
    vectors: Vec<SkewPoly>,
}

impl SubspaceBasis {
    /// Wraps vectors that are already in reduced echelon form.
    pub fn from_vectors(slice: SliceDescriptor, vectors: Vec<SkewPoly>, field: PrimeField) -> Self {
        SubspaceBasis {
            slice,
            field,
            vectors,
        }
    }

    /// Reduced echelon basis of the span of arbitrary vectors.
    pub fn span(slice: SliceDescriptor, vectors: &[SkewPoly], field: PrimeField) -> Self {
        let vectors = echelon_in_region(vectors, |_, _| true, field);
        SubspaceBasis {
            slice,
            field,
            vectors,
        }
    }

    pub fn zero(slice: SliceDescriptor, field: PrimeField) -> Self {
        SubspaceBasis::from_vectors(slice, Vec::new(), field)
    }

    pub fn slice(&self) -> &SliceDescriptor {
        &self.slice
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SkewPoly] {
        &self.vectors
    }

    /// Constant terms of the basis vectors; the whole vectors for a ring slice.
    pub fn ring_elements(&self) -> Vec<RingElem> {
        self.vectors.iter().map(|v| v.coeff(0)).collect()
    }

    /// Exact membership test by reduction against the pivots.
    pub fn contains(&self, v: &SkewPoly) -> bool {
        let k = self.field;
        let mut rest = v.clone();
        for b in &self.vectors {
            let (i, w) = pivot(b).expect("basis vectors are nonzero");
            let c = v.coeff(i).coefficient(w);
            if !c.is_zero() {
                rest = rest.sub(&b.scale(c, k), k);
            }
        }
        rest.is_zero()
    }

    pub fn contains_elem(&self, e: &RingElem) -> bool {
        self.contains(&SkewPoly::constant(e.clone()))
    }
}

/// Reduced echelon basis of `span(vectors) ∩ region`, where the region is the
/// set of coordinates `(x-power, word)` accepted by `in_region`.
///
/// Coordinates outside the region are ordered before all others, so a
/// fully reduced row whose pivot lies in the region lies entirely in it.
pub(crate) fn echelon_in_region(
    vectors: &[SkewPoly],
    in_region: impl Fn(usize, &Word) -> bool,
    field: PrimeField,
) -> Vec<SkewPoly> {
    let mut coords: Vec<(bool, usize, &Word)> = Vec::new();
    for v in vectors {
        for (i, c) in v.coeffs().iter().enumerate() {
            for w in c.support() {
                coords.push((in_region(i, w), i, w));
            }
        }
    }
    coords.sort();
    coords.dedup();
    let index: HashMap<(usize, &Word), u32> = coords
        .iter()
        .enumerate()
        .map(|(n, &(_, i, w))| ((i, w), n as u32))
        .collect();
    let sparse = vectors.iter().map(|v| {
        let mut raw = Vec::new();
        for (i, c) in v.coeffs().iter().enumerate() {
            for (w, s) in c.terms() {
                raw.push((index[&(i, w)], s));
            }
        }
        SparseVec::from_entries(raw, field)
    });
    rref(sparse, field)
        .into_iter()
        .filter(|r| coords[r.lead().unwrap().0 as usize].0)
        .map(|r| {
            let mut coeffs: Vec<RingElem> = Vec::new();
            for &(col, s) in r.entries() {
                let (_, i, w) = coords[col as usize];
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, RingElem::zero());
                }
                coeffs[i].add_term(w.clone(), s, field);
            }
            SkewPoly::from_coeffs(coeffs)
        })
        .collect()
}

/// `l.ann(X)` or `r.ann(X)` restricted to a slice.
#[derive(Clone, Debug)]
pub struct AnnQuery {
    pub side: Side,
    pub targets: Vec<SkewPoly>,
    pub slice: SliceDescriptor,
    pub alpha: Endomorphism,
    pub limit: usize,
}

impl AnnQuery {
    pub fn new(side: Side, targets: Vec<SkewPoly>, slice: SliceDescriptor) -> Self {
        AnnQuery {
            side,
            targets,
            slice,
            alpha: Endomorphism::identity(),
            limit: DEFAULT_SLICE_LIMIT,
        }
    }

    /// Annihilator inside the ring slice of `b`.
    pub fn ring(side: Side, targets: &[RingElem], b: Bounds) -> Self {
        let targets = targets.iter().cloned().map(SkewPoly::constant).collect();
        AnnQuery::new(side, targets, SliceDescriptor::ring(b))
    }

    pub fn poly(side: Side, targets: Vec<SkewPoly>, b: Bounds, x_degree: usize) -> Self {
        AnnQuery::new(
            side,
            targets,
            SliceDescriptor {
                bounds: b,
                kind: SliceKind::Poly { x_degree },
            },
        )
    }

    pub fn series(side: Side, targets: Vec<SkewPoly>, b: Bounds, order: usize) -> Self {
        AnnQuery::new(
            side,
            targets,
            SliceDescriptor {
                bounds: b,
                kind: SliceKind::Series { order },
            },
        )
    }

    pub fn with_alpha(mut self, alpha: Endomorphism) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }
}

/// Linear map `r -> (r x)_{x in X}` (or `x r`) on a slice.
struct AnnMap<'a, 'p> {
    side: Side,
    targets: Vec<SkewPoly>,
    alpha: &'a Endomorphism,
    cap: Option<usize>,
    red: Reducer<'p>,
    /// `alpha^k` applied to each target, for left products.
    twisted: Vec<Vec<SkewPoly>>,
    cols: HashMap<(usize, usize, Word), u32>,
}

impl<'a, 'p> AnnMap<'a, 'p> {
    fn new(q: &'a AnnQuery, pres: &'p Presentation) -> Result<Self> {
        let b = q.slice.bounds;
        let cap = q.slice.kind.truncation();
        let mut targets = Vec::new();
        for t in &q.targets {
            let t = match cap {
                Some(c) => t.truncate(c),
                None => t.clone(),
            };
            for c in t.coeffs() {
                pres.check_indices(c, &b)?;
            }
            if !t.is_zero() && t.max_grade() > b.max_degree {
                return Err(Error::DegreeOverflow {
                    needed: t.max_grade(),
                    max_degree: b.max_degree,
                });
            }
            targets.push(t);
        }
        let mut red = pres.reducer();
        let mut twisted = Vec::new();
        if q.side == Side::Left {
            let mut cur = targets.clone();
            for _ in 0..=q.slice.kind.top_power() {
                twisted.push(cur.clone());
                if q.alpha.is_identity() {
                    continue;
                }
                for t in cur.iter_mut() {
                    let coeffs = t
                        .coeffs()
                        .iter()
                        .map(|c| q.alpha.apply(c, &mut red))
                        .collect::<Result<Vec<_>>>()?;
                    *t = SkewPoly::from_coeffs(coeffs);
                }
            }
        }
        Ok(AnnMap {
            side: q.side,
            targets,
            alpha: &q.alpha,
            cap,
            red,
            twisted,
            cols: HashMap::new(),
        })
    }

    fn col(&mut self, t: usize, xpow: usize, w: &Word) -> u32 {
        let n = self.cols.len() as u32;
        *self.cols.entry((t, xpow, w.clone())).or_insert(n)
    }

    fn within_cap(&self, xpow: usize) -> bool {
        self.cap.is_none_or(|c| xpow <= c)
    }

    /// Image of the monomial `w x^k`.
    fn image_of_monomial(&mut self, w: &Word, k: usize) -> Result<SparseVec> {
        let field = self.red.presentation().field();
        let we = RingElem::from_word(w.clone());
        let mut raw = Vec::new();
        match self.side {
            Side::Left => {
                for t in 0..self.targets.len() {
                    let tw = self.twisted[k][t].clone();
                    for (j, c) in tw.coeffs().iter().enumerate() {
                        if c.is_zero() || !self.within_cap(k + j) {
                            continue;
                        }
                        let prod = self.red.mul(&we, c)?;
                        for (u, s) in prod.terms() {
                            raw.push((self.col(t, k + j, u), s));
                        }
                    }
                }
            }
            Side::Right => {
                let mut tw = we.clone();
                let top = self
                    .targets
                    .iter()
                    .map(|t| t.coeffs().len())
                    .max()
                    .unwrap_or(0);
                let mut powers = Vec::with_capacity(top);
                for j in 0..top {
                    if j > 0 && !self.alpha.is_identity() {
                        tw = self.alpha.apply(&tw, &mut self.red)?;
                    }
                    powers.push(tw.clone());
                }
                for t in 0..self.targets.len() {
                    let target = self.targets[t].clone();
                    for (j, c) in target.coeffs().iter().enumerate() {
                        if c.is_zero() || !self.within_cap(k + j) {
                            continue;
                        }
                        let prod = self.red.mul(c, &powers[j])?;
                        for (u, s) in prod.terms() {
                            raw.push((self.col(t, k + j, u), s));
                        }
                    }
                }
            }
        }
        Ok(SparseVec::from_entries(raw, field))
    }

    /// Image of an arbitrary vector, by linearity.
    fn image(&mut self, v: &SkewPoly) -> Result<SparseVec> {
        let field = self.red.presentation().field();
        let mut out = SparseVec::new();
        for (k, c) in v.coeffs().iter().enumerate() {
            for (w, s) in c.terms() {
                let img = self.image_of_monomial(w, k)?;
                out.axpy(s, &img, field);
            }
        }
        Ok(out)
    }
}

/// Slice coordinates `(x-power, word)` in pivot order.
fn slice_coords(
    pres: &Presentation,
    slice: &SliceDescriptor,
    limit: usize,
) -> Result<Vec<(usize, Word)>> {
    let words = pres.enumerate_basis(&slice.bounds);
    let top = slice.kind.top_power();
    let dim = words.len() * (top + 1);
    if dim > limit {
        return Err(Error::SliceTooLarge { dim, limit });
    }
    Ok((0..=top)
        .flat_map(|k| words.iter().map(move |w| (k, w.clone())))
        .collect())
}

fn combos_to_vectors(
    combos: Vec<SparseVec>,
    domain: &[SkewPoly],
    field: PrimeField,
) -> Vec<SkewPoly> {
    combos
        .into_iter()
        .map(|c| {
            let mut acc = SkewPoly::zero();
            for &(i, s) in c.entries() {
                acc = acc.add(&domain[i as usize].scale(s, field), field);
            }
            acc
        })
        .collect()
}

/// Echelon basis of `{r in slice : r x = 0 for all x in X}` (left side) or
/// of `{r : x r = 0}` (right side).
pub fn annihilator(q: &AnnQuery, pres: &Presentation) -> Result<SubspaceBasis> {
    let field = pres.field();
    let coords = slice_coords(pres, &q.slice, q.limit)?;
    let mut map = AnnMap::new(q, pres)?;
    let images = coords
        .iter()
        .map(|(k, w)| map.image_of_monomial(w, *k))
        .collect::<Result<Vec<_>>>()?;
    let ker = rref(kernel(&images, field), field);
    let vectors = ker
        .into_iter()
        .map(|c| {
            let mut coeffs: Vec<RingElem> = Vec::new();
            for &(i, s) in c.entries() {
                let (k, ref w) = coords[i as usize];
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, RingElem::zero());
                }
                coeffs[k].add_term(w.clone(), s, field);
            }
            SkewPoly::from_coeffs(coeffs)
        })
        .collect();
    Ok(SubspaceBasis::from_vectors(q.slice, vectors, field))
}

/// Annihilator of `q.targets` inside the span of `within`.
pub fn annihilator_within(
    q: &AnnQuery,
    within: &SubspaceBasis,
    pres: &Presentation,
) -> Result<SubspaceBasis> {
    let field = pres.field();
    let mut map = AnnMap::new(q, pres)?;
    let images = within
        .vectors()
        .iter()
        .map(|v| map.image(v))
        .collect::<Result<Vec<_>>>()?;
    let vectors = combos_to_vectors(kernel(&images, field), within.vectors(), field);
    Ok(SubspaceBasis::span(q.slice, &vectors, field))
}

/// Checks `l.ann(X) ∩ slice = 0` (or the right-hand version). This is
/// necessary-condition evidence for faithfulness only.
pub fn is_faithful_upto(
    x: &[RingElem],
    side: Side,
    pres: &Presentation,
    b: Bounds,
) -> Result<(bool, SubspaceBasis)> {
    let ann = annihilator(&AnnQuery::ring(side, x, b), pres)?;
    Ok((ann.is_zero(), ann))
}

/// Greedy search for a finite `F ⊆ X` with zero slice annihilator.
///
/// Returns indices into `q.targets`. Each round adds the element that cuts
/// the running annihilator the most (ties to the smallest element), and
/// the search gives up once `budget` elements are chosen.
pub fn zip_witness_search(
    q: &AnnQuery,
    pres: &Presentation,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    let full = annihilator(q, pres)?;
    if !full.is_zero() {
        return Err(Error::VacuousQuery { dim: full.dim() });
    }
    let field = pres.field();
    let coords = slice_coords(pres, &q.slice, q.limit)?;
    let whole: Vec<SkewPoly> = coords
        .into_iter()
        .map(|(k, w)| SkewPoly::monomial(RingElem::from_word(w), k))
        .collect();
    let mut current = SubspaceBasis::from_vectors(q.slice, whole, field);
    let mut order: Vec<usize> = (0..q.targets.len()).collect();
    order.sort_by(|&i, &j| q.targets[i].cmp(&q.targets[j]).then(i.cmp(&j)));
    let mut chosen = Vec::new();
    while !current.is_zero() {
        if chosen.len() >= budget {
            return Ok(None);
        }
        let mut best: Option<(usize, SubspaceBasis)> = None;
        for &i in &order {
            if chosen.contains(&i) {
                continue;
            }
            let single = AnnQuery {
                targets: vec![q.targets[i].clone()],
                ..q.clone()
            };
            let next = annihilator_within(&single, &current, pres)?;
            if best.as_ref().is_none_or(|(_, b)| next.dim() < b.dim()) {
                best = Some((i, next));
            }
        }
        match best {
            Some((i, next)) if next.dim() < current.dim() => {
                chosen.push(i);
                current = next;
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(chosen))
}
