//! Exhaustive zero-divisor search over bounded polynomial spaces.
//!
//! For a fixed `f`, the partners `g` with `f g = 0` form the kernel of a
//! linear map on the whole bounded space `G`. An Armendariz violation
//! exists exactly when that kernel is larger than the kernel of
//! `g -> (f_i g_j)_{i,j}`, and every partner has zero scalar parts exactly
//! when adding the scalar coordinates of `g` to the map leaves its rank
//! unchanged. So each `f` costs a few ranks instead of a scan over `G`.

use std::collections::HashMap;

use serde::Serialize;

use crate::annihilator::Side;
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::presentation::{Bounds, Presentation};
use crate::skew::SkewPoly;
use crate::word::Word;

/// Polynomials with x-degree at most `x_degree` whose coefficients are
/// combinations of at most `max_support` normal words within `bounds`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveSpace {
    pub bounds: Bounds,
    pub max_support: usize,
    pub x_degree: usize,
}

impl Default for ExhaustiveSpace {
    fn default() -> Self {
        ExhaustiveSpace {
            bounds: Bounds::new(3, 2),
            max_support: 2,
            x_degree: 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExhaustiveOutcome {
    /// Polynomials `f` examined, per side.
    pub polys_checked: u64,
    /// Pairs `(f, side)` with a nonzero partner.
    pub zero_divisors: u64,
    pub armendariz_violations: u64,
    pub scalar_violations: u64,
    pub first_armendariz_violation: Option<String>,
    pub first_scalar_violation: Option<String>,
}

/// Column of a linear map over GF(p).
trait Column: Clone {
    fn zero(width: usize) -> Self;
    fn add_entry(&mut self, coord: usize, c: Scalar, k: PrimeField);
    fn add_col(&mut self, other: &Self, k: PrimeField);
    fn rank(cols: &mut [Self], k: PrimeField) -> usize;
}

#[derive(Clone, Copy)]
struct Bits<const W: usize>([u64; W]);

impl<const W: usize> Column for Bits<W> {
    fn zero(_: usize) -> Self {
        Bits([0; W])
    }

    fn add_entry(&mut self, coord: usize, c: Scalar, _: PrimeField) {
        if !c.is_zero() {
            self.0[coord / 64] ^= 1 << (coord % 64);
        }
    }

    fn add_col(&mut self, other: &Self, _: PrimeField) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a ^= b;
        }
    }

    fn rank(cols: &mut [Self], _: PrimeField) -> usize {
        let mut pivots: [Option<usize>; 256] = [None; 256];
        let mut rank = 0;
        for i in 0..cols.len() {
            let mut v = cols[i];
            while let Some(lead) =
                v.0.iter()
                    .enumerate()
                    .find(|(_, w)| **w != 0)
                    .map(|(n, w)| n * 64 + w.trailing_zeros() as usize)
            {
                match pivots[lead] {
                    Some(r) => {
                        for (a, b) in v.0.iter_mut().zip(cols[r].0.iter()) {
                            *a ^= b;
                        }
                    }
                    None => {
                        cols[i] = v;
                        pivots[lead] = Some(i);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

#[derive(Clone)]
struct Dense(Vec<u8>);

impl Column for Dense {
    fn zero(width: usize) -> Self {
        Dense(vec![0; width])
    }

    fn add_entry(&mut self, coord: usize, c: Scalar, k: PrimeField) {
        self.0[coord] = k.add(Scalar(self.0[coord]), c).value();
    }

    fn add_col(&mut self, other: &Self, k: PrimeField) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a = k.add(Scalar(*a), Scalar(*b)).value();
        }
    }

    fn rank(cols: &mut [Self], k: PrimeField) -> usize {
        let width = cols.first().map_or(0, |c| c.0.len());
        let mut pivots: Vec<Option<usize>> = vec![None; width];
        let mut rank = 0;
        for i in 0..cols.len() {
            let mut v = cols[i].clone();
            while let Some(lead) = v.0.iter().position(|&x| x != 0) {
                match pivots[lead] {
                    Some(r) => {
                        let m = k.neg(Scalar(v.0[lead]));
                        for (a, b) in v.0.iter_mut().zip(cols[r].0.iter()) {
                            *a = k.add(Scalar(*a), k.mul(m, Scalar(*b))).value();
                        }
                    }
                    None => {
                        let inv = k.inv(Scalar(v.0[lead])).unwrap();
                        for a in v.0.iter_mut() {
                            *a = k.mul(Scalar(*a), inv).value();
                        }
                        cols[i] = v;
                        pivots[lead] = Some(i);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

/// Products of slice words, with images indexed densely.
struct Tables {
    words: Vec<Word>,
    one: Option<usize>,
    coeffs: Vec<Vec<(usize, Scalar)>>,
    /// `prod[u][v]`: normal form of `words[u] * words[v]` over image indices.
    prod: Vec<Vec<Vec<(usize, Scalar)>>>,
    n_images: usize,
}

fn coefficient_choices(n: usize, max_support: usize, k: PrimeField) -> Vec<Vec<(usize, Scalar)>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<(usize, Scalar)>> = vec![Vec::new()];
    for _ in 0..max_support {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().map_or(0, |e| e.0 + 1);
            for w in start..n {
                for s in k.units() {
                    let mut e = c.clone();
                    e.push((w, s));
                    next.push(e);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl Tables {
    fn new(pres: &Presentation, space: &ExhaustiveSpace) -> Result<Self> {
        let words = pres.enumerate_basis(&space.bounds);
        let k = pres.field();
        let mut red = pres.reducer();
        let mut index: HashMap<Word, usize> = HashMap::new();
        let mut prod = Vec::with_capacity(words.len());
        for u in &words {
            let mut row = Vec::with_capacity(words.len());
            for v in &words {
                let nf = red.normal_word(&u.concat(v))?;
                let entry = nf
                    .terms()
                    .map(|(w, c)| {
                        let n = index.len();
                        (*index.entry(w.clone()).or_insert(n), c)
                    })
                    .collect();
                row.push(entry);
            }
            prod.push(row);
        }
        Ok(Tables {
            one: words.iter().position(Word::is_one),
            coeffs: coefficient_choices(words.len(), space.max_support, k),
            n_images: index.len(),
            words,
            prod,
        })
    }

    fn coefficient(&self, c: usize, k: PrimeField) -> RingElem {
        let mut e = RingElem::zero();
        for &(w, s) in &self.coeffs[c] {
            e.add_term(self.words[w].clone(), s, k);
        }
        e
    }
}

struct Search<'t, C> {
    t: &'t Tables,
    k: PrimeField,
    side: Side,
    xd: usize,
    /// `full[c][i][j * nw + v]`: image of `words[v] x^j` under
    /// multiplication by `coeffs[c] x^i`.
    full: Vec<Vec<Vec<C>>>,
    /// `block[c][i][v]`: `coeffs[c] * words[v]` placed in block `i`.
    block: Vec<Vec<Vec<C>>>,
    scalar_base: usize,
}

impl<'t, C: Column> Search<'t, C> {
    fn new(t: &'t Tables, k: PrimeField, side: Side, xd: usize) -> Self {
        let nw = t.words.len();
        let ni = t.n_images;
        let width = (2 * xd + 1) * ni + xd + 1;
        let bwidth = (xd + 1) * ni;
        let prod = |u: usize, v: usize| match side {
            Side::Left => &t.prod[u][v],
            Side::Right => &t.prod[v][u],
        };
        let mut full = Vec::with_capacity(t.coeffs.len());
        let mut block = Vec::with_capacity(t.coeffs.len());
        for coeff in &t.coeffs {
            let mut per_shift = Vec::with_capacity(xd + 1);
            let mut per_block = Vec::with_capacity(xd + 1);
            for i in 0..=xd {
                let mut cols = Vec::with_capacity((xd + 1) * nw);
                for j in 0..=xd {
                    for v in 0..nw {
                        let mut col = C::zero(width);
                        for &(u, s) in coeff {
                            for &(m, c) in prod(u, v) {
                                col.add_entry((i + j) * ni + m, k.mul(s, c), k);
                            }
                        }
                        cols.push(col);
                    }
                }
                per_shift.push(cols);
                let mut bcols = Vec::with_capacity(nw);
                for v in 0..nw {
                    let mut col = C::zero(bwidth);
                    for &(u, s) in coeff {
                        for &(m, c) in prod(u, v) {
                            col.add_entry(i * ni + m, k.mul(s, c), k);
                        }
                    }
                    bcols.push(col);
                }
                per_block.push(bcols);
            }
            full.push(per_shift);
            block.push(per_block);
        }
        Search {
            t,
            k,
            side,
            xd,
            full,
            block,
            scalar_base: (2 * xd + 1) * ni,
        }
    }

    fn format_f(&self, f: &[usize], pres: &Presentation) -> String {
        let coeffs = f.iter().map(|&c| self.t.coefficient(c, self.k)).collect();
        SkewPoly::from_coeffs(coeffs).format(pres)
    }

    fn run(&self, pres: &Presentation, out: &mut ExhaustiveOutcome) {
        let k = self.k;
        let nw = self.t.words.len();
        let dim_g = (self.xd + 1) * nw;
        let n_coeffs = self.t.coeffs.len();
        let mut f = vec![0usize; self.xd + 1];
        let mut cols: Vec<C> = Vec::with_capacity(dim_g);
        let mut bcols: Vec<C> = Vec::with_capacity(nw);
        loop {
            // odometer over coefficient choices; index 0 is the zero coefficient
            let mut pos = 0;
            while pos <= self.xd {
                f[pos] += 1;
                if f[pos] < n_coeffs {
                    break;
                }
                f[pos] = 0;
                pos += 1;
            }
            if pos > self.xd {
                break;
            }
            out.polys_checked += 1;
            cols.clear();
            for n in 0..dim_g {
                let mut col = self.full[f[0]][0][n].clone();
                for (i, &c) in f.iter().enumerate().skip(1) {
                    if c != 0 {
                        col.add_col(&self.full[c][i][n], k);
                    }
                }
                cols.push(col);
            }
            let mut work = cols.clone();
            let rank = C::rank(&mut work, k);
            if rank == dim_g {
                continue;
            }
            out.zero_divisors += 1;
            let side = match self.side {
                Side::Left => "left",
                Side::Right => "right",
            };
            let scalar_in_f = self.t.one.is_some_and(|one| {
                f.iter()
                    .any(|&c| self.t.coeffs[c].iter().any(|e| e.0 == one))
            });
            let scalar_in_partner = self.t.one.is_some_and(|one| {
                let mut ext = cols.clone();
                for j in 0..=self.xd {
                    ext[j * nw + one].add_entry(self.scalar_base + j, Scalar::ONE, k);
                }
                C::rank(&mut ext, k) != rank
            });
            if scalar_in_f || scalar_in_partner {
                out.scalar_violations += 1;
                if out.first_scalar_violation.is_none() {
                    out.first_scalar_violation =
                        Some(format!("{side} factor {}", self.format_f(&f, pres)));
                }
            }
            bcols.clear();
            for v in 0..nw {
                let mut col = self.block[f[0]][0][v].clone();
                for (i, &c) in f.iter().enumerate().skip(1) {
                    if c != 0 {
                        col.add_col(&self.block[c][i][v], k);
                    }
                }
                bcols.push(col);
            }
            let brank = C::rank(&mut bcols, k);
            let componentwise_kernel = (self.xd + 1) * (nw - brank);
            if dim_g - rank > componentwise_kernel {
                out.armendariz_violations += 1;
                if out.first_armendariz_violation.is_none() {
                    out.first_armendariz_violation =
                        Some(format!("{side} factor {}", self.format_f(&f, pres)));
                }
            }
        }
    }
}

/// Runs the search with `f` on both sides of the product (identity twist).
///
/// `f` ranges over the bounded-support polynomials of `space`; the partner
/// ranges over the whole bounded polynomial space, so the result covers
/// every pair with both factors of bounded support.
pub fn exhaustive_zero_divisor_search(
    pres: &Presentation,
    space: &ExhaustiveSpace,
) -> Result<ExhaustiveOutcome> {
    if space.max_support == 0 {
        return Err(Error::PreconditionViolation(
            "support bound must be positive".to_string(),
        ));
    }
    let t = Tables::new(pres, space)?;
    let k = pres.field();
    let width = (2 * space.x_degree + 1) * t.n_images + space.x_degree + 1;
    let mut out = ExhaustiveOutcome::default();
    for side in [Side::Left, Side::Right] {
        match (k.characteristic(), width) {
            (2, w) if w <= 128 => {
                Search::<Bits<2>>::new(&t, k, side, space.x_degree).run(pres, &mut out)
            }
            (2, w) if w <= 256 => {
                Search::<Bits<4>>::new(&t, k, side, space.x_degree).run(pres, &mut out)
            }
            _ => Search::<Dense>::new(&t, k, side, space.x_degree).run(pres, &mut out),
        }
    }
    Ok(out)
}
