use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bounds, Presentation};
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::word::Word;

/// Depth at which rewriting is declared non-terminating.
const MAX_REWRITE_DEPTH: usize = 10_000;

/// Order in which redexes are contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    /// Leftmost redex, first rule in declaration order.
    Leftmost,
    /// Rightmost redex, last matching rule.
    Rightmost,
    /// Uniformly random word and redex at every step.
    Random(u64),
}

/// Normal-form engine with a per-instance word cache.
///
/// The cache makes a reducer cheap to reuse across many products; it is
/// owned by the reducer, so independent reducers never share state.
pub struct Reducer<'p> {
    pres: &'p Presentation,
    memo: HashMap<Word, RingElem>,
}

impl<'p> Reducer<'p> {
    pub fn new(pres: &'p Presentation) -> Self {
        Reducer {
            pres,
            memo: HashMap::new(),
        }
    }

    pub fn presentation(&self) -> &'p Presentation {
        self.pres
    }

    /// Normal form of a single word (leftmost strategy, memoized).
    pub fn normal_word(&mut self, w: &Word) -> Result<RingElem> {
        self.normal_word_at_depth(w, 0)
    }

    fn normal_word_at_depth(&mut self, w: &Word, depth: usize) -> Result<RingElem> {
        if let Some(e) = self.memo.get(w) {
            return Ok(e.clone());
        }
        if depth > MAX_REWRITE_DEPTH {
            return Err(Error::PreconditionViolation(
                "rewriting did not terminate; check rule orientation".to_string(),
            ));
        }
        let pres = self.pres;
        let k = pres.field();
        let mut result = None;
        'scan: for pos in 0..w.grade() {
            for &ri in pres.rules_for_head(w[pos].family) {
                let rule = &pres.rules()[ri];
                if let Some(env) = rule.matches_at(w.letters(), pos) {
                    let mut acc = RingElem::zero();
                    for (c, middle) in rule.instantiate(&env)? {
                        let next = w.splice(pos, rule.lhs.len(), &middle);
                        let nf = self.normal_word_at_depth(&next, depth + 1)?;
                        acc.add_scaled(&nf, c, k);
                    }
                    result = Some(acc);
                    break 'scan;
                }
            }
        }
        let result = result.unwrap_or_else(|| RingElem::from_word(w.clone()));
        self.memo.insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Normal form of a raw combination of (possibly reducible) words.
    pub fn normal_form(&mut self, e: &RingElem) -> Result<RingElem> {
        let k = self.pres.field();
        let mut out = RingElem::zero();
        for (w, c) in e.terms() {
            let nf = self.normal_word(w)?;
            out.add_scaled(&nf, c, k);
        }
        Ok(out)
    }

    /// Product without any degree check.
    pub fn mul(&mut self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        let k = self.pres.field();
        let mut out = RingElem::zero();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                let nf = self.normal_word(&u.concat(v))?;
                out.add_scaled(&nf, k.mul(c, d), k);
            }
        }
        Ok(out)
    }

    /// Product of two elements; fails if the result could leave the slice.
    pub fn mul_checked(&mut self, a: &RingElem, b: &RingElem, bounds: &Bounds) -> Result<RingElem> {
        if a.is_zero() || b.is_zero() {
            return Ok(RingElem::zero());
        }
        let needed = a.max_grade() + b.max_grade();
        if needed > bounds.max_degree {
            return Err(Error::DegreeOverflow {
                needed,
                max_degree: bounds.max_degree,
            });
        }
        self.mul(a, b)
    }
}

/// Reduces with an explicit redex-selection strategy and no caching.
///
/// Used as independent evidence for confluence: different strategies must
/// reach the same normal form.
pub fn reduce_with_strategy(
    pres: &Presentation,
    e: &RingElem,
    strategy: RewriteStrategy,
) -> Result<RingElem> {
    let k = pres.field();
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Word, Scalar> = e.terms().map(|(w, c)| (w.clone(), c)).collect();
    let mut done = RingElem::zero();
    let mut steps = 0usize;
    while !pending.is_empty() {
        steps += 1;
        if steps > 100 * MAX_REWRITE_DEPTH {
            return Err(Error::PreconditionViolation(
                "rewriting did not terminate; check rule orientation".to_string(),
            ));
        }
        let w = match rng.as_mut() {
            Some(r) => {
                let i = r.gen_range(0..pending.len());
                pending.keys().nth(i).cloned().unwrap()
            }
            None => pending.keys().next().cloned().unwrap(),
        };
        let c = pending.remove(&w).unwrap();
        let mut redexes = Vec::new();
        for pos in 0..w.grade() {
            for &ri in pres.rules_for_head(w[pos].family) {
                if let Some(env) = pres.rules()[ri].matches_at(w.letters(), pos) {
                    redexes.push((pos, ri, env));
                }
            }
        }
        if redexes.is_empty() {
            done.add_term(w, c, k);
            continue;
        }
        let pick = match (strategy, rng.as_mut()) {
            (RewriteStrategy::Leftmost, _) => 0,
            (RewriteStrategy::Rightmost, _) => redexes.len() - 1,
            (_, Some(r)) => r.gen_range(0..redexes.len()),
            (_, None) => 0,
        };
        let (pos, ri, env) = &redexes[pick];
        let rule = &pres.rules()[*ri];
        for (d, middle) in rule.instantiate(env)? {
            let next = w.splice(*pos, rule.lhs.len(), &middle);
            let coeff = k.mul(c, d);
            let entry = pending.entry(next).or_insert(Scalar::ZERO);
            *entry = k.add(*entry, coeff);
        }
        pending.retain(|_, v| !v.is_zero());
    }
    Ok(done)
}
