use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::field::{PrimeField, Scalar};
use crate::word::Word;

/// A sparse K-linear combination of words.
///
/// Elements returned by the algebra layer are supported on normal words
/// only; raw combinations (e.g. straight out of the parser) may not be.
/// Zero coefficients are never stored, so equality is map equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem {
    terms: BTreeMap<Word, Scalar>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::from_word(Word::one())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::ONE);
        RingElem { terms }
    }

    pub fn scalar(c: Scalar) -> Self {
        RingElem::term(Word::one(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = RingElem::zero();
        if !c.is_zero() {
            e.terms.insert(w, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, Scalar)> + ExactSizeIterator {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).copied().unwrap_or(Scalar::ZERO)
    }

    /// Coefficient of the empty word.
    pub fn scalar_part(&self) -> Scalar {
        self.coefficient(&Word::one())
    }

    /// Largest grade in the support (0 for the zero element).
    pub fn max_grade(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::grade)
    }

    /// Largest generator index in the support.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(Word::max_index).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut grades = self.terms.keys().map(Word::grade);
        match grades.next() {
            None => true,
            Some(g) => grades.all(|h| h == g),
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar, k: PrimeField) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = k.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &RingElem, c: Scalar, k: PrimeField) {
        if c.is_zero() {
            return;
        }
        for (w, d) in other.terms() {
            self.add_term(w.clone(), k.mul(c, d), k);
        }
    }

    pub fn add(&self, other: &RingElem, k: PrimeField) -> RingElem {
        let mut out = self.clone();
        out.add_scaled(other, Scalar::ONE, k);
        out
    }

    pub fn sub(&self, other: &RingElem, k: PrimeField) -> RingElem {
        let mut out = self.clone();
        out.add_scaled(other, k.neg(Scalar::ONE), k);
        out
    }

    pub fn scale(&self, c: Scalar, k: PrimeField) -> RingElem {
        let mut out = RingElem::zero();
        out.add_scaled(self, c, k);
        out
    }

    pub fn neg(&self, k: PrimeField) -> RingElem {
        self.scale(k.neg(Scalar::ONE), k)
    }

    /// Keeps only the terms whose word satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> RingElem {
        RingElem {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), *c))
                .collect(),
        }
    }
}

impl FromIterator<(Word, Scalar)> for RingElem {
    /// Collects terms that are assumed distinct and nonzero; zero
    /// coefficients are dropped.
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        RingElem {
            terms: iter.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}
