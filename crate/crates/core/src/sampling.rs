//! Seeded random elements of a slice.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::element::RingElem;
use crate::field::PrimeField;
use crate::presentation::{Bounds, Presentation};
use crate::skew::SkewPoly;
use crate::word::Word;

/// Draws random combinations of the normal words of a slice.
#[derive(Clone, Debug)]
pub struct Sampler {
    field: PrimeField,
    words: Vec<Word>,
}

impl Sampler {
    pub fn new(pres: &Presentation, b: &Bounds) -> Self {
        Sampler {
            field: pres.field(),
            words: pres.enumerate_basis(b),
        }
    }

    /// Restricts to normal words of grade at most `grade`.
    pub fn max_grade(mut self, grade: usize) -> Self {
        self.words.retain(|w| w.grade() <= grade);
        self
    }

    /// Keeps only the words accepted by `keep`.
    pub fn filter(mut self, keep: impl Fn(&Word) -> bool) -> Self {
        self.words.retain(|w| keep(w));
        self
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Sum of up to `max_terms` random words with random nonzero coefficients.
    /// The result is a normal form (possibly zero when terms cancel).
    pub fn element(&self, rng: &mut impl Rng, max_terms: usize) -> RingElem {
        let k = self.field;
        let n = rng.gen_range(1..=max_terms.max(1));
        let mut e = RingElem::zero();
        for _ in 0..n {
            let Some(w) = self.words.choose(rng) else {
                break;
            };
            let c = k.scalar(rng.gen_range(1..k.characteristic() as i64));
            e.add_term(w.clone(), c, k);
        }
        e
    }

    pub fn nonzero_element(&self, rng: &mut impl Rng, max_terms: usize) -> RingElem {
        loop {
            let e = self.element(rng, max_terms);
            if !e.is_zero() || self.words.is_empty() {
                return e;
            }
        }
    }

    /// Polynomial with x-degree at most `x_degree` and random coefficients.
    pub fn poly(&self, rng: &mut impl Rng, x_degree: usize, max_terms: usize) -> SkewPoly {
        let coeffs = (0..=x_degree)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    RingElem::zero()
                } else {
                    self.element(rng, max_terms)
                }
            })
            .collect();
        SkewPoly::from_coeffs(coeffs)
    }
}
