//! Direct-sum decompositions of the built-in rings by word shape.

use serde::{Deserialize, Serialize};

use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

/// How normal words split into component classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentScheme {
    /// `1`, words in the `a` generators, lone `b_j`, and `b_j a_{i_1} ... a_{i_n}`.
    Section4 { a: u16, b: u16 },
    /// `1`, `a_i`, `b_j`, and `a_i b_j` with `j >= 1`.
    Armendariz { a: u16, b: u16 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentClass {
    Scalar,
    APart,
    BPart,
    /// `U_ba` in the section-4 ring, `U_2` in the Armendariz example.
    Mixed,
}

impl ComponentScheme {
    pub fn classify(&self, w: &Word) -> ComponentClass {
        let (a, b) = match *self {
            ComponentScheme::Section4 { a, b } | ComponentScheme::Armendariz { a, b } => (a, b),
        };
        let letters = w.letters();
        match letters.first() {
            None => ComponentClass::Scalar,
            Some(_) if letters.iter().all(|g| g.family == a) => ComponentClass::APart,
            Some(g) if g.family == b && letters.len() == 1 => ComponentClass::BPart,
            Some(_) => ComponentClass::Mixed,
        }
    }
}

/// `e = scalar + a + b + mixed` with pairwise disjoint supports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Components {
    pub scalar: RingElem,
    pub a: RingElem,
    pub b: RingElem,
    pub mixed: RingElem,
}

impl Components {
    pub fn get(&self, class: ComponentClass) -> &RingElem {
        match class {
            ComponentClass::Scalar => &self.scalar,
            ComponentClass::APart => &self.a,
            ComponentClass::BPart => &self.b,
            ComponentClass::Mixed => &self.mixed,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (ComponentClass, &RingElem)> {
        [
            ComponentClass::Scalar,
            ComponentClass::APart,
            ComponentClass::BPart,
            ComponentClass::Mixed,
        ]
        .into_iter()
        .map(move |c| (c, self.get(c)))
    }
}

fn scheme(pres: &Presentation) -> Result<ComponentScheme> {
    pres.component_scheme()
        .ok_or_else(|| Error::UnsupportedRing(pres.name().to_string()))
}

/// Splits a normal-form element into its component classes.
pub fn decompose_components(e: &RingElem, pres: &Presentation) -> Result<Components> {
    let scheme = scheme(pres)?;
    let part = |class| e.filter(|w| scheme.classify(w) == class);
    Ok(Components {
        scalar: part(ComponentClass::Scalar),
        a: part(ComponentClass::APart),
        b: part(ComponentClass::BPart),
        mixed: part(ComponentClass::Mixed),
    })
}

/// Length of an element of the Armendariz example ring; `-inf` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Length {
    NegInfinity,
    Finite(i64),
}

fn word_length(w: &Word) -> i64 {
    if w.is_one() {
        -1
    } else {
        w.letters().iter().map(|g| g.indices[0] as i64).sum()
    }
}

fn armendariz_scheme(pres: &Presentation) -> Result<ComponentScheme> {
    match scheme(pres)? {
        s @ ComponentScheme::Armendariz { .. } => Ok(s),
        _ => Err(Error::RingMismatch {
            expected: "armendariz_3_3".to_string(),
            found: pres.name().to_string(),
        }),
    }
}

/// Maximum word length over the support.
pub fn length(e: &RingElem, pres: &Presentation) -> Result<Length> {
    armendariz_scheme(pres)?;
    Ok(e.support()
        .map(word_length)
        .max()
        .map_or(Length::NegInfinity, Length::Finite))
}

/// Length and leading word of a nonzero element lying in one component.
///
/// For the mixed class the leading word is the `a_i b_j` of maximal length
/// with the largest `j`; for the scalar class it is the identity.
pub fn length_and_delta(e: &RingElem, pres: &Presentation) -> Result<(i64, Word)> {
    let scheme = armendariz_scheme(pres)?;
    if e.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut classes = e.support().map(|w| scheme.classify(w));
    let first = classes.next().unwrap();
    if classes.any(|c| c != first) {
        return Err(Error::MixedComponents);
    }
    let l = e.support().map(word_length).max().unwrap();
    let delta = e
        .support()
        .filter(|w| word_length(w) == l)
        .max_by_key(|w| w.letters().last().map_or(0, |g| g.indices[0]))
        .unwrap()
        .clone();
    Ok((l, delta))
}
