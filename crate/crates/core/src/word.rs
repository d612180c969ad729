//! Generators and words of the free monoid.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

/// Largest generator arity a family may declare.
pub const MAX_ARITY: usize = 2;

/// One generator: a family (by declaration rank) plus its index tuple.
///
/// Unused index slots are zero. Ordering is by family rank, then index
/// tuple, which is the letter order underlying the canonical word order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub family: u16,
    pub indices: [u32; MAX_ARITY],
}

impl GeneratorId {
    pub fn new(family: u16, indices: &[u32]) -> Self {
        let mut idx = [0; MAX_ARITY];
        idx[..indices.len()].copy_from_slice(indices);
        GeneratorId {
            family,
            indices: idx,
        }
    }

    /// Largest index value in the tuple.
    pub fn max_index(&self) -> u32 {
        self.indices.iter().copied().max().unwrap_or(0)
    }
}

/// A finite sequence of generators. The empty word is the identity.
///
/// Words are ordered gradedly: shorter words first, then lexicographically
/// letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[GeneratorId; 4]>);

impl Word {
    pub fn one() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: GeneratorId) -> Self {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn from_letters<I: IntoIterator<Item = GeneratorId>>(letters: I) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: GeneratorId) {
        self.0.push(g);
    }

    /// Replaces `self[start..start + len]` by `middle`.
    pub fn splice(&self, start: usize, len: usize, middle: &[GeneratorId]) -> Word {
        let mut v: SmallVec<[GeneratorId; 4]> =
            SmallVec::with_capacity(self.0.len() - len + middle.len());
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(middle);
        v.extend_from_slice(&self.0[start + len..]);
        Word(v)
    }

    /// Largest generator index occurring in the word (0 for the identity).
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(GeneratorId::max_index).max().unwrap_or(0)
    }
}

impl Deref for Word {
    type Target = [GeneratorId];

    fn deref(&self) -> &[GeneratorId] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{:?}", self.family, self.indices)
    }
}
