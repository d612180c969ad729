//! Finitely presented graded algebras given by index-parameterized rewrite
//! rules, with normal forms and products in bounded-degree slices.

mod dsl;
mod rewrite;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::components::ComponentScheme;
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::word::{GeneratorId, Word};

pub use dsl::{parse_element, parse_endomorphism, parse_poly, parse_presentation};
pub use rewrite::{reduce_with_strategy, Reducer, RewriteStrategy};

/// Truncation of an infinitely generated algebra to a finite slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest generator index admitted.
    pub max_index: u32,
    /// Largest word grade admitted.
    pub max_degree: usize,
}

impl Bounds {
    pub fn new(max_index: u32, max_degree: usize) -> Self {
        Bounds {
            max_index,
            max_degree,
        }
    }
}

/// A generator family such as `a(1)`: a name and a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub arity: usize,
    /// Families indexed by field elements (e.g. `alam`) carry a fixed
    /// index bound that does not follow [`Bounds::max_index`].
    pub fixed_bound: Option<u32>,
}

/// Affine integer expression over the variables of one rule.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinExpr {
    pub constant: i64,
    pub terms: Vec<(usize, i64)>,
}

impl LinExpr {
    pub fn constant(c: i64) -> Self {
        LinExpr {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn var(v: usize) -> Self {
        LinExpr {
            constant: 0,
            terms: vec![(v, 1)],
        }
    }

    /// Evaluates under `env`; panics on an unbound variable, which the
    /// parser rules out.
    pub fn eval(&self, env: &[Option<i64>]) -> i64 {
        self.terms.iter().fold(self.constant, |acc, &(v, c)| {
            acc + c * env[v].expect("unbound rule variable")
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: LinExpr,
    pub op: CmpOp,
    pub rhs: LinExpr,
}

impl Comparison {
    pub fn holds(&self, env: &[Option<i64>]) -> bool {
        let (l, r) = (self.lhs.eval(env), self.rhs.eval(env));
        match self.op {
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Gt => l > r,
            CmpOp::Ge => l >= r,
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
        }
    }
}

/// Index slot of a left-hand-side letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexPattern {
    Var(usize),
    Const(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterPattern {
    pub family: u16,
    pub indices: SmallVec<[IndexPattern; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterTemplate {
    pub family: u16,
    pub indices: SmallVec<[LinExpr; 2]>,
}

/// `sum(var = lo..hi)`, both ends inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRange {
    pub var: usize,
    pub lo: LinExpr,
    pub hi: LinExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhsTerm {
    pub coeff: Scalar,
    pub word: Vec<LetterTemplate>,
    pub sum: Option<SumRange>,
}

/// An oriented, homogeneous rewrite rule `lhs -> rhs when guard`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub vars: Vec<String>,
    pub lhs: Vec<LetterPattern>,
    pub guard: Vec<Comparison>,
    /// Empty means the left side reduces to zero.
    pub rhs: Vec<RhsTerm>,
    /// Source text, kept for diagnostics.
    pub source: String,
}

impl RewriteRule {
    /// Tries to match the left side against `letters[pos..]`, returning the
    /// variable bindings when the guard also holds.
    pub(crate) fn matches_at(
        &self,
        letters: &[GeneratorId],
        pos: usize,
    ) -> Option<Vec<Option<i64>>> {
        if pos + self.lhs.len() > letters.len() {
            return None;
        }
        let mut env = vec![None; self.vars.len()];
        for (pat, g) in self.lhs.iter().zip(&letters[pos..]) {
            if pat.family != g.family {
                return None;
            }
            for (slot, &value) in pat.indices.iter().zip(&g.indices) {
                match *slot {
                    IndexPattern::Const(c) if c != value => return None,
                    IndexPattern::Const(_) => {}
                    IndexPattern::Var(v) => match env[v] {
                        Some(bound) if bound != value as i64 => return None,
                        Some(_) => {}
                        None => env[v] = Some(value as i64),
                    },
                }
            }
        }
        if self.guard.iter().all(|c| c.holds(&env)) {
            Some(env)
        } else {
            None
        }
    }

    /// Instantiates the right side under `env` as `(coefficient, letters)`
    /// pairs.
    pub(crate) fn instantiate(
        &self,
        env: &[Option<i64>],
    ) -> Result<Vec<(Scalar, SmallVec<[GeneratorId; 4]>)>> {
        let mut out = Vec::new();
        let mut env = env.to_vec();
        for term in &self.rhs {
            match &term.sum {
                None => out.push((term.coeff, self.build_word(&term.word, &env)?)),
                Some(range) => {
                    let (lo, hi) = (range.lo.eval(&env), range.hi.eval(&env));
                    for k in lo..=hi {
                        env[range.var] = Some(k);
                        out.push((term.coeff, self.build_word(&term.word, &env)?));
                    }
                    env[range.var] = None;
                }
            }
        }
        Ok(out)
    }

    fn build_word(
        &self,
        letters: &[LetterTemplate],
        env: &[Option<i64>],
    ) -> Result<SmallVec<[GeneratorId; 4]>> {
        letters
            .iter()
            .map(|t| {
                let mut idx = [0u32; crate::word::MAX_ARITY];
                for (slot, e) in idx.iter_mut().zip(&t.indices) {
                    let v = e.eval(env);
                    *slot = u32::try_from(v).map_err(|_| Error::NegativeIndex {
                        rule: self.source.clone(),
                    })?;
                }
                Ok(GeneratorId {
                    family: t.family,
                    indices: idx,
                })
            })
            .collect()
    }
}

/// Decidable predicate on words describing a claimed K-basis.
#[derive(Clone)]
pub struct BasisPredicate(Arc<dyn Fn(&Word) -> bool + Send + Sync>);

impl BasisPredicate {
    pub fn new(f: impl Fn(&Word) -> bool + Send + Sync + 'static) -> Self {
        BasisPredicate(Arc::new(f))
    }

    pub fn contains(&self, w: &Word) -> bool {
        (self.0)(w)
    }
}

impl fmt::Debug for BasisPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BasisPredicate(..)")
    }
}

/// A finitely presented graded K-algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    field: PrimeField,
    families: Vec<Family>,
    rules: Vec<RewriteRule>,
    /// Rule indices grouped by the family of their first letter.
    rules_by_head: Vec<Vec<usize>>,
    claimed_basis: Option<BasisPredicate>,
    components: Option<ComponentScheme>,
}

impl Presentation {
    pub fn new(field: PrimeField, families: Vec<Family>, rules: Vec<RewriteRule>) -> Self {
        let mut rules_by_head = vec![Vec::new(); families.len()];
        for (i, r) in rules.iter().enumerate() {
            rules_by_head[r.lhs[0].family as usize].push(i);
        }
        Presentation {
            name: "custom".to_string(),
            field,
            families,
            rules,
            rules_by_head,
            claimed_basis: None,
            components: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_claimed_basis(mut self, basis: BasisPredicate) -> Self {
        self.claimed_basis = Some(basis);
        self
    }

    pub fn with_component_scheme(mut self, scheme: ComponentScheme) -> Self {
        self.components = Some(scheme);
        self
    }

    /// Same presentation without the rules for which `drop` returns true.
    pub fn without_rules(&self, mut drop: impl FnMut(usize, &RewriteRule) -> bool) -> Presentation {
        let rules = self
            .rules
            .iter()
            .enumerate()
            .filter(|(i, r)| !drop(*i, r))
            .map(|(_, r)| r.clone())
            .collect();
        let mut p = Presentation::new(self.field, self.families.clone(), rules);
        p.name = self.name.clone();
        p.claimed_basis = self.claimed_basis.clone();
        p.components = self.components;
        p
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn claimed_basis(&self) -> Option<&BasisPredicate> {
        self.claimed_basis.as_ref()
    }

    pub fn component_scheme(&self) -> Option<ComponentScheme> {
        self.components
    }

    pub(crate) fn rules_for_head(&self, family: u16) -> &[usize] {
        &self.rules_by_head[family as usize]
    }

    pub fn family_id(&self, name: &str) -> Result<u16> {
        self.families
            .iter()
            .position(|f| f.name == name)
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    /// Generator `name[indices]`; checks the family and its arity.
    pub fn generator(&self, name: &str, indices: &[u32]) -> Result<GeneratorId> {
        let id = self.family_id(name)?;
        let arity = self.families[id as usize].arity;
        if indices.len() != arity {
            return Err(Error::Parse {
                line: 0,
                col: 0,
                message: format!(
                    "family `{name}` has arity {arity}, got {} indices",
                    indices.len()
                ),
            });
        }
        Ok(GeneratorId::new(id, indices))
    }

    /// Word from `(family, indices)` pairs; convenient in tests.
    pub fn word(&self, letters: &[(&str, &[u32])]) -> Result<Word> {
        letters
            .iter()
            .map(|(n, idx)| self.generator(n, idx))
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    /// Element with a single word and coefficient one.
    pub fn monomial(&self, letters: &[(&str, &[u32])]) -> Result<RingElem> {
        self.word(letters).map(RingElem::from_word)
    }

    /// Parses an element expression and returns its normal form.
    pub fn element(&self, text: &str) -> Result<RingElem> {
        let raw = parse_element(text, self)?;
        self.reducer().normal_form(&raw)
    }

    /// Index bound of a family under `b`.
    pub fn index_bound(&self, family: u16, b: &Bounds) -> u32 {
        self.families[family as usize]
            .fixed_bound
            .unwrap_or(b.max_index)
    }

    pub fn check_generator(&self, g: &GeneratorId, b: &Bounds) -> Result<()> {
        let bound = self.index_bound(g.family, b);
        let arity = self.families[g.family as usize].arity;
        if g.indices[..arity].iter().any(|&i| i > bound) {
            return Err(Error::IndexOutOfBounds {
                generator: self.format_generator(g),
                bound,
            });
        }
        Ok(())
    }

    pub fn check_indices(&self, e: &RingElem, b: &Bounds) -> Result<()> {
        for w in e.support() {
            for g in w.letters() {
                self.check_generator(g, b)?;
            }
        }
        Ok(())
    }

    pub fn word_in_bounds(&self, w: &Word, b: &Bounds) -> bool {
        w.grade() <= b.max_degree
            && w.letters()
                .iter()
                .all(|g| self.check_generator(g, b).is_ok())
    }

    /// All generators admitted by `b`, in canonical order.
    pub fn generators(&self, b: &Bounds) -> Vec<GeneratorId> {
        let mut out = Vec::new();
        for (fid, fam) in self.families.iter().enumerate() {
            let base = self.index_bound(fid as u16, b) as u64 + 1;
            let count = base.pow(fam.arity as u32);
            for n in 0..count {
                // big-endian digits, so index tuples come out in lex order
                let mut idx = [0u32; crate::word::MAX_ARITY];
                let mut rest = n;
                for slot in (0..fam.arity).rev() {
                    idx[slot] = (rest % base) as u32;
                    rest /= base;
                }
                out.push(GeneratorId::new(fid as u16, &idx[..fam.arity]));
            }
        }
        out
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::new(self)
    }

    /// True when no rule applies anywhere in `w`.
    pub fn is_normal(&self, w: &Word) -> bool {
        (0..w.grade()).all(|pos| !self.has_redex_at(w, pos))
    }

    pub(crate) fn has_redex_at(&self, w: &Word, pos: usize) -> bool {
        self.rules_for_head(w[pos].family)
            .iter()
            .any(|&r| self.rules[r].matches_at(w.letters(), pos).is_some())
    }

    /// True when some rule matches a suffix of `w`.
    fn has_redex_ending_at_last(&self, w: &Word) -> bool {
        let n = w.grade();
        self.rules.iter().any(|r| {
            let l = r.lhs.len();
            l <= n && r.matches_at(w.letters(), n - l).is_some()
        })
    }

    /// All normal words within `b`, in canonical order.
    ///
    /// Normal words are closed under taking prefixes, so the enumeration
    /// extends grade by grade and stops early once a grade is empty.
    pub fn enumerate_basis(&self, b: &Bounds) -> Vec<Word> {
        let gens = self.generators(b);
        let mut out = vec![Word::one()];
        let mut level = vec![Word::one()];
        for _ in 0..b.max_degree {
            let mut next = Vec::new();
            for w in &level {
                for g in &gens {
                    let mut ext = w.clone();
                    ext.push(*g);
                    if !self.has_redex_ending_at_last(&ext) {
                        next.push(ext);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    /// Every instance of rule `rule` whose left side lies within `b`, as
    /// `(lhs word, raw rhs combination)`.
    pub fn rule_instances(&self, rule: usize, b: &Bounds) -> Result<Vec<(Word, RingElem)>> {
        let r = &self.rules[rule];
        // each variable ranges up to the tightest bound among its slots
        let mut var_bound = vec![u32::MAX; r.vars.len()];
        let mut in_lhs = vec![false; r.vars.len()];
        for pat in &r.lhs {
            let bound = self.index_bound(pat.family, b);
            for slot in &pat.indices {
                if let IndexPattern::Var(v) = slot {
                    var_bound[*v] = var_bound[*v].min(bound);
                    in_lhs[*v] = true;
                }
            }
        }
        let free: Vec<usize> = (0..r.vars.len()).filter(|&v| in_lhs[v]).collect();
        let mut out = Vec::new();
        let mut env: Vec<Option<i64>> = vec![None; r.vars.len()];
        let total: u64 = free.iter().map(|&v| var_bound[v] as u64 + 1).product();
        for n in 0..total {
            let mut rest = n;
            for &v in free.iter().rev() {
                let base = var_bound[v] as u64 + 1;
                env[v] = Some((rest % base) as i64);
                rest /= base;
            }
            if !r.guard.iter().all(|c| c.holds(&env)) {
                continue;
            }
            let lhs = Word::from_letters(r.lhs.iter().map(|pat| {
                let idx: SmallVec<[u32; 2]> = pat
                    .indices
                    .iter()
                    .map(|s| match *s {
                        IndexPattern::Const(c) => c,
                        IndexPattern::Var(v) => env[v].unwrap() as u32,
                    })
                    .collect();
                GeneratorId::new(pat.family, &idx)
            }));
            let mut rhs = RingElem::zero();
            for (c, letters) in r.instantiate(&env)? {
                rhs.add_term(Word::from_letters(letters), c, self.field);
            }
            out.push((lhs, rhs));
        }
        Ok(out)
    }

    pub fn format_generator(&self, g: &GeneratorId) -> String {
        let fam = &self.families[g.family as usize];
        if fam.arity == 0 {
            fam.name.clone()
        } else {
            let idx: Vec<String> = g.indices[..fam.arity].iter().map(u32::to_string).collect();
            format!("{}[{}]", fam.name, idx.join(","))
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_one() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|g| self.format_generator(g))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// One term per entry, in canonical word order.
    pub fn format_terms(&self, e: &RingElem) -> Vec<String> {
        e.terms().map(|(w, c)| self.format_term(w, c)).collect()
    }

    fn format_term(&self, w: &Word, c: Scalar) -> String {
        let s = self.field.signed(c);
        let word = self.format_word(w);
        match (s, w.is_one()) {
            (_, true) => s.to_string(),
            (1, false) => word,
            (-1, false) => format!("-{word}"),
            (_, false) => format!("{s}*{word}"),
        }
    }

    /// Human-readable element, leading word first (`0` for zero).
    pub fn format_element(&self, e: &RingElem) -> String {
        let mut terms = self.format_terms(e);
        terms.reverse();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            match (i, t.strip_prefix('-')) {
                (0, _) => out.push_str(t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests;
