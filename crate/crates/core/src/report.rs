//! Structured evidence for verified claims.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::element::RingElem;
use crate::presentation::{reduce_with_strategy, Bounds, Presentation, RewriteStrategy};
use crate::word::Word;

/// `Pass`/`Fail` are reserved for constructive claims; statements that
/// quantify over the whole ring and were only checked inside a slice get
/// `EvidenceOnly` when consistent and `Fail` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    EvidenceOnly,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        self != Verdict::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    pub params: BTreeMap<String, Value>,
    pub dimensions: BTreeMap<String, usize>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(claim: impl Into<String>, verdict: Verdict) -> Self {
        CheckReport {
            claim: claim.into(),
            verdict,
            bounds: None,
            params: BTreeMap::new(),
            dimensions: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_ok()
    }

    pub fn with_bounds(mut self, b: Bounds) -> Self {
        self.bounds = Some(b);
        self
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn dimension(mut self, key: &str, d: usize) -> Self {
        self.dimensions.insert(key.to_string(), d);
        self
    }

    pub fn witness(mut self, role: &str, value: impl Into<String>) -> Self {
        self.witnesses.push(Witness {
            role: role.to_string(),
            value: value.into(),
        });
        self
    }

    /// Copies another report's witnesses, prefixed by its claim.
    pub fn witnesses_from(mut self, other: &CheckReport) -> Self {
        for w in &other.witnesses {
            self.witnesses.push(Witness {
                role: format!("{}.{}", other.claim, w.role),
                value: w.value.clone(),
            });
        }
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn fail(mut self) -> Self {
        self.verdict = Verdict::Fail;
        self
    }

    pub fn witness_value(&self, role: &str) -> Option<&str> {
        self.witnesses
            .iter()
            .find(|w| w.role == role)
            .map(|w| w.value.as_str())
    }
}

/// Default number of sampled words in [`check_basis_claim`].
pub const BASIS_SAMPLES: usize = 200;
/// Default seed of every randomized suite.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// All words (reducible or not) within `b`, in canonical order.
pub(crate) fn all_words(pres: &Presentation, b: &Bounds) -> Vec<Word> {
    let gens = pres.generators(b);
    let mut out = vec![Word::one()];
    let mut level = vec![Word::one()];
    for _ in 0..b.max_degree {
        let mut next = Vec::with_capacity(level.len() * gens.len());
        for w in &level {
            for g in &gens {
                let mut ext = w.clone();
                ext.push(*g);
                next.push(ext);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Compares the normal words with the claimed basis inside `b`, and
/// reduces sampled words under several rule-application orders.
pub fn check_basis_claim(pres: &Presentation, b: &Bounds) -> CheckReport {
    check_basis_claim_with(pres, b, BASIS_SAMPLES, DEFAULT_SEED)
}

pub fn check_basis_claim_with(
    pres: &Presentation,
    b: &Bounds,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let mut report = CheckReport::new("basis_claim", Verdict::EvidenceOnly)
        .with_bounds(*b)
        .param("ring", pres.name())
        .param("samples", samples)
        .param("seed", seed);
    let Some(claimed) = pres.claimed_basis() else {
        return report.note("presentation has no claimed basis").fail();
    };
    let normal = pres.enumerate_basis(b);
    report = report.dimension("normal_words", normal.len());
    let words = all_words(pres, b);
    let claimed_words: Vec<&Word> = words.iter().filter(|w| claimed.contains(w)).collect();
    report = report.dimension("claimed_words", claimed_words.len());
    let mut i = 0;
    let mut j = 0;
    while i < normal.len() || j < claimed_words.len() {
        let (n, c) = (normal.get(i), claimed_words.get(j).copied());
        match (n, c) {
            (Some(n), Some(c)) if n == c => {
                i += 1;
                j += 1;
            }
            (Some(n), c) if c.is_none_or(|c| n < c) => {
                return report
                    .witness("first_mismatch", pres.format_word(n))
                    .note("normal word outside the claimed basis")
                    .fail();
            }
            (_, Some(c)) => {
                return report
                    .witness("first_mismatch", pres.format_word(c))
                    .note("claimed basis word is reducible")
                    .fail();
            }
            _ => unreachable!(),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut red = pres.reducer();
    let gens = pres.generators(b);
    for n in 0..samples {
        let grade = rng.gen_range(0..=b.max_degree);
        let w = Word::from_letters((0..grade).map(|_| *gens.choose(&mut rng).unwrap()));
        let e = RingElem::from_word(w.clone());
        let reference = match red.normal_form(&e) {
            Ok(r) => r,
            Err(err) => {
                return report
                    .witness("sample", pres.format_word(&w))
                    .note(err.to_string())
                    .fail()
            }
        };
        for strategy in [
            RewriteStrategy::Leftmost,
            RewriteStrategy::Rightmost,
            RewriteStrategy::Random(seed ^ n as u64),
        ] {
            let other = reduce_with_strategy(pres, &e, strategy);
            if other.as_ref() != Ok(&reference) {
                return report
                    .witness("sample", pres.format_word(&w))
                    .witness("leftmost", pres.format_element(&reference))
                    .note(format!("{strategy:?} reduction disagrees"))
                    .fail();
            }
        }
    }
    report
}
