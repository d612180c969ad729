//! The three example rings, their claimed bases, and the checks of their
//! constructive claims.

mod cedo;
mod ledger;
mod lemmas;
mod section4;

use std::fmt;
use std::str::FromStr;

use crate::components::ComponentScheme;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::presentation::{parse_endomorphism, parse_presentation, BasisPredicate, Presentation};
use crate::skew::Endomorphism;
use crate::word::Word;

pub use cedo::{cedo_series_check, cedo_series_witness, cedo_witness_series, cedo_x_element};
pub use ledger::{
    armendariz_series_report, armendariz_zero_series, claim_ledger, sample_ideal_subset,
    sample_zip_set, LedgerConfig,
};
pub use lemmas::{verify_lemma, verify_lemma_with, Lemma, LemmaParams};
pub use section4::{bb_failure_witness, right_zip_certificate, series_bb_evidence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinName {
    Cedo31,
    Armendariz33,
    Section4,
}

impl BuiltinName {
    pub const ALL: [BuiltinName; 3] = [
        BuiltinName::Cedo31,
        BuiltinName::Armendariz33,
        BuiltinName::Section4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::Cedo31 => "cedo_3_1",
            BuiltinName::Armendariz33 => "armendariz_3_3",
            BuiltinName::Section4 => "section4",
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownRing(s.to_string()))
    }
}

/// DSL source of a built-in ring over GF(p).
pub fn builtin_source(name: BuiltinName, p: u64) -> Result<String> {
    let k = PrimeField::new(p)?;
    Ok(match name {
        BuiltinName::Section4 => format!(
            "field {p};
family a(1);
family b(1);
rule b[j]*b[l] -> 0;
rule a[i]*b[j] -> 0;
rule b[j]*a[i] -> 0 when j >= i;
"
        ),
        BuiltinName::Armendariz33 => {
            if p != 2 {
                return Err(Error::UnsupportedCharacteristic(p));
            }
            "field 2;
family a(1);
family b(1);
rule a[i]*b[0] -> sum(k = 1..i) a[i-k]*b[k] when i >= 1;
rule a[0]*b[0] -> 0;
rule b[i]*a[j] -> 0;
rule a[i]*a[j] -> 0;
rule b[i]*b[j] -> 0;
"
            .to_string()
        }
        BuiltinName::Cedo31 => {
            let mut s = format!(
                "field {p};
family ainf(0);
family alam(1) bound {};
family a0(1);
family a1(1);
family b1(1);
family b2(1);
rule a0[i]*b2[j] -> a0[i]*b1[j] when j >= i;
rule a1[i]*b1[j] -> a0[i]*b1[j] when j >= i;
rule a1[i]*b2[j] -> 0 when j >= i;
rule a1[i]*ainf -> 0;
rule a0[i]*alam[0] -> 0;
",
                p - 1
            );
            for lam in 1..p {
                let c = k.neg(k.inv(k.scalar(lam as i64)).unwrap());
                s.push_str(&format!(
                    "rule a1[i]*alam[{lam}] -> {c}*a0[i]*alam[{lam}];\n"
                ));
            }
            for head in ["ainf", "alam[l]", "b1[j]", "b2[j]"] {
                for tail in ["ainf", "alam[m]", "a0[m]", "a1[m]", "b1[m]", "b2[m]"] {
                    s.push_str(&format!("rule {head}*{tail} -> 0;\n"));
                }
            }
            s
        }
    })
}

fn family_of(pres: &Presentation, name: &str) -> u16 {
    pres.family_id(name).expect("built-in family")
}

/// The built-in ring `name` over GF(p), with its claimed basis and
/// component scheme attached.
pub fn builtin_ring(name: BuiltinName, p: u64) -> Result<Presentation> {
    let pres = parse_presentation(&builtin_source(name, p)?)?.with_name(name.as_str());
    let a = family_of(
        &pres,
        match name {
            BuiltinName::Cedo31 => "a0",
            _ => "a",
        },
    );
    Ok(match name {
        BuiltinName::Section4 => {
            let b = family_of(&pres, "b");
            pres.with_claimed_basis(BasisPredicate::new(move |w| section4_basis(w, a, b)))
                .with_component_scheme(ComponentScheme::Section4 { a, b })
        }
        BuiltinName::Armendariz33 => {
            let b = family_of(&pres, "b");
            pres.with_claimed_basis(BasisPredicate::new(move |w| armendariz_basis(w, a, b)))
                .with_component_scheme(ComponentScheme::Armendariz { a, b })
        }
        BuiltinName::Cedo31 => {
            let ids = CedoFamilies {
                ainf: family_of(&pres, "ainf"),
                alam: family_of(&pres, "alam"),
                a0: a,
                a1: family_of(&pres, "a1"),
                b1: family_of(&pres, "b1"),
                b2: family_of(&pres, "b2"),
            };
            pres.with_claimed_basis(BasisPredicate::new(move |w| cedo_basis(w, &ids)))
        }
    })
}

/// Parses a built-in name and builds the ring.
pub fn builtin_by_name(name: &str, p: u64) -> Result<Presentation> {
    builtin_ring(name.parse()?, p)
}

/// `1`, words in the `a` generators, a lone `b_j`, and `b_j a_{i_1} ... a_{i_n}`
/// with `n >= 1` and `j < i_1`.
fn section4_basis(w: &Word, a: u16, b: u16) -> bool {
    match w.letters() {
        [] => true,
        [g, rest @ ..] if g.family == b => match rest.first() {
            None => true,
            Some(h) => h.indices[0] > g.indices[0] && rest.iter().all(|x| x.family == a),
        },
        letters => letters.iter().all(|x| x.family == a),
    }
}

/// `1`, `a_i`, `b_j`, and `a_i b_j` with `j >= 1`.
fn armendariz_basis(w: &Word, a: u16, b: u16) -> bool {
    match w.letters() {
        [] | [_] => true,
        [x, y] => x.family == a && y.family == b && y.indices[0] >= 1,
        _ => false,
    }
}

struct CedoFamilies {
    ainf: u16,
    alam: u16,
    a0: u16,
    a1: u16,
    b1: u16,
    b2: u16,
}

/// A prefix in the `a_{0,i}`, `a_{1,i}` generators, optionally followed by one
/// terminal letter subject to the conditions on the last prefix letter.
fn cedo_basis(w: &Word, f: &CedoFamilies) -> bool {
    let letters = w.letters();
    let is_prefix = |fam: u16| fam == f.a0 || fam == f.a1;
    let split = letters
        .iter()
        .position(|g| !is_prefix(g.family))
        .unwrap_or(letters.len());
    let (prefix, tail) = letters.split_at(split);
    let last = prefix.last();
    match tail {
        [] => true,
        [t] if t.family == f.ainf => last.is_none_or(|g| g.family == f.a0),
        [t] if t.family == f.alam && t.indices[0] == 0 => last.is_none_or(|g| g.family == f.a1),
        [t] if t.family == f.alam => last.is_none_or(|g| g.family == f.a0),
        [t] if t.family == f.b1 || t.family == f.b2 => last
            .is_none_or(|g| t.indices[0] < g.indices[0] || (g.family == f.a0 && t.family == f.b1)),
        _ => false,
    }
}

/// The index shift `a_i -> a_{i+1}`, `b_j -> b_{j+1}` of the section-4 ring.
pub fn section4_shift(pres: &Presentation) -> Result<Endomorphism> {
    parse_endomorphism("map a[i] -> a[i+1];\nmap b[j] -> b[j+1];", pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Bounds;
    use crate::report::check_basis_claim;

    #[test]
    fn builtin_shapes() {
        let s4 = builtin_ring(BuiltinName::Section4, 2).unwrap();
        assert_eq!(s4.families().len(), 2);
        assert_eq!(s4.rules().len(), 3);
        assert!(matches!(
            builtin_ring(BuiltinName::Armendariz33, 3),
            Err(Error::UnsupportedCharacteristic(3))
        ));
        let cedo = builtin_ring(BuiltinName::Cedo31, 2).unwrap();
        let names: Vec<&str> = cedo.families().iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["ainf", "alam", "a0", "a1", "b1", "b2"]);
        assert_eq!(cedo.generators(&Bounds::new(0, 1)).len(), 7);
    }

    #[test]
    fn basis_claims_hold_at_default_bounds() {
        for name in BuiltinName::ALL {
            for p in [2, 3, 5, 7] {
                let Ok(pres) = builtin_ring(name, p) else {
                    continue;
                };
                let report = check_basis_claim(&pres, &Bounds::new(3, 3));
                assert!(report.passed(), "{name} over GF({p}): {report:?}");
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            "nope".parse::<BuiltinName>(),
            Err(Error::UnknownRing(_))
        ));
    }
}
