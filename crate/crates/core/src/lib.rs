//! Finitely presented algebras over small prime fields: normal forms, skew
//! polynomial and power-series arithmetic, exact bounded-degree annihilators,
//! and executable checks of zip, Beachy-Blair and Armendariz claims for a
//! few example rings.

pub mod annihilator;
pub mod checks;
pub mod components;
pub mod element;
pub mod error;
pub mod exhaustive;
pub mod field;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod rings;
pub mod sampling;
pub mod skew;
pub mod word;

pub use annihilator::{
    annihilator, annihilator_within, is_faithful_upto, zip_witness_search, AnnQuery, Side,
    SliceDescriptor, SliceKind, SubspaceBasis,
};
pub use checks::{alpha_compatibility_check, armendariz_check, strong_armendariz_check};
pub use components::{
    decompose_components, length, length_and_delta, ComponentClass, ComponentScheme, Components,
    Length,
};
pub use element::RingElem;
pub use error::{Error, Result};
pub use field::{PrimeField, Scalar};
pub use presentation::{
    parse_element, parse_endomorphism, parse_poly, parse_presentation, Bounds, Presentation,
    Reducer,
};
pub use report::{check_basis_claim, check_basis_claim_with, CheckReport, Verdict, Witness};
pub use rings::{
    builtin_by_name, builtin_ring, claim_ledger, verify_lemma, BuiltinName, LedgerConfig, Lemma,
};
pub use skew::{
    apply_endomorphism, coefficient_set, phi_extend, psi_restrict, skew_mul_poly, skew_mul_series,
    EndoKind, Endomorphism, SkewPoly, TruncSeries,
};
pub use word::{GeneratorId, Word};
