use super::*;
use crate::error::Error;
use crate::rings::{builtin_ring, BuiltinName};

const TOY: &str = "field 3;
family u(0);
family v(1);
rule v[i]*u -> u*v[i];
rule u*u -> 0;
";

#[test]
fn parses_families_and_rules() {
    let p = parse_presentation(TOY).unwrap();
    assert_eq!(p.field().characteristic(), 3);
    assert_eq!(p.families().len(), 2);
    assert_eq!(p.rules().len(), 2);
    assert!(p.family_id("w").is_err());
}

#[test]
fn normal_forms() {
    let p = parse_presentation(TOY).unwrap();
    assert_eq!(p.format_element(&p.element("v[2]*u").unwrap()), "u*v[2]");
    assert!(p.element("u*v[1]*u").unwrap().is_zero());
    let e = p.element("2*v[0] + v[0] + 1").unwrap();
    assert_eq!(p.format_element(&e), "1");
    assert_eq!(p.format_element(&p.element("-u").unwrap()), "-u");
}

#[test]
fn display_is_leading_term_first() {
    let p = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let e = p.element("a[2]*b[0]").unwrap();
    assert_eq!(p.format_element(&e), "a[1]*b[1] + a[0]*b[2]");
    assert_eq!(p.format_terms(&e), ["a[0]*b[2]", "a[1]*b[1]"]);
}

#[test]
fn printed_elements_reparse() {
    let p = builtin_ring(BuiltinName::Section4, 3).unwrap();
    for text in [
        "1 + b[0]",
        "a[2]*a[0] - b[0]*a[1]",
        "2*a[1] + b[3]*a[4]*a[0]",
    ] {
        let e = p.element(text).unwrap();
        assert_eq!(p.element(&p.format_element(&e)).unwrap(), e);
    }
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(
        parse_presentation("field 4;"),
        Err(Error::UnsupportedCharacteristic(4))
    ));
    assert!(matches!(
        parse_presentation("field 2; family u(0); rule u*u -> u;"),
        Err(Error::InhomogeneousRule { .. })
    ));
    let p = parse_presentation(TOY).unwrap();
    assert!(matches!(p.element("w"), Err(Error::UnknownFamily(_))));
    assert!(p.element("u +").is_err());
}

#[test]
fn basis_counts() {
    let s4 = builtin_ring(BuiltinName::Section4, 2).unwrap();
    assert_eq!(s4.enumerate_basis(&Bounds::new(2, 2)).len(), 19);
    let arm = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    assert_eq!(arm.enumerate_basis(&Bounds::new(2, 2)).len(), 13);
}

#[test]
fn rule_instances_respect_guards() {
    let s4 = builtin_ring(BuiltinName::Section4, 2).unwrap();
    // b[j]*a[i] -> 0 when j >= i
    let inst = s4.rule_instances(2, &Bounds::new(2, 2)).unwrap();
    assert_eq!(inst.len(), 6);
    assert!(inst.iter().all(|(_, rhs)| rhs.is_zero()));
}

#[test]
fn strategies_agree() {
    let arm = builtin_ring(BuiltinName::Armendariz33, 2).unwrap();
    let w = arm.monomial(&[("a", &[3]), ("b", &[0])]).unwrap();
    let left = reduce_with_strategy(&arm, &w, RewriteStrategy::Leftmost).unwrap();
    let right = reduce_with_strategy(&arm, &w, RewriteStrategy::Rightmost).unwrap();
    let random = reduce_with_strategy(&arm, &w, RewriteStrategy::Random(5)).unwrap();
    assert_eq!(left, right);
    assert_eq!(left, random);
    assert_eq!(left.len(), 3);
}
