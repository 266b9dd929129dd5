//! Law and property checks across every built-in instance.

use kfo_semiring::{Element, SemiringId, SemiringSpec};

/// A small, varied sample set per instance (at most 8 elements).
fn samples(id: SemiringId) -> Vec<Element> {
    let k = SemiringSpec::new(id);
    let texts: &[&str] = match id {
        SemiringId::Boolean => &["false", "true"],
        SemiringId::Nat => &["0", "1", "2", "3", "7"],
        SemiringId::Tropical => &["inf", "0", "1", "5", "-2", "3/2"],
        SemiringId::Lukasiewicz => &["0", "1", "1/2", "1/4", "3/4"],
        SemiringId::Probability => &["0", "1", "1/2", "2", "7/3"],
        SemiringId::NatPoly => &["0", "1", "x", "y", "x + 2*y", "x^2"],
    };
    texts.iter().map(|t| k.parse_element(t).unwrap()).collect()
}

#[test]
fn every_builtin_passes_the_law_checker() {
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        let report = k.check_laws(&samples(id)).unwrap();
        assert!(
            report.is_clean(),
            "{id}: violations {:?}",
            report.violations
        );
    }
}

#[test]
fn sum_is_permutation_invariant() {
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        let xs = samples(id);
        let forward = k.sum(xs.iter()).unwrap();
        let mut rev = xs.clone();
        rev.reverse();
        assert_eq!(forward, k.sum(rev.iter()).unwrap(), "{id}");
        // rotate as a second permutation
        let mut rot = xs.clone();
        rot.rotate_left(1);
        assert_eq!(forward, k.sum(rot.iter()).unwrap(), "{id}");
    }
}

#[test]
fn prod_is_permutation_invariant_for_commutative_instances() {
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        assert!(k.commutative);
        let xs = samples(id);
        let forward = k.prod(xs.iter()).unwrap();
        let mut rev = xs.clone();
        rev.reverse();
        assert_eq!(forward, k.prod(rev.iter()).unwrap(), "{id}");
    }
}

#[test]
fn xi_is_a_homomorphism_on_positive_instances() {
    let bool_k = SemiringSpec::boolean();
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        if !k.positive {
            continue;
        }
        let xs = samples(id);
        for a in &xs {
            for b in &xs {
                let lhs_add = k.xi(&k.add(a, b).unwrap());
                let rhs_add = bool_k.add(&k.xi(a), &k.xi(b)).unwrap();
                assert_eq!(lhs_add, rhs_add, "{id}: xi(a+b) with a={a}, b={b}");
                let lhs_mul = k.xi(&k.mul(a, b).unwrap());
                let rhs_mul = bool_k.mul(&k.xi(a), &k.xi(b)).unwrap();
                assert_eq!(lhs_mul, rhs_mul, "{id}: xi(a*b) with a={a}, b={b}");
            }
        }
    }
}

#[test]
fn xi_multiplicativity_fails_on_lukasiewicz() {
    // 1/4 * 1/2 = 0 while xi gives 1 & 1 = 1: the reason the instance does
    // not carry the positivity flag.
    let k = SemiringSpec::lukasiewicz();
    assert!(!k.positive);
    let a = k.parse_element("1/4").unwrap();
    let b = k.parse_element("1/2").unwrap();
    assert_eq!(k.xi(&k.mul(&a, &b).unwrap()), Element::Bool(false));
    assert_eq!(k.xi(&a), Element::Bool(true));
    assert_eq!(k.xi(&b), Element::Bool(true));
}

#[test]
fn leq_is_a_partial_order_and_monotone() {
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        let xs = samples(id);
        let leq = |a: &Element, b: &Element| k.leq(a, b).unwrap();
        for a in &xs {
            assert!(leq(a, a), "{id}: reflexivity at {a}");
            for b in &xs {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b, "{id}: antisymmetry at {a}, {b}");
                }
                for c in &xs {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "{id}: transitivity at {a}, {b}, {c}");
                    }
                    if leq(a, b) {
                        let ac = k.add(a, c).unwrap();
                        let bc = k.add(b, c).unwrap();
                        assert!(leq(&ac, &bc), "{id}: monotonicity at {a}, {b}, {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn zero_is_least_in_every_builtin_order() {
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        for a in samples(id) {
            assert!(k.leq(&k.zero(), &a).unwrap(), "{id}: 0 <= {a}");
        }
    }
}

#[test]
fn positivity_flags_match_the_spec_table() {
    for id in SemiringId::ALL {
        let k = SemiringSpec::new(id);
        let expected = id != SemiringId::Lukasiewicz;
        assert_eq!(k.positive, expected, "{id}");
        assert!(k.ordered, "{id}");
        assert!(k.commutative, "{id}");
    }
}
