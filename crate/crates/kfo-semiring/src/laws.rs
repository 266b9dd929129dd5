//! Semiring law checking over finite sample sets.

use crate::element::Element;
use crate::error::SemiringError;
use crate::spec::SemiringSpec;
use crate::Result;

/// A single violated law together with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: String,
}

/// Result of [`SemiringSpec::check_laws`]. Empty means no law was violated
/// on the given samples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, law: &'static str, witness: String) {
        // one witness per law keeps reports readable
        if self.violations.iter().all(|v| v.law != law) {
            self.violations.push(LawViolation { law, witness });
        }
    }
}

impl SemiringSpec {
    /// Checks the semiring axioms over every pair and triple drawn from
    /// `samples`: associativity and commutativity of `+`, identities,
    /// annihilation, distributivity, commutativity of `*` (if flagged),
    /// additive idempotency (if flagged), positivity (if flagged), and
    /// order monotonicity (if ordered). Nontriviality (`zero != one`) is
    /// always checked.
    pub fn check_laws(&self, samples: &[Element]) -> Result<LawReport> {
        if samples.is_empty() {
            return Err(SemiringError::EmptySamples);
        }
        for s in samples {
            if !self.contains(s) {
                return Err(SemiringError::InstanceMismatch {
                    expected: self.id,
                    found: s.to_string(),
                });
            }
        }

        let mut report = LawReport::default();
        let add = |a: &Element, b: &Element| self.add(a, b).expect("members verified");
        let mul = |a: &Element, b: &Element| self.mul(a, b).expect("members verified");

        if self.zero == self.one {
            report.record("nontriviality", "zero = one".to_string());
        }

        for a in samples {
            if add(&self.zero, a) != *a || add(a, &self.zero) != *a {
                report.record("additive identity", format!("a = {a}"));
            }
            if mul(&self.one, a) != *a || mul(a, &self.one) != *a {
                report.record("multiplicative identity", format!("a = {a}"));
            }
            if !self.is_zero(&mul(&self.zero, a)) || !self.is_zero(&mul(a, &self.zero)) {
                report.record("annihilation", format!("a = {a}"));
            }
            if self.add_idempotent && add(a, a) != *a {
                report.record("additive idempotency", format!("a = {a}"));
            }
        }

        for a in samples {
            for b in samples {
                if add(a, b) != add(b, a) {
                    report.record("commutativity of +", format!("a = {a}, b = {b}"));
                }
                if self.commutative && mul(a, b) != mul(b, a) {
                    report.record("commutativity of *", format!("a = {a}, b = {b}"));
                }
                if self.positive {
                    if !self.is_zero(a) && !self.is_zero(b) && self.is_zero(&mul(a, b)) {
                        report.record("positivity: no zero divisors", format!("a = {a}, b = {b}"));
                    }
                    if self.is_zero(&add(a, b)) && !(self.is_zero(a) && self.is_zero(b)) {
                        report.record("positivity: a+b=0 forces a=b=0", format!("a = {a}, b = {b}"));
                    }
                }
            }
        }

        for a in samples {
            for b in samples {
                for c in samples {
                    if add(&add(a, b), c) != add(a, &add(b, c)) {
                        report.record("associativity of +", format!("a = {a}, b = {b}, c = {c}"));
                    }
                    if mul(&mul(a, b), c) != mul(a, &mul(b, c)) {
                        report.record("associativity of *", format!("a = {a}, b = {b}, c = {c}"));
                    }
                    if mul(a, &add(b, c)) != add(&mul(a, b), &mul(a, c)) {
                        report.record("left distributivity", format!("a = {a}, b = {b}, c = {c}"));
                    }
                    if mul(&add(a, b), c) != add(&mul(a, c), &mul(b, c)) {
                        report.record("right distributivity", format!("a = {a}, b = {b}, c = {c}"));
                    }
                    if self.ordered {
                        let leq = |x: &Element, y: &Element| self.leq(x, y).expect("ordered");
                        if leq(a, b) && !leq(&add(a, c), &add(b, c)) {
                            report.record(
                                "order monotonicity of +",
                                format!("a = {a}, b = {b}, c = {c}"),
                            );
                        }
                    }
                }
            }
        }

        if self.ordered {
            let leq = |x: &Element, y: &Element| self.leq(x, y).expect("ordered");
            for a in samples {
                for b in samples {
                    if leq(&self.zero, a) && leq(&self.zero, b) && !leq(&self.zero, &mul(a, b)) {
                        report.record(
                            "order compatibility of *",
                            format!("a = {a}, b = {b}"),
                        );
                    }
                }
            }
        }

        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::SemiringId;

    #[test]
    fn builtins_are_law_abiding() {
        let nat = SemiringSpec::nat();
        let samples = [0u64, 1, 2, 3].map(Element::nat);
        assert!(nat.check_laws(&samples).unwrap().is_clean());

        let trop = SemiringSpec::tropical();
        let samples = [
            Element::trop_inf(),
            Element::trop(0),
            Element::trop(1),
            Element::trop(5),
        ];
        assert!(trop.check_laws(&samples).unwrap().is_clean());
    }

    #[test]
    fn broken_spec_reports_nontriviality() {
        let mut broken = SemiringSpec::nat();
        broken.one = broken.zero.clone();
        let report = broken.check_laws(&[Element::nat(0)]).unwrap();
        assert!(report.violations.iter().any(|v| v.law == "nontriviality"));
    }

    #[test]
    fn lukasiewicz_zero_divisors_detected_if_flagged_positive() {
        let mut luk = SemiringSpec::lukasiewicz();
        assert!(!luk.positive);
        luk.positive = true;
        let half = luk.parse_element("1/2").unwrap();
        let quarter = luk.parse_element("1/4").unwrap();
        let report = luk.check_laws(&[half, quarter]).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "positivity: no zero divisors"));
    }

    #[test]
    fn empty_samples_rejected() {
        let err = SemiringSpec::nat().check_laws(&[]).unwrap_err();
        assert_eq!(err, SemiringError::EmptySamples);
        let _ = SemiringId::ALL;
    }
}
