//! K-interpretations over ordered finite universes, their flat encoding,
//! and the inverse universe-size computation.

use std::collections::HashMap;

use kfo_semiring::{Element, SemiringSpec};

use crate::ast::RelSymbol;
use crate::classical::Structure;
use crate::error::LogicError;
use crate::Result;

/// A positive or negated ground fact. Arguments are universe indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub negated: bool,
    pub rel: String,
    pub args: Vec<usize>,
}

impl Literal {
    pub fn pos(rel: &str, args: Vec<usize>) -> Literal {
        Literal {
            negated: false,
            rel: rel.to_string(),
            args,
        }
    }

    pub fn neg(rel: &str, args: Vec<usize>) -> Literal {
        Literal {
            negated: true,
            rel: rel.to_string(),
            args,
        }
    }

    pub fn describe(&self, universe: &[String]) -> String {
        let args: Vec<&str> = self
            .args
            .iter()
            .map(|&i| universe.get(i).map(|s| s.as_str()).unwrap_or("?"))
            .collect();
        format!(
            "{}{}({})",
            if self.negated { "~" } else { "" },
            self.rel,
            args.join(", ")
        )
    }
}

/// The flat layout of an encoded interpretation: relations in declaration
/// order, positive block before negative block, tuples in lexicographic
/// universe order. Nullary relations are laid out as if they had arity 1.
#[derive(Debug, Clone)]
pub struct EncLayout {
    pub tau: Vec<RelSymbol>,
    pub n: usize,
}

impl EncLayout {
    pub fn new(tau: &[RelSymbol], n: usize) -> EncLayout {
        EncLayout {
            tau: tau.to_vec(),
            n,
        }
    }

    fn slot_arity(sym: &RelSymbol) -> u32 {
        sym.arity.max(1) as u32
    }

    /// Total length of the encoding.
    pub fn len(&self) -> usize {
        self.tau
            .iter()
            .map(|sym| 2 * self.n.pow(Self::slot_arity(sym)))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of a literal within the encoding. Nullary literals map to a
    /// block of `n` equal slots; this returns the first one.
    pub fn index(&self, lit: &Literal) -> Option<usize> {
        let mut offset = 0usize;
        for sym in &self.tau {
            let block = self.n.pow(Self::slot_arity(sym));
            if sym.name == lit.rel {
                if lit.args.len() != sym.arity {
                    return None;
                }
                let tuple_index = if sym.arity == 0 {
                    0
                } else {
                    let mut ix = 0usize;
                    for &a in &lit.args {
                        if a >= self.n {
                            return None;
                        }
                        ix = ix * self.n + a;
                    }
                    ix
                };
                let polarity = if lit.negated { block } else { 0 };
                return Some(offset + polarity + tuple_index);
            }
            offset += 2 * block;
        }
        None
    }

    /// All literals in layout order, with nullary literals repeated `n`
    /// times as the layout requires.
    pub fn literals(&self) -> Vec<Literal> {
        let mut out = Vec::with_capacity(self.len());
        for sym in &self.tau {
            for negated in [false, true] {
                if sym.arity == 0 {
                    for _ in 0..self.n {
                        out.push(Literal {
                            negated,
                            rel: sym.name.clone(),
                            args: vec![],
                        });
                    }
                } else {
                    for tuple in tuples(self.n, sym.arity) {
                        out.push(Literal {
                            negated,
                            rel: sym.name.clone(),
                            args: tuple,
                        });
                    }
                }
            }
        }
        out
    }
}

/// All `arity`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for a in 0..n {
                let mut t2 = t.clone();
                t2.push(a);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// A K-interpretation: an ordered universe plus a total map from literals
/// to semiring values.
#[derive(Debug, Clone)]
pub struct Interpretation {
    pub spec: SemiringSpec,
    pub universe: Vec<String>,
    pub tau: Vec<RelSymbol>,
    values: HashMap<Literal, Element>,
}

impl Interpretation {
    /// Builds an interpretation from an explicit literal map, checking
    /// totality, membership and universe well-formedness.
    pub fn new(
        spec: SemiringSpec,
        universe: Vec<String>,
        tau: Vec<RelSymbol>,
        values: HashMap<Literal, Element>,
    ) -> Result<Interpretation> {
        let mut seen = std::collections::HashSet::new();
        for e in &universe {
            if !seen.insert(e.as_str()) {
                return Err(LogicError::DuplicateElement(e.clone()));
            }
        }
        let interp = Interpretation {
            spec,
            universe,
            tau,
            values,
        };
        for lit in interp.all_literals() {
            match interp.values.get(&lit) {
                None => {
                    return Err(LogicError::MissingLiteral(
                        lit.describe(&interp.universe),
                    ))
                }
                Some(v) => {
                    if !interp.spec.contains(v) {
                        return Err(LogicError::Semiring(
                            kfo_semiring::SemiringError::InstanceMismatch {
                                expected: interp.spec.id,
                                found: v.to_string(),
                            },
                        ));
                    }
                }
            }
        }
        Ok(interp)
    }

    /// Builds an interpretation by evaluating `f` on every literal.
    pub fn build<F>(
        spec: SemiringSpec,
        universe: Vec<String>,
        tau: Vec<RelSymbol>,
        mut f: F,
    ) -> Result<Interpretation>
    where
        F: FnMut(&Literal) -> Element,
    {
        let stub = Interpretation {
            spec: spec.clone(),
            universe: universe.clone(),
            tau: tau.clone(),
            values: HashMap::new(),
        };
        let mut values = HashMap::new();
        for lit in stub.all_literals() {
            let v = f(&lit);
            values.insert(lit, v);
        }
        Interpretation::new(spec, universe, tau, values)
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    /// Distinct literals (each nullary literal once).
    pub fn all_literals(&self) -> Vec<Literal> {
        let n = self.universe.len();
        let mut out = Vec::new();
        for sym in &self.tau {
            for negated in [false, true] {
                for tuple in tuples(n, sym.arity) {
                    out.push(Literal {
                        negated,
                        rel: sym.name.clone(),
                        args: tuple,
                    });
                }
            }
        }
        out
    }

    pub fn value(&self, lit: &Literal) -> Result<&Element> {
        self.values
            .get(lit)
            .ok_or_else(|| LogicError::MissingLiteral(lit.describe(&self.universe)))
    }

    /// Position of an element name in the universe order.
    pub fn element_index(&self, name: &str) -> Result<usize> {
        self.universe
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| LogicError::UnknownElement(name.to_string()))
    }

    /// The layout of `enc` for this interpretation.
    pub fn layout(&self) -> EncLayout {
        EncLayout::new(&self.tau, self.universe.len())
    }

    /// Flattens the interpretation into its encoding vector.
    pub fn encode(&self) -> Vec<Element> {
        self.layout()
            .literals()
            .iter()
            .map(|lit| self.values[lit].clone())
            .collect()
    }

    /// Whether exactly one of each positive/negative literal pair is zero.
    pub fn is_model_defining(&self) -> bool {
        let n = self.universe.len();
        for sym in &self.tau {
            for tuple in tuples(n, sym.arity) {
                let pos = Literal::pos(&sym.name, tuple.clone());
                let neg = Literal::neg(&sym.name, tuple);
                let pos_zero = self.spec.is_zero(&self.values[&pos]);
                let neg_zero = self.spec.is_zero(&self.values[&neg]);
                if pos_zero == neg_zero {
                    return false;
                }
            }
        }
        true
    }

    /// Applies the characteristic map literal-wise, yielding the Boolean
    /// shadow of this interpretation.
    pub fn xi(&self) -> Interpretation {
        let values = self
            .values
            .iter()
            .map(|(lit, v)| (lit.clone(), self.spec.xi(v)))
            .collect();
        Interpretation {
            spec: SemiringSpec::boolean(),
            universe: self.universe.clone(),
            tau: self.tau.clone(),
            values,
        }
    }

    /// The canonical truth interpretation of a classical structure:
    /// positive literals get 1 exactly on the structure's tuples, negative
    /// literals the complement.
    pub fn canonical_boolean(structure: &Structure) -> Result<Interpretation> {
        let spec = SemiringSpec::boolean();
        structure.check()?;
        Interpretation::build(
            spec,
            structure.universe.clone(),
            structure.tau.clone(),
            |lit| {
                let holds = structure.holds_fact(&lit.rel, &lit.args);
                Element::Bool(holds != lit.negated)
            },
        )
    }
}

/// Inverts the encoding-length formula by binary search, returning the
/// unique universe size together with the number of length probes made.
pub fn decode_universe_size(len: u64, tau: &[RelSymbol]) -> Result<(u64, u32)> {
    if tau.is_empty() {
        return Err(LogicError::EmptyVocabulary);
    }
    let enc_len = |n: u128| -> u128 {
        tau.iter()
            .map(|sym| {
                let a = sym.arity.max(1) as u32;
                2u128.saturating_mul(n.saturating_pow(a))
            })
            .fold(0u128, u128::saturating_add)
    };
    let target = len as u128;
    let mut probes = 0u32;
    // search the half-open range [0, len + 2); enc_len is strictly
    // increasing, and enc_len(n) >= 2n, so any solution satisfies n <= len
    let mut lo = 0u128;
    let mut hi = target + 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        probes += 1;
        if enc_len(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if enc_len(lo) == target {
        Ok((lo as u64, probes))
    } else {
        Err(LogicError::NoUniverseSize(len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kfo_semiring::SemiringId;

    fn u(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn encode_layout_positive_then_negative() {
        // tau = {P/1}, A = {a, b}: (P(a), P(b), ~P(a), ~P(b))
        let spec = SemiringSpec::nat();
        let pi = Interpretation::build(
            spec,
            u(&["a", "b"]),
            vec![RelSymbol::new("P", 1)],
            |lit| match (lit.negated, lit.args[0]) {
                (false, 0) => Element::nat(2),
                (false, 1) => Element::nat(0),
                (true, 0) => Element::nat(0),
                (true, 1) => Element::nat(7),
                _ => unreachable!(),
            },
        )
        .unwrap();
        let enc = pi.encode();
        assert_eq!(
            enc,
            vec![Element::nat(2), Element::nat(0), Element::nat(0), Element::nat(7)]
        );
    }

    #[test]
    fn nullary_relations_emit_n_copies() {
        let spec = SemiringSpec::nat();
        let pi = Interpretation::build(
            spec,
            u(&["a", "b"]),
            vec![RelSymbol::new("R", 0)],
            |lit| {
                if lit.negated {
                    Element::nat(0)
                } else {
                    Element::nat(5)
                }
            },
        )
        .unwrap();
        assert_eq!(
            pi.encode(),
            vec![Element::nat(5), Element::nat(5), Element::nat(0), Element::nat(0)]
        );
    }

    #[test]
    fn binary_relation_length() {
        let layout = EncLayout::new(&[RelSymbol::new("E", 2)], 3);
        assert_eq!(layout.len(), 18);
        let layout2 = EncLayout::new(&[RelSymbol::new("E", 2), RelSymbol::new("P", 1)], 3);
        assert_eq!(layout2.len(), 24);
    }

    #[test]
    fn enc_index_matches_literal_listing() {
        let layout = EncLayout::new(&[RelSymbol::new("E", 2), RelSymbol::new("P", 1)], 3);
        let lits = layout.literals();
        for (i, lit) in lits.iter().enumerate() {
            if lit.args.is_empty() && layout.tau.iter().any(|s| s.name == lit.rel && s.arity == 0) {
                continue; // nullary copies share an index
            }
            assert_eq!(layout.index(lit), Some(i), "literal {lit:?}");
        }
    }

    #[test]
    fn decode_inverts_lengths() {
        let tau = vec![RelSymbol::new("E", 2)];
        assert_eq!(decode_universe_size(18, &tau).unwrap().0, 3);
        let tau2 = vec![RelSymbol::new("E", 2), RelSymbol::new("P", 1)];
        assert_eq!(decode_universe_size(24, &tau2).unwrap().0, 3);
        assert!(matches!(
            decode_universe_size(20, &tau),
            Err(LogicError::NoUniverseSize(20))
        ));
    }

    #[test]
    fn decode_probe_count_is_logarithmic() {
        let tau = vec![RelSymbol::new("E", 2)];
        for n in 0u64..40 {
            let len = 2 * n * n;
            let (found, probes) = decode_universe_size(len, &tau).unwrap();
            assert_eq!(found, n);
            let bound = (len + 2).next_power_of_two().trailing_zeros();
            assert!(
                probes <= bound,
                "n = {n}: probes {probes} > bound {bound}"
            );
        }
    }

    #[test]
    fn missing_literal_is_rejected() {
        let spec = SemiringSpec::nat();
        let res = Interpretation::new(
            spec,
            u(&["a"]),
            vec![RelSymbol::new("P", 1)],
            HashMap::new(),
        );
        assert!(matches!(res, Err(LogicError::MissingLiteral(_))));
    }

    #[test]
    fn model_defining_detection() {
        let spec = SemiringSpec::nat();
        let good = Interpretation::build(
            spec.clone(),
            u(&["a"]),
            vec![RelSymbol::new("P", 1)],
            |lit| {
                if lit.negated {
                    Element::nat(0)
                } else {
                    Element::nat(2)
                }
            },
        )
        .unwrap();
        assert!(good.is_model_defining());
        let bad = Interpretation::build(
            spec,
            u(&["a"]),
            vec![RelSymbol::new("P", 1)],
            |_| Element::nat(1),
        )
        .unwrap();
        assert!(!bad.is_model_defining());
        assert_eq!(bad.xi().spec.id, SemiringId::Boolean);
    }
}
