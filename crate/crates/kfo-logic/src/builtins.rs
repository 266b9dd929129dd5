//! Built-in relation families: K-valued functions on ranked tuples that
//! depend only on the universe size.

use std::collections::HashMap;

use kfo_semiring::{Element, SemiringSpec};

use crate::error::LogicError;
use crate::Result;

/// Named closed-form generators for commonly used families.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// 1 when all tuple entries are equal, else 0.
    EqualityIndicator,
    /// Arity 2: 1 when the second entry is the successor of the first.
    SuccessorIndicator,
    /// The same constant at every tuple.
    Constant(Element),
}

/// One polarity of one built-in symbol: either explicit lookup tables keyed
/// by universe size, or a generator.
#[derive(Debug, Clone, PartialEq)]
pub enum BuiltinFamily {
    Table(HashMap<usize, HashMap<Vec<usize>, Element>>),
    Generator(Generator),
}

impl BuiltinFamily {
    /// Builds a table family from `(n, tuple, value)` rows.
    pub fn table_from_rows<I>(rows: I) -> BuiltinFamily
    where
        I: IntoIterator<Item = (usize, Vec<usize>, Element)>,
    {
        let mut table: HashMap<usize, HashMap<Vec<usize>, Element>> = HashMap::new();
        for (n, tuple, value) in rows {
            table.entry(n).or_default().insert(tuple, value);
        }
        BuiltinFamily::Table(table)
    }

    /// Rows of a table family in deterministic order; empty for generators.
    pub fn table_rows(&self) -> Vec<(usize, Vec<usize>, Element)> {
        match self {
            BuiltinFamily::Generator(_) => Vec::new(),
            BuiltinFamily::Table(table) => {
                let mut rows: Vec<(usize, Vec<usize>, Element)> = table
                    .iter()
                    .flat_map(|(n, m)| {
                        m.iter().map(move |(t, v)| (*n, t.clone(), v.clone()))
                    })
                    .collect();
                rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
                rows
            }
        }
    }

    fn value(&self, spec: &SemiringSpec, n: usize, tuple: &[usize]) -> Option<Element> {
        match self {
            BuiltinFamily::Table(table) => table.get(&n)?.get(tuple).cloned(),
            BuiltinFamily::Generator(g) => Some(match g {
                Generator::EqualityIndicator => {
                    if tuple.windows(2).all(|w| w[0] == w[1]) {
                        spec.one()
                    } else {
                        spec.zero()
                    }
                }
                Generator::SuccessorIndicator => {
                    if tuple.len() == 2 && tuple[1] == tuple[0] + 1 {
                        spec.one()
                    } else {
                        spec.zero()
                    }
                }
                Generator::Constant(c) => c.clone(),
            }),
        }
    }
}

/// Interpretation of the built-in vocabulary: for every symbol, a family
/// per occurrence polarity. Tuples are 1-based ranks.
#[derive(Debug, Clone, Default)]
pub struct BuiltinInterpretation {
    families: HashMap<(String, bool), BuiltinFamily>,
}

impl BuiltinInterpretation {
    pub fn new() -> BuiltinInterpretation {
        BuiltinInterpretation::default()
    }

    /// Registers the family for `(symbol, negated)`.
    pub fn insert(&mut self, symbol: &str, negated: bool, family: BuiltinFamily) {
        self.families.insert((symbol.to_string(), negated), family);
    }

    pub fn insert_generator(&mut self, symbol: &str, negated: bool, gen: Generator) {
        self.insert(symbol, negated, BuiltinFamily::Generator(gen));
    }

    pub fn families(&self) -> impl Iterator<Item = (&(String, bool), &BuiltinFamily)> {
        self.families.iter()
    }

    pub fn family(&self, symbol: &str, negated: bool) -> Option<&BuiltinFamily> {
        self.families.get(&(symbol.to_string(), negated))
    }

    /// Looks up the value of a built-in literal at universe size `n`.
    /// `tuple` holds 1-based ranks.
    pub fn value(
        &self,
        spec: &SemiringSpec,
        symbol: &str,
        negated: bool,
        n: usize,
        tuple: &[usize],
    ) -> Result<Element> {
        let family = self
            .families
            .get(&(symbol.to_string(), negated))
            .ok_or_else(|| LogicError::UnknownSymbol(symbol.to_string()))?;
        family
            .value(spec, n, tuple)
            .ok_or_else(|| LogicError::BuiltinUndefined {
                symbol: symbol.to_string(),
                polarity: if negated { "~" } else { "+" },
                n,
                tuple: tuple.to_vec(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_evaluate() {
        let spec = SemiringSpec::nat();
        let mut rho = BuiltinInterpretation::new();
        rho.insert_generator("eq", false, Generator::EqualityIndicator);
        rho.insert_generator("succ", false, Generator::SuccessorIndicator);
        rho.insert_generator("five", false, Generator::Constant(Element::nat(5)));

        assert_eq!(rho.value(&spec, "eq", false, 3, &[2, 2]).unwrap(), Element::nat(1));
        assert_eq!(rho.value(&spec, "eq", false, 3, &[1, 2]).unwrap(), Element::nat(0));
        assert_eq!(rho.value(&spec, "succ", false, 3, &[1, 2]).unwrap(), Element::nat(1));
        assert_eq!(rho.value(&spec, "succ", false, 3, &[2, 1]).unwrap(), Element::nat(0));
        assert_eq!(rho.value(&spec, "five", false, 9, &[1]).unwrap(), Element::nat(5));
    }

    #[test]
    fn tables_are_size_keyed() {
        let spec = SemiringSpec::nat();
        let mut rho = BuiltinInterpretation::new();
        rho.insert(
            "f",
            false,
            BuiltinFamily::table_from_rows([(2, vec![1, 2], Element::nat(9))]),
        );
        assert_eq!(rho.value(&spec, "f", false, 2, &[1, 2]).unwrap(), Element::nat(9));
        assert!(matches!(
            rho.value(&spec, "f", false, 3, &[1, 2]),
            Err(LogicError::BuiltinUndefined { .. })
        ));
    }
}
