//! Consistency checks: each returns a new column that splits two rows which
//! the table currently identifies but whose successors differ.

use std::collections::HashMap;

use super::decompose::{closure, DecompositionStrategy, Decomposer, Row};
use super::ObservationTable;
use crate::effects::{Effect, OutputAlgebra, Out};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConsistencyMode {
    /// Compare all pairs of combinations of top rows.
    Full,
    /// Require closedness of the transposed table. Sound for commutative
    /// effects; may add more columns than needed.
    Transpose,
    /// The residual-automaton notion: if `row(s1) ≤ row(s2)` then their
    /// successors must be ordered too. Powerset with `or` only.
    BolligRfsa,
    /// No check; only sound with suffix-based counterexample handling.
    None,
}

impl ObservationTable {
    pub fn consistency_defect(&self, mode: ConsistencyMode, strategy: DecompositionStrategy) -> Result<Option<Word>> {
        match mode {
            ConsistencyMode::None => Ok(None),
            ConsistencyMode::Full => self.full_defect(),
            ConsistencyMode::Transpose => self.transpose_defect(strategy),
            ConsistencyMode::BolligRfsa => self.bollig_defect(),
        }
    }

    fn full_defect(&self) -> Result<Option<Word>> {
        let s = self.prefixes();
        let k = self.alphabet().len();
        let width = self.suffixes().len();
        // One vector per label: its top row followed by its bottom rows.
        let gens: Vec<Row> = s
            .iter()
            .map(|p| {
                let mut v = self.row_top(p).clone();
                for a in self.alphabet().symbols() {
                    v.extend_from_slice(self.row_bot(p, a));
                }
                v
            })
            .collect();
        let all = closure(self.effect(), self.algebra(), &gens, width * (k + 1), self.caps().max_values)?;
        let mut seen: HashMap<&[Out], &[Out]> = HashMap::new();
        for v in &all {
            let (top, bottom) = v.split_at(width);
            match seen.get(top) {
                None => {
                    seen.insert(top, bottom);
                }
                Some(prev) => {
                    if let Some(i) = (0..bottom.len()).find(|&i| prev[i] != bottom[i]) {
                        return Ok(Some(self.suffixes()[i % width].prepend(i / width)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn transpose_defect(&self, strategy: DecompositionStrategy) -> Result<Option<Word>> {
        if !self.effect().is_commutative() {
            return Err(Error::Config(format!(
                "transpose consistency is unsound for the non-commutative {} effect",
                self.effect().name()
            )));
        }
        let s = self.prefixes();
        let e = self.suffixes();
        let columns: Vec<Row> = (0..e.len()).map(|j| s.iter().map(|p| self.row_top(p)[j]).collect()).collect();
        let d = Decomposer::new(self.effect(), self.algebra(), strategy, *self.caps(), columns)?;
        for (j, suffix) in e.iter().enumerate() {
            for a in self.alphabet().symbols() {
                let ae = suffix.prepend(a);
                if self.has_suffix(&ae) {
                    continue;
                }
                let col: Row = s.iter().map(|p| self.row_bot(p, a)[j]).collect();
                if d.decompose(&col)?.is_none() {
                    return Ok(Some(ae));
                }
            }
        }
        Ok(None)
    }

    fn bollig_defect(&self) -> Result<Option<Word>> {
        if !matches!((self.effect(), self.algebra()), (Effect::Powerset, OutputAlgebra::Or)) {
            return Err(Error::Config("residual consistency needs the powerset effect with `or`".into()));
        }
        let s = self.prefixes();
        let leq = |x: &Row, y: &Row| x.iter().zip(y).all(|(a, b)| a <= b);
        for s1 in s {
            for s2 in s {
                if s1 == s2 || !leq(self.row_top(s1), self.row_top(s2)) {
                    continue;
                }
                for a in self.alphabet().symbols() {
                    let (b1, b2) = (self.row_bot(s1, a), self.row_bot(s2, a));
                    if let Some(j) = (0..b1.len()).find(|&j| b1[j] > b2[j]) {
                        return Ok(Some(self.suffixes()[j].prepend(a)));
                    }
                }
            }
        }
        Ok(None)
    }
}
