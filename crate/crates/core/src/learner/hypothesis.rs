//! Generators, right inverses and succinct hypotheses.

use std::collections::HashMap;

use crate::automata::{DetState, SuccinctAutomaton};
use crate::effects::{Effect, EffectValue, OutputAlgebra};
use crate::error::{Error, Result};
use crate::table::{combine, Decomposer, DecompositionStrategy, ObservationTable, Row};
use crate::word::Word;

/// How a hypothesis state picks a combination of generators for a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RightInverse {
    /// Whatever the decomposition strategy finds, memoized per row.
    Stored,
    /// Every generator below the row (canonical residual automaton).
    MaxJsl,
    /// Only the maximal generators below the row.
    SimplifiedJsl,
}

impl RightInverse {
    pub fn supports(&self, effect: &Effect, algebra: &OutputAlgebra) -> bool {
        *self == RightInverse::Stored || (*effect == Effect::Powerset && *algebra == OutputAlgebra::Or)
    }
}

#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub automaton: SuccinctAutomaton,
    /// `S'`; state `i` of the automaton is `generators[i]`.
    pub generators: Vec<Word>,
    /// Every row the right inverse was asked for, with its answer.
    pub decompositions: Vec<(Row, EffectValue<usize>)>,
}

impl Hypothesis {
    /// The combination of generator words the hypothesis reaches on `u`.
    pub fn reach_words(&self, u: &Word) -> Result<EffectValue<Word>> {
        let q = self.automaton.reach(u)?;
        Ok(self.automaton.effect().map(&q, |&i| self.generators[i].clone()))
    }
}

/// Drops generators that are combinations of the others, scanning `S` in
/// order. Removing a label never makes another one removable, so one pass
/// reaches the same result as restarting after every removal.
pub fn minimize_generators(table: &ObservationTable, strategy: DecompositionStrategy) -> Result<Vec<Word>> {
    if *table.effect() == Effect::Identity {
        // only equal rows decompose, so the last of each class survives
        let mut last: HashMap<&Row, usize> = HashMap::new();
        for (i, s) in table.prefixes().iter().enumerate() {
            last.insert(table.row(s), i);
        }
        return Ok(table
            .prefixes()
            .iter()
            .enumerate()
            .filter(|&(i, s)| last[table.row(s)] == i)
            .map(|(_, s)| s.clone())
            .collect());
    }
    let mut gens: Vec<Word> = table.prefixes().to_vec();
    let mut i = 0;
    while i < gens.len() {
        let others: Vec<Word> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| w.clone()).collect();
        if table.decompose(table.row(&gens[i]), &others, strategy)?.is_some() {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(gens)
}

/// A right inverse of `row_t♯` restricted to combinations of `gens`.
pub struct Inverse<'t> {
    table: &'t ObservationTable,
    choice: RightInverse,
    decomposer: Decomposer,
    memo: HashMap<Row, EffectValue<usize>>,
    log: Vec<(Row, EffectValue<usize>)>,
}

impl<'t> Inverse<'t> {
    pub fn new(
        table: &'t ObservationTable,
        gens: &[Word],
        choice: RightInverse,
        strategy: DecompositionStrategy,
    ) -> Result<Self> {
        if !choice.supports(table.effect(), table.algebra()) {
            return Err(Error::Config(format!("{choice:?} inverse needs the powerset effect with `or`")));
        }
        let decomposer = table.decomposer(gens, strategy)?;
        Ok(Inverse { table, choice, decomposer, memo: HashMap::new(), log: Vec::new() })
    }

    pub fn apply(&mut self, h: &Row) -> Result<EffectValue<usize>> {
        if let Some(u) = self.memo.get(h) {
            return Ok(u.clone());
        }
        let rows = self.decomposer.rows();
        let le = |x: &Row, y: &Row| x.iter().zip(y).all(|(a, b)| a <= b);
        let u = match self.choice {
            RightInverse::Stored => self.decomposer.decompose(h)?,
            RightInverse::MaxJsl => Some(EffectValue::Powerset((0..rows.len()).filter(|&i| le(&rows[i], h)).collect())),
            RightInverse::SimplifiedJsl => Some(EffectValue::Powerset(
                (0..rows.len())
                    .filter(|&i| le(&rows[i], h))
                    .filter(|&i| !rows.iter().any(|r| r != &rows[i] && le(&rows[i], r) && le(r, h)))
                    .collect(),
            )),
        };
        let u = u
            .filter(|u| combine(self.table.effect(), self.table.algebra(), rows, h.len(), u) == *h)
            .ok_or_else(|| Error::NotClosed(format!("{h:?}")))?;
        self.memo.insert(h.clone(), u.clone());
        self.log.push((h.clone(), u.clone()));
        Ok(u)
    }
}

/// The automaton with states `gens`, transitions chosen by `choice`.
pub fn build_succinct(
    table: &ObservationTable,
    gens: &[Word],
    choice: RightInverse,
    strategy: DecompositionStrategy,
) -> Result<Hypothesis> {
    let mut inv = Inverse::new(table, gens, choice, strategy)?;
    let eps = Word::epsilon();
    let init = inv.apply(table.row(&eps))?;
    let mut delta: Vec<Vec<DetState>> = Vec::with_capacity(gens.len());
    for s in gens {
        let mut row = Vec::with_capacity(table.alphabet().len());
        for a in table.alphabet().symbols() {
            row.push(inv.apply(table.row_bot(s, a))?);
        }
        delta.push(row);
    }
    let out = gens.iter().map(|s| table.row(s)[0]).collect();
    let names = gens.iter().map(|s| table.alphabet().show(s)).collect();
    let automaton = SuccinctAutomaton::new(
        table.effect().clone(),
        table.algebra().clone(),
        table.alphabet().clone(),
        names,
        init,
        delta,
        out,
    )?;
    Ok(Hypothesis { automaton, generators: gens.to_vec(), decompositions: inv.log })
}
